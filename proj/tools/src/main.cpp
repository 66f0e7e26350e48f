#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <httplib.h>

#include "folab/arithmetization.hpp"
#include "folab/asymptotics.hpp"
#include "folab/certificates.hpp"
#include "folab/ef_game.hpp"
#include "folab/error.hpp"
#include "folab/experiments.hpp"
#include "folab/formula.hpp"
#include "folab/graph6.hpp"
#include "folab/http_api.hpp"
#include "folab/isomorphism.hpp"

using namespace folab;
using nlohmann::json;

namespace {

httplib::Server* g_server = nullptr;

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

VertexSet parse_set(const std::string& text, std::size_t n) {
    VertexSet s(n);
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto v = std::stoul(item);
        if (v >= n) throw InvalidArgument("vertex " + item + " out of range");
        s.insert(static_cast<Vertex>(v));
    }
    return s;
}

int cmd_dvalue(const std::string& g6, const std::string& h6, std::optional<std::size_t> alt, bool synth) {
    const Graph g = graph6::decode(g6), h = graph6::decode(h6);
    if (is_isomorphic(g, h)) {
        print({{"depth", nullptr}, {"alternations", alt ? json(*alt) : json(nullptr)}, {"isomorphic", true}});
        return 0;
    }
    const std::size_t d = alt ? distinguishing_depth_alt(g, h, *alt) : distinguishing_depth(g, h);
    json out{{"depth", d}, {"alternations", alt ? json(*alt) : json(nullptr)}};
    if (synth) out["sentence"] = render(synthesize_sentence(g, h, alt));
    print(out);
    return 0;
}

int cmd_certify(const std::string& g6, const std::string& method, std::size_t k_max, std::size_t l,
                std::size_t u, const std::string& a_text, std::uint64_t seed, std::size_t restarts) {
    const Graph g = graph6::decode(g6);
    const SieveSearch opts{restarts, seed};
    std::optional<Certificate> cert;
    json extra;
    if (method == "ext") {
        cert = extension_lower_bound(g, k_max);
    } else if (method == "sieve") {
        cert = lemmaY_bound(g, search_small_sieve(g, opts));
    } else if (method == "detd0") {
        cert = detD0_bound(g, search_small_sieve(g, opts));
    } else if (method == "half") {
        VertexSet a(g.order());
        if (a_text.empty()) {
            for (Vertex v = 0; v < std::min(u, g.order()); ++v) a.insert(v);
        } else {
            a = parse_set(a_text, g.order());
        }
        if (auto w = half_recipe_w(g, a)) cert = lemma_half_bound(g, *w, a.count());
        else extra["reason"] = "the similarity partition of A has no usable shape";
    } else if (method == "lupper") {
        auto r = lupper_auto(g, l, opts);
        cert = r.certificate;
        if (!cert) extra = {{"failed", r.failed}, {"witness", r.witness}};
    } else if (method == "comps") {
        cert = comps_check(g);
    } else {
        throw InvalidArgument("unknown method " + method);
    }
    if (!cert) {
        json out{{"certificate", nullptr}};
        out.update(extra);
        print(out);
        return 1;
    }
    json out = to_json(*cert);
    const std::string problem = verify_certificate(g, *cert);
    out["verified"] = problem.empty();
    if (!problem.empty()) out["verification_error"] = problem;
    print(out);
    return problem.empty() ? 0 : 1;
}

std::size_t parse_fixture(const std::string& text) {
    std::string t = text;
    if (t.starts_with("s=")) t = t.substr(2);
    std::size_t used = 0;
    const auto s = std::stoul(t, &used);
    if (used != t.size()) throw InvalidArgument("fixture must look like s=3");
    return s;
}

int cmd_arith(const std::string& fixture, bool verify, std::uint64_t seed) {
    const ArithFixture f = build_fixture(parse_fixture(fixture), seed);
    WitnessVerification v;
    if (verify) v = verify_witnesses(f.graph, f.w, f.a, f.labels, f.witnesses);
    json out = arith_report(f, v);
    if (!verify) out.erase("clauses");
    print(out);
    return !verify || v.ok ? 0 : 1;
}

int cmd_bench_run(const std::string& config_path, const std::string& out_path, std::string format,
                  std::size_t threads) {
    std::ifstream in(config_path);
    if (!in) throw Error("cannot open " + config_path);
    ExperimentConfig cfg = config_from_json(json::parse(in));
    if (threads) cfg.threads = threads;
    const ResultTable t = run_experiment(cfg);
    if (format.empty()) format = out_path.ends_with(".jsonl") || out_path.ends_with(".json") ? "jsonl" : "csv";
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error("cannot write " + out_path);
    if (format == "csv") write_csv(out, t);
    else if (format == "jsonl") write_jsonl(out, t);
    else throw InvalidArgument("format must be csv or jsonl");
    print({{"experiment", t.experiment}, {"config_hash", t.config_hash}, {"rows", t.rows.size()},
           {"summary", t.summary}, {"out", out_path}});
    return 0;
}

int cmd_serve(const std::string& host, int port) {
    GameService service;
    httplib::Server server;
    mount_game_api(server, service);
    g_server = &server;
    std::signal(SIGINT, [](int) {
        if (g_server) g_server->stop();
    });
    std::cerr << "listening on http://" << host << ':' << port << '\n';
    if (!server.listen(host, port)) {
        std::cerr << "cannot bind " << host << ':' << port << '\n';
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"folab: Ehrenfeucht games, certificates and predictions for random graphs"};
    app.set_help_flag("--help", "print this help");
    app.require_subcommand(1);

    std::string g6, h6;
    std::optional<std::size_t> alt;
    bool synth = false;
    auto* dvalue = app.add_subcommand("dvalue", "distinguishing depth of two graphs");
    dvalue->add_option("--g", g6, "first graph (graph6)")->required();
    dvalue->add_option("--h", h6, "second graph (graph6)")->required();
    dvalue->add_option("--alt", alt, "alternation budget");
    dvalue->add_flag("--synthesize", synth, "also print a separating sentence");

    std::string in6, method, a_text;
    std::size_t k_max = 6, l = 2, u = 2, restarts = 8;
    std::uint64_t seed = 1;
    auto* certify = app.add_subcommand("certify", "bound D(G) with a checkable certificate");
    certify->add_option("--in", in6, "graph (graph6)")->required();
    certify->add_option("--method", method, "ext|sieve|detd0|half|lupper|comps")
        ->required()
        ->check(CLI::IsMember({"ext", "sieve", "detd0", "half", "lupper", "comps"}));
    certify->add_option("--k-max", k_max, "ext: largest k tried");
    certify->add_option("--l", l, "lupper: recursion depth (<= 2)");
    certify->add_option("--u", u, "half: |A| when --a is not given");
    certify->add_option("--a", a_text, "half: comma-separated vertices of A");
    certify->add_option("--seed", seed, "sieve search seed");
    certify->add_option("--restarts", restarts, "sieve search restarts");

    std::size_t n = 0;
    double p = 0.5, slack = 1.0;
    std::optional<std::size_t> k;
    auto* predict = app.add_subcommand("predict", "evaluate the asymptotic formulas at (n, p)");
    predict->add_option("--n", n)->required();
    predict->add_option("--p", p)->required();
    predict->add_option("--k", k, "even k >= 4: add the two-alternation tuning");
    predict->add_option("--slack", slack, "constant subtracted from the lower bracket end");

    std::string fixture = "s=3";
    bool verify = false;
    std::uint64_t arith_seed = 1;
    auto* arith = app.add_subcommand("arith", "build and check an arithmetic witness fixture");
    arith->add_option("--fixture", fixture, "s=<1..8>");
    arith->add_flag("--verify", verify, "check all clauses");
    arith->add_option("--seed", arith_seed);

    std::string config, out, format;
    std::size_t threads = 0;
    auto* bench = app.add_subcommand("bench", "experiment runner");
    bench->require_subcommand(1);
    auto* run = bench->add_subcommand("run", "run one experiment config");
    run->add_option("--config", config, "config JSON")->required();
    run->add_option("--out", out, "output file (.csv or .jsonl)")->required();
    run->add_option("--format", format, "csv|jsonl (default from the extension)");
    run->add_option("--threads", threads, "worker threads (0: all cores)");

    std::string host = "127.0.0.1";
    int port = 8080;
    auto* serve = app.add_subcommand("serve", "HTTP game server");
    serve->add_option("--host", host);
    serve->add_option("--port", port);

    CLI11_PARSE(app, argc, argv);
    try {
        if (*dvalue) return cmd_dvalue(g6, h6, alt, synth);
        if (*certify) return cmd_certify(in6, method, k_max, l, u, a_text, seed, restarts);
        if (*predict) {
            PredictionOptions opts;
            opts.k = k;
            opts.constant_slack = slack;
            print(prediction_report(n, p, opts));
            return 0;
        }
        if (*arith) return cmd_arith(fixture, verify, arith_seed);
        if (*run) return cmd_bench_run(config, out, format, threads);
        if (*serve) return cmd_serve(host, port);
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}}.dump() << '\n';
        return 2;
    }
    return 0;
}
