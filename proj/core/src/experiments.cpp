#include "folab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <thread>

#include "folab/asymptotics.hpp"
#include "folab/census.hpp"
#include "folab/certificates.hpp"
#include "folab/ef_game.hpp"
#include "folab/enumerate.hpp"
#include "folab/error.hpp"
#include "folab/isomorphism.hpp"
#include "folab/naive_game.hpp"
#include "folab/random.hpp"

namespace folab {

using nlohmann::json;
using nlohmann::ordered_json;

ExperimentConfig config_from_json(const json& j) {
    if (!j.is_object()) throw InvalidArgument("experiment config must be a JSON object");
    const int version = j.value("version", kConfigVersion);
    if (version != kConfigVersion) throw InvalidArgument("unsupported config version " + std::to_string(version));
    ExperimentConfig c;
    try {
        c.experiment = j.at("experiment").get<std::string>();
        c.n = j.value("n", std::vector<std::size_t>{});
        c.p = j.value("p", std::vector<double>{});
        c.c = j.value("c", std::vector<double>{});
        c.trials = j.value("trials", c.trials);
        c.seed = j.value("seed", c.seed);
        c.epsilon = j.value("epsilon", c.epsilon);
        c.omega = j.value("omega", c.omega);
        c.max_tuple = j.value("max_tuple", c.max_tuple);
        c.k = j.value("k", c.k);
        c.k_max = j.value("k_max", c.k_max);
        c.restarts = j.value("restarts", c.restarts);
        c.threads = j.value("threads", c.threads);
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("bad experiment config: ") + e.what());
    }
    if (c.trials < 1) throw InvalidArgument("trials must be at least 1");
    if (!(c.epsilon > 0)) throw InvalidArgument("tolerance must be positive");
    return c;
}

json to_json(const ExperimentConfig& c) {
    return json{{"version", kConfigVersion}, {"experiment", c.experiment}, {"n", c.n},
                {"p", c.p},                  {"c", c.c},                   {"trials", c.trials},
                {"seed", c.seed},            {"epsilon", c.epsilon},       {"omega", c.omega},
                {"max_tuple", c.max_tuple},  {"k", c.k},                   {"k_max", c.k_max},
                {"restarts", c.restarts}};
}

std::string config_hash(const ExperimentConfig& c) {
    const std::string text = to_json(c).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

struct Task {
    std::size_t n = 0;
    double p = 0;
    double c = 0;
    std::size_t trial = 0;
    std::uint64_t seed = 0;
};

using RowFn = std::function<ordered_json(const Task&)>;

std::vector<ordered_json> run_tasks(const std::vector<Task>& tasks, const RowFn& fn, std::size_t threads) {
    std::vector<ordered_json> rows(tasks.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, std::max<std::size_t>(tasks.size(), 1));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            try {
                rows[i] = fn(tasks[i]);
                rows[i]["error"] = "";
            } catch (const CapExceeded& e) {
                ordered_json r;
                r["n"] = tasks[i].n;
                r["p"] = tasks[i].p;
                r["trial"] = tasks[i].trial;
                r["error"] = e.what();
                rows[i] = std::move(r);
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return rows;
}

std::vector<Task> grid(const ExperimentConfig& cfg) {
    if (cfg.n.empty()) throw InvalidArgument("config needs at least one n");
    std::vector<Task> out;
    for (std::size_t n : cfg.n) {
        std::vector<std::pair<double, double>> ps; // (p, c)
        if (!cfg.c.empty())
            for (double c : cfg.c) ps.emplace_back(c / static_cast<double>(n), c);
        else
            for (double p : cfg.p) ps.emplace_back(p, p * static_cast<double>(n));
        if (ps.empty()) throw InvalidArgument("config needs p or c values");
        std::sort(ps.begin(), ps.end());
        for (auto [p, c] : ps) {
            if (!(p >= 0 && p <= 1)) throw InvalidArgument("edge probability out of range");
            for (std::size_t t = 0; t < cfg.trials; ++t)
                out.push_back({n, p, c, t, derive_seed({cfg.seed, n, std::bit_cast<std::uint64_t>(p), t})});
        }
    }
    return out;
}

std::vector<std::string> columns_of(const std::vector<ordered_json>& rows) {
    std::vector<std::string> cols;
    for (const auto& r : rows)
        for (const auto& [k, v] : r.items())
            if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
    return cols;
}

// ---- exp_dense ----

ordered_json dense_row(const ExperimentConfig& cfg, const Task& t) {
    const Graph g = gnp_sample({t.n, t.p, t.seed});
    const auto pred = dense_predictions(t.n, t.p);
    const Certificate ext = extension_lower_bound(g, cfg.k_max);
    const auto k = ext.witness["k"].get<std::size_t>();
    const VertexSet x = search_small_sieve(g, {cfg.restarts, t.seed});
    const auto y = lemmaY_bound(g, x);
    ordered_json r;
    r["n"] = t.n;
    r["p"] = t.p;
    r["trial"] = t.trial;
    r["seed"] = t.seed;
    r["ext_k"] = k;
    r["ext_capped"] = ext.witness["capped"];
    r["ext_bound"] = ext.value;
    r["ext_verified"] = verify_certificate(g, ext).empty() ? "ok" : "failed";
    r["sieve_size"] = x.count();
    r["sieve_bound"] = y ? json(y->value) : json(nullptr);
    r["sieve_verified"] = y && verify_certificate(g, *y).empty() ? "ok" : "failed";
    r["r_lower"] = pred.r_lower;
    r["dense_upper"] = pred.dense_upper;
    r["d0_upper"] = pred.d0_upper;
    const double fl = std::floor(pred.r_lower);
    r["ext_within"] = std::abs(static_cast<double>(k) - fl) <= 2.0;
    r["sieve_within"] = y && static_cast<double>(y->value) >= pred.r_lower + 1 &&
                        static_cast<double>(y->value) <= pred.dense_upper + 6;
    return r;
}

json dense_summary(const std::vector<ordered_json>& rows) {
    json by_n = json::object();
    bool all = true;
    for (const auto& r : rows) {
        if (!r["error"].get<std::string>().empty()) {
            all = false;
            continue;
        }
        const std::string key = std::to_string(r["n"].get<std::size_t>());
        if (!by_n.contains(key)) by_n[key] = json::object();
        auto& s = by_n[key];
        s["rows"] = s.value("rows", 0) + 1;
        s["ext_within"] = s.value("ext_within", 0) + (r["ext_within"].get<bool>() ? 1 : 0);
        s["sieve_within"] = s.value("sieve_within", 0) + (r["sieve_within"].get<bool>() ? 1 : 0);
        s["ext_k_sum"] = s.value("ext_k_sum", 0) + r["ext_k"].get<int>();
        s["sieve_bound_max"] = std::max(s.value("sieve_bound_max", 0), r["sieve_bound"].is_null() ? 0 : r["sieve_bound"].get<int>());
        s["floor_r_lower"] = std::floor(r["r_lower"].get<double>());
        s["dense_upper"] = r["dense_upper"];
        all = all && r["ext_within"].get<bool>() && r["sieve_within"].get<bool>() &&
              r["ext_verified"] == "ok" && r["sieve_verified"] == "ok";
    }
    return {{"by_n", by_n}, {"all_within", all}};
}

// ---- exp_sparse ----

ordered_json sparse_row(const ExperimentConfig& cfg, const Task& t) {
    const Graph g = gnp_sample({t.n, t.p, t.seed});
    const auto census = component_census(g);
    const auto comps = comps_check(g);
    bool only_small = true;
    for (const auto& cl : census.classes) only_small = only_small && cl.order <= 2;
    const double nn = static_cast<double>(t.n);
    ordered_json r;
    r["n"] = t.n;
    r["p"] = t.p;
    r["c"] = t.c;
    r["trial"] = t.trial;
    r["seed"] = t.seed;
    r["edges"] = g.size();
    r["component_classes"] = census.classes.size();
    r["t1"] = census.t(1);
    r["t2"] = census.t(2);
    r["t1_over_n"] = static_cast<double>(census.t(1)) / nn;
    r["lambda1_over_n"] = lambda_k(t.n, t.p, 1) / nn;
    r["lambda2"] = lambda_k(t.n, t.p, 2);
    r["comps_ok"] = comps.has_value();
    r["D"] = comps ? json(comps->value) : json(nullptr);
    r["comps_verified"] = comps ? (verify_certificate(g, *comps).empty() ? "ok" : "failed") : "";
    r["very_sparse"] = t.p * std::pow(nn, 1.5) * cfg.omega < 1.0;
    r["isolated_and_edges_only"] = only_small;
    return r;
}

json sparse_summary(const std::vector<ordered_json>& rows) {
    std::size_t ok = 0, total = 0;
    double sum = 0, pred = 0;
    for (const auto& r : rows) {
        ++total;
        if (!r["error"].get<std::string>().empty() || !r["comps_ok"].get<bool>()) continue;
        ++ok;
        sum += r["t1_over_n"].get<double>();
        pred = r["lambda1_over_n"].get<double>();
    }
    const double mean = ok ? sum / static_cast<double>(ok) : 0.0;
    return {{"rows", total},
            {"comps_ok", ok},
            {"pass_rate", total ? static_cast<double>(ok) / static_cast<double>(total) : 0.0},
            {"mean_t1_over_n", mean},
            {"lambda1_over_n", pred}};
}

// ---- exp_sizes ----

ordered_json sizes_row(const ExperimentConfig& cfg, const Task& t) {
    if (cfg.max_tuple > 3) throw CapExceeded("exp_sizes: tuples longer than 3 are not enumerated");
    const Graph g = gnp_sample({t.n, t.p, t.seed});
    const std::size_t n = t.n;
    std::size_t tuples = 0, bad = 0;
    double worst = 0;
    auto check = [&](std::size_t size, std::size_t i) {
        const double expect = std::pow(t.p, static_cast<double>(i)) * static_cast<double>(n);
        const double dev = std::abs(static_cast<double>(size) - expect);
        ++tuples;
        if (dev > cfg.epsilon * expect) ++bad;
        worst = std::max(worst, expect > 0 ? dev / expect : 0.0);
    };
    // V_x depends only on the set of x, so tuples are counted as sets
    for (Vertex a = 0; a < n; ++a) {
        if (cfg.max_tuple >= 1) check(g.degree(a), 1);
        for (Vertex b = a + 1; b < n && cfg.max_tuple >= 2; ++b) {
            const VertexSet ab = g.neighbors(a) & g.neighbors(b);
            check(ab.count(), 2);
            for (Vertex c = b + 1; c < n && cfg.max_tuple >= 3; ++c) check(ab.intersection_count(g.neighbors(c)), 3);
        }
    }
    ordered_json r;
    r["n"] = n;
    r["p"] = t.p;
    r["trial"] = t.trial;
    r["seed"] = t.seed;
    r["epsilon"] = cfg.epsilon;
    r["tuples"] = tuples;
    r["violations"] = bad;
    r["rate"] = tuples ? static_cast<double>(bad) / static_cast<double>(tuples) : 0.0;
    r["max_rel_dev"] = worst;
    return r;
}

json sizes_summary(const std::vector<ordered_json>& rows) {
    std::size_t tuples = 0, bad = 0;
    for (const auto& r : rows) {
        if (!r["error"].get<std::string>().empty()) continue;
        tuples += r["tuples"].get<std::size_t>();
        bad += r["violations"].get<std::size_t>();
    }
    return {{"tuples", tuples},
            {"violations", bad},
            {"rate", tuples ? static_cast<double>(bad) / static_cast<double>(tuples) : 0.0}};
}

// ---- exp_tenacity ----

ordered_json tenacity_row(const ExperimentConfig& cfg, const Task& t) {
    Rng rng(t.seed);
    const std::size_t n1 = cfg.n[rng() % cfg.n.size()];
    const std::size_t n2 = cfg.n[rng() % cfg.n.size()];
    const Graph g = gnp_sample({n1, t.p, rng()});
    const Graph h = gnp_sample({n2, t.p, rng()});
    const bool iso = is_isomorphic(g, h);
    ordered_json r;
    r["sample"] = t.trial;
    r["p"] = t.p;
    r["seed"] = t.seed;
    r["n1"] = n1;
    r["n2"] = n2;
    r["isomorphic"] = iso;
    if (iso) {
        r["D"] = nullptr;
        r["at_least_k"] = true;
    } else {
        const std::size_t d = distinguishing_depth(g, h);
        r["D"] = d;
        r["at_least_k"] = d >= cfg.k;
    }
    return r;
}

json tenacity_summary(const ExperimentConfig& cfg, const std::vector<ordered_json>& rows) {
    std::size_t hit = 0;
    for (const auto& r : rows) hit += r.value("at_least_k", false) ? 1 : 0;
    return {{"samples", rows.size()},
            {"k", cfg.k},
            {"at_least_k", hit},
            {"fraction", rows.empty() ? 0.0 : static_cast<double>(hit) / static_cast<double>(rows.size())},
            {"note", "consistency direction only; the asymptotic growth is not checkable at this scale"}};
}

// ---- exp_oracle ----

ResultTable oracle_table(const ExperimentConfig& cfg) {
    const std::size_t max_n = *std::max_element(cfg.n.begin(), cfg.n.end());
    if (max_n > 6) throw InvalidArgument("exp_oracle: the naive recursion is limited to 6 vertices");
    const auto family = enumerate_graphs(1, max_n);
    std::vector<Task> tasks;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = i + 1; j < family.size(); ++j) {
            pairs.emplace_back(i, j);
            tasks.push_back({0, 0, 0, pairs.size() - 1, 0});
        }
    auto rows = run_tasks(
        tasks,
        [&](const Task& t) {
            const auto [i, j] = pairs[t.trial];
            const Graph& g = family[i];
            const Graph& h = family[j];
            const std::size_t fast = distinguishing_depth(g, h);
            const std::size_t slow = naive::distinguishing_depth(g, h);
            ordered_json r;
            r["pair"] = t.trial;
            r["g"] = canonical_key(g);
            r["h"] = canonical_key(h);
            r["engine"] = fast;
            r["naive"] = slow;
            r["match"] = fast == slow;
            return r;
        },
        cfg.threads);
    std::size_t mismatches = 0;
    for (const auto& r : rows) mismatches += r.value("match", false) ? 0 : 1;
    ResultTable out;
    out.rows = std::move(rows);
    out.summary = {{"pairs", out.rows.size()}, {"graphs", family.size()}, {"mismatches", mismatches}};
    return out;
}

} // namespace

ResultTable run_experiment(const ExperimentConfig& cfg) {
    ResultTable out;
    const std::string& id = cfg.experiment;
    if (id == "exp_oracle") {
        if (cfg.n.empty()) throw InvalidArgument("config needs at least one n");
        out = oracle_table(cfg);
    } else if (id == "exp_dense") {
        out.rows = run_tasks(grid(cfg), [&](const Task& t) { return dense_row(cfg, t); }, cfg.threads);
        out.summary = dense_summary(out.rows);
    } else if (id == "exp_sparse") {
        out.rows = run_tasks(grid(cfg), [&](const Task& t) { return sparse_row(cfg, t); }, cfg.threads);
        out.summary = sparse_summary(out.rows);
    } else if (id == "exp_sizes") {
        out.rows = run_tasks(grid(cfg), [&](const Task& t) { return sizes_row(cfg, t); }, cfg.threads);
        out.summary = sizes_summary(out.rows);
    } else if (id == "exp_tenacity") {
        if (cfg.p.empty()) throw InvalidArgument("exp_tenacity needs p");
        std::vector<Task> tasks;
        for (std::size_t t = 0; t < cfg.trials; ++t)
            tasks.push_back({0, cfg.p[0], 0, t, derive_seed({cfg.seed, std::bit_cast<std::uint64_t>(cfg.p[0]), t})});
        out.rows = run_tasks(tasks, [&](const Task& t) { return tenacity_row(cfg, t); }, cfg.threads);
        out.summary = tenacity_summary(cfg, out.rows);
    } else {
        throw InvalidArgument("unknown experiment id '" + id + "'");
    }
    out.experiment = id;
    out.config_hash = config_hash(cfg);
    for (auto& r : out.rows) r["config_hash"] = out.config_hash;
    out.columns = columns_of(out.rows);
    return out;
}

std::string csv_cell(const ordered_json& v) {
    std::string s;
    if (v.is_null()) s = "";
    else if (v.is_string()) s = v.get<std::string>();
    else s = v.dump();
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

void write_csv(std::ostream& out, const ResultTable& t) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << csv_cell(t.columns[i]);
    out << "\r\n";
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
            if (i) out << ',';
            if (r.contains(t.columns[i])) out << csv_cell(r.at(t.columns[i]));
        }
        out << "\r\n";
    }
}

void write_jsonl(std::ostream& out, const ResultTable& t) {
    for (const auto& r : t.rows) {
        ordered_json line;
        for (const auto& c : t.columns) line[c] = r.contains(c) ? r.at(c) : ordered_json(nullptr);
        out << line.dump() << '\n';
    }
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> out;
    std::vector<std::string> rec;
    std::string field;
    bool quoted = false, any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += ch;
            }
            continue;
        }
        if (ch == '"') {
            quoted = true;
            any = true;
        } else if (ch == ',') {
            rec.push_back(std::move(field));
            field.clear();
            any = true;
        } else if (ch == '\r' || ch == '\n') {
            if (ch == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            rec.push_back(std::move(field));
            field.clear();
            out.push_back(std::move(rec));
            rec.clear();
            any = false;
        } else {
            field += ch;
            any = true;
        }
    }
    if (quoted) throw ParseError("csv: unterminated quoted field", text.size());
    if (any) {
        rec.push_back(std::move(field));
        out.push_back(std::move(rec));
    }
    return out;
}

} // namespace folab
