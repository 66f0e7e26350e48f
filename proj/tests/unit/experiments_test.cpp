#include <sstream>

#include "doctest.h"
#include "folab/error.hpp"
#include "folab/experiments.hpp"

using namespace folab;

namespace {

ExperimentConfig small_sparse() {
    return config_from_json({{"experiment", "exp_sparse"}, {"n", {400}}, {"c", {0.5}}, {"trials", 6}, {"seed", 3}});
}

std::string as_csv(const ResultTable& t) {
    std::ostringstream os;
    write_csv(os, t);
    return os.str();
}

} // namespace

TEST_CASE("config parsing and hashing") {
    const auto c = small_sparse();
    CHECK(c.trials == 6);
    CHECK(config_hash(c) == config_hash(small_sparse()));
    auto d = c;
    d.seed = 4;
    CHECK(config_hash(c) != config_hash(d));
    auto threads = c;
    threads.threads = 3;
    CHECK(config_hash(c) == config_hash(threads));
    CHECK_THROWS_AS(config_from_json({{"experiment", "exp_sparse"}, {"trials", 0}}), InvalidArgument);
    CHECK_THROWS_AS(config_from_json({{"experiment", "x"}, {"version", 2}}), InvalidArgument);
    CHECK_THROWS_AS(run_experiment(config_from_json({{"experiment", "exp_nope"}, {"n", {5}}})), InvalidArgument);
}

TEST_CASE("reruns are byte-identical regardless of thread count") {
    auto one = small_sparse();
    one.threads = 1;
    auto four = small_sparse();
    four.threads = 4;
    const std::string a = as_csv(run_experiment(one));
    CHECK(a == as_csv(run_experiment(four)));
    CHECK(a == as_csv(run_experiment(one)));
}

TEST_CASE("csv round-trips through the json form") {
    const auto t = run_experiment(small_sparse());
    std::ostringstream js;
    write_jsonl(js, t);
    const auto csv = parse_csv(as_csv(t));
    REQUIRE(csv.size() == t.rows.size() + 1);
    CHECK(csv[0] == t.columns);
    std::istringstream lines(js.str());
    std::string line;
    std::size_t i = 1;
    while (std::getline(lines, line)) {
        const auto row = nlohmann::ordered_json::parse(line);
        std::size_t col = 0;
        for (const auto& [k, v] : row.items()) {
            CHECK(k == t.columns[col]);
            std::string cell = csv_cell(v);
            if (!cell.empty() && cell.front() == '"') cell = parse_csv(cell)[0][0];
            CHECK(csv[i][col] == cell);
            ++col;
        }
        ++i;
    }
    CHECK(parse_csv("a,\"b,\"\"c\"\"\"\r\n1,2\r\n") ==
          std::vector<std::vector<std::string>>{{"a", "b,\"c\""}, {"1", "2"}});
}

TEST_CASE("experiment rows carry verified certificates") {
    const auto t = run_experiment(small_sparse());
    for (const auto& r : t.rows) {
        CHECK(r["config_hash"] == t.config_hash);
        if (r["comps_ok"].get<bool>()) CHECK(r["comps_verified"] == "ok");
    }
    const auto dense = run_experiment(
        config_from_json({{"experiment", "exp_dense"}, {"n", {24}}, {"p", {0.5}}, {"trials", 3}, {"seed", 1}}));
    for (const auto& r : dense.rows) {
        CHECK(r["ext_verified"] == "ok");
        CHECK(r["sieve_verified"] == "ok");
    }
}

TEST_CASE("oracle, sizes and tenacity experiments") {
    const auto o = run_experiment(config_from_json({{"experiment", "exp_oracle"}, {"n", {4}}}));
    CHECK(o.summary["graphs"] == 18);
    CHECK(o.summary["mismatches"] == 0);
    const auto s = run_experiment(
        config_from_json({{"experiment", "exp_sizes"}, {"n", {128}}, {"p", {0.5}}, {"trials", 2}, {"epsilon", 0.5}}));
    CHECK(s.summary["tuples"] == 2 * (128 + 128 * 127 / 2));
    const auto t = run_experiment(
        config_from_json({{"experiment", "exp_tenacity"}, {"n", {4, 5}}, {"p", {0.5}}, {"trials", 20}}));
    CHECK(t.rows.size() == 20);
    CHECK(t.summary["fraction"].get<double>() >= 0.0);
}
