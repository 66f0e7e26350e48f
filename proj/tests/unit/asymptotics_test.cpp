#include <cmath>

#include "doctest.h"
#include "folab/asymptotics.hpp"
#include "folab/error.hpp"

using namespace folab;

TEST_CASE("dense formulas") {
    const auto d = dense_predictions(std::size_t{1} << 20, 0.5);
    const double ln_n = 20 * std::log(2.0);
    CHECK(d.r_lower == doctest::Approx(20 - 2 * std::log2(ln_n) + std::log2(std::log(2.0))).epsilon(1e-12));
    CHECK(d.r_lower == doctest::Approx(11.885).epsilon(1e-3));
    CHECK(d.d0_upper == doctest::Approx(2 * ln_n / std::log(2.0)));
    double prev = dense_predictions(100, 0.5).r_lower;
    for (std::size_t n = 101; n < 5000; n += 7) {
        const auto x = dense_predictions(n, 0.5);
        CHECK(x.r_lower > prev);
        prev = x.r_lower;
    }
    CHECK_THROWS_AS(dense_predictions(2, 0.5), InvalidArgument);
    CHECK_THROWS_AS(dense_predictions(10, 0.7), InvalidArgument);
}

TEST_CASE("f(n,k) and tuning") {
    CHECK(f_nk(6, 2) == doctest::Approx(8.4375).epsilon(1e-12));
    for (std::size_t k : {8, 10, 12, 14}) {
        const auto t = half_tuning(k);
        CHECK(t.ratio >= 0.5);
        CHECK(t.ratio <= 2.0);
        CHECK(f_nk(static_cast<double>(t.n_star - 1), k) > 10 * std::log2(static_cast<double>(t.n_star - 1)));
        const double ref = std::log(2.0) / 2 * k * k * std::ldexp(1.0, static_cast<int>(k));
        CHECK(t.n_star / ref <= 4.0);
        CHECK(t.n_star / ref >= 0.25);
        CHECK(t.mu == doctest::Approx(t.f_nk));
    }
    CHECK_THROWS_AS(half_tuning(7), InvalidArgument);
    CHECK_THROWS_AS(half_tuning(2), InvalidArgument);
}

TEST_CASE("tree expectations") {
    const std::size_t n = 50;
    const double p = 0.03, q = 1 - p;
    CHECK(lambda_k(n, p, 1) == doctest::Approx(n * std::pow(q, n - 1)).epsilon(1e-10));
    CHECK(lambda_k(n, p, 2) == doctest::Approx(n * (n - 1) / 2.0 * p * std::pow(q, 2 * n - 4)).epsilon(1e-10));
    for (double c : {0.2, 0.6, 1.0, 1.19}) {
        for (std::size_t k = 1; k < 40; ++k) CHECK(f_k(c, k + 1) < f_k(c, k));
        for (std::size_t k = 2; k < 40; ++k) CHECK(f_k(c, 1) > f_k(c, k));
        CHECK(f_k(c, 1) == doctest::Approx(std::exp(-c)));
    }
    const std::size_t big = 100000;
    for (std::size_t k = 1; k <= 4; ++k) {
        const double ratio = lambda_k(big, 0.8 / big, k) / big;
        CHECK(std::abs(ratio / f_k(0.8, k) - 1) < 0.01);
    }
}

TEST_CASE("constants") {
    const double a = alpha_root();
    CHECK(std::abs(a - 1.1918) <= 5e-4);
    CHECK(std::abs(alpha_equation(a)) < 1e-10);
    CHECK(giant_s(1.0).s == 1.0);
    CHECK(giant_s(0.5).by_convention);
    for (double c : {1.2, 2.0, 3.0}) {
        const double s = giant_s(c).s;
        CHECK(s > 0);
        CHECK(s < 1);
        CHECK(std::abs(s * std::exp(-s) - c * std::exp(-c)) < 1e-10);
    }
    const double c0 = c0_root();
    CHECK(std::abs(c0 - 1.034) <= 5e-3);
    CHECK(std::abs(c0_equation(c0)) < 1e-10);
    CHECK_THROWS_AS(bisect([](double x) { return x * x + 1; }, -1, 1), InvalidArgument);
}

TEST_CASE("log star and towers") {
    CHECK(log_star(16) == 4);
    CHECK(log_star(1) == 1);
    CHECK(tower(0) == 1);
    CHECK(tower(4) == 65536);
    for (std::size_t k = 1; k <= 5; ++k) CHECK(log_star(tower(k)) == k + 1);
    std::size_t prev = 0;
    for (unsigned n = 1; n < 3000; ++n) {
        const std::size_t ls = log_star(n);
        CHECK(ls >= prev);
        prev = ls;
        CHECK(log_star(BigInt(1) << n) == ls + 1);
    }
    CHECK_THROWS_AS(tower(6), CapExceeded);
    CHECK(logstar_lower_bound(2) == 0);
    CHECK(logstar_lower_bound(5) == 1);
    CHECK(logstar_lower_bound(17) == 2);
    CHECK(logstar_lower_bound(tower(5)) == 3);
}

TEST_CASE("prediction report") {
    const auto r = prediction_report(1000, 0.5, {.k = 8});
    CHECK(r.contains("r_lower"));
    CHECK(r["n_star"].get<std::uint64_t>() > 1000);
    CHECK(r["log_star"] == 4);
    CHECK(r["tower"] == "65536");
    const auto sparse = prediction_report(3000, 0.5 / 3000);
    CHECK(sparse["s_by_convention"] == true);
    CHECK(sparse["lambda"]["1"].get<double>() / 3000 == doctest::Approx(std::exp(-0.5)).epsilon(1e-3));
}
