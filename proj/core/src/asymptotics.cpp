#include "folab/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "folab/error.hpp"

namespace folab {

double bisect(const std::function<double(double)>& f, double a, double b, double tol) {
    double fa = f(a);
    const double fb = f(b);
    if (fa == 0) return a;
    if (fb == 0) return b;
    if ((fa > 0) == (fb > 0)) throw InvalidArgument("bisection: interval does not bracket a root");
    for (int it = 0; it < 400; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (std::abs(fm) < tol || m == a || m == b) return m;
        if ((fm > 0) == (fa > 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

DensePredictions dense_predictions(std::size_t n, double p) {
    if (!(p > 0 && p <= 0.5)) throw InvalidArgument("dense predictions need 0 < p <= 1/2");
    if (n < 3) throw InvalidArgument("dense predictions need n >= 3");
    const double q = 1 - p;
    const double base = std::log(1 / p);
    auto lg = [&](double x) { return std::log(x) / base; };
    const double ln_n = std::log(static_cast<double>(n));
    const double entropy = -p * std::log(p) - q * std::log(q);
    DensePredictions d;
    d.r_lower = lg(static_cast<double>(n)) - 2 * lg(ln_n) + lg(base);
    d.dense_upper = lg(static_cast<double>(n)) - 2 * lg(ln_n) + 2 * std::log(ln_n) / entropy;
    d.d0_upper = 2 * ln_n / -std::log(p * p + q * q);
    return d;
}

double log_f_nk(double n, std::size_t k) {
    const double h = static_cast<double>(k / 2);
    const double kk = static_cast<double>(k);
    if (n <= kk) return -std::numeric_limits<double>::infinity();
    return std::lgamma(n - h + 1) - std::lgamma(h + 1) - std::lgamma(n - kk + 1) + std::log(n - kk) +
           (n - kk - 1) * std::log1p(-std::ldexp(1.0, -static_cast<int>(k)));
}

double f_nk(double n, std::size_t k) { return std::exp(log_f_nk(n, k)); }

HalfTuning half_tuning(std::size_t k) {
    if (k % 2 != 0) throw InvalidArgument("half tuning needs an even k");
    if (k < 4) throw InvalidArgument("half tuning needs k >= 4");
    const auto kk = static_cast<std::uint64_t>(k);
    auto rising = [&](std::uint64_t n) {
        return log_f_nk(static_cast<double>(n + 1), k) > log_f_nk(static_cast<double>(n), k);
    };
    auto below = [&](std::uint64_t n) {
        return log_f_nk(static_cast<double>(n), k) <= std::log(10 * std::log2(static_cast<double>(n)));
    };
    // f rises then decays; find the peak, then the crossing on the decaying side.
    std::uint64_t hi = kk + 2;
    while (rising(hi)) hi *= 2;
    std::uint64_t lo = kk + 1;
    while (lo < hi) {
        const std::uint64_t m = lo + (hi - lo) / 2;
        if (rising(m)) lo = m + 1;
        else hi = m;
    }
    const std::uint64_t peak = lo;
    hi = peak;
    while (!below(hi)) hi *= 2;
    lo = peak;
    while (lo < hi) {
        const std::uint64_t m = lo + (hi - lo) / 2;
        if (below(m)) hi = m;
        else lo = m + 1;
    }
    HalfTuning t;
    t.k = k;
    t.n_star = lo;
    const double n = static_cast<double>(lo);
    t.f_nk = f_nk(n, k);
    t.mu = t.f_nk;
    const double h = static_cast<double>(k / 2);
    t.M = std::exp(std::lgamma(n - h + 1) - std::lgamma(h + 1) - std::lgamma(n - static_cast<double>(k) + 1)) *
          (n - static_cast<double>(k));
    t.k_bound = std::log2(n) - 2 * std::log2(std::log(n)) + std::log2(std::log(2.0)) + 1;
    t.k_bound_ok = static_cast<double>(k) <= t.k_bound;
    t.ratio = t.f_nk / (10 * std::log2(n));
    return t;
}

double lambda_k(std::size_t n, double p, std::size_t k) {
    if (k < 1) throw InvalidArgument("lambda_k needs k >= 1");
    if (!(p >= 0 && p <= 1)) throw InvalidArgument("lambda_k needs 0 <= p <= 1");
    if (k > n) return 0.0;
    const double q = 1 - p;
    const double nn = static_cast<double>(n), kk = static_cast<double>(k);
    double lg = std::lgamma(nn + 1) - std::lgamma(kk + 1) - std::lgamma(nn - kk + 1) + (kk - 2) * std::log(kk);
    auto power = [&](double base, double e) {
        if (e == 0) return true;
        if (base == 0) return false;
        lg += e * std::log(base);
        return true;
    };
    if (!power(p, kk - 1)) return 0.0;
    if (!power(q, kk * (nn - kk) + kk * (kk - 1) / 2 - kk + 1)) return 0.0;
    return std::exp(lg);
}

double f_k(double c, std::size_t k) {
    if (k < 1) throw InvalidArgument("f_k needs k >= 1");
    const double kk = static_cast<double>(k);
    if (c == 0) return k == 1 ? 1.0 : 0.0;
    return std::exp((kk - 1) * std::log(c) + (kk - 2) * std::log(kk) - std::lgamma(kk + 1) - c * kk);
}

double alpha_equation(double a) { return std::exp(-a + a * std::exp(-a)) + 1 - std::exp(a * std::exp(-a)); }

double alpha_root() { return bisect(alpha_equation, 1.0, 2.0); }

GiantSolution giant_s(double c) {
    if (!(c > 0)) throw InvalidArgument("giant_s needs c > 0");
    if (c <= 1) return {c, true};
    const double target = c * std::exp(-c);
    return {bisect([&](double s) { return s * std::exp(-s) - target; }, 0.0, 1.0, 1e-15), false};
}

double c0_equation(double c) { return 1 - giant_s(c).s / c - c * std::exp(-2 * c) / 2; }

double c0_root() { return bisect(c0_equation, 1.0001, 1.5); }

std::size_t log_star(const BigInt& n) {
    if (n < 1) throw InvalidArgument("log_star needs n >= 1");
    // floor(log2) keeps the count exact since every threshold is an integer
    BigInt x = n;
    std::size_t i = 0;
    while (x >= 1) {
        x = x == 1 ? BigInt(0) : BigInt(boost::multiprecision::msb(x));
        ++i;
    }
    return i;
}

BigInt tower(std::size_t k) {
    if (k > kMaxTowerHeight)
        throw CapExceeded("tower(" + std::to_string(k) + ") is too large to represent");
    BigInt t = 1;
    for (std::size_t i = 0; i < k; ++i) {
        BigInt next = 0;
        boost::multiprecision::bit_set(next, static_cast<unsigned>(t));
        t = next;
    }
    return t;
}

std::optional<BigInt> F_bound(std::size_t k, const FBoundConstants& c) {
    if (k + c.c0 > kMaxTowerHeight) return std::nullopt;
    return tower(k + c.c0);
}

std::size_t logstar_lower_bound(const BigInt& n, const FBoundConstants& c) {
    std::size_t best = 0;
    for (std::size_t k = 0;; ++k) {
        auto f = F_bound(k, c);
        if (!f || *f * c.margin >= n) break;
        best = k;
    }
    return best;
}

nlohmann::json prediction_report(std::size_t n, double p, const PredictionOptions& opts) {
    using nlohmann::json;
    if (n < 1) throw InvalidArgument("prediction report needs n >= 1");
    if (!(p >= 0 && p <= 1)) throw InvalidArgument("edge probability must lie in [0, 1]");
    json r;
    r["n"] = n;
    r["p"] = p;
    r["note"] = "asymptotic, uncontrolled error at finite n";
    if (p > 0 && p <= 0.5 && n >= 3) {
        const auto d = dense_predictions(n, p);
        r["r_lower"] = d.r_lower;
        r["dense_upper"] = d.dense_upper;
        r["d0_upper"] = d.d0_upper;
        r["dense_bracket"] = {d.r_lower - opts.constant_slack, d.dense_upper};
    }
    if (opts.k) {
        const auto t = half_tuning(*opts.k);
        r["n_star"] = t.n_star;
        r["f_nk"] = t.f_nk;
        r["mu"] = t.mu;
        r["M"] = t.M;
        r["k_bound"] = t.k_bound;
        r["k_bound_ok"] = t.k_bound_ok;
    }
    const double c = p * static_cast<double>(n);
    r["c"] = c;
    json lambda = json::object(), fk = json::object();
    for (std::size_t k = 1; k <= opts.max_tree_order; ++k) {
        lambda[std::to_string(k)] = lambda_k(n, p, k);
        fk[std::to_string(k)] = f_k(c, k);
    }
    r["lambda"] = lambda;
    r["f_k"] = fk;
    r["alpha"] = alpha_root();
    r["c0"] = c0_root();
    if (c > 0) {
        const auto g = giant_s(c);
        r["s_of_c"] = g.s;
        r["s_by_convention"] = g.by_convention;
        r["giant_fraction"] = 1 - g.s / c;
    }
    r["t2_prediction"] = c * std::exp(-2 * c) / 2 * static_cast<double>(n);
    const std::size_t ls = log_star(BigInt(n));
    r["log_star"] = ls;
    r["tower"] = tower(ls).str();
    const std::size_t lb = logstar_lower_bound(BigInt(n), opts.f_bound);
    r["logstar_lower_bound"] = lb;
    if (auto f = F_bound(lb, opts.f_bound)) r["F_bound"] = f->str();
    return r;
}

} // namespace folab
