#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

namespace folab {

using BigInt = boost::multiprecision::cpp_int;

/// Largest k tower() evaluates; tower(6) has 2^65536 binary digits.
inline constexpr std::size_t kMaxTowerHeight = 5;

/// Plain bisection on [a, b] until |f| < tol or the bracket collapses.
/// Throws InvalidArgument when f(a) and f(b) have the same sign.
double bisect(const std::function<double(double)>& f, double a, double b, double tol = 1e-12);

// ---- dense regime (o(1) and O(1) terms dropped) ----

struct DensePredictions {
    double r_lower = 0;     ///< log n - 2 log ln n + log ln(1/p), logs base 1/p
    double dense_upper = 0; ///< log n - 2 log ln n + 2 ln ln n / H(p)
    double d0_upper = 0;    ///< 2 ln n / -ln(p^2 + q^2)
};

/// Requires 0 < p <= 1/2 and n >= 3.
DensePredictions dense_predictions(std::size_t n, double p);

// ---- two-alternation tuning ----

/// ln f(n, k), f(n,k) = C(n - k/2, k/2) (n - k) (1 - 2^-k)^(n-k-1).
double log_f_nk(double n, std::size_t k);
double f_nk(double n, std::size_t k);

struct HalfTuning {
    std::size_t k = 0;
    std::uint64_t n_star = 0; ///< smallest n past the peak of f with f(n,k) <= 10 log2 n
    double f_nk = 0;
    double mu = 0;            ///< equals f(n*, k)
    double M = 0;             ///< C(n* - k/2, k/2) (n* - k)
    double k_bound = 0;       ///< log2 n - 2 log2 ln n + log2 ln 2 + 1 at n*
    bool k_bound_ok = false;  ///< k <= k_bound
    double ratio = 0;         ///< f(n*, k) / (10 log2 n*)
};

/// Requires k even and k >= 4.
HalfTuning half_tuning(std::size_t k);

// ---- sparse regime ----

/// E[t_k] = C(n,k) k^(k-2) p^(k-1) q^(k(n-k) + C(k,2) - k + 1).
double lambda_k(std::size_t n, double p, std::size_t k);
/// c^(k-1) k^(k-2) / (k! e^(ck)).
double f_k(double c, std::size_t k);

/// e^(-a + a e^-a) + 1 - e^(a e^-a).
double alpha_equation(double a);
double alpha_root();

struct GiantSolution {
    double s = 0;
    bool by_convention = false; ///< c <= 1, s = c returned
};

/// Solution of s e^-s = c e^-c in (0, 1].
GiantSolution giant_s(double c);
/// 1 - s(c)/c - c e^(-2c) / 2.
double c0_equation(double c);
double c0_root();

// ---- log* and towers ----

std::size_t log_star(const BigInt& n);
/// tower(0) = 1, tower(k) = 2^tower(k-1). Throws CapExceeded for k > kMaxTowerHeight.
BigInt tower(std::size_t k);

struct FBoundConstants {
    std::size_t c0 = 1;
    std::size_t margin = 1;
};

/// tower(k + c0); nullopt when that tower is beyond kMaxTowerHeight.
std::optional<BigInt> F_bound(std::size_t k, const FBoundConstants& c = {});
/// max k with F_bound(k) * margin < n, 0 when there is none.
std::size_t logstar_lower_bound(const BigInt& n, const FBoundConstants& c = {});

// ---- combined report ----

struct PredictionOptions {
    std::optional<std::size_t> k; ///< even k >= 4 adds the tuning block
    double constant_slack = 1.0;  ///< C in the bracket [r_lower - C, dense_upper]
    std::size_t max_tree_order = 4;
    FBoundConstants f_bound{};
};

/// Every formula evaluated at (n, p). Dense fields are present for
/// 0 < p <= 1/2; sparse fields use c = p n. Big integers are decimal strings.
nlohmann::json prediction_report(std::size_t n, double p, const PredictionOptions& opts = {});

} // namespace folab
