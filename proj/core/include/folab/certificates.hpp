#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "folab/graph.hpp"

namespace folab {

/// Work budget (bitset word operations) of the exhaustive extension check.
inline constexpr double kExtensionWorkCap = 1e9;

/// Largest number of u-sets S_u(W) enumerates exactly.
inline constexpr double kSiftedUCap = 2e6;

enum class CertKind { ExtensionLower, LemmaY, DetD0, Half, Lupper, Comps };
enum class Metric { D, D0, D1, D2 };
enum class Relation { Ge, Le, Eq };

const char* to_string(CertKind k);
const char* to_string(Metric m);
const char* to_string(Relation r);

/// A bound on one of D, D_0, D_1, D_2 for a host graph together with the
/// data needed to re-check it. Only exact computations produce these.
struct Certificate {
    CertKind kind;
    Metric metric;
    Relation rel;
    std::size_t value = 0;
    nlohmann::json witness;
    std::string mode = "exact";
};

nlohmann::json to_json(const Certificate& c);
Certificate certificate_from_json(const nlohmann::json& j);

/// Re-checks `c` against `g` using only the payload. Returns an empty
/// string on success, otherwise the first failed check.
std::string verify_certificate(const Graph& g, const Certificate& c);

nlohmann::json to_json(const VertexSet& s);
VertexSet vertex_set_from_json(const nlohmann::json& j, std::size_t universe);

// ---- extension property ----

struct ExtensionResult {
    bool holds = true;
    /// First (A, B) with no vertex joined to all of A and none of B.
    std::optional<std::pair<VertexSet, VertexSet>> violation;
    std::string mode = "exact";
};

/// Estimated exhaustive cost for all (A, B) with |A| + |B| <= k.
double extension_work(std::size_t n, std::size_t k);

/// Exhaustive over disjoint (A, B), |A| + |B| <= k. When the work estimate
/// exceeds kExtensionWorkCap, `samples` random pairs are tested instead and
/// the result is flagged "sampled"; with samples == 0 it throws CapExceeded.
ExtensionResult has_extension_property(const Graph& g, std::size_t k, std::size_t samples = 0,
                                       std::uint64_t seed = 0);

/// Largest k <= k_max whose property holds exactly; bound D >= k + 2.
/// Stops early when the next k is beyond the work cap (witness "capped").
Certificate extension_lower_bound(const Graph& g, std::size_t k_max);

// ---- similarity and sieves ----

struct SimilarityPartition {
    VertexSet base;
    std::vector<VertexSet> classes; ///< ordered by smallest member
};

SimilarityPartition similarity_partition(const Graph& g, const VertexSet& x);

/// S(X): members of singleton classes of the X-similarity.
VertexSet sifted(const Graph& g, const VertexSet& x);
bool is_sieve(const Graph& g, const VertexSet& x);

/// D_1 <= |X| + 3 when S(S(X)) = V.
std::optional<Certificate> lemmaY_bound(const Graph& g, const VertexSet& x);

struct SieveSearch {
    std::size_t restarts = 8;
    std::uint64_t seed = 0;
};

/// Smallest X found with S(S(X)) = V: greedy growth by most new sifted
/// vertices (lowest id on ties) from an empty start and from random first
/// vertices, each followed by a removal pass. Deterministic per seed.
VertexSet search_small_sieve(const Graph& g, const SieveSearch& opts = {});

/// DetD0: X a sieve, G[X] asymmetric, and G[X] has a single induced copy
/// in G; bound D_0 <= |X| + 2. Throws CapExceeded when n > 256 and
/// |X| > 12.
std::optional<Certificate> detD0_bound(const Graph& g, const VertexSet& x);

// ---- S_u(W) and the two-alternation bound ----

/// Exact S_u(W). Throws CapExceeded beyond kSiftedUCap u-sets.
VertexSet sifted_u(const Graph& g, const VertexSet& w, std::size_t u);

/// Heuristic S_u(W) over `samples` random u-sets; a subset of the exact
/// answer. Never feeds a certificate.
VertexSet sifted_u_sampled(const Graph& g, const VertexSet& w, std::size_t u, std::size_t samples,
                           std::uint64_t seed);

/// Y = S_u(W); if Y u W is a sieve and Y-vertices have distinct traces on
/// W, bound D_2 <= u + |W| + 4.
std::optional<Certificate> lemma_half_bound(const Graph& g, const VertexSet& w, std::size_t u);

/// The default W for lemma_half_bound: A = `a` (k/2 vertices), u = |A|;
/// when the (A u S_u(A))-similarity has exactly one two-element class {x, y}
/// and singletons otherwise, W = A u {x} (x the smaller); with no such
/// class W = A. Returns nullopt when the partition has any other shape.
std::optional<VertexSet> half_recipe_w(const Graph& g, const VertexSet& a);

// ---- recursive upper bound ----

struct LupperResult {
    std::optional<Certificate> certificate;
    std::string failed;     ///< "condition 1", "condition 3a", "condition 3b", "condition 4"
    nlohmann::json witness; ///< data for the failed condition
};

/// Smallest certified upper bound on D for `g` from LemmaY and DetD0
/// sub-certificates (exhaustive over X for order <= 12, sieve search
/// otherwise).
std::optional<Certificate> best_upper_certificate(const Graph& g, const SieveSearch& opts = {});

/// Checks the recursive conditions for D(G) <= l + l0. Condition 1 is
/// certified on each residual by a sub-certificate of value <= l0. For
/// l <= 1 only condition 1 is checked. Requires l <= 2 and n <= 64.
LupperResult lupper_check(const Graph& g, std::size_t l, std::size_t l0, const SieveSearch& opts = {});

/// lupper_check with l0 the smallest value (at least 3) for which every
/// residual has a sub-certificate.
LupperResult lupper_auto(const Graph& g, std::size_t l, const SieveSearch& opts = {});

// ---- very sparse graphs ----

/// Edgeless: D = v + 1. Otherwise, when every component class F has
/// c_F + v(F) <= t_1 + 1: D = t_1 + 2.
std::optional<Certificate> comps_check(const Graph& g);

} // namespace folab
