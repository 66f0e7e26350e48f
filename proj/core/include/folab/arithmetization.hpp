#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "folab/graph.hpp"

namespace folab {

/// Largest triple count hypergraph_of_witness enumerates.
inline constexpr std::size_t kTripleCap = 1'000'000;
/// Largest C(|A|, 3) is_universal accepts (2^20 hypergraphs).
inline constexpr std::size_t kUniversalTripleCap = 20;
inline constexpr std::size_t kMaxFixtureS = 8;
/// Constant of the depth recurrence.
inline constexpr std::size_t kDescribeDepthC = 5;

using Triple = std::array<Vertex, 3>; ///< ascending
using Pair = std::array<Vertex, 2>;   ///< ascending

struct Hypergraph3 {
    std::vector<Vertex> ground; ///< ascending
    std::set<Triple> triples;

    bool contains(Vertex a, Vertex b, Vertex c) const;
    /// H_{w,a}: pairs P with P u {a} in H.
    std::set<Pair> link(Vertex a) const;
    /// H_{w,a,b}: vertices y with {a, b, y} in H.
    std::set<Vertex> link(Vertex a, Vertex b) const;
    friend bool operator==(const Hypergraph3&, const Hypergraph3&) = default;
};

/// Triples T of `ground` such that no vertex outside `excl` is adjacent to
/// every member of T u {w}. Throws CapExceeded past kTripleCap triples.
Hypergraph3 hypergraph_of_witness(const Graph& g, const VertexSet& ground, const VertexSet& excl, Vertex w);

/// z outside W u A with exactly four A-neighbours and an A-trace no other
/// vertex outside W u A shares.
VertexSet compute_B(const Graph& g, const VertexSet& w, const VertexSet& a);

/// Every hypergraph on A occurs as some H_v(A), v outside W u A.
bool is_universal(const Graph& g, const VertexSet& w, const VertexSet& a);
/// The H_v(B), v outside W u A u B, are pairwise distinct.
bool is_splitting(const Graph& g, const VertexSet& w, const VertexSet& a, const VertexSet& b);

/// Size sanity warnings: a universal A should have |A|^3 = O(ln n) and a
/// splitting B should have |B|^3 = Omega(ln n); K is the slack factor.
std::vector<std::string> size_advisories(std::size_t n, std::size_t a_size, bool universal, std::size_t b_size,
                                         bool splitting, double slack = 8.0);

// ---- labelled arithmetic ----

struct ArithLabeling {
    Vertex a = 0, b = 0;
    std::vector<Vertex> x, y, z; ///< x[i-1] is x_i
    std::size_t s() const { return x.size(); }
};

using ArithWitnesses = std::array<Vertex, 7>;

/// The seven patterns in label space. Ground positions: a = 0, b = 1,
/// x_i = 1 + i, y_i = 1 + s + i, z_i = 1 + 2s + i.
struct TargetHypergraphs {
    std::size_t s = 0;
    std::set<Triple> h1;      ///< {x_i, y_i, z_i}
    std::set<Vertex> h2;      ///< x_i, as H_{w2,a,b}
    std::set<Vertex> h3;      ///< y_i, as H_{w3,a,b}
    std::set<Pair> h4;        ///< {x_i, y_j}, i <= j, as H_{w4,a}
    std::set<Triple> h5;      ///< {x_i, y_j, z_{i+j}}
    std::set<Triple> h6;      ///< {x_i, y_j, z_{ij}}
    std::set<Pair> h7;        ///< {x_i, y_{2^i}}, as H_{w7,a}

    Vertex a() const { return 0; }
    Vertex b() const { return 1; }
    Vertex x(std::size_t i) const { return static_cast<Vertex>(1 + i); }
    Vertex y(std::size_t i) const { return static_cast<Vertex>(1 + s + i); }
    Vertex z(std::size_t i) const { return static_cast<Vertex>(1 + 2 * s + i); }
};

TargetHypergraphs target_hypergraphs(std::size_t s);

struct ClauseCheck {
    std::string name;
    bool ok = true;
    std::string detail;
};

struct WitnessVerification {
    bool ok = true;
    std::string failed_clause; ///< first failing clause, empty when ok
    std::vector<ClauseCheck> clauses;
};

/// Checks the six clauses ("1-Factor", "Splitting the 1-Factor",
/// "Creating <=", "addition", "multiplication", "exponentiation") on the
/// hypergraphs the witnesses induce on A, against the labelling.
WitnessVerification verify_witnesses(const Graph& g, const VertexSet& w, const VertexSet& a,
                                     const ArithLabeling& labels, const ArithWitnesses& wit);

struct ArithFixture {
    Graph graph;
    VertexSet w, a;
    ArithLabeling labels;
    ArithWitnesses witnesses{};
    /// Blocker edges (blocker, endpoint); removing any one changes a checked view.
    std::vector<Edge> wiring;
};

/// Synthetic graph with |W| = 4, A = N(W) of size 3s + 2 and one blocker per
/// triple that some witness must not contain. Requires 1 <= s <= kMaxFixtureS.
ArithFixture build_fixture(std::size_t s, std::uint64_t seed);

/// The d-th binary digit of x (d = 1 is the parity bit), derived only from
/// addition, multiplication, powers of two and order inside {1..s}.
int digit(std::uint64_t x, std::uint64_t d, std::uint64_t s);

/// depth(x) = C + max(max_{d<=m} depth(d), depth(m)), m the bit length of
/// x, depth(x) = C for x <= 2.
std::size_t number_depth(std::uint64_t x, std::size_t c = kDescribeDepthC);
/// max(depth(x), depth(s)): x together with the last element.
std::size_t describe_depth(std::uint64_t x, std::uint64_t s, std::size_t c = kDescribeDepthC);

nlohmann::json arith_report(const ArithFixture& f, const WitnessVerification& v);

} // namespace folab
