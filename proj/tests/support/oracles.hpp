#pragma once

// Brute-force reference implementations used only by tests.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "folab/graph.hpp"

namespace oracle {

using folab::Graph;
using folab::Vertex;

inline bool is_iso_under(const Graph& g, const Graph& h, const std::vector<Vertex>& perm) {
    for (Vertex i = 0; i < g.order(); ++i)
        for (Vertex j = i + 1; j < g.order(); ++j)
            if (g.adjacent(i, j) != h.adjacent(perm[i], perm[j])) return false;
    return true;
}

inline bool isomorphic(const Graph& g, const Graph& h) {
    if (g.order() != h.order() || g.size() != h.size()) return false;
    std::vector<Vertex> perm(g.order());
    std::iota(perm.begin(), perm.end(), Vertex{0});
    do {
        if (is_iso_under(g, h, perm)) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

inline std::size_t automorphism_count(const Graph& g) {
    std::vector<Vertex> perm(g.order());
    std::iota(perm.begin(), perm.end(), Vertex{0});
    std::size_t count = 0;
    do {
        if (is_iso_under(g, g, perm)) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

/// Every labelled graph of order n, as an edge bitmask over the pairs in
/// lexicographic order.
inline Graph from_mask(std::size_t n, std::uint64_t mask) {
    folab::GraphBuilder b(n);
    std::size_t k = 0;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j, ++k)
            if ((mask >> k) & 1) b.add_edge(i, j);
    return std::move(b).build();
}

/// Isomorphism classes of order n by labelled enumeration and pairwise
/// brute-force comparison. Fine up to n = 5.
inline std::vector<Graph> classes(std::size_t n) {
    std::vector<Graph> reps;
    const std::size_t pairs = n * (n - (n > 0 ? 1 : 0)) / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
        Graph g = from_mask(n, mask);
        bool fresh = true;
        for (const auto& r : reps)
            if (isomorphic(g, r)) {
                fresh = false;
                break;
            }
        if (fresh) reps.push_back(std::move(g));
    }
    return reps;
}

/// Injective maps h -> g preserving adjacency and non-adjacency.
inline std::size_t induced_embeddings(const Graph& h, const Graph& g) {
    std::size_t count = 0;
    std::vector<Vertex> img;
    auto rec = [&](auto&& self) -> void {
        if (img.size() == h.order()) {
            ++count;
            return;
        }
        const Vertex v = static_cast<Vertex>(img.size());
        for (Vertex u = 0; u < g.order(); ++u) {
            if (std::find(img.begin(), img.end(), u) != img.end()) continue;
            bool ok = true;
            for (Vertex w = 0; w < v && ok; ++w) ok = h.adjacent(v, w) == g.adjacent(u, img[w]);
            if (!ok) continue;
            img.push_back(u);
            self(self);
            img.pop_back();
        }
    };
    rec(rec);
    return count;
}

inline Graph relabel(const Graph& g, const std::vector<Vertex>& perm) {
    folab::GraphBuilder b(g.order());
    for (auto [u, v] : g.edges()) b.add_edge(perm[u], perm[v]);
    return std::move(b).build();
}

} // namespace oracle
