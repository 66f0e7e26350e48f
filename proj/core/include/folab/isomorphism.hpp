#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "folab/graph.hpp"

namespace folab {

/// Leaf budget of the canonical-labelling search; exceeding it throws
/// CapExceeded.
inline constexpr std::size_t kCanonicalLeafCap = 2'000'000;

/// Equitable colour refinement (1-WL). Colours are ranks of
/// (old colour, sorted neighbour colours) signatures, so the result does not
/// depend on the vertex labelling. `initial` defaults to a single cell.
std::vector<std::uint32_t> refine_colors(const Graph& g, std::vector<std::uint32_t> initial = {});

struct CanonicalLabeling {
    Graph graph;                  ///< the canonical representative
    std::vector<Vertex> position; ///< position[v] = canonical index of vertex v
};

/// Colour refinement plus individualisation backtracking; among the leaves
/// the relabelling with the smallest graph6 adjacency string wins. Twin
/// transpositions are pruned.
CanonicalLabeling canonical_labeling(const Graph& g);
Graph canonical_form(const Graph& g);

/// graph6 text of canonical_form(g); equal strings iff isomorphic graphs.
std::string canonical_key(const Graph& g);

bool is_isomorphic(const Graph& g, const Graph& h);

/// Number of injections f: V(h) -> V(g) with u~v iff f(u)~f(v), counting
/// stops at `limit`.
std::size_t count_induced_embeddings(const Graph& h, const Graph& g, std::size_t limit);

/// h is isomorphic to an induced subgraph of g.
bool induced_embeds(const Graph& h, const Graph& g);

/// g[x] admits a non-identity automorphism.
bool has_nontrivial_automorphism(const Graph& g, const VertexSet& x);
bool has_nontrivial_automorphism(const Graph& g);

} // namespace folab
