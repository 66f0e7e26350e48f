#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "folab/graph.hpp"

namespace folab::naive {

/// Reference game recursion: no memo, every vertex of both boards is a
/// Spoiler move, every vertex of the other board is a reply, and each
/// resulting tuple is checked for partial isomorphism from scratch.
bool spoiler_wins(const Graph& g, const Graph& h, std::vector<std::pair<Vertex, Vertex>>& tuple, std::size_t k);

/// Smallest k with spoiler_wins from the empty tuple, searched up to
/// max(v(g), v(h)) + 1; 0 when none is found.
std::size_t distinguishing_depth(const Graph& g, const Graph& h);

} // namespace folab::naive
