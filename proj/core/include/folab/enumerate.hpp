#pragma once

#include <cstddef>
#include <vector>

#include "folab/graph.hpp"

namespace folab {

inline constexpr std::size_t kMaxEnumerationOrder = 7;

/// One canonical representative per isomorphism class of order-n graphs,
/// sorted by (edge count, canonical graph6). Throws InvalidArgument for
/// n > 7. Results are computed once and cached.
const std::vector<Graph>& enumerate_graphs(std::size_t n);

/// All classes of orders lo..hi, concatenated in order.
std::vector<Graph> enumerate_graphs(std::size_t lo, std::size_t hi);

} // namespace folab
