#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "folab/graph.hpp"

namespace folab::graph6 {

/// Largest order representable with the 1- and 4-byte size prefixes.
inline constexpr std::size_t kMaxEncodableOrder = 258047;

/// Standard graph6 encoding: size prefix, then the upper triangle in
/// column order (x(0,1), x(0,2), x(1,2), x(0,3), ...) packed six bits per
/// byte, high bit first, offset by 63. No trailing newline.
std::string encode(const Graph& g);

/// Inverse of encode. Accepts an optional ">>graph6<<" header and one
/// trailing newline. Throws ParseError with the offending byte offset.
Graph decode(std::string_view text);

} // namespace folab::graph6
