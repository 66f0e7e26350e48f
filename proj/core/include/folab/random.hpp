#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>

#include "folab/graph.hpp"

namespace folab {

/// The generator behind every seeded sample. std::mt19937_64 is fully
/// specified by the standard, so samples reproduce across platforms.
using Rng = std::mt19937_64;

/// Parameters of G(n, p).
struct SampleParams {
    std::size_t n = 0;
    double p = 0.0;
    std::uint64_t seed = 0;

    double q() const noexcept { return 1.0 - p; }
    double c() const noexcept { return p * static_cast<double>(n); }
};

/// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Erdos-Renyi sample. Pairs are visited in lexicographic order (i, j),
/// i < j; each consumes exactly one draw and becomes an edge iff the
/// uniform01 value is below p.
Graph gnp_sample(const SampleParams& params);

/// SplitMix64 finaliser.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Order-dependent hash of a list of words; used for per-row seeds.
std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) noexcept;

} // namespace folab
