#include "folab/random.hpp"

#include <string>

#include "folab/error.hpp"

namespace folab {

Graph gnp_sample(const SampleParams& params) {
    if (!(params.p >= 0.0 && params.p <= 1.0))
        throw InvalidArgument("edge probability must lie in [0, 1], got " + std::to_string(params.p));
    Rng rng(params.seed);
    GraphBuilder b(params.n);
    const auto n = static_cast<Vertex>(params.n);
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j)
            if (uniform01(rng) < params.p) b.add_edge(i, j);
    return std::move(b).build();
}

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) noexcept {
    std::uint64_t h = 0x6a09e667f3bcc909ULL;
    for (auto part : parts) h = mix64(h ^ mix64(part));
    return h;
}

} // namespace folab
