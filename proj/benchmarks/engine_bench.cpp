#include <benchmark/benchmark.h>

#include "folab/certificates.hpp"
#include "folab/ef_game.hpp"
#include "folab/isomorphism.hpp"
#include "folab/naive_game.hpp"
#include "folab/random.hpp"

using namespace folab;

namespace {

Graph sample(std::size_t n, std::uint64_t seed) { return gnp_sample({n, 0.5, seed}); }

void BM_DepthRandomPair(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        Graph g = sample(n, seed), h = sample(n, seed + 1000);
        seed += 1;
        if (is_isomorphic(g, h)) continue;
        benchmark::DoNotOptimize(distinguishing_depth(g, h));
    }
}
BENCHMARK(BM_DepthRandomPair)->DenseRange(5, 8);

void BM_DepthCliques(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Graph g = graphs::complete(n), h = graphs::complete(n + 1);
    for (auto _ : state) benchmark::DoNotOptimize(distinguishing_depth(g, h));
}
BENCHMARK(BM_DepthCliques)->DenseRange(3, 6);

void BM_NaiveDepth(benchmark::State& state) {
    const Graph g = graphs::path(4), h = graphs::star(3);
    for (auto _ : state) benchmark::DoNotOptimize(naive::distinguishing_depth(g, h));
}
BENCHMARK(BM_NaiveDepth);

void BM_CanonicalKey(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Graph g = sample(n, 7);
    for (auto _ : state) benchmark::DoNotOptimize(canonical_key(g));
}
BENCHMARK(BM_CanonicalKey)->RangeMultiplier(2)->Range(16, 256);

void BM_CanonicalKeyRegular(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Graph g = graphs::cycle(n);
    for (auto _ : state) benchmark::DoNotOptimize(canonical_key(g));
}
BENCHMARK(BM_CanonicalKeyRegular)->RangeMultiplier(2)->Range(16, 128);

void BM_SieveSearch(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Graph g = sample(n, 11);
    for (auto _ : state) benchmark::DoNotOptimize(search_small_sieve(g));
}
BENCHMARK(BM_SieveSearch)->Arg(32)->Arg(64)->Arg(128);

} // namespace
BENCHMARK_MAIN();
