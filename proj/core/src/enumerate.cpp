#include "folab/enumerate.hpp"

#include <array>
#include <map>
#include <mutex>
#include <string>

#include "folab/error.hpp"
#include "folab/graph6.hpp"
#include "folab/isomorphism.hpp"

namespace folab {

namespace {

std::vector<Graph> extend_by_one(const std::vector<Graph>& smaller, std::size_t n) {
    std::map<std::pair<std::size_t, std::string>, Graph> seen;
    const std::size_t m = n - 1;
    for (const auto& base : smaller) {
        const auto edges = base.edges();
        for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
            GraphBuilder b(n);
            for (auto [u, v] : edges) b.add_edge(u, v);
            for (Vertex u = 0; u < m; ++u)
                if ((mask >> u) & 1) b.add_edge(u, static_cast<Vertex>(m));
            Graph canon = canonical_form(std::move(b).build());
            std::string key = graph6::encode(canon);
            seen.try_emplace({canon.size(), std::move(key)}, std::move(canon));
        }
    }
    std::vector<Graph> out;
    out.reserve(seen.size());
    for (auto& [k, g] : seen) out.push_back(std::move(g));
    return out;
}

} // namespace

const std::vector<Graph>& enumerate_graphs(std::size_t n) {
    if (n > kMaxEnumerationOrder)
        throw InvalidArgument("enumerate_graphs: order " + std::to_string(n) + " exceeds the cap of 7");
    static std::mutex mu;
    static std::array<std::vector<Graph>, kMaxEnumerationOrder + 1> cache;
    static std::size_t built = 0;
    std::lock_guard lock(mu);
    if (built == 0) {
        cache[0] = {Graph(0)};
        built = 1;
    }
    for (; built <= n; ++built) cache[built] = extend_by_one(cache[built - 1], built);
    return cache[n];
}

std::vector<Graph> enumerate_graphs(std::size_t lo, std::size_t hi) {
    std::vector<Graph> out;
    for (std::size_t n = lo; n <= hi; ++n) {
        const auto& part = enumerate_graphs(n);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

} // namespace folab
