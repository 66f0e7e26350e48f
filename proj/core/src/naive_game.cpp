#include "folab/naive_game.hpp"

#include <algorithm>

namespace folab::naive {

namespace {

bool partial_iso(const Graph& g, const Graph& h, const std::vector<std::pair<Vertex, Vertex>>& t) {
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = 0; j < t.size(); ++j) {
            if ((t[i].first == t[j].first) != (t[i].second == t[j].second)) return false;
            if (g.adjacent(t[i].first, t[j].first) != h.adjacent(t[i].second, t[j].second)) return false;
        }
    return true;
}

} // namespace

bool spoiler_wins(const Graph& g, const Graph& h, std::vector<std::pair<Vertex, Vertex>>& tuple, std::size_t k) {
    if (!partial_iso(g, h, tuple)) return true;
    if (k == 0) return false;
    for (int side = 0; side < 2; ++side) {
        const std::size_t n = side == 0 ? g.order() : h.order();
        const std::size_t m = side == 0 ? h.order() : g.order();
        for (Vertex v = 0; v < n; ++v) {
            bool every_reply_loses = true;
            for (Vertex w = 0; w < m && every_reply_loses; ++w) {
                tuple.emplace_back(side == 0 ? v : w, side == 0 ? w : v);
                const bool lost = !partial_iso(g, h, tuple) || spoiler_wins(g, h, tuple, k - 1);
                tuple.pop_back();
                every_reply_loses = lost;
            }
            if (every_reply_loses) return true;
        }
    }
    return false;
}

std::size_t distinguishing_depth(const Graph& g, const Graph& h) {
    std::vector<std::pair<Vertex, Vertex>> tuple;
    const std::size_t top = std::max(g.order(), h.order()) + 1;
    for (std::size_t k = 0; k <= top; ++k)
        if (spoiler_wins(g, h, tuple, k)) return k;
    return 0;
}

} // namespace folab::naive
