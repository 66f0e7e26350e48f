#include "folab/isomorphism.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "folab/error.hpp"
#include "folab/graph6.hpp"

namespace folab {

namespace {

using Colors = std::vector<std::uint32_t>;
using AdjLists = std::vector<std::vector<Vertex>>;

AdjLists adjacency_lists(const Graph& g) {
    AdjLists adj(g.order());
    for (Vertex v = 0; v < g.order(); ++v) adj[v] = g.neighbors(v).members();
    return adj;
}

// Replace values by their rank among distinct values; returns the count.
std::size_t rerank(Colors& col) {
    Colors sorted = col;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (auto& c : col) c = static_cast<std::uint32_t>(std::lower_bound(sorted.begin(), sorted.end(), c) - sorted.begin());
    return sorted.size();
}

std::size_t refine(const AdjLists& adj, Colors& col) {
    const std::size_t n = col.size();
    std::size_t k = rerank(col);
    std::vector<std::vector<std::uint32_t>> sig(n);
    std::vector<Vertex> order(n);
    while (k < n) {
        for (Vertex v = 0; v < n; ++v) {
            auto& s = sig[v];
            s.clear();
            for (Vertex u : adj[v]) s.push_back(col[u]);
            std::sort(s.begin(), s.end());
        }
        std::iota(order.begin(), order.end(), Vertex{0});
        std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
            if (col[a] != col[b]) return col[a] < col[b];
            return sig[a] < sig[b];
        });
        Colors next(n);
        std::uint32_t rank = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i > 0) {
                Vertex a = order[i - 1], b = order[i];
                if (col[a] != col[b] || sig[a] != sig[b]) ++rank;
            }
            next[order[i]] = rank;
        }
        const std::size_t k2 = n == 0 ? 0 : rank + 1;
        col.swap(next);
        if (k2 == k) break;
        k = k2;
    }
    return k;
}

Colors individualize(const Colors& col, Vertex v) {
    Colors out(col.size());
    for (std::size_t i = 0; i < col.size(); ++i) out[i] = col[i] * 2 + 1;
    out[v] = col[v] * 2;
    return out;
}

bool twins(const Graph& g, Vertex a, Vertex b) {
    VertexSet na = g.neighbors(a), nb = g.neighbors(b);
    na.erase(b);
    nb.erase(a);
    return na == nb;
}

// Packed adjacency bits of the relabelled graph in graph6 order, first bit
// in the most significant position so word-wise comparison is lexicographic.
std::vector<std::uint64_t> leaf_bits(const Graph& g, const Colors& pos) {
    const std::size_t n = g.order();
    std::vector<Vertex> inv(n);
    for (Vertex v = 0; v < n; ++v) inv[pos[v]] = v;
    const std::size_t bits = n * (n > 0 ? n - 1 : 0) / 2;
    std::vector<std::uint64_t> out((bits + 63) / 64, 0);
    std::size_t k = 0;
    for (Vertex j = 1; j < n; ++j)
        for (Vertex i = 0; i < j; ++i, ++k)
            if (g.adjacent(inv[i], inv[j])) out[k / 64] |= std::uint64_t{1} << (63 - k % 64);
    return out;
}

// First non-singleton cell of a coloring, members ascending.
std::vector<Vertex> target_cell(const Colors& col, std::size_t k) {
    std::vector<std::size_t> size(k, 0);
    for (auto c : col) ++size[c];
    std::uint32_t target = 0;
    while (target < k && size[target] < 2) ++target;
    std::vector<Vertex> cell;
    for (Vertex v = 0; v < col.size(); ++v)
        if (col[v] == target) cell.push_back(v);
    return cell;
}

class CanonicalSearch {
public:
    explicit CanonicalSearch(const Graph& g) : g_(g), adj_(adjacency_lists(g)) {}

    CanonicalLabeling run() {
        Colors col(g_.order(), 0);
        visit(std::move(col));
        CanonicalLabeling out;
        out.position.assign(best_pos_.begin(), best_pos_.end());
        std::vector<Vertex> inv(g_.order());
        for (Vertex v = 0; v < g_.order(); ++v) inv[best_pos_[v]] = v;
        out.graph = g_.induced(inv);
        return out;
    }

private:
    void visit(Colors col) {
        const std::size_t k = refine(adj_, col);
        if (k == col.size()) {
            if (++leaves_ > kCanonicalLeafCap)
                throw CapExceeded("canonical labelling: leaf budget exceeded for order " +
                                  std::to_string(g_.order()));
            auto bits = leaf_bits(g_, col);
            if (!have_best_ || bits < best_bits_) {
                best_bits_ = std::move(bits);
                best_pos_ = col;
                have_best_ = true;
            }
            return;
        }
        std::vector<Vertex> cell = target_cell(col, k);
        std::vector<Vertex> tried;
        for (Vertex v : cell) {
            bool pruned = false;
            for (Vertex u : tried)
                if (twins(g_, u, v)) {
                    pruned = true;
                    break;
                }
            if (pruned) continue;
            tried.push_back(v);
            visit(individualize(col, v));
        }
    }

    const Graph& g_;
    AdjLists adj_;
    std::size_t leaves_ = 0;
    bool have_best_ = false;
    std::vector<std::uint64_t> best_bits_;
    Colors best_pos_;
};

// Full search tree without pruning; stops at the first repeated leaf graph.
class AutomorphismProbe {
public:
    explicit AutomorphismProbe(const Graph& g) : g_(g), adj_(adjacency_lists(g)) {}

    bool found() {
        Colors col(g_.order(), 0);
        return visit(std::move(col));
    }

private:
    bool visit(Colors col) {
        const std::size_t k = refine(adj_, col);
        if (k == col.size()) {
            if (++leaves_ > kCanonicalLeafCap)
                throw CapExceeded("automorphism search: leaf budget exceeded");
            return !seen_.insert(leaf_bits(g_, col)).second;
        }
        for (Vertex v : target_cell(col, k))
            if (visit(individualize(col, v))) return true;
        return false;
    }

    const Graph& g_;
    AdjLists adj_;
    std::size_t leaves_ = 0;
    std::set<std::vector<std::uint64_t>> seen_;
};

class EmbeddingCounter {
public:
    EmbeddingCounter(const Graph& h, const Graph& g, std::size_t limit) : h_(h), g_(g), limit_(limit) {
        // Place vertices so each new one has as many placed neighbours as
        // possible; ties go to higher degree, then lower id.
        const std::size_t n = h.order();
        std::vector<bool> placed(n, false);
        std::vector<std::size_t> links(n, 0);
        for (std::size_t step = 0; step < n; ++step) {
            Vertex best = 0;
            bool have = false;
            for (Vertex v = 0; v < n; ++v) {
                if (placed[v]) continue;
                if (!have || links[v] > links[best] ||
                    (links[v] == links[best] && h.degree(v) > h.degree(best))) {
                    best = v;
                    have = true;
                }
            }
            placed[best] = true;
            order_.push_back(best);
            h.neighbors(best).for_each([&](Vertex u) { ++links[u]; });
        }
        image_.assign(n, 0);
    }

    std::size_t run() {
        if (h_.order() > g_.order()) return 0;
        VertexSet used(g_.order());
        extend(0, used);
        return count_;
    }

private:
    void extend(std::size_t i, VertexSet& used) {
        if (count_ >= limit_) return;
        if (i == order_.size()) {
            ++count_;
            return;
        }
        const Vertex v = order_[i];
        VertexSet cand = ~used;
        for (std::size_t j = 0; j < i; ++j) {
            const Vertex w = order_[j];
            if (h_.adjacent(v, w))
                cand &= g_.neighbors(image_[w]);
            else
                cand -= g_.neighbors(image_[w]);
        }
        const std::size_t need = h_.degree(v);
        cand.for_each([&](Vertex u) {
            if (count_ >= limit_ || g_.degree(u) < need) return;
            image_[v] = u;
            used.insert(u);
            extend(i + 1, used);
            used.erase(u);
        });
    }

    const Graph& h_;
    const Graph& g_;
    std::size_t limit_;
    std::size_t count_ = 0;
    std::vector<Vertex> order_;
    std::vector<Vertex> image_;
};

} // namespace

std::vector<std::uint32_t> refine_colors(const Graph& g, std::vector<std::uint32_t> initial) {
    if (initial.empty()) initial.assign(g.order(), 0);
    if (initial.size() != g.order()) throw InvalidArgument("refine_colors: initial colouring has wrong length");
    refine(adjacency_lists(g), initial);
    return initial;
}

CanonicalLabeling canonical_labeling(const Graph& g) { return CanonicalSearch(g).run(); }

Graph canonical_form(const Graph& g) { return canonical_labeling(g).graph; }

std::string canonical_key(const Graph& g) { return graph6::encode(canonical_form(g)); }

bool is_isomorphic(const Graph& g, const Graph& h) {
    if (g.order() != h.order() || g.size() != h.size()) return false;
    std::vector<std::size_t> dg, dh;
    for (Vertex v = 0; v < g.order(); ++v) {
        dg.push_back(g.degree(v));
        dh.push_back(h.degree(v));
    }
    std::sort(dg.begin(), dg.end());
    std::sort(dh.begin(), dh.end());
    if (dg != dh) return false;
    // Refined colour histograms are labelling-invariant.
    auto cg = refine_colors(g), ch = refine_colors(h);
    std::sort(cg.begin(), cg.end());
    std::sort(ch.begin(), ch.end());
    if (cg != ch) return false;
    return canonical_form(g) == canonical_form(h);
}

std::size_t count_induced_embeddings(const Graph& h, const Graph& g, std::size_t limit) {
    return EmbeddingCounter(h, g, limit).run();
}

bool induced_embeds(const Graph& h, const Graph& g) { return count_induced_embeddings(h, g, 1) >= 1; }

bool has_nontrivial_automorphism(const Graph& g) {
    const std::size_t n = g.order();
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            if (twins(g, a, b)) return true;
    auto col = refine_colors(g);
    if (rerank(col) == n) return false;
    return AutomorphismProbe(g).found();
}

bool has_nontrivial_automorphism(const Graph& g, const VertexSet& x) {
    if (x.universe() != g.order()) throw InvalidArgument("vertex set does not belong to the graph");
    return has_nontrivial_automorphism(g.induced(x));
}

} // namespace folab
