#include "folab/graph.hpp"

#include <algorithm>
#include <string>

#include "folab/error.hpp"

namespace folab {

namespace {

void check_order(std::size_t n) {
    if (n > kMaxOrder)
        throw InvalidArgument("graph order " + std::to_string(n) + " exceeds the supported maximum " +
                              std::to_string(kMaxOrder));
}

} // namespace

Graph::Graph(std::size_t n) {
    check_order(n);
    rows_.assign(n, VertexSet(n));
}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
    GraphBuilder b(n);
    for (auto [u, v] : edges) b.add_edge(u, v);
    return std::move(b).build();
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < order(); ++u)
        rows_[u].for_each([&](Vertex v) {
            if (u < v) out.emplace_back(u, v);
        });
    return out;
}

Graph Graph::induced(std::span<const Vertex> vs) const {
    GraphBuilder b(vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (adjacent(vs[i], vs[j])) b.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
    return std::move(b).build();
}

Graph Graph::induced(const VertexSet& vs) const {
    auto m = vs.members();
    return induced(m);
}

GraphBuilder::GraphBuilder(std::size_t n) : g_(n) {}

GraphBuilder& GraphBuilder::add_edge(Vertex u, Vertex v) {
    if (u >= order() || v >= order())
        throw InvalidArgument("edge endpoint out of range");
    if (u == v) throw InvalidArgument("self-loops are not allowed");
    if (!g_.rows_[u].contains(v)) {
        g_.rows_[u].insert(v);
        g_.rows_[v].insert(u);
        ++g_.edge_count_;
    }
    return *this;
}

GraphBuilder& GraphBuilder::remove_edge(Vertex u, Vertex v) {
    if (u >= order() || v >= order())
        throw InvalidArgument("edge endpoint out of range");
    if (u != v && g_.rows_[u].contains(v)) {
        g_.rows_[u].erase(v);
        g_.rows_[v].erase(u);
        --g_.edge_count_;
    }
    return *this;
}

Graph GraphBuilder::build() && { return std::move(g_); }

Graph complement(const Graph& g) {
    const auto n = g.order();
    GraphBuilder b(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (!g.adjacent(u, v)) b.add_edge(u, v);
    return std::move(b).build();
}

VertexSet common_neighbors(const Graph& g, const VertexSet& w) {
    VertexSet out = VertexSet::full(g.order());
    w.for_each([&](Vertex v) { out &= g.neighbors(v); });
    return out;
}

Residual residual(const Graph& g, std::span<const Vertex> xs) {
    VertexSet seen(g.order());
    for (Vertex x : xs) {
        if (x >= g.order()) throw InvalidArgument("residual: vertex out of range");
        if (seen.contains(x)) throw InvalidArgument("residual: tuple has repeated vertex " + std::to_string(x));
        seen.insert(x);
    }
    Residual r;
    r.vertices = common_neighbors(g, seen) - seen;
    r.labels = r.vertices.members();
    r.graph = g.induced(r.labels);
    return r;
}

std::vector<VertexSet> components(const Graph& g) {
    const auto n = g.order();
    std::vector<VertexSet> out;
    VertexSet unseen = VertexSet::full(n);
    while (!unseen.empty()) {
        VertexSet comp(n);
        VertexSet frontier(n);
        frontier.insert(unseen.first());
        while (!frontier.empty()) {
            comp |= frontier;
            unseen -= frontier;
            VertexSet next(n);
            frontier.for_each([&](Vertex v) { next |= g.neighbors(v); });
            next &= unseen;
            frontier = std::move(next);
        }
        out.push_back(std::move(comp));
    }
    return out;
}

bool is_connected(const Graph& g) { return components(g).size() <= 1; }

Graph disjoint_union(const Graph& a, const Graph& b) {
    const auto off = static_cast<Vertex>(a.order());
    GraphBuilder out(a.order() + b.order());
    for (auto [u, v] : a.edges()) out.add_edge(u, v);
    for (auto [u, v] : b.edges()) out.add_edge(u + off, v + off);
    return std::move(out).build();
}

namespace graphs {

Graph complete(std::size_t n) { return complement(Graph(n)); }

Graph empty(std::size_t n) { return Graph(n); }

Graph path(std::size_t n) {
    GraphBuilder b(n);
    for (Vertex i = 0; i + 1 < n; ++i) b.add_edge(i, i + 1);
    return std::move(b).build();
}

Graph cycle(std::size_t n) {
    if (n < 3) throw InvalidArgument("cycle needs at least 3 vertices");
    GraphBuilder b(n);
    for (Vertex i = 0; i < n; ++i) b.add_edge(i, static_cast<Vertex>((i + 1) % n));
    return std::move(b).build();
}

Graph star(std::size_t leaves) {
    GraphBuilder b(leaves + 1);
    for (Vertex i = 1; i <= leaves; ++i) b.add_edge(0, i);
    return std::move(b).build();
}

Graph petersen() {
    GraphBuilder b(10);
    for (Vertex i = 0; i < 5; ++i) {
        b.add_edge(i, (i + 1) % 5);         // outer cycle
        b.add_edge(i, i + 5);               // spokes
        b.add_edge(i + 5, (i + 2) % 5 + 5); // inner pentagram
    }
    return std::move(b).build();
}

} // namespace graphs

} // namespace folab
