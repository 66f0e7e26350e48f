#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "folab/vertex_set.hpp"

namespace folab {

/// Largest supported order. Bitset rows are sized in 64-bit words.
inline constexpr std::size_t kMaxOrder = 16384;

using Edge = std::pair<Vertex, Vertex>;

class GraphBuilder;

/// Immutable simple undirected graph on vertices 0..n-1 with one bitset
/// adjacency row per vertex. Rows are symmetric and loop-free.
class Graph {
public:
    Graph() = default;

    /// Edgeless graph of order `n`.
    explicit Graph(std::size_t n);

    static Graph from_edges(std::size_t n, std::span<const Edge> edges);

    std::size_t order() const noexcept { return rows_.size(); }
    std::size_t size() const noexcept { return edge_count_; }

    bool adjacent(Vertex u, Vertex v) const noexcept { return rows_[u].contains(v); }
    const VertexSet& neighbors(Vertex v) const noexcept { return rows_[v]; }
    std::size_t degree(Vertex v) const noexcept { return rows_[v].count(); }

    VertexSet vertices() const { return VertexSet::full(order()); }

    /// Edges as (i, j) with i < j in lexicographic order.
    std::vector<Edge> edges() const;

    /// Induced subgraph; vertex i of the result is `vs[i]`.
    Graph induced(std::span<const Vertex> vs) const;
    Graph induced(const VertexSet& vs) const;

    friend bool operator==(const Graph& a, const Graph& b) { return a.rows_ == b.rows_; }

private:
    friend class GraphBuilder;
    std::vector<VertexSet> rows_;
    std::size_t edge_count_ = 0;
};

/// Mutable staging area for a Graph.
class GraphBuilder {
public:
    explicit GraphBuilder(std::size_t n);

    std::size_t order() const noexcept { return g_.order(); }
    GraphBuilder& add_edge(Vertex u, Vertex v);
    GraphBuilder& remove_edge(Vertex u, Vertex v);
    bool adjacent(Vertex u, Vertex v) const noexcept { return g_.adjacent(u, v); }
    Graph build() &&;

private:
    Graph g_;
};

Graph complement(const Graph& g);

/// N(W): vertices adjacent to every member of `w`. N(empty) = V.
VertexSet common_neighbors(const Graph& g, const VertexSet& w);

/// The graph induced on V_x = common neighbours of the tuple minus the tuple.
struct Residual {
    Graph graph;
    VertexSet vertices;         ///< V_x in the host's labelling
    std::vector<Vertex> labels; ///< labels[i] = host id of residual vertex i
};

/// Residual of `xs` in `g`; the empty tuple gives `g` itself. Throws
/// InvalidArgument on repeated or out-of-range vertices.
Residual residual(const Graph& g, std::span<const Vertex> xs);

/// Connected components as vertex sets, ordered by smallest member.
std::vector<VertexSet> components(const Graph& g);

bool is_connected(const Graph& g);

/// Disjoint union; vertices of `b` are shifted by a.order().
Graph disjoint_union(const Graph& a, const Graph& b);

namespace graphs {
Graph complete(std::size_t n);
Graph empty(std::size_t n);
Graph path(std::size_t n);
Graph cycle(std::size_t n);
/// K_{1,leaves}, centre 0.
Graph star(std::size_t leaves);
Graph petersen();
} // namespace graphs

} // namespace folab
