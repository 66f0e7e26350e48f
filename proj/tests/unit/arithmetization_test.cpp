#include <algorithm>
#include <bitset>

#include "doctest.h"
#include "folab/arithmetization.hpp"
#include "folab/asymptotics.hpp"
#include "folab/error.hpp"
#include "folab/random.hpp"

using namespace folab;

namespace {

Graph without_edge(const Graph& g, Edge e) {
    auto edges = g.edges();
    std::erase_if(edges, [&](const Edge& x) {
        return (x.first == e.first && x.second == e.second) || (x.first == e.second && x.second == e.first);
    });
    return Graph::from_edges(g.order(), edges);
}

Graph with_edge(const Graph& g, Vertex u, Vertex v) {
    auto edges = g.edges();
    edges.push_back({u, v});
    return Graph::from_edges(g.order(), edges);
}

} // namespace

TEST_CASE("witness hypergraph extremes") {
    // ground 0..3, witness 4, outsiders 5..
    GraphBuilder b(7);
    const Graph lonely = std::move(b).build();
    const VertexSet ground(7, {0, 1, 2, 3});
    const VertexSet excl = ground;
    CHECK(hypergraph_of_witness(lonely, ground, excl, 4).triples.size() == 4);

    GraphBuilder hub(7);
    for (Vertex v = 0; v < 7; ++v)
        if (v != 5) hub.add_edge(5, v);
    CHECK(hypergraph_of_witness(std::move(hub).build(), ground, excl, 4).triples.empty());

    // one blocker on {0,1,2}
    GraphBuilder one(8);
    for (Vertex v : {0, 1, 2, 4}) one.add_edge(5, v);
    const Graph g = std::move(one).build();
    const VertexSet ground5(8, {0, 1, 2, 3, 7});
    const auto h = hypergraph_of_witness(g, ground5, ground5, 4);
    CHECK(h.triples.size() == 9);
    CHECK_FALSE(h.contains(0, 1, 2));
    CHECK(h.contains(0, 1, 3));
    CHECK(h.link(0, 1) == std::set<Vertex>{3, 7});
    CHECK_THROWS_AS(hypergraph_of_witness(g, ground5, ground5, 0), InvalidArgument);
}

TEST_CASE("adding a blocker removes exactly its triple") {
    Rng rng(4);
    const Graph base = gnp_sample({30, 0.3, 12});
    const VertexSet ground(31, {0, 1, 2, 3, 4, 5});
    // extend with an isolated vertex that becomes the blocker
    auto edges = base.edges();
    const Graph g = Graph::from_edges(31, edges);
    const auto before = hypergraph_of_witness(g, ground, ground, 10);
    for (const Triple& t : before.triples) {
        auto e2 = edges;
        for (Vertex v : t) e2.push_back({30, v});
        e2.push_back({30, 10});
        const auto after = hypergraph_of_witness(Graph::from_edges(31, e2), ground, ground, 10);
        auto expect = before.triples;
        expect.erase(t);
        CHECK(after.triples == expect);
    }
}

TEST_CASE("B set") {
    const VertexSet w(10, {8, 9});
    const VertexSet small(10, {0, 1, 2});
    CHECK(compute_B(graphs::complete(10), w, small).empty());
    const VertexSet a(10, {0, 1, 2, 3, 4});
    GraphBuilder b(10);
    for (Vertex v : {0, 1, 2, 3}) {
        b.add_edge(5, v);
        b.add_edge(6, v);
    }
    const Graph twins = std::move(b).build();
    CHECK(compute_B(twins, w, a).empty());
    GraphBuilder c(10);
    for (Vertex v : {0, 1, 2, 3}) c.add_edge(5, v);
    for (Vertex v : {0, 1, 2, 4}) c.add_edge(6, v);
    c.add_edge(7, 0);
    const Graph g = std::move(c).build();
    CHECK(compute_B(g, w, a) == VertexSet(10, {5, 6}));
}

TEST_CASE("universality and splitting") {
    // W = {0}, A = {1..4}, one realizing vertex per subset of the 4 triples
    const std::size_t m = 4;
    std::vector<Triple> triples = {Triple{1, 2, 3}, Triple{1, 2, 4}, Triple{1, 3, 4}, Triple{2, 3, 4}};
    std::vector<Edge> edges;
    for (Vertex v = 1; v <= m; ++v) edges.push_back({0, v});
    Vertex next = 5;
    std::vector<Vertex> realizers;
    for (unsigned mask = 0; mask < 16; ++mask) {
        const Vertex w = next++;
        realizers.push_back(w);
        for (std::size_t i = 0; i < 4; ++i) {
            if (mask >> i & 1) continue; // triple i stays present
            const Vertex z = next++;
            edges.push_back({z, w});
            for (Vertex v : triples[i]) edges.push_back({z, v});
        }
    }
    const Graph g = Graph::from_edges(next, edges);
    const VertexSet wset(next, {0});
    const VertexSet a(next, {1, 2, 3, 4});
    CHECK(common_neighbors(g, wset) == a);
    CHECK(is_universal(g, wset, a));
    // the empty hypergraph has a single realizer; cutting it loose loses universality
    std::vector<Edge> pruned;
    for (const auto& e : edges)
        if (e.first != realizers[0] && e.second != realizers[0]) pruned.push_back(e);
    CHECK_FALSE(is_universal(Graph::from_edges(next, pruned), wset, a));
    CHECK_THROWS_AS(is_universal(g, wset, VertexSet(next, {1, 2, 3, 4, 5, 6, 7})), CapExceeded);

    // twins outside W u A u B never split
    const VertexSet bset(next, {1, 2, 3});
    CHECK_FALSE(is_splitting(g, VertexSet(next, {0}), VertexSet(next, {4}), bset));
    CHECK(size_advisories(100, 10, true, 2, false).size() == 1);
    CHECK(size_advisories(100, 2, true, 0, true).size() == 1);
}

TEST_CASE("target hypergraphs") {
    const auto t1 = target_hypergraphs(1);
    CHECK(t1.h5.empty());
    const auto t3 = target_hypergraphs(3);
    CHECK(t3.h5 == std::set<Triple>{Triple{t3.x(1), t3.y(1), t3.z(2)}, Triple{t3.x(1), t3.y(2), t3.z(3)},
                                     Triple{t3.x(2), t3.y(1), t3.z(3)}});
    const auto t4 = target_hypergraphs(4);
    CHECK(t4.h7 == std::set<Pair>{Pair{t4.x(1), t4.y(2)}, Pair{t4.x(2), t4.y(4)}});
    CHECK(t4.h4.size() == 10);
}

TEST_CASE("fixtures verify") {
    for (std::size_t s = 1; s <= kMaxFixtureS; ++s) {
        const auto f = build_fixture(s, 7);
        CHECK(f.a.count() == 3 * s + 2);
        CHECK(common_neighbors(f.graph, f.w) == f.a);
        const auto v = verify_witnesses(f.graph, f.w, f.a, f.labels, f.witnesses);
        CHECK_MESSAGE(v.ok, "s=" << s << " failed " << v.failed_clause);
    }
    const auto f1 = build_fixture(3, 99), f2 = build_fixture(3, 99);
    CHECK(f1.graph == f2.graph);
    CHECK(f1.witnesses == f2.witnesses);
    CHECK_FALSE(build_fixture(3, 100).graph == f1.graph);
    CHECK_THROWS_AS(build_fixture(9, 1), InvalidArgument);
}

TEST_CASE("fixture mutations are caught") {
    const auto f = build_fixture(3, 1);
    const std::size_t s = 3;
    const auto t = target_hypergraphs(s);
    // add a blocker for one addition triple {x1, y1, z2}
    {
        auto edges = f.graph.edges();
        const Vertex z = static_cast<Vertex>(f.graph.order());
        for (Vertex v : {f.labels.x[0], f.labels.y[0], f.labels.z[1], f.witnesses[4]}) edges.push_back({z, v});
        const Graph g = Graph::from_edges(z + 1, edges);
        VertexSet w(z + 1), a(z + 1);
        f.w.for_each([&](Vertex v) { w.insert(v); });
        f.a.for_each([&](Vertex v) { a.insert(v); });
        const auto v = verify_witnesses(g, w, a, f.labels, f.witnesses);
        CHECK_FALSE(v.ok);
        CHECK(v.failed_clause == "addition");
    }
    {
        auto wit = f.witnesses;
        std::swap(wit[1], wit[2]);
        const auto v = verify_witnesses(f.graph, f.w, f.a, f.labels, wit);
        CHECK(v.failed_clause == "Splitting the 1-Factor");
    }
    (void)t;
    // every single wiring edge is needed
    Rng rng(3);
    std::size_t caught = 0, tried = 0;
    for (std::size_t k = 0; k < 200; ++k) {
        const Edge e = f.wiring[rng() % f.wiring.size()];
        const auto v = verify_witnesses(without_edge(f.graph, e), f.w, f.a, f.labels, f.witnesses);
        ++tried;
        caught += !v.ok;
    }
    CHECK(caught * 100 >= tried * 95);
    (void)with_edge;
}

TEST_CASE("binary digits through arithmetic") {
    CHECK(digit(6, 1, 10) == 0);
    CHECK(digit(5, 1, 10) == 1);
    CHECK(digit(12, 3, 12) == 1);
    const std::uint64_t s = 512;
    for (std::uint64_t x = 1; x <= s; ++x)
        for (std::uint64_t d = 1; d <= 11; ++d) CHECK(digit(x, d, s) == static_cast<int>((x >> (d - 1)) & 1));
    CHECK_THROWS_AS(digit(0, 1, 5), InvalidArgument);
}

TEST_CASE("depth accounting grows like log*") {
    const std::size_t c = kDescribeDepthC;
    for (std::uint64_t s : {std::uint64_t{16}, std::uint64_t{1} << 16, tower(4).convert_to<std::uint64_t>()}) {
        const double ratio = static_cast<double>(describe_depth(s, s)) / static_cast<double>(log_star(s));
        CHECK(ratio >= c / 2.0);
        CHECK(ratio <= 4.0 * c);
    }
    CHECK(number_depth(2) == c);
    CHECK(number_depth(3) == 2 * c);
    CHECK(describe_depth(1, 16) == number_depth(16));
}
