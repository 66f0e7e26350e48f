#include <vector>

#include "doctest.h"
#include "folab/ef_game.hpp"
#include "folab/enumerate.hpp"
#include "folab/error.hpp"
#include "folab/isomorphism.hpp"
#include "folab/naive_game.hpp"
#include "folab/random.hpp"

using namespace folab;

namespace {
std::vector<std::pair<Graph, Graph>> non_isomorphic_pairs(std::size_t max_order) {
    const auto all = enumerate_graphs(1, max_order);
    std::vector<std::pair<Graph, Graph>> out;
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) out.emplace_back(all[i], all[j]);
    return out;
}
} // namespace

TEST_CASE("spoiler_wins basics") {
    const Graph k1 = graphs::complete(1), k2 = graphs::complete(2);
    CHECK_FALSE(spoiler_wins(k1, k2, {}, 0));
    CHECK_FALSE(spoiler_wins(k2, k2, {}, 5));
    CHECK(spoiler_wins(k1, k2, {}, 2));
    CHECK_FALSE(spoiler_wins(k1, k2, {}, 1));
    CHECK_THROWS_AS(spoiler_wins(graphs::path(3), graphs::complete(3), {{{0, 0}, {2, 1}}}, 1), InvalidArgument);
}

TEST_CASE("distinguishing depth examples") {
    CHECK(distinguishing_depth(graphs::complete(1), graphs::complete(2)) == 2);
    CHECK(distinguishing_depth(graphs::complete(3), graphs::complete(4)) == 4);
    CHECK(distinguishing_depth(graphs::complete(3), graphs::path(3)) == 2);
    for (std::size_t n = 1; n <= 5; ++n)
        CHECK(distinguishing_depth(graphs::complete(n), graphs::complete(n + 1)) == n + 1);
    CHECK_THROWS_AS(distinguishing_depth(graphs::cycle(3), graphs::complete(3)), InvalidArgument);
}

TEST_CASE("engine agrees with the naive recursion on orders up to 4") {
    for (const auto& [g, h] : non_isomorphic_pairs(4)) CHECK(distinguishing_depth(g, h) == naive::distinguishing_depth(g, h));
}

TEST_CASE("symmetry, cap, complement invariance, monotonicity") {
    for (const auto& [g, h] : non_isomorphic_pairs(4)) {
        const std::size_t d = distinguishing_depth(g, h);
        CHECK(d == distinguishing_depth(h, g));
        CHECK(d <= std::min(g.order(), h.order()) + 1);
        CHECK(d == distinguishing_depth(complement(g), complement(h)));
        EfGame game(g, h);
        for (std::size_t k = 0; k <= 5; ++k) CHECK(game.spoiler_wins({}, k) == (k >= d));
    }
}

TEST_CASE("alternation-bounded depth") {
    CHECK(distinguishing_depth_alt(graphs::complete(1), graphs::complete(2), 0) == 2);
    for (const auto& [g, h] : non_isomorphic_pairs(4)) {
        const std::size_t d = distinguishing_depth(g, h);
        std::size_t prev = distinguishing_depth_alt(g, h, 0);
        CHECK(prev >= d);
        for (std::size_t r = 1; r <= g.order() + h.order(); ++r) {
            const std::size_t dr = distinguishing_depth_alt(g, h, r);
            CHECK(dr <= prev);
            CHECK(dr >= d);
            if (r + 1 >= d) CHECK(dr == d);
            prev = dr;
        }
        CHECK(prev == d);
    }
}

TEST_CASE("move analysis") {
    const Graph k1 = graphs::complete(1), k2 = graphs::complete(2);
    auto a = analyze_moves(k1, k2, {}, 2);
    REQUIRE(a.value);
    CHECK(*a.value == 2);
    REQUIRE(a.best);
    // every move is optimal here; ties go to the lower side
    CHECK(a.best->side == Side::G);
    for (const auto& m : a.moves) CHECK(m.value == std::optional<std::size_t>{2});
    auto none = analyze_moves(k1, k2, {}, 0);
    CHECK_FALSE(none.value);
    for (const auto& m : none.moves) CHECK_FALSE(m.value);

    for (const auto& [g, h] : non_isomorphic_pairs(4)) {
        EfGame game(g, h);
        const std::size_t budget = std::min(g.order(), h.order()) + 1;
        auto an = game.analyze({}, budget);
        CHECK(an.value == game.value({}, budget));
        for (const auto& m : an.moves) {
            for (const auto& r : m.replies) {
                GamePosition child;
                child.pairs.push_back(m.move.side == Side::G ? std::pair{m.move.vertex, r.vertex}
                                                             : std::pair{r.vertex, m.move.vertex});
                for (std::size_t k = 0; k < budget; ++k)
                    CHECK(game.spoiler_wins(child, k) == (r.value && *r.value <= k));
            }
        }
    }
}

TEST_CASE("strategies have the claimed height") {
    for (const auto& [g, h] : non_isomorphic_pairs(4)) {
        EfGame game(g, h);
        const std::size_t d = distinguishing_depth(g, h);
        auto s = game.strategy({}, d);
        REQUIRE(s);
        CHECK(s->height() == d);
        CHECK_FALSE(game.strategy({}, d - 1));
    }
}

TEST_CASE("synthesized sentences distinguish with exact depth") {
    auto s = synthesize_sentence(graphs::complete(2), graphs::complete(1));
    CHECK(eval(graphs::complete(2), s));
    CHECK_FALSE(eval(graphs::complete(1), s));
    CHECK(depth(*s) == 2);
    for (const auto& [g, h] : non_isomorphic_pairs(4)) {
        for (int flip = 0; flip < 2; ++flip) {
            const Graph& a = flip ? h : g;
            const Graph& b = flip ? g : h;
            auto f = synthesize_sentence(a, b);
            CHECK(eval(a, f));
            CHECK_FALSE(eval(b, f));
            CHECK(depth(*f) == distinguishing_depth(a, b));
            CHECK(render(parse_sentence(render(f))) == render(f));
        }
    }
}

TEST_CASE("alternation-restricted sentences respect the budget") {
    for (const auto& [g, h] : non_isomorphic_pairs(4))
        for (std::size_t r = 0; r <= 2; ++r) {
            auto f = synthesize_sentence(g, h, r);
            CHECK(eval(g, f));
            CHECK_FALSE(eval(h, f));
            CHECK(alternation_number(f) <= r);
            CHECK(depth(*f) == distinguishing_depth_alt(g, h, r));
        }
}

TEST_CASE("family depth and same-order depth") {
    const auto upto4 = enumerate_graphs(1, 4);
    auto fd = depth_over_family(graphs::complete(3), upto4);
    CHECK(fd.depth == 4);
    CHECK(is_isomorphic(upto4[fd.argmax], graphs::complete(4)));
    std::vector<Graph> only{graphs::complete(2)};
    CHECK(depth_over_family(graphs::complete(1), only).depth == 2);
    std::vector<Graph> same{graphs::complete(3)};
    CHECK_THROWS_AS(depth_over_family(graphs::cycle(3), same), InvalidArgument);

    CHECK(same_order_depth(graphs::complete(3)) == 2);
    CHECK(same_order_depth(graphs::complete(1)) == 0);
    CHECK_THROWS_AS(same_order_depth(graphs::empty(8)), InvalidArgument);

    // growing family never lowers the maximum
    std::vector<Graph> growing;
    std::size_t last = 0;
    for (const auto& h : enumerate_graphs(1, 5)) {
        growing.push_back(h);
        if (growing.size() < 3) continue;
        const std::size_t d = depth_over_family(graphs::path(4), growing).depth;
        CHECK(d >= last);
        last = d;
    }

    for (std::size_t n = 1; n <= 5; ++n) {
        const auto pool = enumerate_graphs(1, n + 1);
        for (const auto& g : enumerate_graphs(n))
            if (n > 1) CHECK(same_order_depth(g) <= depth_over_family(g, pool).depth);
    }
}

TEST_CASE("state cap") {
    Graph g = gnp_sample({40, 0.5, 1}), h = gnp_sample({40, 0.5, 2});
    EfGame game(g, h);
    CHECK_THROWS_AS(game.spoiler_wins({}, 6), CapExceeded);
    CHECK_THROWS_AS(EfGame(graphs::empty(65), graphs::empty(3)), InvalidArgument);
}
