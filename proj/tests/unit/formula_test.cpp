#include "doctest.h"
#include "folab/enumerate.hpp"
#include "folab/error.hpp"
#include "folab/formula.hpp"
#include "folab/random.hpp"

using namespace folab;

TEST_CASE("parse shapes") {
    auto f = parse_formula("E x. A y. x=y");
    REQUIRE(f->kind == Kind::Exists);
    REQUIRE(f->args[0]->kind == Kind::Forall);
    CHECK(f->args[0]->args[0]->kind == Kind::Eq);

    auto g = parse_formula("E x. E y. !(x=y) & x~y");
    const auto& body = g->args[0]->args[0];
    REQUIRE(body->kind == Kind::And);
    CHECK(body->args[0]->kind == Kind::Not);
    CHECK(body->args[1]->kind == Kind::Adj);

    auto imp = parse_formula("x=y -> y=x -> x~y");
    REQUIRE(imp->kind == Kind::Implies);
    CHECK(imp->args[1]->kind == Kind::Implies);

    auto prec = parse_formula("a=b | c=d & e=f <-> a~b");
    REQUIRE(prec->kind == Kind::Iff);
    REQUIRE(prec->args[0]->kind == Kind::Or);
    CHECK(prec->args[0]->args[1]->kind == Kind::And);
}

TEST_CASE("parse errors carry positions") {
    try {
        parse_formula("E x. x ~");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
        CHECK(e.column() == 9);
    }
    CHECK_THROWS_AS(parse_formula("E x x=x"), ParseError);
    CHECK_THROWS_AS(parse_formula("(x=y"), ParseError);
    CHECK_THROWS_AS(parse_formula("x=y)"), ParseError);
    CHECK_THROWS_AS(parse_formula("x # y"), ParseError);
    try {
        parse_sentence("E x.\n  x~y");
        FAIL("expected an unbound variable");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 5);
    }
    CHECK_NOTHROW(parse_sentence("E x. A y. x~y | x=y"));
    CHECK_NOTHROW(parse_formula("x~y"));
}

TEST_CASE("render then parse is the identity") {
    const char* texts[] = {
        "E x. A y. x=y",
        "E x. E y. !(x=y) & x~y",
        "E x. (A y. x~y) & (A y. !(x=y))",
        "x=y -> y=x -> x~y",
        "(x=y -> y=x) -> x~y",
        "a=b <-> b=a <-> a~b",
        "a=b <-> (b=a <-> a~b)",
        "!!(a=b | a~b) & (a=b | b=a & a~b)",
        "!(E x. x~x) | A y. y=y & y~y",
        "((a=b & b=a) & a~b)",
        "E x1. A x_2. x1~x_2",
    };
    for (const char* t : texts) {
        auto f = parse_formula(t);
        const std::string r = render(f);
        auto again = parse_formula(r);
        CHECK(render(again) == r);
        CHECK(depth(*again) == depth(*f));
        CHECK(formula_size(*again) == formula_size(*f));
    }
    CHECK(render(parse_formula("E   x .x  =  y")) == "E x. x=y");
}

TEST_CASE("evaluation") {
    auto one = parse_sentence("E x. A y. x=y");
    CHECK(eval(graphs::complete(1), one));
    CHECK_FALSE(eval(graphs::complete(2), one));
    CHECK_FALSE(eval(graphs::complete(3), parse_formula("x~y"), {{"x", 1}, {"y", 1}}));
    CHECK_THROWS_AS(eval(graphs::complete(3), parse_formula("x~y"), {{"x", 1}}), InvalidArgument);
    CHECK_THROWS_AS(eval(graphs::complete(3), parse_formula("x~x"), {{"x", 5}}), InvalidArgument);

    auto complete = parse_sentence("A x. A y. (!(x=y)) -> x~y");
    for (std::size_t n = 1; n <= 4; ++n)
        for (const auto& g : enumerate_graphs(n)) CHECK(eval(g, complete) == (g.size() == n * (n - 1) / 2));

    // shadowing: the inner y is the one compared
    auto shadow = parse_sentence("E y. E x. A y. x=y");
    CHECK(eval(graphs::complete(1), shadow));
    CHECK_FALSE(eval(graphs::complete(2), shadow));
}

TEST_CASE("depth") {
    CHECK(depth(*parse_formula("E x. A y. E z. x~z")) == 3);
    CHECK(depth(*parse_formula("x~y")) == 0);
    CHECK(depth(*parse_formula("E x.(A y. x~y) & (A y. !(x=y))")) == 2);
}

TEST_CASE("alternation number") {
    CHECK(alternation_number(parse_formula("E x. E y. x~y")) == 0);
    CHECK(alternation_number(parse_formula("E x. A y. E z. x~z")) == 2);
    CHECK(alternation_number(parse_formula("!(E x. A y. x=y)")) == 1);
    auto nnf = to_nnf(parse_formula("!(E x. A y. x=y)"));
    CHECK(render(nnf) == "A x. E y. !(x=y)");
    // implication flips the quantifier on its left
    CHECK(alternation_number(parse_formula("(E x. x=x) -> E y. y=y")) == 0);
    CHECK(alternation_number(parse_formula("(A x. x=x) -> E y. y=y")) == 0);
    CHECK(alternation_number(parse_formula("E z. ((E x. x=z) -> E y. y=y)")) == 1);
    CHECK(alternation_number(parse_formula("E z. ((E x. x=z) <-> E y. y=z)")) == 1);
}

TEST_CASE("metrics are invariant under double negation and renaming") {
    const char* texts[] = {"E x. A y. E z. x~z & y=z", "A a. (E b. a~b) -> E c. !(a~c)",
                           "E x. (A y. x~y) <-> (E y. y=x)"};
    for (const char* t : texts) {
        auto f = parse_formula(t);
        auto dn = fo::negate(fo::negate(f));
        CHECK(depth(*dn) == depth(*f));
        CHECK(alternation_number(dn) == alternation_number(f));
        std::string renamed = t;
        for (auto& ch : renamed)
            if (ch >= 'a' && ch <= 'z') ch = static_cast<char>('p' + (ch - 'a') % 8);
        auto r = parse_formula(renamed);
        CHECK(depth(*r) == depth(*f));
        CHECK(alternation_number(r) == alternation_number(f));
    }
}

TEST_CASE("complement transform") {
    const char* texts[] = {"E x. E y. x~y", "A x. E y. x~y & !(x=y)", "E x. A y. x=y | !(x~y)",
                           "E x. E y. E z. x~y & y~z & !(x~z) & !(x=z)"};
    for (const char* t : texts) {
        auto f = parse_sentence(t);
        auto cf = complement_formula(f);
        for (std::size_t n = 1; n <= 4; ++n)
            for (const auto& g : enumerate_graphs(n)) CHECK(eval(complement(g), cf) == eval(g, f));
    }
}

TEST_CASE("evaluation budget") {
    Graph g = graphs::empty(200);
    auto deep = parse_sentence("A a. A b. A c. A d. A e. a=a");
    CHECK_THROWS_AS(eval(g, deep), CapExceeded);
}
