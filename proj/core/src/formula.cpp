#include "folab/formula.hpp"

#include <cctype>
#include <functional>
#include <optional>

#include "folab/error.hpp"

namespace folab {

namespace fo {

namespace {
FormulaPtr nary(Kind k, std::vector<FormulaPtr> fs) {
    if (fs.empty()) throw InvalidArgument("empty connective");
    if (fs.size() == 1) return fs.front();
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->args = std::move(fs);
    return f;
}

FormulaPtr quant(Kind k, std::string var, FormulaPtr body) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->var = std::move(var);
    f->args = {std::move(body)};
    return f;
}

FormulaPtr atom(Kind k, std::string x, std::string y) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->lhs = std::move(x);
    f->rhs = std::move(y);
    return f;
}

FormulaPtr binary(Kind k, FormulaPtr a, FormulaPtr b) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->args = {std::move(a), std::move(b)};
    return f;
}
} // namespace

FormulaPtr exists(std::string var, FormulaPtr body) { return quant(Kind::Exists, std::move(var), std::move(body)); }
FormulaPtr forall(std::string var, FormulaPtr body) { return quant(Kind::Forall, std::move(var), std::move(body)); }
FormulaPtr negate(FormulaPtr g) {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::Not;
    f->args = {std::move(g)};
    return f;
}
FormulaPtr conj(std::vector<FormulaPtr> fs) { return nary(Kind::And, std::move(fs)); }
FormulaPtr disj(std::vector<FormulaPtr> fs) { return nary(Kind::Or, std::move(fs)); }
FormulaPtr implies(FormulaPtr a, FormulaPtr b) { return binary(Kind::Implies, std::move(a), std::move(b)); }
FormulaPtr iff(FormulaPtr a, FormulaPtr b) { return binary(Kind::Iff, std::move(a), std::move(b)); }
FormulaPtr eq(std::string x, std::string y) { return atom(Kind::Eq, std::move(x), std::move(y)); }
FormulaPtr adj(std::string x, std::string y) { return atom(Kind::Adj, std::move(x), std::move(y)); }

} // namespace fo

// ---- parsing ----

namespace {

enum class Tok { Exists, Forall, Var, Dot, Not, And, Or, Imp, Iff, Eq, Adj, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line, column;
};

const char* describe(Tok t) {
    switch (t) {
    case Tok::Exists: return "'E'";
    case Tok::Forall: return "'A'";
    case Tok::Var: return "variable";
    case Tok::Dot: return "'.'";
    case Tok::Not: return "'!'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Imp: return "'->'";
    case Tok::Iff: return "'<->'";
    case Tok::Eq: return "'='";
    case Tok::Adj: return "'~'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::End: return "end of input";
    }
    return "?";
}

std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    auto advance = [&](std::size_t k) {
        for (std::size_t j = 0; j < k; ++j) {
            if (s[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        const std::size_t l = line, cc = col;
        auto push = [&](Tok t, std::size_t len) {
            out.push_back({t, std::string(s.substr(i, len)), l, cc});
            advance(len);
        };
        if (c >= 'a' && c <= 'z') {
            std::size_t j = i + 1;
            while (j < s.size() && (std::islower(static_cast<unsigned char>(s[j])) ||
                                    std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            push(Tok::Var, j - i);
        } else if (c == 'E') {
            push(Tok::Exists, 1);
        } else if (c == 'A') {
            push(Tok::Forall, 1);
        } else if (c == '.') {
            push(Tok::Dot, 1);
        } else if (c == '!') {
            push(Tok::Not, 1);
        } else if (c == '&') {
            push(Tok::And, 1);
        } else if (c == '|') {
            push(Tok::Or, 1);
        } else if (c == '=') {
            push(Tok::Eq, 1);
        } else if (c == '~') {
            push(Tok::Adj, 1);
        } else if (c == '(') {
            push(Tok::LParen, 1);
        } else if (c == ')') {
            push(Tok::RParen, 1);
        } else if (s.substr(i, 2) == "->") {
            push(Tok::Imp, 2);
        } else if (s.substr(i, 3) == "<->") {
            push(Tok::Iff, 3);
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", l, cc);
        }
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

class Parser {
public:
    Parser(std::string_view text, bool sentence) : toks_(lex(text)), sentence_(sentence) {}

    FormulaPtr run() {
        auto f = formula();
        if (peek().kind != Tok::End) fail("expected end of input");
        return f;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& take() { return toks_[pos_++]; }

    [[noreturn]] void fail(const std::string& what) const {
        const Token& t = peek();
        throw ParseError(what + ", found " + describe(t.kind), t.line, t.column);
    }

    const Token& expect(Tok k) {
        if (peek().kind != k) fail(std::string("expected ") + describe(k));
        return take();
    }

    FormulaPtr formula() {
        if (peek().kind == Tok::Exists || peek().kind == Tok::Forall) return quant();
        return iff();
    }

    FormulaPtr quant() {
        const bool ex = take().kind == Tok::Exists;
        std::string v = expect(Tok::Var).text;
        expect(Tok::Dot);
        scope_.push_back(v);
        auto body = formula();
        scope_.pop_back();
        return ex ? fo::exists(std::move(v), std::move(body)) : fo::forall(std::move(v), std::move(body));
    }

    FormulaPtr iff() {
        auto f = imp();
        while (peek().kind == Tok::Iff) {
            take();
            f = fo::iff(std::move(f), imp());
        }
        return f;
    }

    FormulaPtr imp() {
        auto f = disj();
        if (peek().kind == Tok::Imp) {
            take();
            return fo::implies(std::move(f), imp());
        }
        return f;
    }

    FormulaPtr disj() {
        std::vector<FormulaPtr> parts{conj()};
        while (peek().kind == Tok::Or) {
            take();
            parts.push_back(conj());
        }
        return fo::disj(std::move(parts));
    }

    FormulaPtr conj() {
        std::vector<FormulaPtr> parts{unary()};
        while (peek().kind == Tok::And) {
            take();
            parts.push_back(unary());
        }
        return fo::conj(std::move(parts));
    }

    FormulaPtr unary() {
        switch (peek().kind) {
        case Tok::Not:
            take();
            return fo::negate(unary());
        case Tok::LParen: {
            take();
            auto f = formula();
            expect(Tok::RParen);
            return f;
        }
        case Tok::Exists:
        case Tok::Forall:
            return quant();
        case Tok::Var:
            return atom();
        default:
            fail("expected a formula");
        }
    }

    FormulaPtr atom() {
        const Token& x = take();
        check_bound(x);
        const Tok op = peek().kind;
        if (op != Tok::Eq && op != Tok::Adj) fail("expected '=' or '~'");
        take();
        const Token& y = expect(Tok::Var);
        check_bound(y);
        return op == Tok::Eq ? fo::eq(x.text, y.text) : fo::adj(x.text, y.text);
    }

    void check_bound(const Token& t) const {
        if (!sentence_) return;
        for (const auto& v : scope_)
            if (v == t.text) return;
        throw ParseError("unbound variable '" + t.text + "'", t.line, t.column);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    bool sentence_;
    std::vector<std::string> scope_;
};

// ---- rendering ----

int precedence(const Formula& f) {
    switch (f.kind) {
    case Kind::Iff: return 1;
    case Kind::Implies: return 2;
    case Kind::Or: return 3;
    case Kind::And: return 4;
    case Kind::Not:
    case Kind::Eq:
    case Kind::Adj: return 5;
    case Kind::Exists:
    case Kind::Forall: return 0;
    }
    return 0;
}

void render_to(const Formula& f, std::string& out);

// Quantifiers swallow everything to their right, so as operands they are
// always bracketed.
void render_operand(const Formula& f, int min_prec, std::string& out) {
    if (f.is_quantifier() || precedence(f) < min_prec) {
        out += '(';
        render_to(f, out);
        out += ')';
    } else {
        render_to(f, out);
    }
}

void render_to(const Formula& f, std::string& out) {
    switch (f.kind) {
    case Kind::Exists:
    case Kind::Forall:
        out += f.kind == Kind::Exists ? "E " : "A ";
        out += f.var;
        out += ". ";
        render_to(*f.args[0], out);
        return;
    case Kind::Not:
        out += '!';
        // atoms are bracketed too, for readability: !(x=y)
        render_operand(*f.args[0], f.args[0]->is_atom() ? 6 : 5, out);
        return;
    case Kind::And:
    case Kind::Or: {
        const int p = precedence(f);
        for (std::size_t i = 0; i < f.args.size(); ++i) {
            if (i) out += f.kind == Kind::And ? " & " : " | ";
            render_operand(*f.args[i], p + 1, out);
        }
        return;
    }
    case Kind::Implies:
        render_operand(*f.args[0], 3, out);
        out += " -> ";
        render_operand(*f.args[1], 2, out);
        return;
    case Kind::Iff:
        render_operand(*f.args[0], 1, out);
        out += " <-> ";
        render_operand(*f.args[1], 2, out);
        return;
    case Kind::Eq:
    case Kind::Adj:
        out += f.lhs;
        out += f.kind == Kind::Eq ? "=" : "~";
        out += f.rhs;
        return;
    }
}

void collect_free(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
    auto check = [&](const std::string& v) {
        for (const auto& b : bound)
            if (b == v) return;
        out.insert(v);
    };
    if (f.is_atom()) {
        check(f.lhs);
        check(f.rhs);
        return;
    }
    if (f.is_quantifier()) bound.push_back(f.var);
    for (const auto& a : f.args) collect_free(*a, bound, out);
    if (f.is_quantifier()) bound.pop_back();
}

// ---- evaluation ----

// Variables resolved to environment slots so the inner loop avoids maps.
struct Compiled {
    Kind kind;
    std::size_t slot = 0;
    std::size_t a = 0, b = 0;
    std::vector<Compiled> kids;
};

class Compiler {
public:
    explicit Compiler(const Assignment& a) {
        for (const auto& [name, v] : a) {
            scope_.emplace_back(name, slots_);
            init_.push_back(v);
            ++slots_;
        }
    }

    Compiled compile(const Formula& f) {
        Compiled c;
        c.kind = f.kind;
        if (f.is_atom()) {
            c.a = lookup(f.lhs);
            c.b = lookup(f.rhs);
            return c;
        }
        if (f.is_quantifier()) {
            c.slot = slots_++;
            scope_.emplace_back(f.var, c.slot);
            c.kids.push_back(compile(*f.args[0]));
            scope_.pop_back();
            return c;
        }
        for (const auto& a : f.args) c.kids.push_back(compile(*a));
        return c;
    }

    std::size_t slots() const { return slots_; }
    const std::vector<Vertex>& initial() const { return init_; }

private:
    std::size_t lookup(const std::string& v) const {
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
            if (it->first == v) return it->second;
        throw InvalidArgument("eval: free variable '" + v + "' has no value");
    }

    std::vector<std::pair<std::string, std::size_t>> scope_;
    std::vector<Vertex> init_;
    std::size_t slots_ = 0;
};

class Evaluator {
public:
    Evaluator(const Graph& g, std::vector<Vertex> env) : g_(g), env_(std::move(env)) {}

    bool run(const Compiled& c) {
        switch (c.kind) {
        case Kind::Eq: return env_[c.a] == env_[c.b];
        case Kind::Adj: return g_.adjacent(env_[c.a], env_[c.b]);
        case Kind::Not: return !run(c.kids[0]);
        case Kind::And:
            for (const auto& k : c.kids)
                if (!run(k)) return false;
            return true;
        case Kind::Or:
            for (const auto& k : c.kids)
                if (run(k)) return true;
            return false;
        case Kind::Implies: return !run(c.kids[0]) || run(c.kids[1]);
        case Kind::Iff: return run(c.kids[0]) == run(c.kids[1]);
        case Kind::Exists:
        case Kind::Forall: {
            const bool ex = c.kind == Kind::Exists;
            for (Vertex v = 0; v < g_.order(); ++v) {
                if (++visited_ > kEvalBudget) throw CapExceeded("eval: assignment budget exceeded");
                env_[c.slot] = v;
                if (run(c.kids[0]) == ex) return ex;
            }
            return !ex;
        }
        }
        return false;
    }

private:
    const Graph& g_;
    std::vector<Vertex> env_;
    std::size_t visited_ = 0;
};

FormulaPtr nnf(const FormulaPtr& f, bool neg) {
    switch (f->kind) {
    case Kind::Eq:
    case Kind::Adj: return neg ? fo::negate(f) : f;
    case Kind::Not: return nnf(f->args[0], !neg);
    case Kind::Exists:
    case Kind::Forall: {
        const bool ex = (f->kind == Kind::Exists) != neg;
        auto body = nnf(f->args[0], neg);
        return ex ? fo::exists(f->var, std::move(body)) : fo::forall(f->var, std::move(body));
    }
    case Kind::And:
    case Kind::Or: {
        std::vector<FormulaPtr> parts;
        for (const auto& a : f->args) parts.push_back(nnf(a, neg));
        return ((f->kind == Kind::And) != neg) ? fo::conj(std::move(parts)) : fo::disj(std::move(parts));
    }
    case Kind::Implies: {
        // a -> b  ==  !a | b
        auto expanded = fo::disj({fo::negate(f->args[0]), f->args[1]});
        return nnf(expanded, neg);
    }
    case Kind::Iff: {
        // a <-> b  ==  (a & b) | (!a & !b)
        const auto& a = f->args[0];
        const auto& b = f->args[1];
        auto expanded = fo::disj({fo::conj({a, b}), fo::conj({fo::negate(a), fo::negate(b)})});
        return nnf(expanded, neg);
    }
    }
    return f;
}

std::size_t switches(const Formula& f, int last) {
    if (f.is_quantifier()) {
        const int here = f.kind == Kind::Exists ? 1 : 2;
        const std::size_t s = (last != 0 && last != here) ? 1 : 0;
        return s + switches(*f.args[0], here);
    }
    std::size_t best = 0;
    for (const auto& a : f.args) best = std::max(best, switches(*a, last));
    return best;
}

} // namespace

FormulaPtr parse_formula(std::string_view text) { return Parser(text, false).run(); }

FormulaPtr parse_sentence(std::string_view text) { return Parser(text, true).run(); }

std::string render(const Formula& f) {
    std::string out;
    render_to(f, out);
    return out;
}

std::set<std::string> free_variables(const Formula& f) {
    std::vector<std::string> bound;
    std::set<std::string> out;
    collect_free(f, bound, out);
    return out;
}

bool eval(const Graph& g, const Formula& f, const Assignment& a) {
    for (const auto& [name, v] : a)
        if (v >= g.order()) throw InvalidArgument("eval: variable '" + name + "' is assigned a vertex out of range");
    Compiler comp(a);
    Compiled c = comp.compile(f);
    std::vector<Vertex> env = comp.initial();
    env.resize(comp.slots(), 0);
    return Evaluator(g, std::move(env)).run(c);
}

std::size_t depth(const Formula& f) {
    std::size_t best = 0;
    for (const auto& a : f.args) best = std::max(best, depth(*a));
    return best + (f.is_quantifier() ? 1 : 0);
}

FormulaPtr to_nnf(const FormulaPtr& f) { return nnf(f, false); }

std::size_t alternation_number(const FormulaPtr& f) { return switches(*to_nnf(f), 0); }

FormulaPtr complement_formula(const FormulaPtr& f) {
    switch (f->kind) {
    case Kind::Eq: return f;
    case Kind::Adj:
        return fo::conj({fo::negate(fo::adj(f->lhs, f->rhs)), fo::negate(fo::eq(f->lhs, f->rhs))});
    default: break;
    }
    auto out = std::make_shared<Formula>(*f);
    for (auto& a : out->args) a = complement_formula(a);
    return out;
}

std::size_t formula_size(const Formula& f) {
    std::size_t n = 1;
    for (const auto& a : f.args) n += formula_size(*a);
    return n;
}

} // namespace folab
