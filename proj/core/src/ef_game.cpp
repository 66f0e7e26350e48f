#include "folab/ef_game.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <unordered_map>

#include "folab/enumerate.hpp"
#include "folab/error.hpp"
#include "folab/isomorphism.hpp"

namespace folab {

AltState AltState::after(Side s) const noexcept {
    AltState next = *this;
    if (last && *last != s && remaining != kUnbounded) --next.remaining;
    next.last = s;
    return next;
}

bool is_partial_isomorphism(const Graph& g, const Graph& h, const GamePosition& pos) {
    const auto& p = pos.pairs;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i].first >= g.order() || p[i].second >= h.order()) return false;
        for (std::size_t j = 0; j < i; ++j) {
            if ((p[i].first == p[j].first) != (p[i].second == p[j].second)) return false;
            if (g.adjacent(p[i].first, p[j].first) != h.adjacent(p[i].second, p[j].second)) return false;
        }
    }
    return true;
}

double estimated_states(std::size_t ng, std::size_t nh, std::size_t rounds) {
    double total = 0.0;
    const std::size_t top = std::min({rounds, ng, nh});
    for (std::size_t j = 0; j <= top; ++j) {
        double c = 1.0, perm = 1.0;
        for (std::size_t i = 0; i < j; ++i) {
            c = c * static_cast<double>(ng - i) / static_cast<double>(i + 1);
            perm *= static_cast<double>(nh - i);
        }
        total += c * perm;
    }
    return total;
}

std::size_t StrategyNode::height() const {
    std::size_t best = 0;
    for (const auto& [w, child] : replies) best = std::max(best, child->height());
    return best + 1;
}

namespace {

using Mask = std::uint64_t;
using Pairs = std::vector<std::pair<Vertex, Vertex>>;

std::vector<Mask> masks_of(const Graph& g) {
    std::vector<Mask> out(g.order(), 0);
    for (Vertex v = 0; v < g.order(); ++v) g.neighbors(v).for_each([&](Vertex u) { out[v] |= Mask{1} << u; });
    return out;
}

Mask full_mask(std::size_t n) { return n == 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

struct Bounds {
    std::uint8_t lose_max = 0;   // Spoiler cannot win within this many rounds
    std::uint8_t win_min = 255;  // Spoiler wins within this many rounds
};

} // namespace

struct EfGame::Impl {
    Graph g, h;
    std::vector<Mask> ng, nh;
    Mask full_g, full_h;
    std::unordered_map<std::string, Bounds> memo;

    Impl(const Graph& g_, const Graph& h_)
        : g(g_), h(h_), ng(masks_of(g_)), nh(masks_of(h_)), full_g(full_mask(g_.order())),
          full_h(full_mask(h_.order())) {}

    AltState normalize(AltState alt) const {
        if (alt.remaining != kUnbounded && alt.remaining >= g.order() + h.order()) alt.remaining = kUnbounded;
        if (alt.remaining == kUnbounded) alt.last.reset();
        return alt;
    }

    std::string key(const Pairs& pairs, const AltState& alt) const {
        std::vector<std::uint16_t> codes;
        codes.reserve(pairs.size());
        for (auto [a, b] : pairs) codes.push_back(static_cast<std::uint16_t>(a * 64 + b));
        std::sort(codes.begin(), codes.end());
        codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
        std::string k;
        k.reserve(codes.size() * 2 + 2);
        k.push_back(static_cast<char>(alt.last ? 1 + static_cast<int>(*alt.last) : 0));
        k.push_back(static_cast<char>(alt.remaining == kUnbounded ? 255 : alt.remaining));
        for (auto c : codes) {
            k.push_back(static_cast<char>(c & 0xff));
            k.push_back(static_cast<char>(c >> 8));
        }
        return k;
    }

    Mask marked(const Pairs& pairs, Side s) const {
        Mask m = 0;
        for (auto [a, b] : pairs) m |= Mask{1} << (s == Side::G ? a : b);
        return m;
    }

    Mask reply_mask(const Pairs& pairs, Move m) const {
        if (m.side == Side::G) {
            Mask cand = full_h & ~marked(pairs, Side::H);
            for (auto [a, b] : pairs) cand &= (g.adjacent(m.vertex, a) ? nh[b] : ~nh[b]);
            return cand;
        }
        Mask cand = full_g & ~marked(pairs, Side::G);
        for (auto [a, b] : pairs) cand &= (h.adjacent(m.vertex, b) ? ng[a] : ~ng[a]);
        return cand;
    }

    static void push(Pairs& pairs, Move m, Vertex reply) {
        if (m.side == Side::G)
            pairs.emplace_back(m.vertex, reply);
        else
            pairs.emplace_back(reply, m.vertex);
    }

    bool solve(Pairs& pairs, std::size_t k, AltState alt) {
        if (k == 0) return false;
        alt = normalize(alt);
        const std::string kk = key(pairs, alt);
        if (auto it = memo.find(kk); it != memo.end()) {
            if (k <= it->second.lose_max) return false;
            if (k >= it->second.win_min) return true;
        }
        bool win = false;
        for (Side side : {Side::G, Side::H}) {
            if (win) break;
            if (!alt.allows(side)) continue;
            const AltState next = alt.after(side);
            const std::size_t n = side == Side::G ? g.order() : h.order();
            const Mask used = marked(pairs, side);
            for (Vertex v = 0; v < n && !win; ++v) {
                if ((used >> v) & 1) continue;
                const Move m{side, v};
                Mask cand = reply_mask(pairs, m);
                if (cand == 0) {
                    win = true;
                    break;
                }
                if (k == 1) continue;
                bool all = true;
                while (cand && all) {
                    const auto w = static_cast<Vertex>(std::countr_zero(cand));
                    cand &= cand - 1;
                    push(pairs, m, w);
                    all = solve(pairs, k - 1, next);
                    pairs.pop_back();
                }
                win = all;
            }
        }
        auto& e = memo[kk];
        const auto kb = static_cast<std::uint8_t>(std::min<std::size_t>(k, 254));
        if (win)
            e.win_min = std::min(e.win_min, kb);
        else
            e.lose_max = std::max(e.lose_max, kb);
        return win;
    }

    std::optional<std::size_t> value(Pairs& pairs, std::size_t budget, const AltState& alt) {
        for (std::size_t k = 1; k <= budget; ++k)
            if (solve(pairs, k, alt)) return k;
        return std::nullopt;
    }

    void validate(const GamePosition& pos) const {
        if (!is_partial_isomorphism(g, h, pos))
            throw InvalidArgument("game position is out of range or not a partial isomorphism");
    }

    void check_cap(std::size_t rounds) const {
        if (estimated_states(g.order(), h.order(), rounds) > kEngineStateCap)
            throw CapExceeded("undecided at cap: a " + std::to_string(rounds) + "-round search on orders " +
                              std::to_string(g.order()) + " and " + std::to_string(h.order()) +
                              " exceeds the state estimate limit");
    }
};

EfGame::EfGame(const Graph& g, const Graph& h) {
    if (g.order() > kEngineMaxOrder || h.order() > kEngineMaxOrder)
        throw InvalidArgument("game boards are limited to " + std::to_string(kEngineMaxOrder) + " vertices");
    impl_ = std::make_unique<Impl>(g, h);
}

EfGame::~EfGame() = default;
EfGame::EfGame(EfGame&&) noexcept = default;
EfGame& EfGame::operator=(EfGame&&) noexcept = default;

const Graph& EfGame::g() const noexcept { return impl_->g; }
const Graph& EfGame::h() const noexcept { return impl_->h; }
std::size_t EfGame::memo_size() const noexcept { return impl_->memo.size(); }

bool EfGame::spoiler_wins(const GamePosition& pos, std::size_t k, const AltState& alt) {
    impl_->validate(pos);
    impl_->check_cap(pos.pairs.size() + k);
    Pairs pairs = pos.pairs;
    return impl_->solve(pairs, k, alt);
}

std::optional<std::size_t> EfGame::value(const GamePosition& pos, std::size_t budget, const AltState& alt) {
    impl_->validate(pos);
    impl_->check_cap(pos.pairs.size() + budget);
    Pairs pairs = pos.pairs;
    return impl_->value(pairs, budget, alt);
}

std::vector<Vertex> EfGame::replies(const GamePosition& pos, Move m) const {
    const std::size_t n = m.side == Side::G ? impl_->g.order() : impl_->h.order();
    if (m.vertex >= n) throw InvalidArgument("move vertex out of range");
    std::vector<Vertex> out;
    // A marked vertex must be answered by its partner.
    for (auto [a, b] : pos.pairs) {
        if (m.side == Side::G && a == m.vertex) return {b};
        if (m.side == Side::H && b == m.vertex) return {a};
    }
    Mask cand = impl_->reply_mask(pos.pairs, m);
    while (cand) {
        out.push_back(static_cast<Vertex>(std::countr_zero(cand)));
        cand &= cand - 1;
    }
    return out;
}

MoveAnalysis EfGame::analyze(const GamePosition& pos, std::size_t budget, const AltState& alt) {
    impl_->validate(pos);
    impl_->check_cap(pos.pairs.size() + budget);
    MoveAnalysis out;
    out.budget = budget;
    Pairs pairs = pos.pairs;
    for (Side side : {Side::G, Side::H}) {
        if (!alt.allows(side)) continue;
        const AltState next = alt.after(side);
        const std::size_t n = side == Side::G ? impl_->g.order() : impl_->h.order();
        const Mask used = impl_->marked(pairs, side);
        for (Vertex v = 0; v < n; ++v) {
            if ((used >> v) & 1) continue;
            MoveValue mv{{side, v}, std::nullopt, {}};
            bool all = budget > 0;
            std::size_t worst = 0;
            for (Vertex w : replies(pos, mv.move)) {
                ReplyValue rv{w, std::nullopt};
                if (budget > 1) {
                    Impl::push(pairs, mv.move, w);
                    rv.value = impl_->value(pairs, budget - 1, next);
                    pairs.pop_back();
                }
                if (rv.value)
                    worst = std::max(worst, *rv.value);
                else
                    all = false;
                mv.replies.push_back(rv);
            }
            if (all) mv.value = worst + 1;
            if (mv.value && (!out.value || *mv.value < *out.value)) {
                out.value = mv.value;
                out.best = mv.move;
            }
            out.moves.push_back(std::move(mv));
        }
    }
    return out;
}

std::unique_ptr<StrategyNode> EfGame::strategy(const GamePosition& pos, std::size_t budget, const AltState& alt) {
    impl_->validate(pos);
    impl_->check_cap(pos.pairs.size() + budget);
    Pairs pairs = pos.pairs;
    auto build = [&](auto&& self, std::size_t limit, const AltState& a) -> std::unique_ptr<StrategyNode> {
        auto k = impl_->value(pairs, limit, a);
        if (!k) return nullptr;
        for (Side side : {Side::G, Side::H}) {
            if (!a.allows(side)) continue;
            const AltState next = a.after(side);
            const std::size_t n = side == Side::G ? impl_->g.order() : impl_->h.order();
            const Mask used = impl_->marked(pairs, side);
            for (Vertex v = 0; v < n; ++v) {
                if ((used >> v) & 1) continue;
                const Move m{side, v};
                Mask cand = impl_->reply_mask(pairs, m);
                bool ok = true;
                for (Mask c = cand; c && ok; c &= c - 1) {
                    Impl::push(pairs, m, static_cast<Vertex>(std::countr_zero(c)));
                    ok = impl_->solve(pairs, *k - 1, next);
                    pairs.pop_back();
                }
                if (!ok) continue;
                auto node = std::make_unique<StrategyNode>();
                node->move = m;
                for (; cand; cand &= cand - 1) {
                    const auto w = static_cast<Vertex>(std::countr_zero(cand));
                    Impl::push(pairs, m, w);
                    node->replies.emplace_back(w, self(self, *k - 1, next));
                    pairs.pop_back();
                }
                return node;
            }
        }
        throw Error("strategy extraction found no move matching the position value");
    };
    return build(build, budget, alt);
}

namespace {

std::string var_name(std::size_t i) { return "x" + std::to_string(i + 1); }

FormulaPtr sentence_at(const Graph& g, const Graph& h, const StrategyNode& node, Pairs& pairs) {
    const std::size_t m = pairs.size();
    const std::string x = var_name(m);
    const Move mv = node.move;
    // Atomic type of the chosen vertex against the marked ones.
    std::vector<FormulaPtr> type, negated;
    for (std::size_t i = 0; i < m; ++i) {
        const std::string xi = var_name(i);
        const bool adj = mv.side == Side::G ? g.adjacent(mv.vertex, pairs[i].first)
                                            : h.adjacent(mv.vertex, pairs[i].second);
        type.push_back(fo::negate(fo::eq(x, xi)));
        negated.push_back(fo::eq(x, xi));
        type.push_back(adj ? fo::adj(x, xi) : fo::negate(fo::adj(x, xi)));
        negated.push_back(adj ? fo::negate(fo::adj(x, xi)) : fo::adj(x, xi));
    }
    std::vector<FormulaPtr> kids;
    std::set<std::string> seen;
    for (const auto& [w, child] : node.replies) {
        if (mv.side == Side::G)
            pairs.emplace_back(mv.vertex, w);
        else
            pairs.emplace_back(w, mv.vertex);
        auto f = sentence_at(g, h, *child, pairs);
        pairs.pop_back();
        if (seen.insert(render(f)).second) kids.push_back(std::move(f));
    }
    if (mv.side == Side::G) {
        auto parts = std::move(type);
        parts.insert(parts.end(), kids.begin(), kids.end());
        if (parts.empty()) parts.push_back(fo::eq(x, x));
        return fo::exists(x, fo::conj(std::move(parts)));
    }
    auto parts = std::move(negated);
    parts.insert(parts.end(), kids.begin(), kids.end());
    if (parts.empty()) parts.push_back(fo::negate(fo::eq(x, x)));
    return fo::forall(x, fo::disj(std::move(parts)));
}

void require_non_isomorphic(const Graph& g, const Graph& h) {
    if (is_isomorphic(g, h)) throw InvalidArgument("the two graphs are isomorphic; no sentence distinguishes them");
}

} // namespace

FormulaPtr sentence_from_strategy(const Graph& g, const Graph& h, const StrategyNode& root) {
    Pairs pairs;
    return sentence_at(g, h, root, pairs);
}

bool spoiler_wins(const Graph& g, const Graph& h, const GamePosition& pos, std::size_t k) {
    return EfGame(g, h).spoiler_wins(pos, k);
}

std::size_t distinguishing_depth(const Graph& g, const Graph& h) {
    return distinguishing_depth_alt(g, h, kUnbounded);
}

std::size_t distinguishing_depth_alt(const Graph& g, const Graph& h, std::size_t r) {
    require_non_isomorphic(g, h);
    EfGame game(g, h);
    const std::size_t cap = std::min(g.order(), h.order()) + 1;
    auto v = game.value({}, cap, AltState{std::nullopt, r});
    if (!v) throw Error("no win within min(v(g), v(h)) + 1 rounds on non-isomorphic boards");
    return *v;
}

MoveAnalysis analyze_moves(const Graph& g, const Graph& h, const GamePosition& pos, std::size_t budget,
                           std::optional<AltState> alt) {
    return EfGame(g, h).analyze(pos, budget, alt.value_or(AltState{}));
}

FormulaPtr synthesize_sentence(const Graph& g, const Graph& h, std::optional<std::size_t> r) {
    require_non_isomorphic(g, h);
    EfGame game(g, h);
    const AltState alt{std::nullopt, r.value_or(kUnbounded)};
    auto root = game.strategy({}, std::min(g.order(), h.order()) + 1, alt);
    if (!root) throw Error("no winning strategy found on non-isomorphic boards");
    return sentence_from_strategy(g, h, *root);
}

FamilyDepth depth_over_family(const Graph& g, std::span<const Graph> family) {
    FamilyDepth out;
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (is_isomorphic(g, family[i])) continue;
        const std::size_t d = distinguishing_depth(g, family[i]);
        ++out.compared;
        if (d > out.depth) {
            out.depth = d;
            out.argmax = i;
        }
    }
    if (out.compared == 0) throw InvalidArgument("depth_over_family: every adversary is isomorphic to g");
    return out;
}

std::size_t same_order_depth(const Graph& g) {
    if (g.order() > kMaxEnumerationOrder)
        throw InvalidArgument("same_order_depth: order " + std::to_string(g.order()) + " exceeds the cap of 7");
    const auto& family = enumerate_graphs(g.order());
    if (family.size() <= 1) return 0;
    return depth_over_family(g, family).depth;
}

} // namespace folab
