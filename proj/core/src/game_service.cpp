#include "folab/game_service.hpp"

#include <algorithm>

#include "folab/error.hpp"
#include "folab/graph6.hpp"

namespace folab {

using nlohmann::json;

const char* to_string(Role r) { return r == Role::Spoiler ? "spoiler" : "duplicator"; }

const char* to_string(SessionStatus s) {
    switch (s) {
    case SessionStatus::AwaitingHuman: return "awaiting-human";
    case SessionStatus::AwaitingEngine: return "awaiting-engine";
    case SessionStatus::SpoilerWon: return "spoiler-won";
    case SessionStatus::DuplicatorWon: return "duplicator-won";
    }
    return "?";
}

GamePosition Session::position() const {
    GamePosition pos;
    for (const auto& r : history) {
        if (!r.reply) break;
        if (r.spoiler.side == Side::G) pos.pairs.emplace_back(r.spoiler.vertex, *r.reply);
        else pos.pairs.emplace_back(*r.reply, r.spoiler.vertex);
    }
    return pos;
}

AltState Session::alt_state() const {
    AltState a{std::nullopt, alt.value_or(kUnbounded)};
    for (const auto& r : history) a = a.after(r.spoiler.side);
    return a;
}

bool Session::spoiler_to_move() const { return history.empty() || history.back().reply.has_value(); }

json to_json(const Session& s) {
    json hist = json::array();
    for (std::size_t i = 0; i < s.history.size(); ++i) {
        const auto& r = s.history[i];
        json e{{"round", i + 1}, {"spoiler", {{"side", side_name(r.spoiler.side)}, {"vertex", r.spoiler.vertex}}}};
        e["duplicator"] = r.reply ? json{{"side", side_name(other(r.spoiler.side))}, {"vertex", *r.reply}} : json(nullptr);
        hist.push_back(std::move(e));
    }
    const bool live = s.status == SessionStatus::AwaitingHuman || s.status == SessionStatus::AwaitingEngine;
    json out{{"id", s.id},
             {"g", graph6::encode(s.g)},
             {"h", graph6::encode(s.h)},
             {"role", to_string(s.human)},
             {"k", s.k},
             {"alt", s.alt ? json(*s.alt) : json(nullptr)},
             {"status", to_string(s.status)},
             {"history", hist},
             {"turn", live ? json(s.spoiler_to_move() ? "spoiler" : "duplicator") : json(nullptr)}};
    if (s.violation) {
        const auto pos = s.position();
        auto pair_json = [&](std::size_t i) { return json{pos.pairs[i].first, pos.pairs[i].second}; };
        out["violation"] = {pair_json(s.violation->first), pair_json(s.violation->second)};
    } else {
        out["violation"] = nullptr;
    }
    return out;
}

struct GameService::Entry {
    std::mutex mu;
    Session session;
    std::unique_ptr<EfGame> engine;
};

namespace {

ServiceReply error(int status, std::string message) { return {status, json{{"error", std::move(message)}}}; }

std::optional<std::pair<std::size_t, std::size_t>> find_violation(const Graph& g, const Graph& h,
                                                                   const GamePosition& pos) {
    const auto& p = pos.pairs;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i; j < p.size(); ++j) {
            const bool eq_g = p[i].first == p[j].first, eq_h = p[i].second == p[j].second;
            if (i != j && eq_g != eq_h) return std::pair{i, j};
            if (i != j && !eq_g && g.adjacent(p[i].first, p[j].first) != h.adjacent(p[i].second, p[j].second))
                return std::pair{i, j};
        }
    return std::nullopt;
}

std::size_t unmarked(const Session& s, Side side) {
    const auto pos = s.position();
    const std::size_t n = side == Side::G ? s.g.order() : s.h.order();
    std::vector<bool> used(n, false);
    for (const auto& [a, b] : pos.pairs) used[side == Side::G ? a : b] = true;
    return static_cast<std::size_t>(std::count(used.begin(), used.end(), false));
}

// Closes the round if complete: checks the correspondence and the budget.
void settle(Session& s) {
    if (!s.spoiler_to_move()) return;
    const auto pos = s.position();
    if (auto v = find_violation(s.g, s.h, pos)) {
        s.violation = v;
        s.status = SessionStatus::SpoilerWon;
    } else if (pos.pairs.size() >= s.k) {
        s.status = SessionStatus::DuplicatorWon;
    }
}

// Argmin of the analysis; among equal values the board with more unmarked
// vertices goes first, then G, then the lowest vertex.
Move engine_spoiler_move(const Session& s, const MoveAnalysis& a) {
    const MoveValue* best = nullptr;
    auto key = [&](const MoveValue& m) {
        const std::size_t v = m.value ? *m.value : kUnbounded;
        return std::tuple{v, kUnbounded - unmarked(s, m.move.side), m.move.side == Side::G ? 0 : 1, m.move.vertex};
    };
    for (const auto& m : a.moves)
        if (!best || key(m) < key(*best)) best = &m;
    if (!best) throw Error("engine has no legal move");
    return best->move;
}

Vertex engine_reply(const Session& s, EfGame& engine) {
    const Move m = s.history.back().spoiler;
    const std::size_t left = s.k - s.position().pairs.size();
    // replies that survive, ranked by how long Spoiler still needs
    const GamePosition pos = s.position();
    const AltState next = s.alt_state();
    std::optional<Vertex> pick;
    std::size_t pick_score = 0;
    for (Vertex w : engine.replies(pos, m)) {
        GamePosition after = pos;
        if (m.side == Side::G) after.pairs.emplace_back(m.vertex, w);
        else after.pairs.emplace_back(w, m.vertex);
        const auto v = left > 1 ? engine.value(after, left - 1, next) : std::optional<std::size_t>{};
        const std::size_t score = v ? *v : kUnbounded;
        if (!pick || score > pick_score) {
            pick = w;
            pick_score = score;
        }
    }
    if (pick) return *pick;
    // every reply loses; answer with the lowest vertex of the other board
    return 0;
}

void engine_turns(Session& s, EfGame& engine) {
    while (s.status == SessionStatus::AwaitingHuman || s.status == SessionStatus::AwaitingEngine) {
        const bool spoiler = s.spoiler_to_move();
        const bool engine_turn = (spoiler && s.human == Role::Duplicator) || (!spoiler && s.human == Role::Spoiler);
        if (!engine_turn) {
            s.status = SessionStatus::AwaitingHuman;
            return;
        }
        s.status = SessionStatus::AwaitingEngine;
        if (spoiler) {
            const std::size_t left = s.k - s.position().pairs.size();
            const auto a = engine.analyze(s.position(), left, s.alt_state());
            s.history.push_back({engine_spoiler_move(s, a), std::nullopt});
        } else {
            s.history.back().reply = engine_reply(s, engine);
            settle(s);
        }
        if (s.status == SessionStatus::AwaitingEngine) s.status = SessionStatus::AwaitingHuman;
    }
}

} // namespace

GameService::GameService() = default;
GameService::~GameService() = default;

std::shared_ptr<GameService::Entry> GameService::find(const std::string& id) const {
    std::shared_lock lock(mu_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
}

ServiceReply GameService::create(const json& req) {
    Session s;
    try {
        if (!req.is_object()) return error(400, "request body must be a JSON object");
        s.g = graph6::decode(req.at("g").get<std::string>());
        s.h = graph6::decode(req.at("h").get<std::string>());
        const std::string role = req.at("role").get<std::string>();
        if (role == "spoiler") s.human = Role::Spoiler;
        else if (role == "duplicator") s.human = Role::Duplicator;
        else return error(400, "role must be \"spoiler\" or \"duplicator\"");
        const auto k = req.at("k").get<std::int64_t>();
        if (k < 1) return error(400, "k must be at least 1");
        s.k = static_cast<std::size_t>(k);
        if (req.contains("alt") && !req.at("alt").is_null()) {
            const auto alt = req.at("alt").get<std::int64_t>();
            if (alt < 0) return error(400, "alt must be non-negative");
            s.alt = static_cast<std::size_t>(alt);
        }
    } catch (const ParseError& e) {
        return error(400, e.what());
    } catch (const json::exception& e) {
        return error(400, std::string("malformed request: ") + e.what());
    }
    if (s.g.order() == 0 || s.h.order() == 0) return error(400, "graphs must have at least one vertex");
    if (s.g.order() > kServiceMaxOrder || s.h.order() > kServiceMaxOrder)
        return error(422, "engine infeasible at this size: boards are limited to 32 vertices");
    const double est = std::max(estimated_states(s.g.order(), s.h.order(), s.k),
                                estimated_states(s.h.order(), s.g.order(), s.k));
    if (est > kEngineStateCap) return error(422, "engine infeasible at this size");

    auto entry = std::make_shared<Entry>();
    entry->engine = std::make_unique<EfGame>(s.g, s.h);
    {
        std::unique_lock lock(mu_);
        s.id = "s" + std::to_string(next_id_++);
    }
    entry->session = std::move(s);
    try {
        engine_turns(entry->session, *entry->engine);
    } catch (const CapExceeded& e) {
        return error(422, std::string("engine infeasible at this size: ") + e.what());
    }
    const json body = to_json(entry->session);
    {
        std::unique_lock lock(mu_);
        sessions_[entry->session.id] = entry;
    }
    return {201, body};
}

ServiceReply GameService::get(const std::string& id) const {
    auto e = find(id);
    if (!e) return error(404, "unknown session " + id);
    std::lock_guard lock(e->mu);
    return {200, to_json(e->session)};
}

ServiceReply GameService::move(const std::string& id, const json& req) {
    auto e = find(id);
    if (!e) return error(404, "unknown session " + id);
    std::unique_lock lock(e->mu, std::try_to_lock);
    if (!lock.owns_lock()) return error(409, "another move is being processed");
    Session& s = e->session;
    if (s.status != SessionStatus::AwaitingHuman) return error(409, "the game is over");
    Side side;
    std::int64_t vertex = 0;
    try {
        const std::string sd = req.at("side").get<std::string>();
        if (sd == "G") side = Side::G;
        else if (sd == "H") side = Side::H;
        else return error(400, "side must be \"G\" or \"H\"");
        vertex = req.at("vertex").get<std::int64_t>();
    } catch (const json::exception& ex) {
        return error(400, std::string("malformed move: ") + ex.what());
    }
    const std::size_t n = side == Side::G ? s.g.order() : s.h.order();
    if (vertex < 0 || static_cast<std::size_t>(vertex) >= n) return error(400, "unknown vertex");
    const auto v = static_cast<Vertex>(vertex);
    const bool spoiler = s.spoiler_to_move();
    if (spoiler != (s.human == Role::Spoiler)) return error(409, "not your turn");
    if (spoiler) {
        if (!s.alt_state().allows(side)) return error(400, "alternation budget exhausted: stay on the same board");
        const auto pos = s.position();
        for (const auto& [a, b] : pos.pairs)
            if ((side == Side::G ? a : b) == v) return error(400, "vertex is already marked");
        s.history.push_back({{side, v}, std::nullopt});
    } else {
        if (side == s.history.back().spoiler.side) return error(400, "must reply in the other graph");
        s.history.back().reply = v;
        settle(s);
    }
    try {
        engine_turns(s, *e->engine);
    } catch (const CapExceeded& ex) {
        return error(422, ex.what());
    }
    return {200, to_json(s)};
}

ServiceReply GameService::analysis(const std::string& id) const {
    auto e = find(id);
    if (!e) return error(404, "unknown session " + id);
    std::unique_lock lock(e->mu, std::try_to_lock);
    if (!lock.owns_lock()) return error(409, "a move is being processed");
    const Session& s = e->session;
    json out{{"id", s.id}, {"hint", true}, {"moves", json::array()}, {"replies", json::array()}};
    const bool live = s.status == SessionStatus::AwaitingHuman;
    const std::size_t done = s.position().pairs.size();
    out["budget"] = live ? s.k - done : 0;
    if (!live) {
        out["value"] = nullptr;
        out["best"] = nullptr;
        return {200, out};
    }
    if (s.spoiler_to_move()) {
        const auto a = e->engine->analyze(s.position(), s.k - done, s.alt_state());
        out["value"] = a.value ? json(*a.value) : json(nullptr);
        out["best"] = a.best ? json{{"side", side_name(a.best->side)}, {"vertex", a.best->vertex}} : json(nullptr);
        for (const auto& m : a.moves)
            out["moves"].push_back({{"side", side_name(m.move.side)},
                                    {"vertex", m.move.vertex},
                                    {"value", m.value ? json(*m.value) : json(nullptr)}});
    } else {
        // Duplicator to answer: values of each surviving reply
        const Move m = s.history.back().spoiler;
        const GamePosition pos = s.position();
        const AltState next = s.alt_state();
        const std::size_t left = s.k - done;
        for (Vertex w : e->engine->replies(pos, m)) {
            GamePosition after = pos;
            if (m.side == Side::G) after.pairs.emplace_back(m.vertex, w);
            else after.pairs.emplace_back(w, m.vertex);
            const auto v = left > 1 ? e->engine->value(after, left - 1, next) : std::optional<std::size_t>{};
            out["replies"].push_back({{"side", side_name(other(m.side))},
                                      {"vertex", w},
                                      {"value", v ? json(*v) : json(nullptr)}});
        }
        out["value"] = nullptr;
        out["best"] = nullptr;
    }
    return {200, out};
}

} // namespace folab
