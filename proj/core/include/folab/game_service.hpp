#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include <nlohmann/json.hpp>

#include "folab/ef_game.hpp"
#include "folab/graph.hpp"

namespace folab {

/// Largest board the service accepts on either side.
inline constexpr std::size_t kServiceMaxOrder = 32;

enum class Role { Spoiler, Duplicator };
enum class SessionStatus { AwaitingHuman, AwaitingEngine, SpoilerWon, DuplicatorWon };

const char* to_string(Role r);
const char* to_string(SessionStatus s);

struct Round {
    Move spoiler;
    std::optional<Vertex> reply; ///< Duplicator's vertex on the other board
};

struct Session {
    std::string id;
    Graph g, h;
    Role human = Role::Spoiler;
    std::size_t k = 1;
    std::optional<std::size_t> alt;
    std::vector<Round> history;
    SessionStatus status = SessionStatus::AwaitingHuman;
    /// Pair indices (into the marked pairs) that broke the correspondence.
    std::optional<std::pair<std::size_t, std::size_t>> violation;

    GamePosition position() const; ///< completed rounds only
    AltState alt_state() const;
    bool spoiler_to_move() const;
};

nlohmann::json to_json(const Session& s);

/// HTTP-shaped answer: status code plus JSON body ({"error": ...} on failure).
struct ServiceReply {
    int status = 200;
    nlohmann::json body;
};

/// In-memory Ehrenfeucht game sessions against the engine. Thread safe;
/// moves on one session are serialized and a concurrent move is rejected
/// with 409.
class GameService {
public:
    GameService();
    ~GameService();

    /// {g, h: graph6, role: "spoiler"|"duplicator", k, alt?}
    ServiceReply create(const nlohmann::json& request);
    ServiceReply get(const std::string& id) const;
    /// {side: "G"|"H", vertex}
    ServiceReply move(const std::string& id, const nlohmann::json& request);
    ServiceReply analysis(const std::string& id) const;

private:
    struct Entry;
    std::shared_ptr<Entry> find(const std::string& id) const;

    mutable std::shared_mutex mu_;
    std::map<std::string, std::shared_ptr<Entry>> sessions_;
    std::size_t next_id_ = 1;
};

} // namespace folab
