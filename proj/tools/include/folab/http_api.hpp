#pragma once

#include "folab/game_service.hpp"

namespace httplib {
class Server;
}

namespace folab {

/// Routes the game service onto `server`:
///   POST /sessions, GET /sessions/{id}, POST /sessions/{id}/moves,
///   GET /sessions/{id}/analysis.
/// Bodies are JSON; malformed JSON is a 400.
void mount_game_api(httplib::Server& server, GameService& service);

} // namespace folab
