#include "folab/http_api.hpp"

#include <httplib.h>

namespace folab {

namespace {

void send(httplib::Response& res, const ServiceReply& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
}

// Parses the request body; on failure writes a 400 and returns nullopt.
std::optional<nlohmann::json> body_json(const httplib::Request& req, httplib::Response& res) {
    try {
        return nlohmann::json::parse(req.body);
    } catch (const nlohmann::json::parse_error& e) {
        send(res, {400, {{"error", std::string("malformed JSON: ") + e.what()}}});
        return std::nullopt;
    }
}

} // namespace

void mount_game_api(httplib::Server& server, GameService& service) {
    server.Post("/sessions", [&](const httplib::Request& req, httplib::Response& res) {
        if (auto j = body_json(req, res)) send(res, service.create(*j));
    });
    server.Get(R"(/sessions/([^/]+))", [&](const httplib::Request& req, httplib::Response& res) {
        send(res, service.get(req.matches[1]));
    });
    server.Post(R"(/sessions/([^/]+)/moves)", [&](const httplib::Request& req, httplib::Response& res) {
        if (auto j = body_json(req, res)) send(res, service.move(req.matches[1], *j));
    });
    server.Get(R"(/sessions/([^/]+)/analysis)", [&](const httplib::Request& req, httplib::Response& res) {
        send(res, service.analysis(req.matches[1]));
    });
    server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string what = "internal error";
        try {
            std::rethrow_exception(ep);
        } catch (const std::exception& e) {
            what = e.what();
        } catch (...) {
        }
        send(res, {500, {{"error", what}}});
    });
}

} // namespace folab
