#pragma once

#include <string>

#include <httplib.h>

#include "tam/session.hpp"

namespace tam {

namespace detail {

inline void send(httplib::Response& res, const ApiResponse& r) {
  res.status = r.status;
  res.set_content(r.payload(), r.content_type);
}

}  // namespace detail

/// Wires the session API onto `server`:
///   POST /api/sessions                       create from a system document
///   GET  /api/sessions/{id}                  state, frontier, terminality
///   POST /api/sessions/{id}/attach           {point, tile}; 409 if illegal
///   POST /api/sessions/{id}/undo             409 at the seed
///   POST /api/sessions/{id}/branch           {name}
///   GET  /api/sessions/{id}/branches
///   POST /api/sessions/{id}/branches/{name}/checkout
///   GET  /api/sessions/{id}/branches/diff?a=..&b=..
///   GET  /api/sessions/{id}/svg
inline void register_routes(httplib::Server& server, SessionStore& store) {
  using httplib::Request;
  using httplib::Response;
  const std::string id = R"(/api/sessions/([0-9a-zA-Z_-]+))";

  server.Post("/api/sessions", [&store](const Request& req, Response& res) {
    detail::send(res, store.create(req.body));
  });
  server.Get(id, [&store](const Request& req, Response& res) {
    detail::send(res, store.get(req.matches[1]));
  });
  server.Post(id + "/attach", [&store](const Request& req, Response& res) {
    detail::send(res, store.attach(req.matches[1], req.body));
  });
  server.Post(id + "/undo", [&store](const Request& req, Response& res) {
    detail::send(res, store.undo(req.matches[1]));
  });
  server.Post(id + "/branch", [&store](const Request& req, Response& res) {
    detail::send(res, store.save_branch(req.matches[1], req.body));
  });
  server.Get(id + "/branches", [&store](const Request& req, Response& res) {
    detail::send(res, store.list_branches(req.matches[1]));
  });
  server.Get(id + "/branches/diff", [&store](const Request& req, Response& res) {
    if (!req.has_param("a") || !req.has_param("b")) {
      detail::send(res, detail::api_error(400, "bad_request", "query parameters a and b are required"));
      return;
    }
    detail::send(res, store.diff(req.matches[1], req.get_param_value("a"), req.get_param_value("b")));
  });
  server.Post(id + R"(/branches/([^/]+)/checkout)", [&store](const Request& req, Response& res) {
    detail::send(res, store.checkout(req.matches[1], req.matches[2]));
  });
  server.Get(id + "/svg", [&store](const Request& req, Response& res) {
    detail::send(res, store.svg(req.matches[1]));
  });
}

}  // namespace tam
