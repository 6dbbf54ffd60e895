#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "tam/io.hpp"
#include "tam/svg.hpp"

namespace tam {

/// Result of one API call: HTTP status plus either a JSON body or raw text.
struct ApiResponse {
  int status = 200;
  json body;
  std::string text;  // used instead of body when content_type is not JSON
  std::string content_type = "application/json";

  std::string payload() const { return content_type == "application/json" ? body.dump() : text; }
};

/// Interactive exploration state. `current` is always producible from the
/// seed via `history`.
struct Session {
  struct Branch {
    Assembly assembly;
    std::vector<Attachment> history;
  };

  std::string id;
  TileSystem system;
  Assembly current;
  std::vector<Attachment> history;
  std::map<std::string, Branch> branches;
  std::chrono::steady_clock::time_point last_used;
  mutable std::mutex mutex;

  Session(std::string id_, TileSystem sys)
      : id(std::move(id_)), system(std::move(sys)), current(Assembly::seed_of(system)) {}
};

namespace detail {

inline ApiResponse json_response(int status, json body) {
  ApiResponse r;
  r.status = status;
  r.body = std::move(body);
  return r;
}

inline ApiResponse api_error(int status, std::string code, std::string message) {
  return json_response(status, {{"code", std::move(code)}, {"message", std::move(message)}});
}

inline json session_state(const Session& s) {
  json frontier = json::array();
  for (const auto& a : frontier_attachments(s.system, s.current)) {
    json bonds = json::array();
    for (Direction d : kDirections)
      if (auto occ = s.current.at(neighbor(a.point, d)))
        if (int w = s.system.bond(a.tile, d, *occ); w > 0)
          bonds.push_back({{"side", std::string(short_name(d))}, {"strength", w}});
    frontier.push_back({{"point", to_json(a.point)},
                        {"tile", s.system.tile(a.tile).name},
                        {"strength", a.strength},
                        {"bonds", std::move(bonds)}});
  }
  json history = json::array();
  for (const auto& h : s.history)
    history.push_back({{"point", to_json(h.point)}, {"tile", s.system.tile(h.tile).name}});
  json branches = json::array();
  for (const auto& [name, b] : s.branches) branches.push_back(name);
  const bool terminal = frontier.empty();
  return {{"id", s.id},
          {"system", s.system.name()},
          {"assembly", to_json(s.current, s.system)},
          {"key", to_hex(s.current.canonical_key())},
          {"frontier", std::move(frontier)},
          {"terminal", terminal},
          {"history", std::move(history)},
          {"branches", std::move(branches)}};
}

inline std::optional<json> parse_body(const std::string& body) {
  try {
    return json::parse(body);
  } catch (const json::parse_error&) {
    return std::nullopt;
  }
}

}  // namespace detail

/// In-memory session registry implementing the exploration API. Every
/// mutation of a session holds that session's lock; reads take the same lock
/// and so observe a consistent snapshot.
class SessionStore {
 public:
  explicit SessionStore(std::chrono::seconds idle_ttl = std::chrono::hours(1))
      : ttl_(idle_ttl), rng_(std::random_device{}()) {}

  ApiResponse create(const std::string& body) {
    auto doc = detail::parse_body(body);
    if (!doc) return detail::api_error(400, "bad_request", "body is not valid JSON");
    std::shared_ptr<Session> s;
    try {
      auto parsed = system_from_json(*doc);
      s = std::make_shared<Session>(new_id(), std::move(parsed.system));
    } catch (const Error& e) {
      return detail::api_error(400, "bad_request", e.what());
    }
    s->last_used = std::chrono::steady_clock::now();
    {
      std::lock_guard lock(mutex_);
      expire_locked();
      sessions_[s->id] = s;
    }
    std::lock_guard lock(s->mutex);
    return detail::json_response(201, detail::session_state(*s));
  }

  ApiResponse get(const std::string& id) {
    return with_session(id, [](Session& s) { return detail::json_response(200, detail::session_state(s)); });
  }

  ApiResponse attach(const std::string& id, const std::string& body) {
    auto doc = detail::parse_body(body);
    if (!doc || !doc->is_object() || !doc->contains("point") || !doc->contains("tile") ||
        !(*doc)["tile"].is_string())
      return detail::api_error(400, "bad_request", "expected {\"point\": [x, y], \"tile\": name}");
    Point p;
    try {
      p = detail::expect_point((*doc)["point"], "$.point");
    } catch (const Error& e) {
      return detail::api_error(400, "bad_request", e.what());
    }
    const std::string tile_name = (*doc)["tile"].get<std::string>();
    return with_session(id, [&](Session& s) {
      const TileIndex t = s.system.find(tile_name);
      if (t == s.system.size())
        return detail::api_error(400, "bad_request", "unknown tile '" + tile_name + "'");
      const int strength = s.current.occupied(p) ? 0 : binding_strength(s.system, s.current, p, t);
      if (strength < kTemperature)
        return detail::api_error(409, "illegal_step",
                                 "tile '" + tile_name + "' at " + to_string(p) +
                                     " is not a frontier attachment");
      s.current = tam::attach(s.current, p, t, s.system);
      s.history.push_back({p, t, strength});
      return detail::json_response(200, detail::session_state(s));
    });
  }

  ApiResponse undo(const std::string& id) {
    return with_session(id, [](Session& s) {
      if (s.history.empty()) return detail::api_error(409, "at_seed", "nothing to undo");
      s.history.pop_back();
      s.current = rebuild(s.system, s.history);
      return detail::json_response(200, detail::session_state(s));
    });
  }

  ApiResponse save_branch(const std::string& id, const std::string& body) {
    auto doc = detail::parse_body(body);
    if (!doc || !doc->is_object() || !doc->contains("name") || !(*doc)["name"].is_string() ||
        (*doc)["name"].get<std::string>().empty())
      return detail::api_error(400, "bad_request", "expected {\"name\": non-empty string}");
    const std::string name = (*doc)["name"].get<std::string>();
    return with_session(id, [&](Session& s) {
      s.branches.insert_or_assign(name, Session::Branch{s.current, s.history});
      return detail::json_response(200, detail::session_state(s));
    });
  }

  ApiResponse list_branches(const std::string& id) {
    return with_session(id, [](Session& s) {
      json out = json::array();
      for (const auto& [name, b] : s.branches)
        out.push_back({{"name", name},
                       {"assembly", to_json(b.assembly, s.system)},
                       {"key", to_hex(b.assembly.canonical_key())},
                       {"steps", b.history.size()}});
      return detail::json_response(200, out);
    });
  }

  ApiResponse checkout(const std::string& id, const std::string& name) {
    return with_session(id, [&](Session& s) {
      auto it = s.branches.find(name);
      if (it == s.branches.end())
        return detail::api_error(404, "not_found", "unknown branch '" + name + "'");
      s.current = it->second.assembly;
      s.history = it->second.history;
      return detail::json_response(200, detail::session_state(s));
    });
  }

  /// Points where two saved branches place different tile types.
  ApiResponse diff(const std::string& id, const std::string& a, const std::string& b) {
    return with_session(id, [&](Session& s) {
      auto ia = s.branches.find(a);
      auto ib = s.branches.find(b);
      if (ia == s.branches.end() || ib == s.branches.end())
        return detail::api_error(404, "not_found", "unknown branch");
      json out = json::array();
      for (const auto& pl : ia->second.assembly.placements()) {
        auto other = ib->second.assembly.at(pl.point);
        if (other && *other != pl.tile)
          out.push_back({{"point", to_json(pl.point)},
                         {"a", s.system.tile(pl.tile).name},
                         {"b", s.system.tile(*other).name}});
      }
      return detail::json_response(200, out);
    });
  }

  ApiResponse svg(const std::string& id) {
    return with_session(id, [](Session& s) {
      ApiResponse r;
      r.content_type = "image/svg+xml";
      r.text = render_svg(s.current, s.system, {.show_frontier = true});
      return r;
    });
  }

  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return sessions_.size();
  }

  /// Drops sessions idle for longer than the TTL.
  void expire_idle() {
    std::lock_guard lock(mutex_);
    expire_locked();
  }

 private:
  static Assembly rebuild(const TileSystem& sys, const std::vector<Attachment>& history) {
    Assembly a = Assembly::seed_of(sys);
    for (const auto& h : history) a = tam::attach(a, h.point, h.tile, sys);
    return a;
  }

  template <typename Fn>
  ApiResponse with_session(const std::string& id, Fn&& fn) {
    std::shared_ptr<Session> s;
    {
      std::lock_guard lock(mutex_);
      expire_locked();
      auto it = sessions_.find(id);
      if (it == sessions_.end())
        return detail::api_error(404, "not_found", "unknown session '" + id + "'");
      s = it->second;
    }
    std::lock_guard lock(s->mutex);
    s->last_used = std::chrono::steady_clock::now();
    return fn(*s);
  }

  void expire_locked() {
    const auto now = std::chrono::steady_clock::now();
    for (auto it = sessions_.begin(); it != sessions_.end();) {
      std::unique_lock slock(it->second->mutex, std::try_to_lock);
      const bool idle = slock.owns_lock() && now - it->second->last_used > ttl_;
      if (slock.owns_lock()) slock.unlock();
      it = idle ? sessions_.erase(it) : std::next(it);
    }
  }

  std::string new_id() {
    std::lock_guard lock(mutex_);
    static constexpr char digits[] = "0123456789abcdef";
    std::string id;
    do {
      std::uint64_t v = rng_();
      id.clear();
      for (int i = 0; i < 16; ++i, v >>= 4) id.push_back(digits[v & 0xF]);
    } while (sessions_.contains(id));
    return id;
  }

  std::chrono::seconds ttl_;
  mutable std::mutex mutex_;
  std::mt19937_64 rng_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
};

}  // namespace tam
