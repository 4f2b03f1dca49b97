#pragma once

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <string>

// Eigen before httplib: <resolv.h> defines a `_res` macro that breaks Eigen.
#include <Eigen/Core>
#include <httplib.h>
#include <json.hpp>

#include "xrwm/error.hpp"
#include "xrwm/service/session.hpp"

namespace xrwm {

inline int http_status_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownSession: return 404;
    case ErrorKind::NetworkError:
    case ErrorKind::AuthError:
    case ErrorKind::ProviderError: return 502;
    default: return 400;
  }
}

namespace detail {

inline void reply_json(httplib::Response& res, const nlohmann::json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

inline nlohmann::json body_json(const httplib::Request& req) {
  try {
    return nlohmann::json::parse(req.body);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::SchemaViolation, std::string("request body is not valid JSON: ") + e.what());
  }
}

// A scene or windows reference is either a file path or the document itself.
inline nlohmann::json resolve_ref(const nlohmann::json& ref, const char* what) {
  if (ref.is_string()) return read_json_file(std::filesystem::path(ref.get<std::string>()));
  if (ref.is_object() || ref.is_array()) return ref;
  throw Error(ErrorKind::SchemaViolation, std::string("'") + what + "' must be a path or an inline document");
}

template <typename Handler>
httplib::Server::Handler guarded(Handler h) {
  return [h](const httplib::Request& req, httplib::Response& res) {
    try {
      h(req, res);
    } catch (const Error& e) {
      reply_json(res, {{"errors", {e.to_json()}}}, http_status_for(e.kind()));
    } catch (const std::exception& e) {
      reply_json(res, {{"errors", {{{"kind", "InternalError"}, {"message", e.what()}}}}}, 500);
    }
  };
}

}  // namespace detail

/// Registers the session API on `server`:
///   POST /sessions                     {scene, windows, config?} -> {session_id, ...}
///   GET  /sessions/{id}/scene          mesh, surfaces and layout
///   POST /sessions/{id}/head           HeadPose
///   POST /sessions/{id}/pointing       PointingEvent
///   POST /sessions/{id}/request        {text} -> {response, actions, applied, errors?}
///   GET  /sessions/{id}/workspace
///   GET  /sessions/{id}/events?since=G[&timeout_ms=T]   long poll
inline void register_routes(httplib::Server& server, SessionRegistry& registry) {
  using detail::guarded;
  using detail::reply_json;

  server.Post("/sessions", guarded([&registry](const httplib::Request& req, httplib::Response& res) {
    auto body = detail::body_json(req);
    if (!body.is_object() || !body.contains("scene") || !body.contains("windows"))
      throw Error(ErrorKind::SchemaViolation, "expected {scene, windows, config?}");
    auto scene = parse_scene(detail::resolve_ref(body["scene"], "scene"));
    auto windows = parse_windows(detail::resolve_ref(body["windows"], "windows"));
    auto actor = registry.create(std::move(scene), windows, body.value("config", nlohmann::json(nullptr)));
    reply_json(res, actor->read([](const Session& s) {
      return nlohmann::json{{"session_id", s.session_id},
                            {"generation", s.generation},
                            {"surface_count", s.surfaces.size()},
                            {"warnings", s.warnings}};
    }), 201);
  }));

  server.Get(R"(/sessions/([^/]+)/scene)", guarded([&registry](const httplib::Request& req, httplib::Response& res) {
    reply_json(res, registry.get(req.matches[1])->read([](const Session& s) { return scene_view_json(s); }));
  }));

  server.Get(R"(/sessions/([^/]+)/workspace)", guarded([&registry](const httplib::Request& req, httplib::Response& res) {
    reply_json(res, registry.get(req.matches[1])->read([](const Session& s) {
      auto j = to_json(s.workspace);
      j["generation"] = s.generation;
      return j;
    }));
  }));

  server.Post(R"(/sessions/([^/]+)/head)", guarded([&registry](const httplib::Request& req, httplib::Response& res) {
    auto actor = registry.get(req.matches[1]);
    auto gen = actor->update_head(head_pose_from_json(detail::body_json(req)));
    reply_json(res, {{"generation", gen}});
  }));

  server.Post(R"(/sessions/([^/]+)/pointing)", guarded([&registry](const httplib::Request& req, httplib::Response& res) {
    auto actor = registry.get(req.matches[1]);
    auto gen = actor->add_pointing(pointing_event_from_json(detail::body_json(req)));
    reply_json(res, {{"generation", gen}});
  }));

  server.Post(R"(/sessions/([^/]+)/request)", guarded([&registry](const httplib::Request& req, httplib::Response& res) {
    auto actor = registry.get(req.matches[1]);
    auto body = detail::body_json(req);
    if (!body.is_object() || !body.contains("text") || !body["text"].is_string())
      throw Error(ErrorKind::SchemaViolation, "expected {text}");
    std::optional<double> ts;
    if (body.contains("timestamp") && body["timestamp"].is_number()) ts = body["timestamp"].get<double>();
    reply_json(res, to_json(actor->request(body["text"].get<std::string>(), ts)));
  }));

  server.Get(R"(/sessions/([^/]+)/events)", guarded([&registry](const httplib::Request& req, httplib::Response& res) {
    auto actor = registry.get(req.matches[1]);
    auto number = [&](const char* key, long long fallback) {
      if (!req.has_param(key)) return fallback;
      try {
        return std::stoll(req.get_param_value(key));
      } catch (const std::exception&) {
        throw Error(ErrorKind::SchemaViolation, std::string("query parameter '") + key + "' must be an integer");
      }
    };
    auto since = static_cast<std::uint64_t>(std::max(0LL, number("since", 0)));
    auto timeout = std::chrono::milliseconds(std::clamp(number("timeout_ms", 25000), 0LL, 60000LL));
    auto [gen, events] = actor->events_since(since, timeout);
    reply_json(res, {{"generation", gen}, {"events", events}});
  }));
}

}  // namespace xrwm
