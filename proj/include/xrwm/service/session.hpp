#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "xrwm/attention.hpp"
#include "xrwm/error.hpp"
#include "xrwm/intent/plan.hpp"
#include "xrwm/intent/prompt.hpp"
#include "xrwm/intent/resolver.hpp"
#include "xrwm/scene.hpp"
#include "xrwm/surfaces.hpp"
#include "xrwm/workspace.hpp"

namespace xrwm {

struct SessionConfig {
  ExtractionParams extraction;
  double min_hover = kDefaultMinHover;
  double buffer_window = kDefaultBufferWindow;
  double layout_margin = kDefaultLayoutMargin;
  std::string system_text = kSystemPromptTemplate;

  /// Reads the optional overrides accepted by POST /sessions.
  static SessionConfig from_json(const nlohmann::json& j, SessionConfig base) {
    if (j.is_null()) return base;
    if (!j.is_object()) throw Error(ErrorKind::ConfigError, "session config must be an object");
    auto number = [&](const char* key, double& out) {
      if (auto it = j.find(key); it != j.end()) {
        if (!it->is_number()) throw Error(ErrorKind::ConfigError, std::string("config '") + key + "' must be a number");
        out = it->get<double>();
      }
    };
    number("threshold_deg", base.extraction.angular_threshold_deg);
    number("min_area", base.extraction.min_area_m2);
    number("min_hover", base.min_hover);
    number("buffer_window", base.buffer_window);
    number("margin", base.layout_margin);
    if (!(base.min_hover >= 0.0)) throw Error(ErrorKind::ConfigError, "min_hover must be >= 0");
    if (!(base.buffer_window > 0.0)) throw Error(ErrorKind::ConfigError, "buffer_window must be > 0");
    if (!(base.layout_margin >= 0.0)) throw Error(ErrorKind::ConfigError, "margin must be >= 0");
    return base;
  }
};

struct ResolutionRecord {
  std::string request_text;
  PromptDocument prompt;
  std::string raw_response;
  std::optional<ActionPlan> plan;
  nlohmann::json error;  // null when the request succeeded
  bool applied = false;
  double timestamp = 0.0;
};

inline nlohmann::json to_json(const ResolutionRecord& r) {
  return {{"request_text", r.request_text},
          {"prompt", to_json(r.prompt)},
          {"raw_response", r.raw_response},
          {"plan", r.plan ? nlohmann::json(to_json(*r.plan)) : nlohmann::json(nullptr)},
          {"error", r.error},
          {"applied", r.applied},
          {"timestamp", r.timestamp}};
}

struct LogEntry {
  std::uint64_t generation = 0;
  std::variant<PlacementEvent, ResolutionRecord> payload;
};

inline nlohmann::json to_json(const LogEntry& e) {
  if (const auto* p = std::get_if<PlacementEvent>(&e.payload))
    return {{"generation", e.generation}, {"kind", "placement"}, {"event", to_json(*p)}};
  return {{"generation", e.generation},
          {"kind", "resolution"},
          {"record", to_json(std::get<ResolutionRecord>(e.payload))}};
}

struct Session {
  std::string session_id;
  Scene scene;
  std::vector<FlatSurface> surfaces;
  Workspace initial_workspace;
  Workspace workspace;
  AttentionState attention;
  std::vector<LogEntry> event_log;
  std::uint64_t generation = 0;
  SessionConfig config;
  std::vector<std::string> warnings;
};

/// Reply to one request, as returned to the UI.
struct RequestOutcome {
  std::string response;
  std::vector<Action> actions;
  bool applied = false;
  nlohmann::json errors = nlohmann::json::array();
  std::uint64_t generation = 0;
};

inline nlohmann::json to_json(const RequestOutcome& o) {
  nlohmann::json actions = nlohmann::json::array();
  for (const auto& a : o.actions) actions.push_back({std::string(to_string(a.verb)), a.window_ref, a.surface_ref});
  nlohmann::json j{{"response", o.response}, {"actions", actions}, {"applied", o.applied}, {"generation", o.generation}};
  if (!o.errors.empty()) j["errors"] = o.errors;
  return j;
}

/// Loads nothing itself: takes a validated scene and window list, extracts
/// surfaces and seeds the workspace. The default head sits at the room
/// centre looking down -Z.
inline Session create_session(std::string session_id, Scene scene, const std::vector<WindowDescriptor>& windows,
                              const SessionConfig& config = {}) {
  Session s;
  s.session_id = std::move(session_id);
  s.config = config;
  s.surfaces = extract_planar_regions(scene, build_adjacency(scene), config.extraction);
  if (s.surfaces.empty()) s.warnings.push_back("scene has no extractable flat surfaces; requests will yield empty plans");
  s.workspace = make_workspace(s.surfaces, windows, config.layout_margin);
  s.initial_workspace = s.workspace;
  s.attention.buffer_window = config.buffer_window;
  s.attention.head = HeadPose::make(scene.bounding_box_center(), -Vec3::UnitZ(), 0.0);
  s.scene = std::move(scene);
  return s;
}

inline void update_head(Session& s, const HeadPose& head) {
  if (head.timestamp < s.attention.head.timestamp)
    throw Error(ErrorKind::ClockError, "head pose at t=" + std::to_string(head.timestamp) +
                                           " precedes current pose at t=" + std::to_string(s.attention.head.timestamp));
  s.attention.head = head;
  ++s.generation;
}

inline void add_pointing(Session& s, const PointingEvent& e) {
  s.attention = record_pointing(s.attention, e);
  ++s.generation;
}

/// Snapshot visibility, prompt, resolve, parse, validate and execute. Model
/// misbehaviour is recorded and returned, never thrown.
inline RequestOutcome handle_request(Session& s, ResolverBackend& backend, const std::string& text, double timestamp) {
  ResolutionRecord rec;
  rec.request_text = text;
  rec.timestamp = timestamp;
  rec.prompt = build_prompt(text, s.workspace, s.attention, s.config.min_hover, s.config.system_text);

  RequestOutcome out;
  std::vector<PlacementEvent> events;
  try {
    rec.raw_response = backend.resolve(rec.prompt);
    rec.plan = parse_plan(rec.raw_response);
    out.response = rec.plan->response_text;
    out.actions = rec.plan->actions;
    auto validated = validate_plan(*rec.plan, s.workspace);
    auto [next, evs] = execute_plan(validated, s.workspace);
    out.actions.clear();
    for (const auto& a : validated.actions) out.actions.push_back({a.verb, a.window_id, a.surface_id});
    s.workspace = std::move(next);
    events = std::move(evs);
    rec.applied = !events.empty();
  } catch (const Error& e) {
    rec.error = e.to_json();
    if (rec.raw_response.empty() && e.details().contains("attempts") && !e.details()["attempts"].empty())
      rec.raw_response = e.details()["attempts"].back().get<std::string>();
    out.errors.push_back(e.to_json());
  }
  out.applied = rec.applied;
  out.generation = ++s.generation;
  for (auto& e : events) s.event_log.push_back({out.generation, std::move(e)});
  s.event_log.push_back({out.generation, std::move(rec)});
  return out;
}

/// Replays the placement events of a log over `initial`.
inline Workspace fold_event_log(const Workspace& initial, const std::vector<LogEntry>& log) {
  Workspace ws = initial;
  for (const auto& entry : log)
    if (const auto* p = std::get_if<PlacementEvent>(&entry.payload)) ws = apply_event(ws, *p);
  return ws;
}

/// Scene geometry, surfaces and layout for renderers.
inline nlohmann::json scene_view_json(const Session& s) {
  nlohmann::json surfaces = nlohmann::json::array();
  auto snapshot = visibility_snapshot(s.workspace, s.attention.head);
  std::map<std::string, nlohmann::json> descriptors;
  for (auto& d : snapshot) descriptors[d["id"].get<std::string>()] = d;
  for (const auto& surf : s.surfaces) {
    auto j = surface_geometry_json(surf);
    j["descriptor"] = descriptors[surf.id];
    surfaces.push_back(std::move(j));
  }
  return {{"session_id", s.session_id},
          {"generation", s.generation},
          {"mesh", scene_to_json(s.scene)},
          {"surfaces", surfaces},
          {"workspace", to_json(s.workspace)},
          {"head", to_json(s.attention.head)}};
}

/// Owns one session and serializes every mutation through a mutex. Readers
/// get copies; event consumers can block until the generation advances.
class SessionActor {
 public:
  SessionActor(Session session, std::shared_ptr<ResolverBackend> backend)
      : session_(std::move(session)), backend_(std::move(backend)), start_(std::chrono::steady_clock::now()) {}

  Session snapshot() const {
    std::lock_guard lock(mutex_);
    return session_;
  }

  template <typename F>
  auto read(F&& f) const {
    std::lock_guard lock(mutex_);
    return f(static_cast<const Session&>(session_));
  }

  std::uint64_t update_head(const HeadPose& head) {
    return mutate([&](Session& s) { xrwm::update_head(s, head); });
  }

  std::uint64_t add_pointing(const PointingEvent& e) {
    return mutate([&](Session& s) { xrwm::add_pointing(s, e); });
  }

  RequestOutcome request(const std::string& text, std::optional<double> timestamp = std::nullopt) {
    RequestOutcome out;
    mutate([&](Session& s) { out = handle_request(s, *backend_, text, timestamp.value_or(elapsed())); });
    return out;
  }

  /// Log entries newer than `since`, waiting up to `timeout` for one.
  std::pair<std::uint64_t, nlohmann::json> events_since(std::uint64_t since, std::chrono::milliseconds timeout) {
    std::unique_lock lock(mutex_);
    cv_.wait_for(lock, timeout, [&] { return session_.generation > since; });
    nlohmann::json events = nlohmann::json::array();
    for (const auto& e : session_.event_log)
      if (e.generation > since) events.push_back(to_json(e));
    return {session_.generation, events};
  }

 private:
  template <typename F>
  std::uint64_t mutate(F&& f) {
    std::uint64_t gen;
    {
      std::lock_guard lock(mutex_);
      f(session_);
      gen = session_.generation;
    }
    cv_.notify_all();
    return gen;
  }

  double elapsed() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

  mutable std::mutex mutex_;
  std::condition_variable cv_;
  Session session_;
  std::shared_ptr<ResolverBackend> backend_;
  std::chrono::steady_clock::time_point start_;
};

using BackendFactory = std::function<std::shared_ptr<ResolverBackend>()>;

class SessionRegistry {
 public:
  explicit SessionRegistry(BackendFactory factory, SessionConfig defaults = {})
      : factory_(std::move(factory)), defaults_(std::move(defaults)) {}

  std::shared_ptr<SessionActor> create(Scene scene, const std::vector<WindowDescriptor>& windows,
                                       const nlohmann::json& overrides = nullptr) {
    auto config = SessionConfig::from_json(overrides, defaults_);
    std::string id;
    {
      std::lock_guard lock(mutex_);
      id = "session-" + std::to_string(++counter_);
    }
    auto actor = std::make_shared<SessionActor>(create_session(id, std::move(scene), windows, config), factory_());
    std::lock_guard lock(mutex_);
    sessions_[id] = actor;
    return actor;
  }

  std::shared_ptr<SessionActor> get(const std::string& id) const {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw Error(ErrorKind::UnknownSession, "no session '" + id + "'");
    return it->second;
  }

  const SessionConfig& defaults() const { return defaults_; }

 private:
  BackendFactory factory_;
  SessionConfig defaults_;
  mutable std::mutex mutex_;
  std::uint64_t counter_ = 0;
  std::map<std::string, std::shared_ptr<SessionActor>> sessions_;
};

}  // namespace xrwm
