#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "xrwm/error.hpp"
#include "xrwm/surfaces.hpp"

namespace xrwm {

inline constexpr double kDefaultMinHover = 0.3;      // s
inline constexpr double kDefaultBufferWindow = 10.0;  // s

struct HeadPose {
  Vec3 position = Vec3::Zero();
  Vec3 forward = -Vec3::UnitZ();
  double timestamp = 0.0;

  /// Normalizes `forward`; a zero vector is rejected.
  static HeadPose make(const Vec3& position, const Vec3& forward, double timestamp) {
    double len = forward.norm();
    if (!(len > 1e-12) || !std::isfinite(len))
      throw Error(ErrorKind::DegenerateGeometry, "head forward vector must be non-zero");
    return HeadPose{position, forward / len, timestamp};
  }

  friend bool operator==(const HeadPose&, const HeadPose&) = default;
};

struct PointingEvent {
  std::string identifier;
  double hover_duration = 0.0;
  double timestamp = 0.0;

  friend bool operator==(const PointingEvent&, const PointingEvent&) = default;
};

struct AttentionState {
  HeadPose head;
  std::vector<PointingEvent> pointing_buffer;  // oldest first
  double buffer_window = kDefaultBufferWindow;

  friend bool operator==(const AttentionState&, const AttentionState&) = default;
};

/// Product of a facing term (is the surface in front of the head) and an
/// orientation term (does the surface face the viewer). No occlusion.
inline double visibility_score(const HeadPose& head, const FlatSurface& surface) {
  Vec3 to_surface = surface.basis.centroid - head.position;
  double dist = to_surface.norm();
  if (dist < 1e-9) throw Error(ErrorKind::DegenerateGeometry, "head position coincides with surface centroid");
  Vec3 d = to_surface / dist;
  double facing = std::max(0.0, head.forward.dot(d));
  double orientation = std::max(0.0, (-d).dot(surface.basis.normal));
  return std::clamp(facing * orientation, 0.0, 1.0);
}

inline AttentionState record_pointing(const AttentionState& state, const PointingEvent& event) {
  if (event.identifier.empty()) throw Error(ErrorKind::SchemaViolation, "pointing identifier must be non-empty");
  if (!(event.hover_duration >= 0.0)) throw Error(ErrorKind::SchemaViolation, "hover duration must be >= 0");
  if (!state.pointing_buffer.empty() && event.timestamp < state.pointing_buffer.back().timestamp)
    throw Error(ErrorKind::ClockError, "pointing event at t=" + std::to_string(event.timestamp) +
                                           " precedes buffered event at t=" +
                                           std::to_string(state.pointing_buffer.back().timestamp));
  AttentionState out = state;
  out.pointing_buffer.push_back(event);
  const double cutoff = event.timestamp - out.buffer_window;
  std::erase_if(out.pointing_buffer, [&](const PointingEvent& e) { return e.timestamp < cutoff; });
  return out;
}

inline std::vector<PointingEvent> salient_pointing(const AttentionState& state, double min_hover) {
  std::vector<PointingEvent> out;
  std::copy_if(state.pointing_buffer.begin(), state.pointing_buffer.end(), std::back_inserter(out),
               [&](const PointingEvent& e) { return e.hover_duration >= min_hover; });
  return out;
}

inline nlohmann::json to_json(const HeadPose& h) {
  return {{"position", {h.position.x(), h.position.y(), h.position.z()}},
          {"forward", {h.forward.x(), h.forward.y(), h.forward.z()}},
          {"timestamp", h.timestamp}};
}

namespace detail {
inline Vec3 vec3_from_json(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number() || !j[2].is_number())
    throw Error(ErrorKind::SchemaViolation, what + " must be [x,y,z]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}
}  // namespace detail

/// `{position:[x,y,z], forward:[x,y,z], timestamp}`; `timestamp` may be
/// omitted when `default_time` supplies it (trace replay).
inline HeadPose head_pose_from_json(const nlohmann::json& j, std::optional<double> default_time = std::nullopt) {
  if (!j.is_object()) throw Error(ErrorKind::SchemaViolation, "head pose must be an object");
  if (!j.contains("position") || !j.contains("forward"))
    throw Error(ErrorKind::SchemaViolation, "head pose needs 'position' and 'forward'");
  double t = 0.0;
  if (auto it = j.find("timestamp"); it != j.end()) {
    if (!it->is_number()) throw Error(ErrorKind::SchemaViolation, "head timestamp must be a number");
    t = it->get<double>();
  } else if (default_time) {
    t = *default_time;
  } else {
    throw Error(ErrorKind::SchemaViolation, "head pose needs 'timestamp'");
  }
  return HeadPose::make(detail::vec3_from_json(j["position"], "position"),
                        detail::vec3_from_json(j["forward"], "forward"), t);
}

inline nlohmann::json to_json(const PointingEvent& e) {
  return {{"identifier", e.identifier}, {"hoverDuration", e.hover_duration}, {"timestamp", e.timestamp}};
}

/// `{identifier, hoverDuration, timestamp}` as posted by the UI.
inline PointingEvent pointing_event_from_json(const nlohmann::json& j,
                                              std::optional<double> default_time = std::nullopt) {
  if (!j.is_object()) throw Error(ErrorKind::SchemaViolation, "pointing event must be an object");
  auto id = j.find("identifier");
  auto hover = j.find("hoverDuration");
  if (id == j.end() || !id->is_string()) throw Error(ErrorKind::SchemaViolation, "pointing event needs 'identifier'");
  if (hover == j.end() || !hover->is_number())
    throw Error(ErrorKind::SchemaViolation, "pointing event needs numeric 'hoverDuration'");
  PointingEvent e{id->get<std::string>(), hover->get<double>(), 0.0};
  if (auto it = j.find("timestamp"); it != j.end()) {
    if (!it->is_number()) throw Error(ErrorKind::SchemaViolation, "pointing timestamp must be a number");
    e.timestamp = it->get<double>();
  } else if (default_time) {
    e.timestamp = *default_time;
  } else {
    throw Error(ErrorKind::SchemaViolation, "pointing event needs 'timestamp'");
  }
  if (e.identifier.empty()) throw Error(ErrorKind::SchemaViolation, "pointing identifier must be non-empty");
  if (!(e.hover_duration >= 0.0)) throw Error(ErrorKind::SchemaViolation, "hoverDuration must be >= 0");
  return e;
}

}  // namespace xrwm
