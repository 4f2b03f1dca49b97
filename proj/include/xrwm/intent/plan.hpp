#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "xrwm/error.hpp"
#include "xrwm/labels.hpp"
#include "xrwm/workspace.hpp"

namespace xrwm {

enum class Verb { place, remove };

inline std::string_view to_string(Verb v) { return v == Verb::place ? "place" : "remove"; }

struct Action {
  Verb verb = Verb::place;
  std::string window_ref;
  std::string surface_ref;

  friend bool operator==(const Action&, const Action&) = default;
};

struct ActionPlan {
  std::string response_text;
  std::vector<Action> actions;

  friend bool operator==(const ActionPlan&, const ActionPlan&) = default;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Returns the body of the first ``` fenced block, or the trimmed text when
// there is no complete fence.
inline std::string_view strip_code_fence(std::string_view raw) {
  std::string_view text = trim(raw);
  auto open = text.find("```");
  if (open == std::string_view::npos) return text;
  auto body_start = text.find('\n', open);
  if (body_start == std::string_view::npos) return text;
  auto close = text.find("```", body_start + 1);
  if (close == std::string_view::npos) return text;
  return trim(text.substr(body_start + 1, close - body_start - 1));
}

}  // namespace detail

/// Strict parse of a model reply. Top level must be exactly
/// `{"response": str, "actions": [[verb, window, surface], ...]}`; a
/// surrounding markdown code fence is tolerated.
inline ActionPlan parse_plan(std::string_view raw) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(detail::strip_code_fence(raw));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::MalformedJson, std::string("model reply is not valid JSON: ") + e.what(),
                {{"raw", std::string(raw)}});
  }
  if (!doc.is_object()) throw Error(ErrorKind::SchemaViolation, "plan must be a JSON object");
  if (doc.size() != 2 || !doc.contains("response") || !doc.contains("actions"))
    throw Error(ErrorKind::SchemaViolation, "plan must have exactly the keys 'response' and 'actions'");
  if (!doc["response"].is_string()) throw Error(ErrorKind::SchemaViolation, "'response' must be a string");
  if (!doc["actions"].is_array()) throw Error(ErrorKind::SchemaViolation, "'actions' must be an array");

  ActionPlan plan;
  plan.response_text = doc["response"].get<std::string>();
  std::size_t i = 0;
  for (const auto& a : doc["actions"]) {
    if (!a.is_array() || a.size() != 3 || !a[0].is_string() || !a[1].is_string() || !a[2].is_string())
      throw Error(ErrorKind::SchemaViolation, "action " + std::to_string(i) + " must be [verb, window, surface]");
    const auto verb = a[0].get<std::string>();
    Action act;
    if (verb == "place")
      act.verb = Verb::place;
    else if (verb == "remove")
      act.verb = Verb::remove;
    else
      throw Error(ErrorKind::UnknownVerb, "action " + std::to_string(i) + " uses unsupported verb '" + verb + "'",
                  {{"verb", verb}});
    act.window_ref = a[1].get<std::string>();
    act.surface_ref = a[2].get<std::string>();
    plan.actions.push_back(std::move(act));
    ++i;
  }
  return plan;
}

/// Serializes with `response` first, matching the reply shape the model is
/// asked for.
inline nlohmann::ordered_json to_json(const ActionPlan& plan) {
  nlohmann::ordered_json actions = nlohmann::ordered_json::array();
  for (const auto& a : plan.actions)
    actions.push_back({std::string(to_string(a.verb)), a.window_ref, a.surface_ref});
  nlohmann::ordered_json j;
  j["response"] = plan.response_text;
  j["actions"] = std::move(actions);
  return j;
}

struct ResolvedAction {
  Verb verb = Verb::place;
  std::string window_id;
  std::string surface_id;

  friend bool operator==(const ResolvedAction&, const ResolvedAction&) = default;
};

struct ValidatedPlan {
  std::string response_text;
  std::vector<ResolvedAction> actions;
};

namespace detail {

inline Error ambiguous(const std::string& kind, const std::string& ref, std::vector<std::string> candidates) {
  return Error(ErrorKind::AmbiguousRef, kind + " reference '" + ref + "' matches several candidates",
               {{"ref", ref}, {"candidates", std::move(candidates)}});
}

inline std::string resolve_window(const Workspace& ws, const std::string& ref) {
  if (ws.windows.count(ref)) return ref;
  const auto key = lower(ref);
  std::vector<std::string> hits;
  for (const auto& [id, w] : ws.windows)
    if (lower(w.name) == key) hits.push_back(id);
  if (hits.size() == 1) return hits.front();
  if (hits.size() > 1) throw ambiguous("window", ref, std::move(hits));
  throw Error(ErrorKind::UnresolvedWindow, "no window matches '" + ref + "'", {{"ref", ref}});
}

inline std::string resolve_surface(const Workspace& ws, const std::string& ref) {
  if (ws.surfaces.count(ref)) return ref;
  const auto label = normalize_label_text(ref);
  std::vector<std::string> hits;
  for (const auto& [id, s] : ws.surfaces)
    if (s.semantic == label) hits.push_back(id);
  if (hits.size() == 1) return hits.front();
  if (hits.size() > 1) throw ambiguous("surface", ref, std::move(hits));
  const auto key = lower(ref);
  for (const auto& [id, s] : ws.surfaces)
    if (lower(s.name) == key) hits.push_back(id);
  if (hits.size() == 1) return hits.front();
  if (hits.size() > 1) throw ambiguous("surface", ref, std::move(hits));
  throw Error(ErrorKind::UnresolvedSurface, "no surface matches '" + ref + "'", {{"ref", ref}});
}

}  // namespace detail

/// Resolves every window and surface reference or rejects the whole plan.
/// Windows: exact id, then unique case-insensitive name. Surfaces: exact id,
/// then unique semantic label, then unique display name.
inline ValidatedPlan validate_plan(const ActionPlan& plan, const Workspace& ws) {
  ValidatedPlan out;
  out.response_text = plan.response_text;
  for (const auto& a : plan.actions)
    out.actions.push_back({a.verb, detail::resolve_window(ws, a.window_ref), detail::resolve_surface(ws, a.surface_ref)});
  return out;
}

struct PlacementEvent {
  Verb verb = Verb::place;
  std::string window_id;
  std::string surface_id;

  friend bool operator==(const PlacementEvent&, const PlacementEvent&) = default;
};

inline nlohmann::json to_json(const PlacementEvent& e) {
  return {{"verb", std::string(to_string(e.verb))}, {"window_id", e.window_id}, {"surface_id", e.surface_id}};
}

inline Workspace apply_event(const Workspace& ws, const PlacementEvent& e) {
  const auto& surface = ws.surface(e.surface_id);
  return e.verb == Verb::place ? place_window(ws, e.window_id, surface) : remove_window(ws, e.window_id, surface);
}

/// Applies the actions in order. Workspace operations are pure, so a failure
/// part-way through leaves the caller's workspace untouched.
inline std::pair<Workspace, std::vector<PlacementEvent>> execute_plan(const ValidatedPlan& plan, const Workspace& ws) {
  Workspace current = ws;
  std::vector<PlacementEvent> events;
  for (const auto& a : plan.actions) {
    PlacementEvent e{a.verb, a.window_id, a.surface_id};
    current = apply_event(current, e);
    events.push_back(std::move(e));
  }
  return {std::move(current), std::move(events)};
}

}  // namespace xrwm
