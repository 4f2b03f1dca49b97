#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "xrwm/attention.hpp"
#include "xrwm/error.hpp"
#include "xrwm/workspace.hpp"

namespace xrwm {

inline constexpr const char* kSystemPromptVersion = "v1";

/// System message sent ahead of every request. The two worked examples use
/// the same payload and reply shapes the pipeline produces.
inline constexpr const char* kSystemPromptTemplate = R"PROMPT({
  "description": "You are an assistant that answers in JSON format {\"response\":\"your-response\",\"actions\":\"supported-actions\"}. Your purpose is to help me organize my virtual windows on the available flat surfaces around my office/house/space. You will do so by generating actions that are then executed by the system.",
  "action_format": {
    "actions": [
      ["place", "windowid", "surface"],
      ["remove", "windowid", "surface"]
    ]
  },
  "inputs": {
    "user_request": "What the user said, transcribed to text.",
    "flat_surfaces": "Surfaces that can hold windows. Each has an id, a size in centimeters (\"WxH\"), a visibility score between 0 and 1 computed from the user's head direction at the time of the request, a semantic label, and the ids of the windows it currently holds in current_windows.",
    "windows": "Virtual windows that can be placed. Each has an id, a size in pixels (\"WxH\"), a location that is a surface id or \"none\" when the window is not visible, and the application name.",
    "userPointingEvents": "Recent pointing events, oldest first. identifier is the id of the hovered window or surface and hoverDuration is how long the pointer stayed on it, in seconds."
  },
  "task": "Interpret the user's request to place or remove one or more windows on the appropriate surfaces to maximize visibility, match the user request, and consider inferred preferences. Note that windows are automatically resized, but depending on the flat surface size, you might not want to cramp too many or too few of them.",
  "example_1": {
    "input": {
      "user_request": "I need some location's information",
      "flat_surfaces": [
        {"id": "7409038c", "size": "500x700", "visibility": 0.8, "semantic": "cabinet", "current_windows": []},
        {"id": "1b2e66f0", "size": "120x80", "visibility": 0.3, "semantic": "table", "current_windows": []}
      ],
      "windows": [
        {"id": "e5f3b127", "size": "200x200", "location": "none", "name": "Google Maps"},
        {"id": "a90c4d12", "size": "400x300", "location": "none", "name": "Chat"}
      ],
      "userPointingEvents": []
    },
    "expected_output": {
      "response": "Placed Google Maps on the cabinet, the most visible surface.",
      "actions": [["place", "e5f3b127", "7409038c"]]
    }
  },
  "pointing_behavior_usage": "Use pointing behavior as a nonverbal cue to integrate the user request. If language is ambiguous, use pointing to clarify and resolve references.",
  "example_2": {
    "input": {
      "user_request": "Can you move this here?",
      "flat_surfaces": [
        {"id": "7409038c", "size": "500x700", "visibility": 0.8, "semantic": "cabinet", "current_windows": ["e5f3b127"]},
        {"id": "1b2e66f0", "size": "120x80", "visibility": 0.3, "semantic": "table", "current_windows": []}
      ],
      "windows": [
        {"id": "e5f3b127", "size": "200x200", "location": "7409038c", "name": "Google Maps"}
      ],
      "userPointingEvents": [
        {"identifier": "e5f3b127", "hoverDuration": 1.5},
        {"identifier": "7409038c", "hoverDuration": 0.1},
        {"identifier": "1b2e66f0", "hoverDuration": 1.2}
      ]
    },
    "expected_output": {
      "response": "Moved Google Maps to the table you pointed at.",
      "actions": [["place", "e5f3b127", "1b2e66f0"]]
    }
  },
  "notes": "Ignore pointing events with very short hover durations as they may be noise from the user passing over objects. Exclude the current surface of a window from target selection when interpreting pointing behavior."
})PROMPT";

struct PromptDocument {
  std::string system_text;
  nlohmann::json input_payload;  // user_request, flat_surfaces, windows, userPointingEvents

  /// The user message: canonical JSON (sorted keys, compact).
  std::string user_message() const { return input_payload.dump(); }

  friend bool operator==(const PromptDocument&, const PromptDocument&) = default;
};

inline nlohmann::json to_json(const PromptDocument& p) {
  return {{"system_text", p.system_text}, {"input_payload", p.input_payload}};
}

/// Assembles the payload from precomputed surface descriptors. Only pointing
/// events with hover >= `min_hover` are included; durations are rounded to
/// the millisecond.
inline PromptDocument build_prompt(const std::string& request, const std::vector<nlohmann::json>& surface_descriptors,
                                   const Workspace& ws, const AttentionState& attention,
                                   double min_hover = kDefaultMinHover,
                                   const std::string& system_text = kSystemPromptTemplate) {
  if (request.empty()) throw Error(ErrorKind::SchemaViolation, "request text must be non-empty");
  nlohmann::json events = nlohmann::json::array();
  for (const auto& e : salient_pointing(attention, min_hover))
    events.push_back({{"identifier", e.identifier}, {"hoverDuration", std::round(e.hover_duration * 1e3) / 1e3}});
  nlohmann::json surfaces = nlohmann::json::array();
  for (const auto& d : surface_descriptors) surfaces.push_back(d);
  PromptDocument doc;
  doc.system_text = system_text;
  doc.input_payload = {{"user_request", request},
                       {"flat_surfaces", std::move(surfaces)},
                       {"windows", windows_json(ws)},
                       {"userPointingEvents", std::move(events)}};
  return doc;
}

/// Visibility snapshot for every known surface from the current head pose,
/// in surface-id order.
inline std::vector<nlohmann::json> visibility_snapshot(const Workspace& ws, const HeadPose& head) {
  std::vector<nlohmann::json> out;
  for (const auto& [id, s] : ws.surfaces) {
    double vis = 0.0;
    try {
      vis = visibility_score(head, s);
    } catch (const Error&) {
      vis = 0.0;  // head inside the surface centroid
    }
    out.push_back(surface_descriptor(s, vis, ws));
  }
  return out;
}

inline PromptDocument build_prompt(const std::string& request, const Workspace& ws, const AttentionState& attention,
                                   double min_hover = kDefaultMinHover,
                                   const std::string& system_text = kSystemPromptTemplate) {
  return build_prompt(request, visibility_snapshot(ws, attention.head), ws, attention, min_hover, system_text);
}

}  // namespace xrwm
