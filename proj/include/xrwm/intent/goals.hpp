#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "xrwm/error.hpp"
#include "xrwm/intent/plan.hpp"

namespace xrwm {

/// Built-in goal table; identical to data/goal_map.json.
inline constexpr const char* kDefaultGoalMap = R"GOALS({
  "goals": [
    {"phrases": ["message", "messages", "chat"], "applications": ["Chat"]},
    {"phrases": ["location", "map", "directions"], "applications": ["Google Maps"]},
    {"phrases": ["code", "coding"], "applications": ["Visual Studio"]},
    {"phrases": ["images", "presentation"], "applications": ["Browser", "Slides"]}
  ]
}
)GOALS";

struct GoalEntry {
  std::vector<std::string> phrases;  // lower-case
  std::vector<std::string> applications;
};

/// Maps task phrases in a request to the application names that serve them.
class GoalTable {
 public:
  static GoalTable from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("goals") || !doc["goals"].is_array())
      throw Error(ErrorKind::ConfigError, "goal map must be an object with a 'goals' array");
    GoalTable table;
    for (const auto& g : doc["goals"]) {
      if (!g.is_object() || !g.contains("phrases") || !g.contains("applications") || !g["phrases"].is_array() ||
          !g["applications"].is_array())
        throw Error(ErrorKind::ConfigError, "goal entry needs 'phrases' and 'applications' arrays");
      GoalEntry e;
      for (const auto& p : g["phrases"]) {
        if (!p.is_string() || p.get<std::string>().empty())
          throw Error(ErrorKind::ConfigError, "goal phrases must be non-empty strings");
        e.phrases.push_back(detail::lower(p.get<std::string>()));
      }
      for (const auto& a : g["applications"]) {
        if (!a.is_string()) throw Error(ErrorKind::ConfigError, "goal applications must be strings");
        e.applications.push_back(a.get<std::string>());
      }
      table.entries_.push_back(std::move(e));
    }
    return table;
  }

  static GoalTable builtin() { return from_json(nlohmann::json::parse(kDefaultGoalMap)); }

  /// Applications for every entry with a phrase starting at a word boundary
  /// of the request, in table order, without duplicates.
  std::vector<std::string> match(std::string_view request) const {
    const std::string text = detail::lower(request);
    std::vector<std::string> apps;
    for (const auto& e : entries_) {
      bool hit = std::any_of(e.phrases.begin(), e.phrases.end(), [&](const std::string& p) { return contains_word_start(text, p); });
      if (!hit) continue;
      for (const auto& a : e.applications)
        if (std::find(apps.begin(), apps.end(), a) == apps.end()) apps.push_back(a);
    }
    return apps;
  }

  const std::vector<GoalEntry>& entries() const { return entries_; }

 private:
  static bool contains_word_start(const std::string& text, const std::string& phrase) {
    for (auto pos = text.find(phrase); pos != std::string::npos; pos = text.find(phrase, pos + 1))
      if (pos == 0 || !std::isalnum(static_cast<unsigned char>(text[pos - 1]))) return true;
    return false;
  }

  std::vector<GoalEntry> entries_;
};

}  // namespace xrwm
