#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "xrwm/intent/goals.hpp"
#include "xrwm/intent/plan.hpp"
#include "xrwm/intent/resolver.hpp"

namespace xrwm {

/// Deterministic offline stand-in for the language model. Reads only the
/// prompt payload and applies a fixed rule cascade:
///   1. goal phrases -> application windows (then explicit window names);
///   2. "this"/"that" -> pointed window with the longest hover (ties: latest),
///      "here"/"there" -> pointed surface, excluding the window's own surface;
///   3. otherwise the most visible surface other than the window's own
///      (ties: larger area, then smaller id);
///   4. no action for a window already on its chosen surface.
/// Never throws on well-formed payloads; unresolvable requests yield an
/// empty plan asking for clarification.
class MockResolver final : public ResolverBackend {
 public:
  explicit MockResolver(GoalTable goals = GoalTable::builtin()) : goals_(std::move(goals)) {}

  std::string resolve(const PromptDocument& prompt) override { return to_json(plan_for(prompt)).dump(); }
  std::string name() const override { return "mock"; }

  ActionPlan plan_for(const PromptDocument& prompt) const {
    const View view = read_view(prompt.input_payload);
    const auto words = tokenize(view.request);
    auto has_word = [&](std::initializer_list<const char*> list) {
      return std::any_of(list.begin(), list.end(), [&](const char* w) { return words.count(w) > 0; });
    };
    const bool window_deixis = has_word({"this", "that", "it", "these", "those"});
    const bool surface_deixis = has_word({"here", "there"});
    const bool remove_intent = has_word({"remove", "close", "hide", "dismiss"});

    std::vector<const WindowView*> targets = goal_windows(view);
    if (targets.empty()) targets = named_windows(view);
    if (targets.empty() && (window_deixis || surface_deixis || remove_intent)) {
      if (const auto* w = pointed_window(view)) targets.push_back(w);
    }
    if (targets.empty())
      return {"I could not tell which window you mean. Could you point at it or name the application?", {}};

    ActionPlan plan;
    std::vector<std::string> done;
    if (remove_intent) {
      for (const auto* w : targets) {
        if (w->location == kNoLocation) continue;
        plan.actions.push_back({Verb::remove, w->id, w->location});
        done.push_back("removed " + w->name);
      }
      plan.response_text = done.empty() ? "None of those windows is currently placed." : sentence(done);
      return plan;
    }

    const auto mentioned = mentioned_label(view);
    std::set<std::string> used;
    for (const auto* w : targets) {
      const SurfaceView* chosen = nullptr;
      if (surface_deixis) chosen = pointed_surface(view, w->location);
      if (!chosen && mentioned) chosen = best_surface(view, w->location, used, &*mentioned);
      if (!chosen) chosen = best_surface(view, w->location, used, nullptr);
      if (!chosen) {
        done.push_back("found no free surface for " + w->name);
        continue;
      }
      if (chosen->id == w->location) continue;
      used.insert(chosen->id);
      plan.actions.push_back({Verb::place, w->id, chosen->id});
      done.push_back("placed " + w->name + " on the " + chosen->semantic + " (" + chosen->id + ")");
    }
    plan.response_text = done.empty() ? "Everything is already where it should be." : sentence(done);
    return plan;
  }

 private:
  struct WindowView {
    std::string id, name, location;
  };
  struct SurfaceView {
    std::string id, semantic;
    double visibility = 0.0;
    double area = 0.0;  // cm^2 from the size string
  };
  struct EventView {
    std::string identifier;
    double hover = 0.0;
  };
  struct View {
    std::string request;
    std::vector<WindowView> windows;
    std::vector<SurfaceView> surfaces;
    std::vector<EventView> events;  // oldest first
  };

  static View read_view(const nlohmann::json& payload) {
    View v;
    v.request = payload.value("user_request", "");
    for (const auto& w : payload.value("windows", nlohmann::json::array()))
      v.windows.push_back({w.value("id", ""), w.value("name", ""), w.value("location", kNoLocation)});
    for (const auto& s : payload.value("flat_surfaces", nlohmann::json::array())) {
      SurfaceView sv{s.value("id", ""), s.value("semantic", ""), s.value("visibility", 0.0), 0.0};
      const auto size = s.value("size", "");
      if (auto x = size.find('x'); x != std::string::npos) {
        try {
          sv.area = std::stod(size.substr(0, x)) * std::stod(size.substr(x + 1));
        } catch (const std::exception&) {
          sv.area = 0.0;
        }
      }
      v.surfaces.push_back(std::move(sv));
    }
    for (const auto& e : payload.value("userPointingEvents", nlohmann::json::array()))
      v.events.push_back({e.value("identifier", ""), e.value("hoverDuration", 0.0)});
    return v;
  }

  static std::set<std::string> tokenize(const std::string& text) {
    std::set<std::string> out;
    std::string cur;
    for (char c : text) {
      if (std::isalnum(static_cast<unsigned char>(c))) {
        cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
      } else if (!cur.empty()) {
        out.insert(cur);
        cur.clear();
      }
    }
    if (!cur.empty()) out.insert(cur);
    return out;
  }

  static std::string sentence(const std::vector<std::string>& parts) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i > 0) s += (i + 1 == parts.size()) ? " and " : ", ";
      s += parts[i];
    }
    s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    return s + ".";
  }

  std::vector<const WindowView*> goal_windows(const View& view) const {
    std::vector<const WindowView*> out;
    for (const auto& app : goals_.match(view.request)) {
      const WindowView* hit = nullptr;
      for (const auto& w : view.windows)
        if (detail::lower(w.name) == detail::lower(app) && (!hit || w.id < hit->id)) hit = &w;
      if (hit) out.push_back(hit);
    }
    return out;
  }

  static std::vector<const WindowView*> named_windows(const View& view) {
    const std::string text = detail::lower(view.request);
    std::vector<std::pair<std::size_t, const WindowView*>> hits;
    for (const auto& w : view.windows) {
      const auto key = detail::lower(w.name);
      if (key.empty()) continue;
      for (auto pos = text.find(key); pos != std::string::npos; pos = text.find(key, pos + 1)) {
        bool start_ok = pos == 0 || !std::isalnum(static_cast<unsigned char>(text[pos - 1]));
        auto end = pos + key.size();
        bool end_ok = end == text.size() || !std::isalnum(static_cast<unsigned char>(text[end]));
        if (start_ok && end_ok) {
          hits.emplace_back(pos, &w);
          break;
        }
      }
    }
    std::stable_sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<const WindowView*> out;
    for (const auto& [pos, w] : hits) out.push_back(w);
    return out;
  }

  // Longest hover wins; on equal hover the later event wins.
  template <typename T, typename Lookup>
  static const T* longest_hover(const View& view, Lookup&& lookup) {
    const T* best = nullptr;
    double best_hover = -1.0;
    for (const auto& e : view.events) {
      const T* item = lookup(e.identifier);
      if (!item) continue;
      if (e.hover >= best_hover) {
        best = item;
        best_hover = e.hover;
      }
    }
    return best;
  }

  static const WindowView* pointed_window(const View& view) {
    return longest_hover<WindowView>(view, [&](const std::string& id) -> const WindowView* {
      for (const auto& w : view.windows)
        if (w.id == id) return &w;
      return nullptr;
    });
  }

  static const SurfaceView* pointed_surface(const View& view, const std::string& exclude) {
    return longest_hover<SurfaceView>(view, [&](const std::string& id) -> const SurfaceView* {
      if (id == exclude) return nullptr;
      for (const auto& s : view.surfaces)
        if (s.id == id) return &s;
      return nullptr;
    });
  }

  // A label named after "on/onto/to the" that some surface carries.
  static std::optional<std::string> mentioned_label(const View& view) {
    const std::string text = " " + detail::lower(view.request) + " ";
    std::optional<std::string> best;
    std::size_t best_pos = std::string::npos;
    for (const auto& s : view.surfaces) {
      for (const char* lead : {" on the ", " onto the ", " to the "}) {
        const std::string probe = std::string(lead) + s.semantic;
        auto pos = text.find(probe);
        if (pos == std::string::npos) continue;
        auto end = pos + probe.size();
        if (end < text.size() && std::isalnum(static_cast<unsigned char>(text[end]))) continue;
        if (pos < best_pos) {
          best_pos = pos;
          best = s.semantic;
        }
      }
    }
    return best;
  }

  static bool ranks_before(const SurfaceView& a, const SurfaceView& b) {
    if (a.visibility != b.visibility) return a.visibility > b.visibility;
    if (a.area != b.area) return a.area > b.area;
    return a.id < b.id;
  }

  // Best surface other than `exclude`, preferring ones not yet used by this
  // plan so multi-window goals spread out.
  static const SurfaceView* best_surface(const View& view, const std::string& exclude,
                                         const std::set<std::string>& used, const std::string* label) {
    const SurfaceView* best = nullptr;
    bool best_fresh = false;
    for (const auto& s : view.surfaces) {
      if (s.id == exclude) continue;
      if (label && s.semantic != *label) continue;
      bool fresh = used.count(s.id) == 0;
      if (!best || (fresh && !best_fresh) || (fresh == best_fresh && ranks_before(s, *best))) {
        best = &s;
        best_fresh = fresh;
      }
    }
    return best;
  }

  GoalTable goals_;
};

}  // namespace xrwm
