#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "xrwm/error.hpp"
#include "xrwm/surfaces.hpp"

namespace xrwm {

inline constexpr const char* kNoLocation = "none";
inline constexpr double kDefaultLayoutMargin = 0.05;  // m

struct PixelSize {
  int width = 0;
  int height = 0;

  friend bool operator==(const PixelSize&, const PixelSize&) = default;
};

inline PixelSize parse_pixel_size(const std::string& text) {
  auto x = text.find('x');
  PixelSize s;
  auto parse = [&](std::size_t from, std::size_t to, int& out) {
    auto [ptr, ec] = std::from_chars(text.data() + from, text.data() + to, out);
    return ec == std::errc() && ptr == text.data() + to && to > from;
  };
  if (x == std::string::npos || !parse(0, x, s.width) || !parse(x + 1, text.size(), s.height) || s.width <= 0 ||
      s.height <= 0)
    throw Error(ErrorKind::SchemaViolation, "window size '" + text + "' must be \"<W>x<H>\" with positive pixels");
  return s;
}

inline std::string to_string(const PixelSize& s) { return std::to_string(s.width) + "x" + std::to_string(s.height); }

struct WindowDescriptor {
  std::string id;
  PixelSize size_px;
  std::string location = kNoLocation;
  std::string name;

  bool placed() const { return location != kNoLocation; }

  friend bool operator==(const WindowDescriptor&, const WindowDescriptor&) = default;
};

/// Window rectangle on a surface. Offsets locate the lower corner in plane
/// coordinates measured from the surface's bounding-rectangle corner.
struct LayoutSlot {
  std::string window_id;
  double u_offset = 0.0;
  double v_offset = 0.0;
  double display_w = 0.0;
  double display_h = 0.0;

  friend bool operator==(const LayoutSlot&, const LayoutSlot&) = default;
};

/// Grid of ceil(sqrt(n)) columns; each window is the largest aspect-preserving
/// rectangle that fits its cell inset by `margin` on every side, centred.
inline std::vector<LayoutSlot> auto_layout(const FlatSurface& surface, const std::vector<WindowDescriptor>& windows,
                                           double margin = kDefaultLayoutMargin) {
  if (!(margin >= 0.0)) throw Error(ErrorKind::ParamError, "layout margin must be >= 0");
  if (windows.empty()) return {};
  if (!(surface.extent_u > 2 * margin && surface.extent_v > 2 * margin))
    throw Error(ErrorKind::SurfaceTooSmall, "surface " + surface.id + " is smaller than its margins");

  const std::size_t n = windows.size();
  std::size_t cols = 1;
  while (cols * cols < n) ++cols;
  const std::size_t rows = (n + cols - 1) / cols;
  const double cell_w = surface.extent_u / static_cast<double>(cols);
  const double cell_h = surface.extent_v / static_cast<double>(rows);
  const double inner_w = cell_w - 2 * margin;
  const double inner_h = cell_h - 2 * margin;
  if (inner_w <= 0.0 || inner_h <= 0.0)
    throw Error(ErrorKind::SurfaceTooSmall, "surface " + surface.id + " cannot fit " + std::to_string(n) +
                                                " windows with margin " + std::to_string(margin));

  std::vector<LayoutSlot> slots;
  slots.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& w = windows[i];
    const double aspect = static_cast<double>(w.size_px.width) / static_cast<double>(w.size_px.height);
    double dw = std::min(inner_w, inner_h * aspect);
    double dh = dw / aspect;
    const double col = static_cast<double>(i % cols);
    const double row = static_cast<double>(i / cols);
    slots.push_back({w.id, col * cell_w + margin + 0.5 * (inner_w - dw), row * cell_h + margin + 0.5 * (inner_h - dh),
                     dw, dh});
  }
  return slots;
}

/// Immutable window/placement state. Every operation returns a new value.
struct Workspace {
  std::map<std::string, FlatSurface> surfaces;
  std::map<std::string, WindowDescriptor> windows;
  std::map<std::string, std::vector<std::string>> placements;  // surface id -> window ids, insertion order
  std::map<std::string, std::vector<LayoutSlot>> layout;
  double margin = kDefaultLayoutMargin;

  friend bool operator==(const Workspace&, const Workspace&) = default;

  const FlatSurface& surface(const std::string& id) const {
    auto it = surfaces.find(id);
    if (it == surfaces.end()) throw Error(ErrorKind::UnknownSurface, "unknown surface '" + id + "'");
    return it->second;
  }

  const WindowDescriptor& window(const std::string& id) const {
    auto it = windows.find(id);
    if (it == windows.end()) throw Error(ErrorKind::UnknownWindow, "unknown window '" + id + "'");
    return it->second;
  }

  std::vector<std::string> windows_on(const std::string& surface_id) const {
    auto it = placements.find(surface_id);
    return it == placements.end() ? std::vector<std::string>{} : it->second;
  }

  /// Bidirectional location/placement agreement plus single placement.
  bool consistent() const {
    std::map<std::string, int> seen;
    for (const auto& [sid, list] : placements) {
      if (list.empty() || !surfaces.count(sid)) return false;
      for (const auto& wid : list) {
        auto it = windows.find(wid);
        if (it == windows.end() || it->second.location != sid) return false;
        if (++seen[wid] > 1) return false;
      }
    }
    for (const auto& [wid, w] : windows) {
      if (w.id != wid) return false;
      if (w.placed() != (seen.count(wid) == 1)) return false;
      if (w.placed() && !surfaces.count(w.location)) return false;
    }
    return true;
  }
};

namespace detail {

inline void relayout(Workspace& ws, const std::string& surface_id) {
  auto it = ws.placements.find(surface_id);
  if (it == ws.placements.end() || it->second.empty()) {
    ws.placements.erase(surface_id);
    ws.layout.erase(surface_id);
    return;
  }
  std::vector<WindowDescriptor> list;
  for (const auto& wid : it->second) list.push_back(ws.windows.at(wid));
  ws.layout[surface_id] = auto_layout(ws.surfaces.at(surface_id), list, ws.margin);
}

inline void detach(Workspace& ws, WindowDescriptor& w) {
  if (!w.placed()) return;
  std::string from = w.location;
  auto& list = ws.placements[from];
  std::erase(list, w.id);
  w.location = kNoLocation;
  relayout(ws, from);
}

}  // namespace detail

inline Workspace place_window(const Workspace& ws, const std::string& window_id, const FlatSurface& surface) {
  ws.window(window_id);
  ws.surface(surface.id);
  Workspace out = ws;
  auto& w = out.windows.at(window_id);
  detail::detach(out, w);
  w.location = surface.id;
  out.placements[surface.id].push_back(window_id);
  detail::relayout(out, surface.id);
  return out;
}

inline Workspace remove_window(const Workspace& ws, const std::string& window_id, const FlatSurface& surface) {
  const auto& current = ws.window(window_id);
  ws.surface(surface.id);
  if (current.location != surface.id)
    throw Error(ErrorKind::MismatchedSurface, "window '" + window_id + "' is on '" + current.location + "', not '" +
                                                  surface.id + "'",
                {{"window", window_id}, {"expected", surface.id}, {"actual", current.location}});
  Workspace out = ws;
  detail::detach(out, out.windows.at(window_id));
  return out;
}

inline nlohmann::json to_json(const WindowDescriptor& w) {
  return {{"id", w.id}, {"size", to_string(w.size_px)}, {"location", w.location}, {"name", w.name}};
}

inline WindowDescriptor window_from_json(const nlohmann::json& j) {
  using vt = nlohmann::json::value_t;
  if (!j.is_object()) throw Error(ErrorKind::SchemaViolation, "window entry must be an object");
  WindowDescriptor w;
  w.id = detail::require(j, "id", vt::string, "window").get<std::string>();
  w.size_px = parse_pixel_size(detail::require(j, "size", vt::string, "window").get<std::string>());
  w.name = detail::require(j, "name", vt::string, "window").get<std::string>();
  if (auto it = j.find("location"); it != j.end()) {
    if (!it->is_string()) throw Error(ErrorKind::SchemaViolation, "window: field 'location' has the wrong type");
    w.location = it->get<std::string>();
  }
  if (w.id.empty() || w.id == kNoLocation) throw Error(ErrorKind::SchemaViolation, "window: invalid id '" + w.id + "'");
  return w;
}

inline nlohmann::json to_json(const LayoutSlot& s) {
  return {{"window_id", s.window_id},
          {"u_offset", s.u_offset},
          {"v_offset", s.v_offset},
          {"display_w", s.display_w},
          {"display_h", s.display_h}};
}

/// Builds a workspace from a surface list and window descriptors. Windows
/// with a location are placed in the given order.
inline Workspace make_workspace(const std::vector<FlatSurface>& surfaces, const std::vector<WindowDescriptor>& windows,
                                double margin = kDefaultLayoutMargin) {
  Workspace ws;
  ws.margin = margin;
  for (const auto& s : surfaces) ws.surfaces.emplace(s.id, s);
  for (auto w : windows) {
    std::string loc = w.location;
    w.location = kNoLocation;
    if (!ws.windows.emplace(w.id, w).second)
      throw Error(ErrorKind::SchemaViolation, "duplicate window id '" + w.id + "'");
    if (loc != kNoLocation) {
      if (!ws.surfaces.count(loc))
        throw Error(ErrorKind::UnknownSurface, "window '" + w.id + "' is located on unknown surface '" + loc + "'");
      ws = place_window(ws, w.id, ws.surfaces.at(loc));
    }
  }
  return ws;
}

inline std::vector<WindowDescriptor> parse_windows(const nlohmann::json& doc) {
  if (!doc.is_array()) throw Error(ErrorKind::SchemaViolation, "windows document must be a JSON array");
  std::vector<WindowDescriptor> out;
  for (const auto& j : doc) out.push_back(window_from_json(j));
  return out;
}

/// The `windows` array as the model sees it.
inline nlohmann::json windows_json(const Workspace& ws) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [id, w] : ws.windows) arr.push_back(to_json(w));
  return arr;
}

inline nlohmann::json to_json(const Workspace& ws) {
  nlohmann::json placements = nlohmann::json::object();
  for (const auto& [sid, list] : ws.placements) placements[sid] = list;
  nlohmann::json layout = nlohmann::json::object();
  for (const auto& [sid, slots] : ws.layout) {
    auto& arr = layout[sid] = nlohmann::json::array();
    for (const auto& s : slots) arr.push_back(to_json(s));
  }
  return {{"windows", windows_json(ws)}, {"placements", placements}, {"layout", layout}};
}

inline nlohmann::json surface_descriptor(const FlatSurface& surface, double visibility, const Workspace& ws) {
  return surface_descriptor(surface, visibility, ws.windows_on(surface.id));
}

}  // namespace xrwm
