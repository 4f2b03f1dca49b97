#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <deque>
#include <numeric>
#include <string>
#include <vector>

#include <json.hpp>

#include "xrwm/error.hpp"
#include "xrwm/pca.hpp"
#include "xrwm/scene.hpp"

namespace xrwm {

struct ExtractionParams {
  double angular_threshold_deg = 15.0;
  double min_area_m2 = 0.09;
};

/// Planar region of the scene that windows can be anchored to.
struct FlatSurface {
  std::string id;
  std::string name;  // display name, e.g. "table-1"
  std::vector<std::uint32_t> face_indices;
  PlaneBasis basis;
  double extent_u = 0.0;  // m, extent_u >= extent_v
  double extent_v = 0.0;
  double origin_u = 0.0;  // bounding-rectangle corner in plane coordinates
  double origin_v = 0.0;
  std::string semantic;
  double area = 0.0;

  friend bool operator==(const FlatSurface&, const FlatSurface&) = default;
};

/// 64-bit FNV-1a rendered as 16 hex digits.
inline std::string content_hash(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string surface_id(const std::string& scene_id, std::vector<std::uint32_t> faces) {
  std::sort(faces.begin(), faces.end());
  std::string key = scene_id;
  key.push_back('\0');
  for (auto f : faces) key += std::to_string(f) + ",";
  return content_hash(key);
}

/// Fits the plane, bounding rectangle and label of one region of faces.
inline FlatSurface make_surface(const Scene& scene, std::vector<std::uint32_t> faces) {
  std::sort(faces.begin(), faces.end());
  std::vector<std::uint32_t> vids;
  for (auto f : faces)
    for (auto v : scene.faces[f]) vids.push_back(v);
  std::sort(vids.begin(), vids.end());
  vids.erase(std::unique(vids.begin(), vids.end()), vids.end());
  std::vector<Vec3> pts;
  pts.reserve(vids.size());
  for (auto v : vids) pts.push_back(scene.vertices[v]);

  FlatSurface s;
  s.basis = fit_plane_pca(pts, scene.bounding_box_center());

  double umin = 1e300, umax = -1e300, vmin = 1e300, vmax = -1e300;
  for (const auto& p : pts) {
    Vec2 q = s.basis.project(p);
    umin = std::min(umin, q.x());
    umax = std::max(umax, q.x());
    vmin = std::min(vmin, q.y());
    vmax = std::max(vmax, q.y());
  }
  if (vmax - vmin > umax - umin) {
    // Swap axes keeping the frame right-handed: (u, v) -> (v, -u).
    Vec3 old_u = s.basis.u_axis;
    s.basis.u_axis = s.basis.v_axis;
    s.basis.v_axis = -old_u;
    double nu_min = vmin, nu_max = vmax;
    double nv_min = -umax, nv_max = -umin;
    umin = nu_min, umax = nu_max, vmin = nv_min, vmax = nv_max;
  }
  s.extent_u = umax - umin;
  s.extent_v = vmax - vmin;
  s.origin_u = umin;
  s.origin_v = vmin;

  std::vector<std::size_t> votes(kVocabulary.size(), 0);
  for (auto f : faces) {
    ++votes[scene.face_labels[f].vocabulary_order()];
    s.area += scene.face_area(f);
  }
  // max_element returns the first maximum, i.e. the earliest vocabulary entry.
  auto best = std::max_element(votes.begin(), votes.end()) - votes.begin();
  s.semantic = std::string(kVocabulary[static_cast<std::size_t>(best)]);
  s.id = surface_id(scene.scene_id, faces);
  s.face_indices = std::move(faces);
  return s;
}

/// Seeded region growing over face adjacency. Seeds are taken in descending
/// area order; a face joins the current region when it touches a member and
/// its normal is within the threshold of the seed normal. Regions below
/// `min_area_m2` are discarded. Output is sorted by descending area.
inline std::vector<FlatSurface> extract_planar_regions(const Scene& scene, const FaceAdjacency& adjacency,
                                                       const ExtractionParams& params = {}) {
  if (!(params.angular_threshold_deg > 0.0 && params.angular_threshold_deg < 90.0))
    throw Error(ErrorKind::ParamError, "angular threshold must be in (0, 90) degrees");
  if (!(params.min_area_m2 >= 0.0)) throw Error(ErrorKind::ParamError, "min_area must be >= 0");
  if (adjacency.neighbors.size() != scene.faces.size())
    throw Error(ErrorKind::ParamError, "adjacency does not match scene");

  const double cos_thr = std::cos(params.angular_threshold_deg * M_PI / 180.0);
  const std::size_t n = scene.faces.size();
  std::vector<Vec3> normals(n);
  std::vector<double> areas(n);
  for (std::size_t f = 0; f < n; ++f) {
    normals[f] = scene.face_normal(f);
    areas[f] = scene.face_area(f);
  }
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return areas[a] > areas[b]; });

  std::vector<bool> assigned(n, false);
  std::vector<FlatSurface> out;
  for (auto seed : order) {
    if (assigned[seed]) continue;
    std::vector<std::uint32_t> region{seed};
    assigned[seed] = true;
    std::deque<std::uint32_t> frontier{seed};
    while (!frontier.empty()) {
      auto f = frontier.front();
      frontier.pop_front();
      for (auto g : adjacency.neighbors[f]) {
        if (assigned[g] || normals[g].dot(normals[seed]) < cos_thr) continue;
        assigned[g] = true;
        region.push_back(g);
        frontier.push_back(g);
      }
    }
    double area = 0.0;
    for (auto f : region) area += areas[f];
    if (area < params.min_area_m2 || area <= 0.0) continue;
    out.push_back(make_surface(scene, std::move(region)));
  }

  std::stable_sort(out.begin(), out.end(), [](const FlatSurface& a, const FlatSurface& b) {
    if (a.area != b.area) return a.area > b.area;
    return a.id < b.id;
  });
  std::map<std::string, int> ordinal;
  for (auto& s : out) {
    std::string stem = s.semantic;
    std::replace(stem.begin(), stem.end(), ' ', '-');
    s.name = stem + "-" + std::to_string(++ordinal[s.semantic]);
  }
  return out;
}

/// Visibility is rounded to four decimals so prompts are byte-reproducible.
inline double canonical_score(double v) { return std::round(v * 1e4) / 1e4; }

/// "<W>x<H>" in whole centimeters, W = extent_u, H = extent_v.
inline std::string surface_size_string(const FlatSurface& s) {
  return std::to_string(std::lround(s.extent_u * 100.0)) + "x" + std::to_string(std::lround(s.extent_v * 100.0));
}

inline nlohmann::json surface_descriptor(const FlatSurface& s, double visibility,
                                         const std::vector<std::string>& current_windows) {
  if (!(visibility >= 0.0 && visibility <= 1.0))
    throw Error(ErrorKind::ParamError, "visibility must lie in [0, 1]");
  return {{"id", s.id},
          {"size", surface_size_string(s)},
          {"visibility", canonical_score(visibility)},
          {"semantic", s.semantic},
          {"current_windows", current_windows}};
}

/// Geometry export for renderers: frame, rectangle and member faces.
inline nlohmann::json surface_geometry_json(const FlatSurface& s) {
  auto v3 = [](const Vec3& v) { return nlohmann::json::array({v.x(), v.y(), v.z()}); };
  return {{"id", s.id},
          {"name", s.name},
          {"semantic", s.semantic},
          {"area", s.area},
          {"extent_u", s.extent_u},
          {"extent_v", s.extent_v},
          {"origin_u", s.origin_u},
          {"origin_v", s.origin_v},
          {"centroid", v3(s.basis.centroid)},
          {"normal", v3(s.basis.normal)},
          {"u_axis", v3(s.basis.u_axis)},
          {"v_axis", v3(s.basis.v_axis)},
          {"face_indices", s.face_indices}};
}

}  // namespace xrwm
