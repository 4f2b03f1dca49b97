#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <json.hpp>

#include "xrwm/error.hpp"
#include "xrwm/labels.hpp"

namespace xrwm {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;
using Face = std::array<std::uint32_t, 3>;

/// Faces with less area than this (m^2) are dropped at load time.
inline constexpr double kDegenerateFaceArea = 1e-10;

/// Labeled triangle mesh of a room. Meters, right-handed, +Y up.
struct Scene {
  std::string scene_id;
  std::vector<Vec3> vertices;
  std::vector<Face> faces;
  std::vector<SemanticLabel> face_labels;

  Vec3 face_normal(std::size_t f) const {
    const auto& t = faces[f];
    Vec3 n = (vertices[t[1]] - vertices[t[0]]).cross(vertices[t[2]] - vertices[t[0]]);
    return n.normalized();
  }

  double face_area(std::size_t f) const {
    const auto& t = faces[f];
    return 0.5 * (vertices[t[1]] - vertices[t[0]]).cross(vertices[t[2]] - vertices[t[0]]).norm();
  }

  /// Centre of the axis-aligned bounding box; used as the interior reference
  /// that surface normals are oriented towards.
  Vec3 bounding_box_center() const {
    if (vertices.empty()) return Vec3::Zero();
    Vec3 lo = vertices.front(), hi = vertices.front();
    for (const auto& v : vertices) {
      lo = lo.cwiseMin(v);
      hi = hi.cwiseMax(v);
    }
    return 0.5 * (lo + hi);
  }

  friend bool operator==(const Scene& a, const Scene& b) {
    return a.scene_id == b.scene_id && a.vertices == b.vertices && a.faces == b.faces &&
           a.face_labels == b.face_labels;
  }
};

struct SceneLoadStats {
  std::size_t dropped_degenerate = 0;
};

namespace detail {

inline nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::FileNotFound, "cannot open '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::SchemaViolation, path.string() + ": invalid JSON: " + e.what());
  }
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::FileNotFound, "cannot write '" + path.string() + "'");
  out << text;
}

inline const nlohmann::json& require(const nlohmann::json& obj, const char* key, nlohmann::json::value_t type,
                                     const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw Error(ErrorKind::SchemaViolation, where + ": missing field '" + key + "'");
  bool ok = it->type() == type ||
            (type == nlohmann::json::value_t::number_float && it->is_number()) ||
            (type == nlohmann::json::value_t::number_unsigned && it->is_number_integer() && *it >= 0);
  if (!ok) throw Error(ErrorKind::SchemaViolation, where + ": field '" + key + "' has the wrong type");
  return *it;
}

}  // namespace detail

/// Validates a scene document. Out-of-range or repeated vertex indices and
/// duplicate faces are errors; zero-area faces are dropped and counted.
inline Scene parse_scene(const nlohmann::json& doc, SceneLoadStats* stats = nullptr) {
  using vt = nlohmann::json::value_t;
  if (!doc.is_object()) throw Error(ErrorKind::SchemaViolation, "scene: top level must be an object");
  const auto& id = detail::require(doc, "scene_id", vt::string, "scene");
  const auto& verts = detail::require(doc, "vertices", vt::array, "scene");
  const auto& faces = detail::require(doc, "faces", vt::array, "scene");
  const auto& labels = detail::require(doc, "labels", vt::array, "scene");
  if (labels.size() != faces.size())
    throw Error(ErrorKind::SchemaViolation, "scene: labels.length must equal faces.length");

  Scene scene;
  scene.scene_id = id.get<std::string>();
  scene.vertices.reserve(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const auto& v = verts[i];
    if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() || !v[2].is_number())
      throw Error(ErrorKind::SchemaViolation, "scene: vertex " + std::to_string(i) + " must be [x,y,z]");
    scene.vertices.emplace_back(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
  }

  std::map<Face, std::size_t> seen;
  std::size_t dropped = 0;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const auto& f = faces[i];
    if (!f.is_array() || f.size() != 3)
      throw Error(ErrorKind::SchemaViolation, "scene: face " + std::to_string(i) + " must be [i,j,k]");
    Face tri{};
    for (std::size_t k = 0; k < 3; ++k) {
      if (!f[k].is_number_integer())
        throw Error(ErrorKind::SchemaViolation, "scene: face " + std::to_string(i) + " has a non-integer index");
      auto idx = f[k].get<std::int64_t>();
      if (idx < 0 || static_cast<std::size_t>(idx) >= scene.vertices.size())
        throw Error(ErrorKind::GeometryError, "scene: face " + std::to_string(i) + " references vertex " +
                                                  std::to_string(idx) + " of " +
                                                  std::to_string(scene.vertices.size()));
      tri[k] = static_cast<std::uint32_t>(idx);
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
      throw Error(ErrorKind::GeometryError, "scene: face " + std::to_string(i) + " repeats a vertex");
    if (!labels[i].is_string())
      throw Error(ErrorKind::SchemaViolation, "scene: label " + std::to_string(i) + " must be a string");
    auto label = SemanticLabel::parse(labels[i].get<std::string>());

    double area = 0.5 * (scene.vertices[tri[1]] - scene.vertices[tri[0]])
                            .cross(scene.vertices[tri[2]] - scene.vertices[tri[0]])
                            .norm();
    if (!(area >= kDegenerateFaceArea)) {
      ++dropped;
      continue;
    }
    Face key = tri;
    std::sort(key.begin(), key.end());
    if (auto [it, inserted] = seen.emplace(key, i); !inserted)
      throw Error(ErrorKind::GeometryError,
                  "scene: face " + std::to_string(i) + " duplicates face " + std::to_string(it->second));
    scene.faces.push_back(tri);
    scene.face_labels.push_back(label);
  }
  if (stats) stats->dropped_degenerate = dropped;
  return scene;
}

inline Scene load_scene(const std::filesystem::path& path, SceneLoadStats* stats = nullptr) {
  return parse_scene(detail::read_json_file(path), stats);
}

inline nlohmann::json scene_to_json(const Scene& scene) {
  nlohmann::json verts = nlohmann::json::array();
  for (const auto& v : scene.vertices) verts.push_back({v.x(), v.y(), v.z()});
  nlohmann::json faces = nlohmann::json::array();
  for (const auto& f : scene.faces) faces.push_back({f[0], f[1], f[2]});
  nlohmann::json labels = nlohmann::json::array();
  for (const auto& l : scene.face_labels) labels.push_back(std::string(l.name()));
  return {{"scene_id", scene.scene_id}, {"vertices", verts}, {"faces", faces}, {"labels", labels}};
}

/// Returns a copy of `scene` with the given faces relabeled (origin=manual).
inline Scene apply_labels(const Scene& scene, const std::map<std::size_t, std::string>& overrides) {
  Scene out = scene;
  for (const auto& [face, name] : overrides) {
    if (face >= out.faces.size())
      throw Error(ErrorKind::GeometryError, "override references face " + std::to_string(face) + " of " +
                                                std::to_string(out.faces.size()));
    out.face_labels[face] = SemanticLabel::parse(name, LabelOrigin::manual);
  }
  return out;
}

/// Reads a label-override document: `{"<face-index>": "<label>", ...}`.
inline std::map<std::size_t, std::string> parse_label_overrides(const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error(ErrorKind::SchemaViolation, "overrides: top level must be an object");
  std::map<std::size_t, std::string> out;
  for (const auto& [key, value] : doc.items()) {
    std::size_t pos = 0;
    unsigned long long idx = 0;
    try {
      idx = std::stoull(key, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != key.size() || key.front() == '-' || key.front() == '+')
      throw Error(ErrorKind::SchemaViolation, "overrides: key '" + key + "' is not a face index");
    if (!value.is_string())
      throw Error(ErrorKind::SchemaViolation, "overrides: value for face " + key + " must be a label string");
    out[static_cast<std::size_t>(idx)] = value.get<std::string>();
  }
  return out;
}

/// Faces sharing an undirected edge. Neighbor lists are sorted ascending.
struct FaceAdjacency {
  std::vector<std::vector<std::uint32_t>> neighbors;
};

inline FaceAdjacency build_adjacency(const Scene& scene) {
  struct EdgeRef {
    std::uint32_t a, b, face;
  };
  std::vector<EdgeRef> edges;
  edges.reserve(scene.faces.size() * 3);
  for (std::uint32_t f = 0; f < scene.faces.size(); ++f) {
    const auto& t = scene.faces[f];
    for (int k = 0; k < 3; ++k) {
      auto u = t[k], v = t[(k + 1) % 3];
      edges.push_back({std::min(u, v), std::max(u, v), f});
    }
  }
  std::sort(edges.begin(), edges.end(),
            [](const EdgeRef& x, const EdgeRef& y) { return std::tie(x.a, x.b, x.face) < std::tie(y.a, y.b, y.face); });

  FaceAdjacency adj;
  adj.neighbors.resize(scene.faces.size());
  for (std::size_t i = 0; i < edges.size();) {
    std::size_t j = i;
    while (j < edges.size() && edges[j].a == edges[i].a && edges[j].b == edges[i].b) ++j;
    for (std::size_t p = i; p < j; ++p)
      for (std::size_t q = i; q < j; ++q)
        if (edges[p].face != edges[q].face) adj.neighbors[edges[p].face].push_back(edges[q].face);
    i = j;
  }
  for (auto& list : adj.neighbors) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return adj;
}

}  // namespace xrwm
