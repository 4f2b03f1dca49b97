#pragma once

#include <cmath>
#include <optional>
#include <span>

#include <Eigen/Eigenvalues>

#include "xrwm/error.hpp"
#include "xrwm/scene.hpp"

namespace xrwm {

/// Orthonormal right-handed frame of a fitted plane: normal = u_axis x v_axis.
struct PlaneBasis {
  Vec3 centroid = Vec3::Zero();
  Vec3 normal = Vec3::UnitZ();
  Vec3 u_axis = Vec3::UnitX();
  Vec3 v_axis = Vec3::UnitY();

  Vec2 project(const Vec3& p) const {
    Vec3 d = p - centroid;
    return {d.dot(u_axis), d.dot(v_axis)};
  }

  friend bool operator==(const PlaneBasis&, const PlaneBasis&) = default;
};

namespace detail {

// Flips `v` so that its largest-magnitude component is positive.
inline Vec3 canonical_sign(const Vec3& v) {
  Eigen::Index i = 0;
  v.cwiseAbs().maxCoeff(&i);
  return v[i] < 0 ? Vec3(-v) : v;
}

}  // namespace detail

/// Least-squares plane through `points` via the eigen-decomposition of their
/// covariance. The normal is the smallest-eigenvalue direction and points
/// towards `interior` when given; u_axis is the largest-variance direction.
/// When the in-plane spread is isotropic (squares, discs) u_axis is taken
/// from the world axis with the longest in-plane projection so the frame
/// stays aligned with the geometry.
inline PlaneBasis fit_plane_pca(std::span<const Vec3> points, std::optional<Vec3> interior = std::nullopt) {
  if (points.size() < 3) throw Error(ErrorKind::DegenerateGeometry, "plane fit needs at least 3 points");

  Vec3 centroid = Vec3::Zero();
  for (const auto& p : points) centroid += p;
  centroid /= static_cast<double>(points.size());

  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const auto& p : points) {
    Vec3 d = p - centroid;
    cov += d * d.transpose();
  }
  cov /= static_cast<double>(points.size());

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(cov);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::DegenerateGeometry, "covariance eigen-solve failed");
  const Vec3 eval = solver.eigenvalues();  // ascending
  const Eigen::Matrix3d evec = solver.eigenvectors();

  const double scale = std::max(eval[2], 0.0);
  if (scale <= 0.0 || eval[1] <= 1e-12 * scale)
    throw Error(ErrorKind::DegenerateGeometry, "points are coincident or collinear");

  PlaneBasis basis;
  basis.centroid = centroid;
  Vec3 normal = evec.col(0).normalized();
  if (interior) {
    double side = (*interior - centroid).dot(normal);
    if (std::abs(side) > 1e-12) {
      if (side < 0) normal = -normal;
    } else {
      normal = detail::canonical_sign(normal);
    }
  } else {
    normal = detail::canonical_sign(normal);
  }

  Vec3 u;
  if (eval[2] - eval[1] <= 1e-6 * eval[2]) {
    double best = -1.0;
    for (int axis = 0; axis < 3; ++axis) {
      Vec3 e = Vec3::Unit(axis);
      Vec3 proj = e - normal * normal.dot(e);
      if (proj.norm() > best + 1e-12) {
        best = proj.norm();
        u = proj;
      }
    }
    u.normalize();
  } else {
    u = evec.col(2);
    u = (u - normal * normal.dot(u)).normalized();
  }
  u = detail::canonical_sign(u);

  basis.normal = normal;
  basis.u_axis = u;
  basis.v_axis = normal.cross(u).normalized();
  return basis;
}

}  // namespace xrwm
