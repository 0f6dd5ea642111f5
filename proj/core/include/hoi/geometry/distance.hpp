#pragma once

#include <cstddef>
#include <limits>

#include <Eigen/Core>

#include "hoi/geometry/mesh.hpp"

namespace hoi {

/// Closest point on triangle (a, b, c) to p (Voronoi-region walk).
///
/// Templated so the same code runs on doubles and on autodiff scalars;
/// branching uses only comparisons, which autodiff types resolve on values.
template <class T>
Eigen::Matrix<T, 3, 1> closest_point_on_triangle(const Eigen::Matrix<T, 3, 1>& p,
                                                 const Eigen::Matrix<T, 3, 1>& a,
                                                 const Eigen::Matrix<T, 3, 1>& b,
                                                 const Eigen::Matrix<T, 3, 1>& c) {
  using V = Eigen::Matrix<T, 3, 1>;
  const V ab = b - a;
  const V ac = c - a;
  const V ap = p - a;
  const T d1 = ab.dot(ap);
  const T d2 = ac.dot(ap);
  if (d1 <= T(0) && d2 <= T(0)) return a;

  const V bp = p - b;
  const T d3 = ab.dot(bp);
  const T d4 = ac.dot(bp);
  if (d3 >= T(0) && d4 <= d3) return b;

  const T vc = d1 * d4 - d3 * d2;
  if (vc <= T(0) && d1 >= T(0) && d3 <= T(0)) {
    const T v = d1 / (d1 - d3);
    return a + v * ab;
  }

  const V cp = p - c;
  const T d5 = ab.dot(cp);
  const T d6 = ac.dot(cp);
  if (d6 >= T(0) && d5 <= d6) return c;

  const T vb = d5 * d2 - d1 * d6;
  if (vb <= T(0) && d2 >= T(0) && d6 <= T(0)) {
    const T w = d2 / (d2 - d6);
    return a + w * ac;
  }

  const T va = d3 * d6 - d5 * d4;
  if (va <= T(0) && (d4 - d3) >= T(0) && (d5 - d6) >= T(0)) {
    const T w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    return b + w * (c - b);
  }

  const T denom = T(1) / (va + vb + vc);
  const T v = vb * denom;
  const T w = vc * denom;
  return a + ab * v + ac * w;
}

struct ClosestPoint {
  Eigen::Vector3d point = Eigen::Vector3d::Zero();
  double distance = std::numeric_limits<double>::infinity();
  std::size_t face = 0;
};

/// Exhaustive closest point over all faces of the mesh.
ClosestPoint closest_point_on_mesh(const Eigen::Vector3d& p, const TriangleMesh& mesh);

/// Unsigned point-to-surface distance.
double point_mesh_distance(const Eigen::Vector3d& p, const TriangleMesh& mesh);

/// Ray-parity inside test: three fixed ray directions, majority vote.
bool point_inside_mesh(const Eigen::Vector3d& p, const TriangleMesh& mesh);

struct SignedDistance {
  double value = 0.0;   ///< negative inside
  bool reliable = true; ///< false when the mesh is not watertight
};

/// Signed distance to the surface, negative inside. For a non-watertight
/// mesh the sign is still computed but flagged unreliable.
SignedDistance signed_point_mesh_distance(const Eigen::Vector3d& p, const TriangleMesh& mesh);

}  // namespace hoi
