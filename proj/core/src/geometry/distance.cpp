#include "hoi/geometry/distance.hpp"

#include <array>
#include <cmath>

namespace hoi {
namespace {

// Fixed, mutually non-aligned directions so grazing an edge in one ray is
// outvoted by the other two.
const std::array<Eigen::Vector3d, 3>& parity_rays() {
  static const std::array<Eigen::Vector3d, 3> rays = {
      Eigen::Vector3d(0.5773502691896258, 0.5345224838248488, 0.6172133998483676).normalized(),
      Eigen::Vector3d(-0.3162277660168379, 0.8944271909999159, -0.3166247903554).normalized(),
      Eigen::Vector3d(0.7071067811865476, -0.1414213562373095, -0.6928203230275509).normalized()};
  return rays;
}

bool ray_hits_triangle(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir,
                       const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                       const Eigen::Vector3d& c) {
  const Eigen::Vector3d e1 = b - a;
  const Eigen::Vector3d e2 = c - a;
  const Eigen::Vector3d h = dir.cross(e2);
  const double det = e1.dot(h);
  if (std::abs(det) < 1e-15) return false;
  const double inv = 1.0 / det;
  const Eigen::Vector3d s = origin - a;
  const double u = inv * s.dot(h);
  if (u < 0.0 || u > 1.0) return false;
  const Eigen::Vector3d q = s.cross(e1);
  const double v = inv * dir.dot(q);
  if (v < 0.0 || u + v > 1.0) return false;
  return inv * e2.dot(q) > 0.0;
}

}  // namespace

ClosestPoint closest_point_on_mesh(const Eigen::Vector3d& p, const TriangleMesh& mesh) {
  ClosestPoint best;
  const auto& v = mesh.vertices();
  const auto& faces = mesh.faces();
  double best_sq = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const Face& f = faces[i];
    const Eigen::Vector3d c = closest_point_on_triangle<double>(p, v[f[0]], v[f[1]], v[f[2]]);
    const double d = (c - p).squaredNorm();
    if (d < best_sq) {
      best_sq = d;
      best.point = c;
      best.face = i;
    }
  }
  best.distance = std::sqrt(best_sq);
  return best;
}

double point_mesh_distance(const Eigen::Vector3d& p, const TriangleMesh& mesh) {
  return closest_point_on_mesh(p, mesh).distance;
}

bool point_inside_mesh(const Eigen::Vector3d& p, const TriangleMesh& mesh) {
  const auto& v = mesh.vertices();
  int votes = 0;
  for (const auto& dir : parity_rays()) {
    int hits = 0;
    for (const Face& f : mesh.faces()) {
      if (ray_hits_triangle(p, dir, v[f[0]], v[f[1]], v[f[2]])) ++hits;
    }
    votes += hits % 2;
  }
  return votes >= 2;
}

SignedDistance signed_point_mesh_distance(const Eigen::Vector3d& p, const TriangleMesh& mesh) {
  SignedDistance out;
  const double d = point_mesh_distance(p, mesh);
  out.reliable = mesh.is_watertight();
  out.value = (d > 0.0 && point_inside_mesh(p, mesh)) ? -d : d;
  return out;
}

}  // namespace hoi
