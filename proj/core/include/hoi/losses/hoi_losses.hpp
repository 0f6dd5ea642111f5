#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "hoi/geometry/distance.hpp"
#include "hoi/geometry/mesh.hpp"
#include "hoi/losses/loss_weights.hpp"
#include "hoi/render/autodiff.hpp"

namespace hoi {

/// Hard: step gate H(theta - d), used for reporting.
/// Smooth: sigmoid((theta - d) / kContactGateWidth), used for gradients.
enum class ContactGate { Hard, Smooth };

inline constexpr double kContactGateWidth = 0.01;

namespace detail {

template <class T>
using Vec3T = Eigen::Matrix<T, 3, 1>;

// Closest-face search on values, then the exact closest point in T for that face.
template <class T>
T point_to_faces_distance(const Vec3T<T>& p, std::span<const Vec3T<T>> vertices,
                          std::span<const Face> faces) {
  const Eigen::Vector3d pv(value_of(p.x()), value_of(p.y()), value_of(p.z()));
  auto val = [](const Vec3T<T>& v) {
    return Eigen::Vector3d(value_of(v.x()), value_of(v.y()), value_of(v.z()));
  };
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_face = 0;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const Face& f = faces[i];
    const Eigen::Vector3d c = closest_point_on_triangle<double>(
        pv, val(vertices[f[0]]), val(vertices[f[1]]), val(vertices[f[2]]));
    const double d = (c - pv).squaredNorm();
    if (d < best) {
      best = d;
      best_face = i;
    }
  }
  if (faces.empty()) return T(std::numeric_limits<double>::infinity());
  const Face& f = faces[best_face];
  const Vec3T<T> c =
      closest_point_on_triangle<T>(p, vertices[f[0]], vertices[f[1]], vertices[f[2]]);
  const T sq = (c - p).squaredNorm();
  if (value_of(sq) == 0.0) return T(0.0);
  using std::sqrt;
  return sqrt(sq);
}

}  // namespace detail

/// Sum over flagged hands and their palm vertices of gate(theta - d) * |d|,
/// d the unsigned distance from the palm vertex to the posed object surface.
template <class T>
T contact_loss(std::span<const Eigen::Matrix<T, 3, 1>> object_vertices,
               std::span<const Face> object_faces, const TriangleMesh& human,
               const ContactSpec& spec, double theta, ContactGate gate) {
  T total(0.0);
  auto accumulate = [&](bool flagged, const VertexSelection& palm) {
    if (!flagged) return;
    for (std::uint32_t idx : palm.indices()) {
      const Eigen::Vector3d& pd = human.vertices().at(idx);
      const detail::Vec3T<T> p(T(pd.x()), T(pd.y()), T(pd.z()));
      const T d = detail::point_to_faces_distance<T>(p, object_vertices, object_faces);
      if (gate == ContactGate::Hard) {
        if (value_of(d) < theta) total += d;
      } else {
        using std::exp;
        const T g = T(1.0) / (T(1.0) + exp(-(T(theta) - d) / kContactGateWidth));
        total += g * d;
      }
    }
  };
  accumulate(spec.left_hand, spec.left_palm);
  accumulate(spec.right_hand, spec.right_palm);
  return total;
}

double contact_loss(const TriangleMesh& object_posed, const TriangleMesh& human,
                    const ContactSpec& spec, double theta);

/// Sum over object vertices of max(0, -signed_distance(p, human)).
/// The sign comes from the ray-parity inside test on values; the human mesh
/// should be watertight.
template <class T>
T penetration_loss(std::span<const Eigen::Matrix<T, 3, 1>> object_vertices,
                   const TriangleMesh& human) {
  const Eigen::AlignedBox3d box = human.bounds();
  std::vector<Eigen::Matrix<T, 3, 1>> hv;
  T total(0.0);
  for (const auto& p : object_vertices) {
    const Eigen::Vector3d pv(value_of(p.x()), value_of(p.y()), value_of(p.z()));
    if (!box.contains(pv) || !point_inside_mesh(pv, human)) continue;
    if (hv.empty()) {
      hv.reserve(human.vertex_count());
      for (const auto& v : human.vertices()) hv.emplace_back(T(v.x()), T(v.y()), T(v.z()));
    }
    total += detail::point_to_faces_distance<T>(p, hv, human.faces());
  }
  return total;
}

double penetration_loss(const TriangleMesh& object_posed, const TriangleMesh& human);

}  // namespace hoi
