#pragma once

#include <random>
#include <vector>

#include <Eigen/Geometry>

#include "hoi/correspondence/matching.hpp"
#include "hoi/correspondence/pnp.hpp"
#include "hoi/geometry/pose.hpp"
#include "hoi/render/camera.hpp"

namespace hoi::testing {

inline Eigen::Quaterniond random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return Eigen::Quaterniond(n(rng), n(rng), n(rng), n(rng)).normalized();
}

// Object-to-camera pose that keeps a 0.3 m object in front of the desk camera.
inline Pose6DoF random_camera_pose(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> xy(-0.15, 0.15), z(1.5, 3.0);
  return Pose6DoF(random_rotation(rng), {xy(rng), xy(rng), z(rng)});
}

// Exact projections of n points; planar puts them all on the object's z = 0 plane.
inline std::vector<Correspondence3D2D> planted_correspondences(std::mt19937_64& rng,
                                                               const Pose6DoF& pose,
                                                               const Camera& camera, int n,
                                                               bool planar) {
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  std::vector<Correspondence3D2D> out;
  while (static_cast<int>(out.size()) < n) {
    const Eigen::Vector3d x(u(rng), u(rng), planar ? 0.0 : u(rng));
    const Eigen::Vector3d c = pose.apply(x);
    if (c.z() < 0.2) continue;
    out.push_back({x, camera.project_unchecked<double>(c)});
  }
  return out;
}

struct PlantedMatches {
  std::vector<Match2D> matches;
  std::vector<bool> inlier;
};

// Matches related by a random homography, with a fraction of uniform outliers
// that sit at least `min_outlier_px` away from their true transfer.
inline PlantedMatches planted_homography_matches(std::mt19937_64& rng, int n,
                                                 double outlier_fraction,
                                                 double min_outlier_px = 20.0) {
  std::uniform_real_distribution<double> px(0.0, 128.0), small(-0.1, 0.1), shift(-10.0, 10.0);
  Eigen::Matrix3d h = Eigen::Matrix3d::Identity();
  h(0, 0) += small(rng);
  h(0, 1) = small(rng);
  h(1, 0) = small(rng);
  h(1, 1) += small(rng);
  h(0, 2) = shift(rng);
  h(1, 2) = shift(rng);
  h(2, 0) = small(rng) * 1e-3;
  h(2, 1) = small(rng) * 1e-3;
  const int outliers = static_cast<int>(std::lround(outlier_fraction * n));
  PlantedMatches pm;
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector2d a(px(rng), px(rng));
    const Eigen::Vector2d mapped = (h * a.homogeneous()).hnormalized();
    Eigen::Vector2d b = mapped;
    const bool is_outlier = i < outliers;
    if (is_outlier) {
      do {
        b = {px(rng), px(rng)};
      } while ((b - mapped).norm() < min_outlier_px);
    }
    pm.matches.push_back({a, b, 0.0});
    pm.inlier.push_back(!is_outlier);
  }
  return pm;
}

}  // namespace hoi::testing
