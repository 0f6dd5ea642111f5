#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "hoi/correspondence/matching.hpp"

namespace hoi {

struct RansacOptions {
  double threshold_px = 2.0;
  int iterations = 1000;
  std::uint64_t seed = 0;
};

struct RansacResult {
  std::vector<Match2D> inliers;
  std::vector<std::size_t> inlier_indices;
  /// Best minimal-sample hypothesis, mapping pixel_a to pixel_b.
  Eigen::Matrix3d homography = Eigen::Matrix3d::Identity();
};

/// Normalized DLT homography mapping src to dst (>= 4 points).
/// Throws InsufficientDataError with fewer than 4 points.
Eigen::Matrix3d fit_homography(std::span<const Eigen::Vector2d> src,
                               std::span<const Eigen::Vector2d> dst);

/// Transfer error |H a - b| in pixels; infinity if H maps a to infinity.
double homography_transfer_error(const Eigen::Matrix3d& h, const Eigen::Vector2d& a,
                                 const Eigen::Vector2d& b);

/// Keeps matches whose transfer error under the best 4-point hypothesis is
/// below the threshold. Best = most inliers, ties broken by lower summed error.
/// Deterministic for a given seed. Throws InsufficientDataError with < 4 matches.
RansacResult ransac_homography_filter(std::span<const Match2D> matches,
                                      const RansacOptions& options);

}  // namespace hoi
