#pragma once

#include <cstddef>
#include <string>

#include <Eigen/Core>

#include "hoi/correspondence/feature_map.hpp"
#include "hoi/correspondence/pnp.hpp"
#include "hoi/correspondence/ransac.hpp"
#include "hoi/correspondence/synthetic_features.hpp"
#include "hoi/geometry/mesh.hpp"
#include "hoi/render/camera.hpp"
#include "hoi/render/image.hpp"

namespace hoi {

struct CoarseConfig {
  RansacOptions ransac;
  std::size_t max_matches = 2000;
  /// Where candidate views are placed: the human mesh center when known.
  Eigen::Vector3d anchor = Eigen::Vector3d(0.0, 0.0, 2.5);
};

struct CoarseDiagnostics {
  int selected_view = -1;
  double view_score = 0.0;
  std::size_t matches = 0;
  std::size_t inliers = 0;
  double reprojection_error = 0.0;
  bool failed = false;
  std::string failure_reason;
};

struct CoarseResult {
  /// PnP estimate, or the fallback pose when the stage failed.
  Pose6DoF pose;
  /// Selected view rotation placed at the anchor.
  Pose6DoF fallback_pose;
  CoarseDiagnostics diagnostics;
};

/// View selection -> matching -> RANSAC -> back-projection through the rendered
/// template depth -> PnP. Fewer than 4 RANSAC inliers (or a failed PnP) is
/// reported through diagnostics.failed rather than thrown.
CoarseResult coarse_pose(const TriangleMesh& mesh, const FeatureMap& target_features,
                         const Image<double>& object_mask, const Camera& camera,
                         const FeatureExtractor& extractor, const CoarseConfig& config);

}  // namespace hoi
