#include "hoi/correspondence/coarse_pose.hpp"

#include <cmath>

#include "hoi/correspondence/matching.hpp"
#include "hoi/correspondence/viewpoint.hpp"
#include "hoi/error.hpp"

namespace hoi {

CoarseResult coarse_pose(const TriangleMesh& mesh, const FeatureMap& target_features,
                         const Image<double>& object_mask, const Camera& camera,
                         const FeatureExtractor& extractor, const CoarseConfig& config) {
  if (mesh.empty()) throw InputError("template mesh has no faces");
  if (target_features.width() != camera.width || target_features.height() != camera.height) {
    throw InputError("target feature map size does not match the camera");
  }
  FeatureMap target = target_features;
  if (!object_mask.empty()) {
    if (!object_mask.same_shape(target.valid_mask())) {
      throw InputError("object mask size does not match the target feature map");
    }
    for (int y = 0; y < target.height(); ++y) {
      for (int x = 0; x < target.width(); ++x) {
        if (object_mask(x, y) <= 0.5) target.set_valid(x, y, false);
      }
    }
  }
  target.validate();

  const ViewpointSelection view = select_viewpoint(mesh, target, camera, extractor, config.anchor);
  CoarseResult result;
  result.fallback_pose = view.pose;
  result.pose = view.pose;
  auto& diag = result.diagnostics;
  diag.selected_view = view.index;
  diag.view_score = view.score;

  auto fail = [&](std::string reason) {
    diag.failed = true;
    diag.failure_reason = std::move(reason);
    result.pose = result.fallback_pose;
    return result;
  };

  const auto matches = bidirectional_match(view.features, target, config.max_matches);
  diag.matches = matches.size();
  if (matches.size() < 4) return fail("fewer than 4 mutual matches");

  const RansacResult ransac = ransac_homography_filter(matches, config.ransac);
  diag.inliers = ransac.inliers.size();
  if (ransac.inliers.size() < 4) return fail("fewer than 4 RANSAC inliers");

  const Pose6DoF view_inverse = view.pose.inverse();
  std::vector<Correspondence3D2D> corrs;
  corrs.reserve(ransac.inliers.size());
  for (const auto& m : ransac.inliers) {
    const int x = static_cast<int>(std::floor(m.pixel_a.x()));
    const int y = static_cast<int>(std::floor(m.pixel_a.y()));
    const double depth = view.render.depth(x, y);
    if (!(depth > 0.0)) continue;
    const Eigen::Vector3d camera_point = camera.back_project(m.pixel_a, depth);
    corrs.push_back({view_inverse.apply(camera_point), m.pixel_b});
  }
  if (corrs.size() < 4) return fail("fewer than 4 inliers with rendered depth");

  try {
    const PnPResult pnp = solve_pnp(corrs, camera);
    result.pose = pnp.pose;
    diag.reprojection_error = pnp.reprojection_error;
  } catch (const InputError& e) {
    return fail(std::string("PnP failed: ") + e.what());
  }
  return result;
}

}  // namespace hoi
