#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "hoi/geometry/pose.hpp"
#include "hoi/render/camera.hpp"

namespace hoi {

struct Correspondence3D2D {
  Eigen::Vector3d object_point;  ///< meters, object frame
  Eigen::Vector2d pixel;
};

struct PnPResult {
  Pose6DoF pose;  ///< object -> camera
  /// Mean Euclidean reprojection error in pixels.
  double reprojection_error = 0.0;
  /// Mean reprojection error before refinement and after each LM iteration.
  std::vector<double> refinement_trace;
  bool planar = false;
};

/// Mean |project(pose * X) - u| over correspondences.
double mean_reprojection_error(std::span<const Correspondence3D2D> corrs, const Pose6DoF& pose,
                               const Camera& camera);

/// EPnP closed form (four control points, or three when the points are coplanar).
/// Throws InsufficientDataError with < 4 points and InputError when the points
/// are collinear or coincident.
PnPResult solve_epnp(std::span<const Correspondence3D2D> corrs, const Camera& camera);

/// EPnP followed by Levenberg-Marquardt refinement of the reprojection error.
PnPResult solve_pnp(std::span<const Correspondence3D2D> corrs, const Camera& camera);

}  // namespace hoi
