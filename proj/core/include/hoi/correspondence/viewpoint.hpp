#pragma once

#include <vector>

#include <Eigen/Core>

#include "hoi/correspondence/feature_map.hpp"
#include "hoi/correspondence/synthetic_features.hpp"
#include "hoi/geometry/mesh.hpp"
#include "hoi/render/camera.hpp"
#include "hoi/render/hard_rasterizer.hpp"

namespace hoi {

/// Number of candidate template views (the cube's rotation group).
inline constexpr int kViewCount = 24;

/// Template pose for candidate view `index`: rotation from the octahedral set,
/// bounding-box center placed at `anchor` (camera frame).
Pose6DoF canonical_view_pose(const TriangleMesh& mesh, int index, const Eigen::Vector3d& anchor);

/// Dissimilarity of two descriptor maps: each valid region is cropped to a
/// square around its bounding box and sampled on a grid x grid lattice; the
/// result is the mean descriptor distance over lattice cells valid in either
/// map (a cell missing from one side compares against the zero vector).
/// Infinity when neither map has valid pixels.
double view_feature_distance(const FeatureMap& a, const FeatureMap& b, int grid = 16);

struct ViewpointSelection {
  int index = 0;
  double score = 0.0;
  std::vector<double> scores;  ///< one per candidate view
  Pose6DoF pose;
  GBuffer render;
  FeatureMap features;
};

/// Renders the template from all 24 views and returns the one whose
/// descriptors are closest to the target's. Throws InsufficientDataError when
/// the target has no valid pixels.
ViewpointSelection select_viewpoint(const TriangleMesh& mesh, const FeatureMap& target,
                                    const Camera& camera, const FeatureExtractor& extractor,
                                    const Eigen::Vector3d& anchor);

}  // namespace hoi
