#pragma once

#include <cstdint>
#include <functional>

#include <Eigen/Core>

#include "hoi/correspondence/feature_map.hpp"
#include "hoi/render/hard_rasterizer.hpp"

namespace hoi {

/// Produces a descriptor map for a rendered template view. The view index
/// (0..23) lets precomputed per-view maps stand in for a live extractor.
using FeatureExtractor = std::function<FeatureMap(const GBuffer& view, int view_index)>;

/// Geometry-derived descriptors: a fixed random linear projection of the
/// object-space surface point (divided by `extent`) and the surface normal.
/// Valid exactly where the view has surface coverage.
class ProjectionFeatureExtractor {
public:
  ProjectionFeatureExtractor(int channels, std::uint64_t seed, double extent);

  FeatureMap operator()(const GBuffer& view, int view_index = -1) const;

  Eigen::VectorXd describe(const Eigen::Vector3d& object_point,
                           const Eigen::Vector3d& object_normal) const;

  int channels() const { return static_cast<int>(projection_.rows()); }

private:
  Eigen::MatrixXd projection_;  // channels x 6
  double extent_;
};

/// Adds i.i.d. Gaussian noise to valid descriptors.
void add_feature_noise(FeatureMap& map, double stddev, std::uint64_t seed);

}  // namespace hoi
