#include "hoi/correspondence/synthetic_features.hpp"

#include <random>

#include "hoi/error.hpp"

namespace hoi {

ProjectionFeatureExtractor::ProjectionFeatureExtractor(int channels, std::uint64_t seed,
                                                       double extent)
    : projection_(channels, 6), extent_(extent) {
  if (channels <= 0) throw InputError("feature channel count must be positive");
  if (!(extent > 0.0)) throw InputError("feature extent must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (Eigen::Index r = 0; r < projection_.rows(); ++r) {
    for (Eigen::Index c = 0; c < projection_.cols(); ++c) projection_(r, c) = normal(rng);
  }
}

Eigen::VectorXd ProjectionFeatureExtractor::describe(const Eigen::Vector3d& object_point,
                                                     const Eigen::Vector3d& object_normal) const {
  Eigen::Matrix<double, 6, 1> x;
  x << object_point / extent_, object_normal;
  return projection_ * x;
}

FeatureMap ProjectionFeatureExtractor::operator()(const GBuffer& view, int /*view_index*/) const {
  const int w = view.silhouette.width();
  const int h = view.silhouette.height();
  FeatureMap map(w, h, channels());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const bool hit = view.face(x, y) >= 0;
      map.set_valid(x, y, hit);
      if (!hit) continue;
      const Eigen::VectorXd d = describe(view.object_point(x, y), view.object_normal(x, y));
      auto out = map.descriptor(x, y);
      for (int c = 0; c < channels(); ++c) out[c] = static_cast<float>(d(c));
    }
  }
  return map;
}

void add_feature_noise(FeatureMap& map, double stddev, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, stddev);
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      if (!map.valid(x, y)) continue;
      for (float& v : map.descriptor(x, y)) v += static_cast<float>(normal(rng));
    }
  }
}

}  // namespace hoi
