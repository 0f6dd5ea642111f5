#include "hoi/correspondence/viewpoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hoi/correspondence/matching.hpp"
#include "hoi/error.hpp"
#include "hoi/geometry/rotation.hpp"

namespace hoi {
namespace {

struct Crop {
  double x0 = 0.0, y0 = 0.0, side = 0.0;
  bool empty = true;
};

Crop square_crop(const FeatureMap& m) {
  int minx = m.width(), maxx = -1, miny = m.height(), maxy = -1;
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) {
      if (!m.valid(x, y)) continue;
      minx = std::min(minx, x);
      maxx = std::max(maxx, x);
      miny = std::min(miny, y);
      maxy = std::max(maxy, y);
    }
  }
  Crop c;
  if (maxx < 0) return c;
  c.empty = false;
  c.side = std::max(maxx - minx + 1, maxy - miny + 1);
  c.x0 = 0.5 * (minx + maxx + 1) - 0.5 * c.side;
  c.y0 = 0.5 * (miny + maxy + 1) - 0.5 * c.side;
  return c;
}

// Descriptor at lattice cell (i, j) of the crop, or empty when invalid.
std::span<const float> cell(const FeatureMap& m, const Crop& c, int grid, int i, int j) {
  const int x = static_cast<int>(std::floor(c.x0 + (i + 0.5) * c.side / grid));
  const int y = static_cast<int>(std::floor(c.y0 + (j + 0.5) * c.side / grid));
  if (x < 0 || y < 0 || x >= m.width() || y >= m.height() || !m.valid(x, y)) return {};
  return m.descriptor(x, y);
}

}  // namespace

Pose6DoF canonical_view_pose(const TriangleMesh& mesh, int index, const Eigen::Vector3d& anchor) {
  if (index < 0 || index >= kViewCount) throw InputError("view index out of range");
  const Eigen::Quaterniond& r = octahedral_rotations()[static_cast<std::size_t>(index)];
  const Eigen::Vector3d center = mesh.bounds().center();
  return Pose6DoF(r, anchor - r * center);
}

double view_feature_distance(const FeatureMap& a, const FeatureMap& b, int grid) {
  if (a.channels() != b.channels()) throw InputError("feature maps have different channel counts");
  const Crop ca = square_crop(a);
  const Crop cb = square_crop(b);
  if (ca.empty && cb.empty) return std::numeric_limits<double>::infinity();

  const std::vector<float> zero(static_cast<std::size_t>(a.channels()), 0.0f);
  double total = 0.0;
  int cells = 0;
  for (int j = 0; j < grid; ++j) {
    for (int i = 0; i < grid; ++i) {
      auto da = ca.empty ? std::span<const float>{} : cell(a, ca, grid, i, j);
      auto db = cb.empty ? std::span<const float>{} : cell(b, cb, grid, i, j);
      if (da.empty() && db.empty()) continue;
      if (da.empty()) da = zero;
      if (db.empty()) db = zero;
      total += descriptor_distance(da, db);
      ++cells;
    }
  }
  return total / cells;
}

ViewpointSelection select_viewpoint(const TriangleMesh& mesh, const FeatureMap& target,
                                    const Camera& camera, const FeatureExtractor& extractor,
                                    const Eigen::Vector3d& anchor) {
  if (target.valid_count() == 0) {
    throw InsufficientDataError("target feature map has no valid pixels");
  }
  ViewpointSelection best;
  best.score = std::numeric_limits<double>::infinity();
  best.index = -1;
  best.scores.reserve(kViewCount);
  for (int k = 0; k < kViewCount; ++k) {
    const Pose6DoF pose = canonical_view_pose(mesh, k, anchor);
    GBuffer render = rasterize_hard(mesh, pose, camera);
    FeatureMap features = extractor(render, k);
    if (features.channels() != target.channels()) {
      throw InputError("rendered view features have a different channel count than the target");
    }
    const double score = view_feature_distance(features, target);
    best.scores.push_back(score);
    if (score < best.score || best.index < 0) {
      best.score = score;
      best.index = k;
      best.pose = pose;
      best.render = std::move(render);
      best.features = std::move(features);
    }
  }
  return best;
}

}  // namespace hoi
