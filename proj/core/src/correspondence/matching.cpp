#include "hoi/correspondence/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hoi/error.hpp"

namespace hoi {
namespace {

struct ValidPixels {
  std::vector<int> x, y;
  std::vector<std::span<const float>> desc;
};

ValidPixels collect(const FeatureMap& m) {
  ValidPixels v;
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) {
      if (!m.valid(x, y)) continue;
      v.x.push_back(x);
      v.y.push_back(y);
      v.desc.push_back(m.descriptor(x, y));
    }
  }
  return v;
}

double squared_distance(std::span<const float> a, std::span<const float> b) {
  double s = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    const double d = static_cast<double>(a[c]) - static_cast<double>(b[c]);
    s += d * d;
  }
  return s;
}

// Index of the nearest descriptor in `to` for each descriptor in `from`;
// ties resolve to the lowest index.
std::vector<std::size_t> nearest(const ValidPixels& from, const ValidPixels& to,
                                 std::vector<double>& dist) {
  std::vector<std::size_t> nn(from.desc.size(), 0);
  dist.assign(from.desc.size(), std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < from.desc.size(); ++i) {
    for (std::size_t j = 0; j < to.desc.size(); ++j) {
      const double d = squared_distance(from.desc[i], to.desc[j]);
      if (d < dist[i]) {
        dist[i] = d;
        nn[i] = j;
      }
    }
  }
  return nn;
}

}  // namespace

double descriptor_distance(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) throw InputError("descriptor lengths differ");
  return std::sqrt(squared_distance(a, b));
}

std::vector<Match2D> bidirectional_match(const FeatureMap& a, const FeatureMap& b,
                                         std::size_t max_matches) {
  if (a.channels() != b.channels()) {
    throw InputError("feature maps have different channel counts (" +
                     std::to_string(a.channels()) + " vs " + std::to_string(b.channels()) + ")");
  }
  const ValidPixels pa = collect(a);
  const ValidPixels pb = collect(b);
  if (pa.desc.empty() || pb.desc.empty()) return {};

  std::vector<double> dist_ab, dist_ba;
  const auto ab = nearest(pa, pb, dist_ab);
  const auto ba = nearest(pb, pa, dist_ba);

  std::vector<std::size_t> mutual;
  for (std::size_t i = 0; i < ab.size(); ++i) {
    if (ba[ab[i]] == i) mutual.push_back(i);
  }
  std::stable_sort(mutual.begin(), mutual.end(),
                   [&](std::size_t i, std::size_t j) { return dist_ab[i] < dist_ab[j]; });
  if (mutual.size() > max_matches) mutual.resize(max_matches);

  std::vector<Match2D> out;
  out.reserve(mutual.size());
  for (std::size_t i : mutual) {
    const std::size_t j = ab[i];
    out.push_back({Eigen::Vector2d(pa.x[i] + 0.5, pa.y[i] + 0.5),
                   Eigen::Vector2d(pb.x[j] + 0.5, pb.y[j] + 0.5), std::sqrt(dist_ab[i])});
  }
  return out;
}

}  // namespace hoi
