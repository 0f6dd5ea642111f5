#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "hoi/correspondence/feature_map.hpp"

namespace hoi {

/// Pixel-center coordinates ((x + 0.5, y + 0.5)) in maps a and b.
struct Match2D {
  Eigen::Vector2d pixel_a;
  Eigen::Vector2d pixel_b;
  double distance = 0.0;
};

/// Mutual nearest neighbours under Euclidean descriptor distance, restricted to
/// valid pixels, sorted ascending by distance (ties by pixel index in a), at
/// most max_matches. Throws InputError on a channel-count mismatch.
std::vector<Match2D> bidirectional_match(const FeatureMap& a, const FeatureMap& b,
                                         std::size_t max_matches);

/// Euclidean distance between two descriptors of equal length.
double descriptor_distance(std::span<const float> a, std::span<const float> b);

}  // namespace hoi
