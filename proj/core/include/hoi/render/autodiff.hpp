#pragma once

#include <ceres/jet.h>

namespace hoi {

/// Number of pose parameters carried as derivatives: axis-angle increment (3),
/// translation increment (3), log-scale increment (1).
inline constexpr int kPoseParams = 7;

using PoseJet = ceres::Jet<double, kPoseParams>;

inline double value_of(double x) { return x; }
template <int N>
double value_of(const ceres::Jet<double, N>& x) {
  return x.a;
}

/// |x| with derivative 0 at x = 0 (ceres::abs picks +1 there).
inline double abs0(double x) { return x < 0.0 ? -x : x; }
template <int N>
ceres::Jet<double, N> abs0(const ceres::Jet<double, N>& x) {
  if (x.a > 0.0) return x;
  if (x.a < 0.0) return -x;
  return ceres::Jet<double, N>(0.0);
}

}  // namespace hoi
