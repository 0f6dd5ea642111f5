#include "hoi/geometry/pose.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "hoi/error.hpp"
#include "hoi/geometry/rotation.hpp"

namespace hoi {

Pose6DoF::Pose6DoF(const Eigen::Quaterniond& rotation, const Eigen::Vector3d& translation,
                   double scale)
    : rotation_(rotation), translation_(translation), scale_(scale) {
  const double n = rotation_.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw InputError("pose rotation quaternion must be finite and non-zero");
  }
  if (!(scale_ > 0.0) || !std::isfinite(scale_)) {
    throw InputError("pose scale must be positive, got " + std::to_string(scale_));
  }
  if (!translation_.allFinite()) {
    throw InputError("pose translation must be finite");
  }
  // Already-unit inputs are kept as given so serialized poses reload bit-exactly.
  if (std::abs(n - 1.0) > 4.0 * std::numeric_limits<double>::epsilon()) rotation_.coeffs() /= n;
}

Eigen::Matrix4d Pose6DoF::matrix() const {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.topLeftCorner<3, 3>() = scale_ * rotation_.toRotationMatrix();
  m.topRightCorner<3, 1>() = translation_;
  return m;
}

Pose6DoF Pose6DoF::inverse() const {
  const Eigen::Quaterniond r_inv = rotation_.conjugate();
  const double s_inv = 1.0 / scale_;
  return {r_inv, -(s_inv * (r_inv * translation_)), s_inv};
}

Pose6DoF Pose6DoF::perturbed(const Eigen::Vector3d& omega, const Eigen::Vector3d& dt,
                             double dlog_scale) const {
  return {exp_map(omega) * rotation_, translation_ + dt, scale_ * std::exp(dlog_scale)};
}

Pose6DoF compose(const Pose6DoF& a, const Pose6DoF& b) {
  return {a.rotation() * b.rotation(),
          a.scale() * (a.rotation() * b.translation()) + a.translation(),
          a.scale() * b.scale()};
}

double rotation_error(const Pose6DoF& a, const Pose6DoF& b) {
  return angular_distance(a.rotation(), b.rotation());
}

double translation_error(const Pose6DoF& a, const Pose6DoF& b) {
  return (a.translation() - b.translation()).norm();
}

}  // namespace hoi
