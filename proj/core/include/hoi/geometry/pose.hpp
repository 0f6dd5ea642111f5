#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace hoi {

/// Rigid transform with uniform scale: x -> R * (s * x) + t.
///
/// Rotation is a unit quaternion stored (w, x, y, z); it is renormalized on
/// construction. Translation is in meters.
class Pose6DoF {
public:
  Pose6DoF() = default;
  Pose6DoF(const Eigen::Quaterniond& rotation, const Eigen::Vector3d& translation,
           double scale = 1.0);

  static Pose6DoF identity() { return {}; }

  const Eigen::Quaterniond& rotation() const { return rotation_; }
  const Eigen::Vector3d& translation() const { return translation_; }
  double scale() const { return scale_; }

  Eigen::Vector3d apply(const Eigen::Vector3d& p) const {
    return rotation_ * (scale_ * p) + translation_;
  }

  /// Homogeneous 4x4 matrix [sR t; 0 1].
  Eigen::Matrix4d matrix() const;

  Pose6DoF inverse() const;

  /// Left-multiplied update: rotation <- exp(omega) * rotation, translation += dt,
  /// scale *= exp(dlog_scale).
  Pose6DoF perturbed(const Eigen::Vector3d& omega, const Eigen::Vector3d& dt,
                     double dlog_scale = 0.0) const;

private:
  Eigen::Quaterniond rotation_ = Eigen::Quaterniond::Identity();
  Eigen::Vector3d translation_ = Eigen::Vector3d::Zero();
  double scale_ = 1.0;
};

/// a ∘ b: applies b first, then a. Scales multiply.
Pose6DoF compose(const Pose6DoF& a, const Pose6DoF& b);

/// Rotation angle (radians) between the two pose rotations.
double rotation_error(const Pose6DoF& a, const Pose6DoF& b);

/// Euclidean distance between the translations.
double translation_error(const Pose6DoF& a, const Pose6DoF& b);

}  // namespace hoi
