#include "hoi/geometry/rotation.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace hoi {

double rotation_angle(const Eigen::Quaterniond& q) {
  return 2.0 * std::atan2(q.vec().norm(), std::abs(q.w()));
}

double angular_distance(const Eigen::Quaterniond& a, const Eigen::Quaterniond& b) {
  return rotation_angle(a * b.conjugate());
}

Eigen::Vector3d log_map(const Eigen::Quaterniond& q_in) {
  Eigen::Quaterniond q = q_in.normalized();
  if (q.w() < 0.0) q.coeffs() = -q.coeffs();
  const double s = q.vec().norm();
  if (s < 1e-12) {
    return 2.0 * q.vec();
  }
  const double angle = 2.0 * std::atan2(s, q.w());
  return (angle / s) * q.vec();
}

Eigen::Quaterniond exp_map(const Eigen::Vector3d& omega) {
  const double angle = omega.norm();
  if (angle < 1e-12) {
    Eigen::Quaterniond q(1.0, 0.5 * omega.x(), 0.5 * omega.y(), 0.5 * omega.z());
    return q.normalized();
  }
  return Eigen::Quaterniond(Eigen::AngleAxisd(angle, omega / angle));
}

Eigen::Quaterniond slerp(const Eigen::Quaterniond& q0, const Eigen::Quaterniond& q1, double t) {
  if (t <= 0.0) return q0;
  if (t >= 1.0) return q1;
  // Eigen negates q1 internally when the dot product is negative.
  return q0.slerp(t, q1).normalized();
}

const std::vector<Eigen::Quaterniond>& octahedral_rotations() {
  static const std::vector<Eigen::Quaterniond> rotations = [] {
    std::vector<Eigen::Quaterniond> out;
    out.reserve(24);
    std::array<int, 3> perm{0, 1, 2};
    // Signed permutation matrices with determinant +1.
    do {
      for (int signs = 0; signs < 8; ++signs) {
        Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
        for (int row = 0; row < 3; ++row) {
          m(row, perm[row]) = (signs >> row) & 1 ? -1.0 : 1.0;
        }
        if (m.determinant() > 0.0) {
          out.emplace_back(m);
        }
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (auto& q : out) {
      q.normalize();
      if (q.w() < 0.0) q.coeffs() = -q.coeffs();
    }
    return out;
  }();
  return rotations;
}

}  // namespace hoi
