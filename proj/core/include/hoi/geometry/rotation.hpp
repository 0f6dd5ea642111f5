#pragma once

#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace hoi {

/// Angle in [0, pi] of the rotation represented by q.
double rotation_angle(const Eigen::Quaterniond& q);

/// Geodesic angle of a * conj(b), in [0, pi].
double angular_distance(const Eigen::Quaterniond& a, const Eigen::Quaterniond& b);

/// Axis-angle vector of q (length = angle, in [0, pi]).
Eigen::Vector3d log_map(const Eigen::Quaterniond& q);

/// Unit quaternion for the axis-angle vector omega.
Eigen::Quaterniond exp_map(const Eigen::Vector3d& omega);

/// Shortest-arc spherical interpolation. q1 is negated when dot(q0, q1) < 0.
/// Endpoints are returned exactly at t = 0 and t = 1.
Eigen::Quaterniond slerp(const Eigen::Quaterniond& q0, const Eigen::Quaterniond& q1, double t);

/// The 24 proper rotations of the cube (octahedral group), identity first.
const std::vector<Eigen::Quaterniond>& octahedral_rotations();

}  // namespace hoi
