#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "hoi/geometry/pose.hpp"

namespace hoi {

/// Joint names a contact-labeled skeleton must contain.
const std::vector<std::string>& labeled_body_parts();

struct ObjectState {
  Pose6DoF pose;
  std::optional<Eigen::Vector3d> linear_velocity;
  std::optional<Eigen::Vector3d> angular_velocity;
};

/// One time sample of a human-object interaction. Per-joint vectors are either
/// empty (absent) or hold one entry per skeleton joint.
struct HOIFrame {
  double time = 0.0;
  Eigen::Vector3d root_position = Eigen::Vector3d::Zero();
  Eigen::Quaterniond root_rotation = Eigen::Quaterniond::Identity();
  /// Local joint rotations.
  std::vector<Eigen::Quaterniond> joint_rotations;
  /// Global joint positions (meters).
  std::vector<Eigen::Vector3d> joint_positions;
  std::vector<Eigen::Vector3d> joint_velocities;
  std::vector<Eigen::Vector3d> joint_angular_velocities;
  ObjectState object;
  std::optional<Eigen::VectorXd> action;
  /// Contact force per joint (newtons).
  std::vector<Eigen::Vector3d> forces;
};

struct HOISequence {
  double fps = 30.0;
  std::vector<std::string> skeleton;
  std::vector<HOIFrame> frames;
  /// Source frame indices when this sequence was extracted from another one.
  std::vector<int> keyframe_indices;

  /// Index of a joint name, or -1.
  int joint_index(const std::string& name) const;
  /// Throws InputError on per-joint sizes that disagree with the skeleton,
  /// non-unit quaternions, decreasing times or a non-positive fps.
  void validate() const;
};

/// round(i (n-1) / (k-1)) for i in 0..k-1; {0} when k = 1.
std::vector<int> keyframe_indices(int frame_count, int k);

/// Uniformly spaced keyframes. Throws InputError unless 1 <= k <= frame count.
HOISequence extract_keyframes(const HOISequence& seq, int k);

/// Milestone pose at time t: lerp of positions and slerp of rotations between
/// the bracketing milestones. A milestone is returned unchanged at its own
/// time. Times outside the milestone span clamp to the ends.
HOIFrame sample_milestones(const HOISequence& milestones, double t);

/// Fills joint linear velocities (from joint positions), joint angular
/// velocities (from local rotations) and object velocities by central
/// differences at the sequence fps, one-sided at the ends. With `overwrite`
/// false only absent velocities are filled.
void fill_velocities(HOISequence& seq, bool overwrite = true);

/// Dense motion at a uniform `fps` grid from the first to the last milestone,
/// with velocities from central differences (one-sided at the ends).
/// Throws InputError with fewer than two milestones, non-increasing or
/// duplicate timestamps, or fps <= 0.
HOISequence interpolate(const HOISequence& milestones, double fps);

}  // namespace hoi
