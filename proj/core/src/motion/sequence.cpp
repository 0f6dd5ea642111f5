#include "hoi/motion/sequence.hpp"

#include <cmath>
#include <string>

#include "hoi/error.hpp"
#include "hoi/geometry/rotation.hpp"

namespace hoi {

const std::vector<std::string>& labeled_body_parts() {
  static const std::vector<std::string> parts = {
      "Pelvis",     "L_Knee",  "L_Ankle", "L_Toe",      "R_Knee",  "R_Ankle",
      "R_Toe",      "Torso",   "Chest",   "Neck",       "Head",    "L_Shoulder",
      "L_Elbow",    "L_Wrist", "R_Shoulder", "R_Elbow", "R_Wrist"};
  return parts;
}

int HOISequence::joint_index(const std::string& name) const {
  for (std::size_t i = 0; i < skeleton.size(); ++i) {
    if (skeleton[i] == name) return static_cast<int>(i);
  }
  return -1;
}

namespace {

void check_unit(const Eigen::Quaterniond& q, const std::string& what) {
  if (!(std::abs(q.norm() - 1.0) <= 1e-6)) throw InputError(what + " is not a unit quaternion");
}

template <class V>
void check_joint_count(const std::vector<V>& v, std::size_t n, const std::string& what,
                       std::size_t frame) {
  if (!v.empty() && v.size() != n) {
    throw InputError("frame " + std::to_string(frame) + ": " + what + " has " +
                     std::to_string(v.size()) + " entries, skeleton has " + std::to_string(n));
  }
}

}  // namespace

void HOISequence::validate() const {
  if (!(fps > 0.0) || !std::isfinite(fps)) throw InputError("fps must be positive");
  const std::size_t n = skeleton.size();
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const HOIFrame& f = frames[i];
    if (!std::isfinite(f.time)) throw InputError("frame " + std::to_string(i) + ": bad time");
    if (i > 0 && f.time < frames[i - 1].time) {
      throw InputError("frame times decrease at frame " + std::to_string(i));
    }
    check_unit(f.root_rotation, "frame " + std::to_string(i) + " root rotation");
    check_joint_count(f.joint_rotations, n, "joint rotations", i);
    check_joint_count(f.joint_positions, n, "joint positions", i);
    check_joint_count(f.joint_velocities, n, "joint velocities", i);
    check_joint_count(f.joint_angular_velocities, n, "joint angular velocities", i);
    check_joint_count(f.forces, n, "forces", i);
    for (const auto& q : f.joint_rotations) {
      check_unit(q, "frame " + std::to_string(i) + " joint rotation");
    }
  }
}

std::vector<int> keyframe_indices(int frame_count, int k) {
  if (k < 1 || k > frame_count) {
    throw InputError("keyframe count " + std::to_string(k) + " outside 1.." +
                     std::to_string(frame_count));
  }
  if (k == 1) return {0};
  std::vector<int> out(static_cast<std::size_t>(k));
  const long long span = frame_count - 1;
  const long long den = k - 1;
  for (long long i = 0; i < k; ++i) {
    // Integer round-half-up of i * span / den.
    out[static_cast<std::size_t>(i)] = static_cast<int>((2 * i * span + den) / (2 * den));
  }
  return out;
}

HOISequence extract_keyframes(const HOISequence& seq, int k) {
  HOISequence out;
  out.fps = seq.fps;
  out.skeleton = seq.skeleton;
  out.keyframe_indices = keyframe_indices(static_cast<int>(seq.frames.size()), k);
  for (int i : out.keyframe_indices) out.frames.push_back(seq.frames[static_cast<std::size_t>(i)]);
  return out;
}

namespace {

template <class V>
std::vector<V> lerp_all(const std::vector<V>& a, const std::vector<V>& b, double u) {
  if (a.empty() || a.size() != b.size()) return {};
  std::vector<V> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = (1.0 - u) * a[i] + u * b[i];
  return out;
}

HOIFrame blend(const HOIFrame& a, const HOIFrame& b, double u, double t) {
  HOIFrame f;
  f.time = t;
  f.root_position = (1.0 - u) * a.root_position + u * b.root_position;
  f.root_rotation = slerp(a.root_rotation, b.root_rotation, u);
  if (!a.joint_rotations.empty() && a.joint_rotations.size() == b.joint_rotations.size()) {
    f.joint_rotations.resize(a.joint_rotations.size());
    for (std::size_t j = 0; j < a.joint_rotations.size(); ++j) {
      f.joint_rotations[j] = slerp(a.joint_rotations[j], b.joint_rotations[j], u);
    }
  }
  f.joint_positions = lerp_all(a.joint_positions, b.joint_positions, u);
  f.forces = lerp_all(a.forces, b.forces, u);
  f.object.pose = Pose6DoF(
      slerp(a.object.pose.rotation(), b.object.pose.rotation(), u),
      (1.0 - u) * a.object.pose.translation() + u * b.object.pose.translation(),
      (1.0 - u) * a.object.pose.scale() + u * b.object.pose.scale());
  if (a.action && b.action && a.action->size() == b.action->size()) {
    f.action = (1.0 - u) * *a.action + u * *b.action;
  }
  return f;
}

void check_milestones(const HOISequence& m) {
  if (m.frames.size() < 2) throw InputError("interpolation needs at least two milestones");
  for (std::size_t i = 1; i < m.frames.size(); ++i) {
    if (!(m.frames[i].time > m.frames[i - 1].time)) {
      throw InputError("milestone timestamps must be strictly increasing (frame " +
                       std::to_string(i) + ")");
    }
  }
}

// Rotation rate taking q0 to q1 over dt, expressed in the parent frame.
Eigen::Vector3d rotation_rate(const Eigen::Quaterniond& q0, const Eigen::Quaterniond& q1,
                              double dt) {
  return log_map(q1 * q0.conjugate()) / dt;
}

}  // namespace

void fill_velocities(HOISequence& seq, bool overwrite) {
  const std::size_t n = seq.frames.size();
  const double fps = seq.fps;
  for (std::size_t k = 0; k < n; ++k) {
    HOIFrame& f = seq.frames[k];
    const bool joints_lin = overwrite || f.joint_velocities.empty();
    const bool joints_ang = overwrite || f.joint_angular_velocities.empty();
    const bool obj_lin = overwrite || !f.object.linear_velocity;
    const bool obj_ang = overwrite || !f.object.angular_velocity;
    if (n < 2) {
      if (obj_lin) f.object.linear_velocity = Eigen::Vector3d::Zero();
      if (obj_ang) f.object.angular_velocity = Eigen::Vector3d::Zero();
      if (joints_lin) f.joint_velocities.assign(f.joint_positions.size(), Eigen::Vector3d::Zero());
      if (joints_ang) {
        f.joint_angular_velocities.assign(f.joint_rotations.size(), Eigen::Vector3d::Zero());
      }
      continue;
    }
    const std::size_t lo = k == 0 ? 0 : k - 1;
    const std::size_t hi = k + 1 == n ? n - 1 : k + 1;
    const HOIFrame& a = seq.frames[lo];
    const HOIFrame& b = seq.frames[hi];
    const double dt = static_cast<double>(hi - lo) / fps;
    if (obj_lin) {
      f.object.linear_velocity = (b.object.pose.translation() - a.object.pose.translation()) / dt;
    }
    if (obj_ang) {
      f.object.angular_velocity =
          rotation_rate(a.object.pose.rotation(), b.object.pose.rotation(), dt);
    }
    if (joints_lin) {
      f.joint_velocities.clear();
      if (!a.joint_positions.empty() && a.joint_positions.size() == b.joint_positions.size()) {
        for (std::size_t j = 0; j < a.joint_positions.size(); ++j) {
          f.joint_velocities.push_back((b.joint_positions[j] - a.joint_positions[j]) / dt);
        }
      }
    }
    if (joints_ang) {
      f.joint_angular_velocities.clear();
      if (!a.joint_rotations.empty() && a.joint_rotations.size() == b.joint_rotations.size()) {
        for (std::size_t j = 0; j < a.joint_rotations.size(); ++j) {
          f.joint_angular_velocities.push_back(
              rotation_rate(a.joint_rotations[j], b.joint_rotations[j], dt));
        }
      }
    }
  }
}

HOIFrame sample_milestones(const HOISequence& milestones, double t) {
  const auto& fr = milestones.frames;
  if (fr.empty()) throw InputError("no milestones to sample");
  if (t <= fr.front().time) return fr.front();
  if (t >= fr.back().time) return fr.back();
  std::size_t hi = 1;
  while (fr[hi].time < t) ++hi;
  if (fr[hi].time == t) return fr[hi];
  const HOIFrame& a = fr[hi - 1];
  const HOIFrame& b = fr[hi];
  const double u = (t - a.time) / (b.time - a.time);
  return blend(a, b, u, t);
}

HOISequence interpolate(const HOISequence& milestones, double fps) {
  if (!(fps > 0.0) || !std::isfinite(fps)) throw InputError("target fps must be positive");
  check_milestones(milestones);
  milestones.validate();

  const double t0 = milestones.frames.front().time;
  const double t1 = milestones.frames.back().time;
  const auto count = static_cast<std::size_t>(std::floor((t1 - t0) * fps + 1e-9)) + 1;

  HOISequence out;
  out.fps = fps;
  out.skeleton = milestones.skeleton;
  out.frames.reserve(count);
  std::size_t next_milestone = 0;
  for (std::size_t k = 0; k < count; ++k) {
    double t = t0 + static_cast<double>(k) / fps;
    // Snap grid times that round-off moved next to a milestone.
    while (next_milestone < milestones.frames.size() &&
           milestones.frames[next_milestone].time < t - 1e-9) {
      ++next_milestone;
    }
    if (next_milestone < milestones.frames.size() &&
        std::abs(milestones.frames[next_milestone].time - t) <= 1e-9) {
      t = milestones.frames[next_milestone].time;
    }
    out.frames.push_back(sample_milestones(milestones, t));
  }

  fill_velocities(out);
  return out;
}

}  // namespace hoi
