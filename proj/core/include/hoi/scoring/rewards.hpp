#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "hoi/motion/sequence.hpp"

namespace hoi {

/// Tracking-reward weights. Every lambda is <= 0 so each reward lies in (0, 1].
struct RewardConfig {
  double lambda_p = -1.0;       ///< key-joint position
  double lambda_r = -0.3;       ///< joint rotation
  double lambda_v = -0.02;      ///< linear velocity
  double lambda_omega = -0.02;  ///< angular velocity
  double lambda_action = -0.01;
  double lambda_acc = -0.01;
  double lambda_contact = -3.0;
  /// Object-reward overrides; the body weights are reused when unset.
  std::optional<double> object_lambda_p;
  std::optional<double> object_lambda_r;
  std::optional<double> object_lambda_v;
  std::optional<double> object_lambda_omega;
  /// A joint whose force magnitude is below this (newtons) is not in contact.
  double force_threshold = 1.0;
  /// Joints whose positions enter the body reward: hands and feet.
  std::vector<std::string> key_joints = {"L_Wrist", "R_Wrist", "L_Ankle", "R_Ankle"};

  /// Throws InputError on a positive lambda or a negative threshold.
  void validate() const;
};

/// Expected contact state per joint name.
struct ContactLabels {
  std::vector<std::string> contact;
  std::vector<std::string> separate;

  /// Throws InputError when the sets overlap or, given a skeleton, a name is not in it.
  void validate(const std::vector<std::string>* skeleton = nullptr) const;
};

/// exp(lp * sum_key |dp|^2 + lr * sum_j ang^2 + lv * sum_j |dv|^2 + lw * sum_j |dw|^2).
/// Requires global joint positions, local rotations and both velocity sets in
/// both frames. Throws InputError on a size mismatch or a missing key joint.
double body_reward(const HOIFrame& sim, const HOIFrame& ref,
                   const std::vector<std::string>& skeleton, const RewardConfig& cfg);

/// Same form restricted to the object. Velocity terms need both states to carry
/// them; a velocity present on one side only is an error.
double object_reward(const ObjectState& sim, const ObjectState& ref, const RewardConfig& cfg);

/// exp(l_action |a_t| + l_acc sum_j |v_t - v_{t-1}|).
double regularization_reward(const HOIFrame& frame, const HOIFrame& previous,
                             const RewardConfig& cfg);

/// Product of the three rewards; throws InputError unless each lies in (0, 1].
double imitation_reward(double body, double object, double regularization);

/// exp(l_contact * sum_{labeled j} |[|F_j| < threshold] - L_j|), L_j = 0 for
/// contact joints and 1 for separate joints.
double contact_reward(const std::vector<Eigen::Vector3d>& forces,
                      const std::vector<std::string>& skeleton, const ContactLabels& labels,
                      const RewardConfig& cfg);

/// Accepts JSON {"contact": [...], "separate": [...]} or the bare reply form
/// contact:["L_Wrist"], separate:["R_Elbow"]. Throws FormatError.
ContactLabels parse_contact_labels(std::string_view text);
std::string format_contact_labels(const ContactLabels& labels);

struct HandFlags {
  bool left = false;
  bool right = false;
};

/// Parses "Left Hand: True, Right Hand: False". Throws FormatError.
HandFlags parse_hand_flags(std::string_view text);

}  // namespace hoi
