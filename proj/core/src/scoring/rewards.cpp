#include "hoi/scoring/rewards.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <regex>
#include <string>

#include <json.hpp>

#include "hoi/error.hpp"
#include "hoi/geometry/rotation.hpp"

namespace hoi {

void RewardConfig::validate() const {
  const std::pair<const char*, double> lambdas[] = {
      {"lambda_p", lambda_p},           {"lambda_r", lambda_r},
      {"lambda_v", lambda_v},           {"lambda_omega", lambda_omega},
      {"lambda_action", lambda_action}, {"lambda_acc", lambda_acc},
      {"lambda_contact", lambda_contact}};
  for (const auto& [name, v] : lambdas) {
    if (!(v <= 0.0) || !std::isfinite(v)) {
      throw InputError(std::string(name) + " must be finite and <= 0");
    }
  }
  for (const auto* o : {&object_lambda_p, &object_lambda_r, &object_lambda_v, &object_lambda_omega}) {
    if (*o && (!(**o <= 0.0) || !std::isfinite(**o))) {
      throw InputError("object reward lambdas must be finite and <= 0");
    }
  }
  if (!(force_threshold >= 0.0)) throw InputError("force_threshold must be >= 0");
}

void ContactLabels::validate(const std::vector<std::string>* skeleton) const {
  for (const auto& c : contact) {
    if (std::find(separate.begin(), separate.end(), c) != separate.end()) {
      throw InputError("joint '" + c + "' is labeled both contact and separate");
    }
  }
  if (!skeleton) return;
  for (const auto* set : {&contact, &separate}) {
    for (const auto& name : *set) {
      if (std::find(skeleton->begin(), skeleton->end(), name) == skeleton->end()) {
        throw InputError("labeled joint '" + name + "' is not in the skeleton");
      }
    }
  }
}

namespace {

template <class V>
void require_size(const std::vector<V>& v, std::size_t n, const char* what) {
  if (v.size() != n) {
    throw InputError(std::string(what) + ": expected " + std::to_string(n) + " entries, got " +
                     std::to_string(v.size()));
  }
}

std::size_t index_of(const std::vector<std::string>& skeleton, const std::string& name) {
  const auto it = std::find(skeleton.begin(), skeleton.end(), name);
  if (it == skeleton.end()) throw InputError("joint '" + name + "' is not in the skeleton");
  return static_cast<std::size_t>(it - skeleton.begin());
}

}  // namespace

double body_reward(const HOIFrame& sim, const HOIFrame& ref,
                   const std::vector<std::string>& skeleton, const RewardConfig& cfg) {
  const std::size_t n = skeleton.size();
  for (const HOIFrame* f : {&sim, &ref}) {
    require_size(f->joint_positions, n, "joint positions");
    require_size(f->joint_rotations, n, "joint rotations");
    require_size(f->joint_velocities, n, "joint velocities");
    require_size(f->joint_angular_velocities, n, "joint angular velocities");
  }
  double pos = 0.0;
  for (const auto& name : cfg.key_joints) {
    const std::size_t j = index_of(skeleton, name);
    pos += (sim.joint_positions[j] - ref.joint_positions[j]).squaredNorm();
  }
  double rot = 0.0, vel = 0.0, ang = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double a = angular_distance(sim.joint_rotations[j], ref.joint_rotations[j]);
    rot += a * a;
    vel += (sim.joint_velocities[j] - ref.joint_velocities[j]).squaredNorm();
    ang += (sim.joint_angular_velocities[j] - ref.joint_angular_velocities[j]).squaredNorm();
  }
  return std::exp(cfg.lambda_p * pos + cfg.lambda_r * rot + cfg.lambda_v * vel +
                  cfg.lambda_omega * ang);
}

double object_reward(const ObjectState& sim, const ObjectState& ref, const RewardConfig& cfg) {
  const double lp = cfg.object_lambda_p.value_or(cfg.lambda_p);
  const double lr = cfg.object_lambda_r.value_or(cfg.lambda_r);
  const double lv = cfg.object_lambda_v.value_or(cfg.lambda_v);
  const double lw = cfg.object_lambda_omega.value_or(cfg.lambda_omega);
  const double dp = (sim.pose.translation() - ref.pose.translation()).squaredNorm();
  const double a = angular_distance(sim.pose.rotation(), ref.pose.rotation());
  double sum = lp * dp + lr * a * a;
  if (sim.linear_velocity.has_value() != ref.linear_velocity.has_value() ||
      sim.angular_velocity.has_value() != ref.angular_velocity.has_value()) {
    throw InputError("object velocity present in only one of the two states");
  }
  if (sim.linear_velocity) sum += lv * (*sim.linear_velocity - *ref.linear_velocity).squaredNorm();
  if (sim.angular_velocity) {
    sum += lw * (*sim.angular_velocity - *ref.angular_velocity).squaredNorm();
  }
  return std::exp(sum);
}

double regularization_reward(const HOIFrame& frame, const HOIFrame& previous,
                             const RewardConfig& cfg) {
  if (!frame.action) throw InputError("regularization reward needs an action vector");
  if (frame.joint_velocities.empty() ||
      frame.joint_velocities.size() != previous.joint_velocities.size()) {
    throw InputError("regularization reward needs joint velocities in both frames");
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < frame.joint_velocities.size(); ++j) {
    acc += (frame.joint_velocities[j] - previous.joint_velocities[j]).norm();
  }
  return std::exp(cfg.lambda_action * frame.action->norm() + cfg.lambda_acc * acc);
}

double imitation_reward(double body, double object, double regularization) {
  for (double r : {body, object, regularization}) {
    if (!(r > 0.0 && r <= 1.0)) throw InputError("rewards must lie in (0, 1]");
  }
  return body * object * regularization;
}

double contact_reward(const std::vector<Eigen::Vector3d>& forces,
                      const std::vector<std::string>& skeleton, const ContactLabels& labels,
                      const RewardConfig& cfg) {
  labels.validate(&skeleton);
  auto mismatch = [&](const std::string& name, double label) {
    const std::size_t j = index_of(skeleton, name);
    if (j >= forces.size()) throw InputError("no force data for labeled joint '" + name + "'");
    const double no_contact = forces[j].norm() < cfg.force_threshold ? 1.0 : 0.0;
    return std::abs(no_contact - label);
  };
  double sum = 0.0;
  for (const auto& name : labels.contact) sum += mismatch(name, 0.0);
  for (const auto& name : labels.separate) sum += mismatch(name, 1.0);
  return std::exp(cfg.lambda_contact * sum);
}

namespace {

std::vector<std::string> string_list(const nlohmann::json& j, const char* key) {
  std::vector<std::string> out;
  if (!j.contains(key)) return out;
  const auto& arr = j.at(key);
  if (!arr.is_array()) throw FormatError(std::string("labels: '") + key + "' must be a list");
  for (const auto& e : arr) {
    if (!e.is_string()) throw FormatError(std::string("labels: '") + key + "' holds a non-string");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace

ContactLabels parse_contact_labels(std::string_view text) {
  std::string body(text);
  nlohmann::json j = nlohmann::json::parse(body, nullptr, false);
  if (j.is_discarded()) {
    static const std::regex key(R"((^|[{,\s])(contact|separate)\s*:)");
    std::string quoted = std::regex_replace(body, key, "$1\"$2\":");
    j = nlohmann::json::parse("{" + quoted + "}", nullptr, false);
  }
  if (j.is_discarded() || !j.is_object()) throw FormatError("contact labels could not be parsed");
  for (const auto& [k, v] : j.items()) {
    if (k != "contact" && k != "separate") throw FormatError("labels: unknown key '" + k + "'");
  }
  if (!j.contains("contact") && !j.contains("separate")) {
    throw FormatError("labels need a 'contact' or 'separate' list");
  }
  ContactLabels labels{string_list(j, "contact"), string_list(j, "separate")};
  labels.validate();
  return labels;
}

std::string format_contact_labels(const ContactLabels& labels) {
  return nlohmann::json{{"contact", labels.contact}, {"separate", labels.separate}}.dump();
}

HandFlags parse_hand_flags(std::string_view text) {
  static const std::regex grammar(
      R"(^\s*Left Hand\s*:\s*(True|False)\s*,\s*Right Hand\s*:\s*(True|False)\s*$)",
      std::regex::icase);
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(text.begin(), text.end(), m, grammar)) {
    throw FormatError("hand flags must read 'Left Hand: True|False, Right Hand: True|False'");
  }
  auto truth = [](std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s == "true";
  };
  return {truth(m[1].str()), truth(m[2].str())};
}

}  // namespace hoi
