#include "hoi/io/json_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "hoi/error.hpp"
#include "hoi/scoring/rewards.hpp"

namespace hoi {

using nlohmann::json;

namespace {

json vec(const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }
json quat(const Eigen::Quaterniond& q) { return json::array({q.w(), q.x(), q.y(), q.z()}); }

template <class V>
json vec_list(const std::vector<V>& v) {
  json out = json::array();
  for (const auto& e : v) out.push_back(vec(e));
  return out;
}

double number(const json& j, const std::string& what) {
  if (!j.is_number()) throw FormatError(what + " must be a number");
  return j.get<double>();
}

std::vector<double> numbers(const json& j, std::size_t n, const std::string& what) {
  if (!j.is_array() || (n != 0 && j.size() != n)) {
    throw FormatError(what + " must be a list of " + std::to_string(n) + " numbers");
  }
  std::vector<double> out;
  for (const auto& e : j) out.push_back(number(e, what));
  return out;
}

Eigen::Vector3d read_vec(const json& j, const std::string& what) {
  const auto v = numbers(j, 3, what);
  return {v[0], v[1], v[2]};
}

Eigen::Quaterniond read_quat(const json& j, const std::string& what) {
  const auto v = numbers(j, 4, what);
  Eigen::Quaterniond q(v[0], v[1], v[2], v[3]);
  const double n = q.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw FormatError(what + " is not a valid quaternion");
  if (std::abs(n - 1.0) > 4.0 * std::numeric_limits<double>::epsilon()) q.coeffs() /= n;
  return q;
}

std::vector<Eigen::Vector3d> read_vec_list(const json& j, const std::string& what) {
  if (!j.is_array()) throw FormatError(what + " must be a list");
  std::vector<Eigen::Vector3d> out;
  for (const auto& e : j) out.push_back(read_vec(e, what));
  return out;
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw FormatError(where + ": missing '" + key + "'");
  return obj.at(key);
}

json parse(std::string_view text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw FormatError(std::string(what) + " is not valid JSON");
  if (!j.is_object()) throw FormatError(std::string(what) + " must be a JSON object");
  return j;
}

json pose_json(const Pose6DoF& p) {
  return json{{"rotation", quat(p.rotation())},
              {"translation", vec(p.translation())},
              {"scale", p.scale()}};
}

}  // namespace

std::string motion_to_json(const HOISequence& seq) {
  json frames = json::array();
  for (const auto& f : seq.frames) {
    json jf{{"t", f.time}, {"root_pos", vec(f.root_position)}, {"root_rot", quat(f.root_rotation)}};
    json joints = json::array();
    for (const auto& q : f.joint_rotations) joints.push_back(quat(q));
    jf["joints"] = joints;
    if (!f.joint_positions.empty()) jf["joint_pos"] = vec_list(f.joint_positions);
    if (!f.joint_velocities.empty()) jf["vel"] = vec_list(f.joint_velocities);
    if (!f.joint_angular_velocities.empty()) jf["angvel"] = vec_list(f.joint_angular_velocities);
    json obj{{"rot", quat(f.object.pose.rotation())},
             {"pos", vec(f.object.pose.translation())},
             {"scale", f.object.pose.scale()}};
    if (f.object.linear_velocity) obj["vel"] = vec(*f.object.linear_velocity);
    if (f.object.angular_velocity) obj["angvel"] = vec(*f.object.angular_velocity);
    jf["object"] = obj;
    if (f.action) {
      jf["action"] = std::vector<double>(f.action->data(), f.action->data() + f.action->size());
    }
    if (!f.forces.empty()) jf["forces"] = vec_list(f.forces);
    frames.push_back(std::move(jf));
  }
  json j{{"fps", seq.fps}, {"skeleton", seq.skeleton}, {"frames", frames}};
  if (!seq.keyframe_indices.empty()) j["keyframe_indices"] = seq.keyframe_indices;
  return j.dump(1) + "\n";
}

HOISequence motion_from_json(std::string_view text) {
  const json j = parse(text, "motion file");
  HOISequence seq;
  try {
    seq.fps = number(field(j, "fps", "motion"), "fps");
    for (const auto& n : field(j, "skeleton", "motion")) {
      if (!n.is_string()) throw FormatError("skeleton entries must be strings");
      seq.skeleton.push_back(n.get<std::string>());
    }
    if (j.contains("keyframe_indices")) {
      for (const auto& i : j.at("keyframe_indices")) {
        if (!i.is_number_integer()) throw FormatError("keyframe_indices must be integers");
        seq.keyframe_indices.push_back(i.get<int>());
      }
    }
    const json& frames = field(j, "frames", "motion");
    if (!frames.is_array()) throw FormatError("frames must be a list");
    for (std::size_t i = 0; i < frames.size(); ++i) {
      const json& jf = frames[i];
      const std::string where = "frame " + std::to_string(i);
      if (!jf.is_object()) throw FormatError(where + " must be an object");
      HOIFrame f;
      f.time = number(field(jf, "t", where), where + " t");
      f.root_position = read_vec(field(jf, "root_pos", where), where + " root_pos");
      f.root_rotation = read_quat(field(jf, "root_rot", where), where + " root_rot");
      if (jf.contains("joints")) {
        if (!jf.at("joints").is_array()) throw FormatError(where + " joints must be a list");
        for (const auto& q : jf.at("joints")) f.joint_rotations.push_back(read_quat(q, where + " joint"));
      }
      if (jf.contains("joint_pos")) f.joint_positions = read_vec_list(jf.at("joint_pos"), where + " joint_pos");
      if (jf.contains("vel")) f.joint_velocities = read_vec_list(jf.at("vel"), where + " vel");
      if (jf.contains("angvel")) {
        f.joint_angular_velocities = read_vec_list(jf.at("angvel"), where + " angvel");
      }
      const json& jo = field(jf, "object", where);
      const double scale = jo.contains("scale") ? number(jo.at("scale"), where + " object scale") : 1.0;
      try {
        f.object.pose = Pose6DoF(read_quat(field(jo, "rot", where + " object"), where + " object rot"),
                                 read_vec(field(jo, "pos", where + " object"), where + " object pos"),
                                 scale);
      } catch (const InputError& e) {
        throw FormatError(where + " object: " + e.what());
      }
      if (jo.contains("vel")) f.object.linear_velocity = read_vec(jo.at("vel"), where + " object vel");
      if (jo.contains("angvel")) {
        f.object.angular_velocity = read_vec(jo.at("angvel"), where + " object angvel");
      }
      if (jf.contains("action")) {
        const auto a = numbers(jf.at("action"), 0, where + " action");
        f.action = Eigen::Map<const Eigen::VectorXd>(a.data(), static_cast<Eigen::Index>(a.size()));
      }
      if (jf.contains("forces")) {
        const json& jfo = jf.at("forces");
        if (!jfo.is_array()) throw FormatError(where + " forces must be a list");
        for (const auto& e : jfo) {
          // A bare number is a force magnitude.
          f.forces.push_back(e.is_number() ? Eigen::Vector3d(e.get<double>(), 0.0, 0.0)
                                           : read_vec(e, where + " force"));
        }
      }
      seq.frames.push_back(std::move(f));
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("motion file: ") + e.what());
  }
  seq.validate();
  return seq;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw InputError("failed writing " + path.string());
}

void write_motion(const std::filesystem::path& path, const HOISequence& seq) {
  write_text(path, motion_to_json(seq));
}

HOISequence read_motion(const std::filesystem::path& path) {
  return motion_from_json(read_text(path));
}

std::string pose_to_json(const Pose6DoF& pose) { return pose_json(pose).dump(1) + "\n"; }

Pose6DoF pose_from_json(std::string_view text) {
  const json j = parse(text, "pose file");
  try {
    const double scale = j.contains("scale") ? number(j.at("scale"), "scale") : 1.0;
    return Pose6DoF(read_quat(field(j, "rotation", "pose"), "rotation"),
                    read_vec(field(j, "translation", "pose"), "translation"), scale);
  } catch (const InputError& e) {
    throw FormatError(std::string("pose file: ") + e.what());
  }
}

Pose6DoF read_pose(const std::filesystem::path& path) { return pose_from_json(read_text(path)); }

ContactSpec contact_spec_from_json(std::string_view text, const TriangleMesh& human) {
  const json j = parse(text, "contact spec");
  ContactSpec spec;
  if (j.contains("hands")) {
    if (!j.at("hands").is_string()) throw FormatError("contact spec 'hands' must be a string");
    const HandFlags flags = parse_hand_flags(j.at("hands").get<std::string>());
    spec.left_hand = flags.left;
    spec.right_hand = flags.right;
  }
  auto flag = [&](const char* key, bool& out) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_boolean()) throw FormatError(std::string("contact spec '") + key + "' must be a boolean");
    out = j.at(key).get<bool>();
  };
  flag("left_hand", spec.left_hand);
  flag("right_hand", spec.right_hand);
  auto palm = [&](const char* key) {
    std::vector<std::uint32_t> idx;
    if (j.contains(key)) {
      if (!j.at(key).is_array()) throw FormatError(std::string("contact spec '") + key + "' must be a list");
      for (const auto& e : j.at(key)) {
        if (!e.is_number_unsigned()) {
          throw FormatError(std::string("contact spec '") + key + "' must hold vertex indices");
        }
        idx.push_back(e.get<std::uint32_t>());
      }
    }
    return VertexSelection(std::move(idx), human);
  };
  spec.left_palm = palm("left_palm");
  spec.right_palm = palm("right_palm");
  if (spec.left_hand && spec.left_palm.indices().empty()) {
    throw InputError("left hand contact requested but no left palm vertices given");
  }
  if (spec.right_hand && spec.right_palm.indices().empty()) {
    throw InputError("right hand contact requested but no right palm vertices given");
  }
  return spec;
}

std::string contact_spec_to_json(const ContactSpec& spec) {
  return json{{"left_hand", spec.left_hand},
              {"right_hand", spec.right_hand},
              {"left_palm", spec.left_palm.indices()},
              {"right_palm", spec.right_palm.indices()}}
             .dump(1) + "\n";
}

}  // namespace hoi
