#include "hoi/io/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "hoi/error.hpp"

namespace hoi {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i];
  return out;
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::string_view text) {
  KeyValueConfig cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw FormatError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    if (key.empty()) throw FormatError("config line " + std::to_string(lineno) + ": empty key");
    cfg.values_[key] = trim(std::string_view(line).substr(eq + 1));
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void KeyValueConfig::set(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || trim(assignment.substr(0, eq)).empty()) {
    throw InputError("override must read key=value, got '" + std::string(assignment) + "'");
  }
  values_[trim(assignment.substr(0, eq))] = trim(assignment.substr(eq + 1));
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const std::string& s = it->second;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InputError("config key '" + key + "': '" + s + "' is not a number");
  }
  return v;
}

int KeyValueConfig::get_int(const std::string& key, int fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const std::string& s = it->second;
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InputError("config key '" + key + "': '" + s + "' is not an integer");
  }
  return v;
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::string s = it->second;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  throw InputError("config key '" + key + "': '" + it->second + "' is not a boolean");
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

std::vector<std::string> KeyValueConfig::get_list(const std::string& key,
                                                  const std::vector<std::string>& fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::vector<std::string> out;
  std::stringstream ss(it->second);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

namespace {

struct Entry {
  std::string key;
  std::function<void(const KeyValueConfig&, PipelineSettings&)> read;
  std::function<std::string(const PipelineSettings&)> show;
};

#define HOI_DOUBLE(name, field)                                                      \
  Entry{name, [](const KeyValueConfig& c, PipelineSettings& s) {                     \
          s.field = c.get_double(name, s.field);                                     \
        },                                                                           \
        [](const PipelineSettings& s) { return fmt(s.field); }}
#define HOI_INT(name, field)                                                         \
  Entry{name, [](const KeyValueConfig& c, PipelineSettings& s) {                     \
          s.field = c.get_int(name, s.field);                                        \
        },                                                                           \
        [](const PipelineSettings& s) { return std::to_string(s.field); }}
#define HOI_LIST(name, field)                                                        \
  Entry{name, [](const KeyValueConfig& c, PipelineSettings& s) {                     \
          s.field = c.get_list(name, s.field);                                       \
        },                                                                           \
        [](const PipelineSettings& s) { return join(s.field); }}
#define HOI_OPT_DOUBLE(name, field)                                                  \
  Entry{name, [](const KeyValueConfig& c, PipelineSettings& s) {                     \
          if (c.contains(name)) s.field = c.get_double(name, 0.0);                   \
        },                                                                           \
        [](const PipelineSettings& s) { return s.field ? fmt(*s.field) : std::string(); }}

Entry stage_iterations(int stage) {
  const std::string key = "stage" + std::to_string(stage) + "_iterations";
  return Entry{key,
               [key, stage](const KeyValueConfig& c, PipelineSettings& s) {
                 for (auto& plan : s.schedule.stages) {
                   if (plan.stage == stage) plan.iterations = c.get_int(key, plan.iterations);
                 }
               },
               [stage](const PipelineSettings& s) {
                 for (const auto& plan : s.schedule.stages) {
                   if (plan.stage == stage) return std::to_string(plan.iterations);
                 }
                 return std::string("0");
               }};
}

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = [] {
    std::vector<Entry> t = {
        HOI_DOUBLE("w_sil", weights.w_sil),
        HOI_DOUBLE("w_depth_rel", weights.w_depth_rel),
        HOI_DOUBLE("w_depth_abs", weights.w_depth_abs),
        HOI_DOUBLE("w_contact", weights.w_contact),
        HOI_DOUBLE("w_penetration", weights.w_penetration),
        HOI_DOUBLE("theta_contact", weights.theta_contact),
        HOI_DOUBLE("lambda_object", weights.lambda_object),
        // Stage list comes first so per-stage counts apply to it.
        Entry{"stages",
              [](const KeyValueConfig& c, PipelineSettings& s) {
                if (!c.contains("stages")) return;
                s.schedule.stages.clear();
                for (const auto& id : c.get_list("stages", {})) {
                  KeyValueConfig one;
                  one.set("id", id);
                  s.schedule.stages.push_back({one.get_int("id", 0), 200});
                }
              },
              [](const PipelineSettings& s) {
                std::vector<std::string> ids;
                for (const auto& p : s.schedule.stages) ids.push_back(std::to_string(p.stage));
                return join(ids);
              }},
        stage_iterations(1),
        stage_iterations(2),
        stage_iterations(3),
        HOI_DOUBLE("lr", schedule.adam.lr),
        HOI_DOUBLE("beta1", schedule.adam.beta1),
        HOI_DOUBLE("beta2", schedule.adam.beta2),
        HOI_DOUBLE("adam_eps", schedule.adam.eps),
        Entry{"optimize_scale",
              [](const KeyValueConfig& c, PipelineSettings& s) {
                s.schedule.optimize_scale = c.get_bool("optimize_scale", s.schedule.optimize_scale);
              },
              [](const PipelineSettings& s) {
                return std::string(s.schedule.optimize_scale ? "true" : "false");
              }},
        HOI_DOUBLE("sigma", raster.sigma),
        HOI_DOUBLE("cutoff_sigmas", raster.cutoff_sigmas),
        HOI_DOUBLE("ransac_threshold", coarse.ransac.threshold_px),
        HOI_INT("ransac_iterations", coarse.ransac.iterations),
        Entry{"max_matches",
              [](const KeyValueConfig& c, PipelineSettings& s) {
                const int v = c.get_int("max_matches", static_cast<int>(s.coarse.max_matches));
                if (v <= 0) throw InputError("max_matches must be positive");
                s.coarse.max_matches = static_cast<std::size_t>(v);
              },
              [](const PipelineSettings& s) { return std::to_string(s.coarse.max_matches); }},
        HOI_DOUBLE("human_root_depth", human_root_depth),
        HOI_DOUBLE("lambda_p", rewards.lambda_p),
        HOI_DOUBLE("lambda_r", rewards.lambda_r),
        HOI_DOUBLE("lambda_v", rewards.lambda_v),
        HOI_DOUBLE("lambda_omega", rewards.lambda_omega),
        HOI_DOUBLE("lambda_action", rewards.lambda_action),
        HOI_DOUBLE("lambda_acc", rewards.lambda_acc),
        HOI_DOUBLE("lambda_contact", rewards.lambda_contact),
        HOI_OPT_DOUBLE("object_lambda_p", rewards.object_lambda_p),
        HOI_OPT_DOUBLE("object_lambda_r", rewards.object_lambda_r),
        HOI_OPT_DOUBLE("object_lambda_v", rewards.object_lambda_v),
        HOI_OPT_DOUBLE("object_lambda_omega", rewards.object_lambda_omega),
        HOI_DOUBLE("force_threshold", rewards.force_threshold),
        HOI_LIST("key_joints", rewards.key_joints),
        HOI_LIST("foot_joints", foot_sliding.foot_joints),
        HOI_DOUBLE("ground_height", foot_sliding.ground_height),
        HOI_DOUBLE("fs_contact_height", foot_sliding.contact_height),
        HOI_INT("up_axis", foot_sliding.up_axis),
        HOI_DOUBLE("iv_pitch", iv_pitch),
        HOI_DOUBLE("hand_radius", hand_radius),
        HOI_LIST("hand_joints", contact.hand_joints),
        HOI_DOUBLE("cp_threshold", contact.threshold),
        HOI_INT("milestones", milestones),
        HOI_DOUBLE("fps", fps),
    };
    return t;
  }();
  return table;
}

#undef HOI_DOUBLE
#undef HOI_INT
#undef HOI_LIST
#undef HOI_OPT_DOUBLE

}  // namespace

const std::vector<std::string>& known_config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& e : entries()) k.push_back(e.key);
    return k;
  }();
  return keys;
}

PipelineSettings settings_from_config(const KeyValueConfig& config) {
  const auto& keys = known_config_keys();
  for (const auto& [key, value] : config.values()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw InputError("unknown config key '" + key + "'");
    }
  }
  PipelineSettings s;
  for (const auto& e : entries()) e.read(config, s);

  s.weights.validate();
  s.schedule.validate();
  s.rewards.validate();
  if (!(s.raster.sigma > 0.0)) throw InputError("sigma must be positive");
  if (!(s.raster.cutoff_sigmas > 0.0)) throw InputError("cutoff_sigmas must be positive");
  if (!(s.coarse.ransac.threshold_px > 0.0)) throw InputError("ransac_threshold must be positive");
  if (s.coarse.ransac.iterations <= 0) throw InputError("ransac_iterations must be positive");
  if (!(s.human_root_depth > 0.0)) throw InputError("human_root_depth must be positive");
  if (!(s.iv_pitch > 0.0)) throw InputError("iv_pitch must be positive");
  if (!(s.hand_radius > 0.0)) throw InputError("hand_radius must be positive");
  if (!(s.contact.threshold > 0.0)) throw InputError("cp_threshold must be positive");
  if (!(s.foot_sliding.contact_height > 0.0)) {
    throw InputError("fs_contact_height must be positive");
  }
  if (s.foot_sliding.up_axis < 0 || s.foot_sliding.up_axis > 2) {
    throw InputError("up_axis must be 0, 1 or 2");
  }
  if (s.milestones < 1) throw InputError("milestones must be >= 1");
  if (!(s.fps > 0.0)) throw InputError("fps must be positive");
  s.coarse.anchor = Eigen::Vector3d(0.0, 0.0, s.human_root_depth);
  return s;
}

std::string dump_settings(const PipelineSettings& settings) {
  std::string out;
  for (const auto& e : entries()) {
    const std::string v = e.show(settings);
    if (!v.empty()) out += e.key + " = " + v + "\n";
  }
  return out;
}

}  // namespace hoi
