#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hoi/correspondence/coarse_pose.hpp"
#include "hoi/losses/loss_weights.hpp"
#include "hoi/optim/refine.hpp"
#include "hoi/render/soft_rasterizer.hpp"
#include "hoi/scoring/metrics.hpp"
#include "hoi/scoring/rewards.hpp"

namespace hoi {

/// Flat `key = value` text. `#` starts a comment; blank lines are ignored.
class KeyValueConfig {
public:
  /// Throws FormatError on a line without '=' or an empty key.
  static KeyValueConfig parse(std::string_view text);
  static KeyValueConfig load(const std::filesystem::path& path);

  /// Applies a single "key=value" override.
  void set(std::string_view assignment);
  void set(const std::string& key, const std::string& value) { values_[key] = value; }

  bool contains(const std::string& key) const { return values_.count(key) != 0; }
  const std::map<std::string, std::string>& values() const { return values_; }

  /// Typed getters throw InputError on unparsable values.
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  /// Comma-separated list.
  std::vector<std::string> get_list(const std::string& key,
                                    const std::vector<std::string>& fallback) const;

private:
  std::map<std::string, std::string> values_;
};

/// Every tunable constant of the pipeline, with reference defaults.
struct PipelineSettings {
  LossWeights weights;
  OptimizeSchedule schedule;
  SoftRasterSettings raster;
  CoarseConfig coarse;
  /// Depth of the human root from the camera when no human mesh is given.
  double human_root_depth = 2.5;
  RewardConfig rewards;
  FootSlidingOptions foot_sliding;
  double iv_pitch = 0.005;
  /// Radius of the hand spheres standing in for hand meshes in the overlap metric.
  double hand_radius = 0.04;
  ContactOptions contact;
  int milestones = 8;
  double fps = 30.0;
};

/// Keys accepted by settings_from_config.
const std::vector<std::string>& known_config_keys();

/// Throws InputError on an unknown key or an invalid value.
PipelineSettings settings_from_config(const KeyValueConfig& config);

/// All keys with their effective values, one `key = value` per line.
std::string dump_settings(const PipelineSettings& settings);

}  // namespace hoi
