#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hoi/correspondence/feature_map.hpp"
#include "hoi/correspondence/synthetic_features.hpp"
#include "hoi/io/config.hpp"
#include "hoi/losses/total_loss.hpp"
#include "hoi/render/camera.hpp"

namespace hoi {

/// How template views are described for view selection and matching.
struct ViewFeatureSource {
  /// Either "projection" (ProjectionFeatureExtractor) or "precomputed".
  std::string kind = "projection";
  int channels = 16;
  std::uint64_t seed = 7;
  double extent = 0.5;
  /// Precomputed maps, one per canonical view, with optional validity PGMs.
  std::vector<std::filesystem::path> maps;
  std::vector<std::optional<std::filesystem::path>> valid;
};

/// Paths and settings of one pose-estimation problem. Relative paths resolve
/// against `base_dir` (the bundle file's directory).
struct SceneBundle {
  std::filesystem::path base_dir;
  Camera camera;
  std::filesystem::path object_mesh;
  std::optional<std::filesystem::path> human_mesh;
  std::filesystem::path target_features;
  std::optional<std::filesystem::path> target_valid;
  ViewFeatureSource view_features;
  std::filesystem::path mask_human_object;
  std::filesystem::path mask_object;
  std::optional<double> lambda_object;
  std::optional<std::filesystem::path> depth;
  std::optional<std::filesystem::path> contact;
  std::optional<double> human_depth;

  std::filesystem::path resolve(const std::filesystem::path& p) const;
};

/// Camera from "desk", "reference" or {"focal", "principal": [cx, cy], "width", "height"}.
/// Throws FormatError / InputError.
SceneBundle bundle_from_json(std::string_view text, const std::filesystem::path& base_dir);
SceneBundle read_bundle(const std::filesystem::path& path);
std::string bundle_to_json(const SceneBundle& bundle);

struct LoadedScene {
  SceneInputs inputs;
  FeatureMap target;
  FeatureExtractor extractor;
};

/// Reads every referenced file. Throws InputError for missing files or
/// inconsistent sizes and FormatError for unparsable ones.
LoadedScene load_scene(const SceneBundle& bundle, const PipelineSettings& settings);

}  // namespace hoi
