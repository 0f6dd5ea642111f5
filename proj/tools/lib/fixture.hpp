#pragma once

#include <cstdint>
#include <filesystem>

#include "hoi/geometry/mesh.hpp"
#include "hoi/geometry/pose.hpp"
#include "hoi/io/bundle.hpp"
#include "hoi/motion/sequence.hpp"
#include "hoi/render/camera.hpp"

namespace hoi::tools {

struct FixtureOptions {
  std::uint64_t seed = 0;
  Camera camera = Camera::desk();
  bool with_human = true;
  bool with_depth = true;
  bool with_contact = true;
  int feature_channels = 16;
  double feature_noise = 0.01;
  /// Maximum angle (degrees) between the planted rotation and its nearest canonical view.
  double max_view_offset_deg = 20.0;
};

struct Fixture {
  SceneBundle bundle;
  std::filesystem::path bundle_path;
  Pose6DoF truth;
  int planted_view = 0;
  double bounding_diagonal = 0.0;
};

/// Asymmetric three-box template (disjoint, watertight), about 0.5 m across.
TriangleMesh fixture_object();

/// Planted-pose scene: renders the template at a seeded pose next to a box
/// human whose left palm touches it, then writes meshes, masks, depth,
/// features, contact spec, bundle.json and truth.json into `dir`.
Fixture make_fixture(const std::filesystem::path& dir, const FixtureOptions& options);

/// 17-part skeleton with a linear object translation and a static body;
/// used by examples and tests.
HOISequence demo_motion(int frames, double fps);

}  // namespace hoi::tools
