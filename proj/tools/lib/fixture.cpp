#include "fixture.hpp"

#include <cmath>
#include <random>

#include <json.hpp>

#include "hoi/correspondence/synthetic_features.hpp"
#include "hoi/geometry/obj_io.hpp"
#include "hoi/geometry/rotation.hpp"
#include "hoi/io/json_io.hpp"
#include "hoi/io/maps.hpp"
#include "hoi/losses/loss_weights.hpp"
#include "hoi/render/hard_rasterizer.hpp"
#include "hoi/render/soft_rasterizer.hpp"

namespace hoi::tools {

namespace fs = std::filesystem;

TriangleMesh fixture_object() {
  const TriangleMesh parts[] = {
      make_box({0.0, 0.0, 0.0}, {0.20, 0.09, 0.07}),
      make_box({0.13, 0.16, 0.0}, {0.04, 0.05, 0.05}),
      make_box({-0.14, -0.05, 0.12}, {0.05, 0.03, 0.04}),
  };
  return merge_meshes(parts);
}

namespace {

Eigen::Vector3d random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Vector3d v(n(rng), n(rng), n(rng));
  return v.normalized();
}

}  // namespace

Fixture make_fixture(const fs::path& dir, const FixtureOptions& o) {
  fs::create_directories(dir);
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const TriangleMesh object = fixture_object();
  const int view = static_cast<int>(rng() % octahedral_rotations().size());
  const double offset = o.max_view_offset_deg * M_PI / 180.0 * unit(rng);
  const Eigen::Quaterniond rot =
      exp_map(random_unit(rng) * offset) * octahedral_rotations()[static_cast<std::size_t>(view)];
  const Eigen::Vector3d t(-0.1 + 0.2 * unit(rng), -0.1 + 0.2 * unit(rng), 1.4 + 0.2 * unit(rng));
  const Pose6DoF truth(rot, t);
  const TriangleMesh posed = object.transformed(truth);

  // Mean visible depth of the object, so the human sits at the same depth.
  const PosedMesh pm{&object, truth};
  const auto obj_soft = render_soft(std::span<const PosedMesh>(&pm, 1), o.camera);
  double depth_sum = 0.0;
  int depth_n = 0;
  for (std::size_t i = 0; i < obj_soft.silhouette.size(); ++i) {
    if (obj_soft.silhouette[i] > 0.5) {
      depth_sum += obj_soft.depth[i];
      ++depth_n;
    }
  }
  const double object_depth = depth_n ? depth_sum / depth_n : t.z();

  // Box human to the left of the object; the hand's +x face is the left palm.
  const Eigen::AlignedBox3d box = posed.bounds();
  const double gap = 0.004;
  const double hand_half = 0.035;
  const Eigen::Vector3d hand_c(box.min().x() - gap - hand_half, box.center().y(),
                               object_depth + hand_half);
  const Eigen::Vector3d torso_c(hand_c.x() - 0.45, hand_c.y() + 0.05, object_depth + 0.1);
  const TriangleMesh human_parts[] = {
      make_box(hand_c, Eigen::Vector3d::Constant(hand_half)),
      make_box({hand_c.x() - 0.17, hand_c.y(), hand_c.z()}, {0.13, 0.03, 0.03}),
      make_box(torso_c, {0.14, 0.3, 0.1}),
      make_box({torso_c.x(), torso_c.y() - 0.42, torso_c.z()}, {0.09, 0.09, 0.09}),
  };
  const TriangleMesh human = merge_meshes(human_parts);
  std::vector<std::uint32_t> palm;
  for (std::uint32_t i = 0; i < 8; ++i) {
    if (human.vertices()[i].x() > hand_c.x()) palm.push_back(i);
  }

  const GBuffer obj_hard = rasterize_hard(object, truth, o.camera);
  Image<double> mask_o(o.camera.width, o.camera.height, 0.0);
  Image<double> mask_ho(o.camera.width, o.camera.height, 0.0);
  const GBuffer human_hard = rasterize_hard(human, Pose6DoF::identity(), o.camera);
  for (std::size_t i = 0; i < mask_o.size(); ++i) {
    mask_o[i] = obj_hard.silhouette[i];
    const bool any = obj_hard.silhouette[i] > 0.5 || (o.with_human && human_hard.silhouette[i] > 0.5);
    mask_ho[i] = any ? 1.0 : 0.0;
  }

  ProjectionFeatureExtractor extractor(o.feature_channels, 7, 0.5);
  FeatureMap target = extractor(obj_hard);
  add_feature_noise(target, o.feature_noise, o.seed ^ 0x9e3779b97f4a7c15ULL);

  Fixture fx;
  fx.truth = truth;
  fx.planted_view = view;
  fx.bounding_diagonal = object.bounding_diagonal();
  SceneBundle& b = fx.bundle;
  b.base_dir = dir;
  b.camera = o.camera;
  b.object_mesh = "object.obj";
  b.target_features = "target.fmap";
  b.target_valid = "target_valid.pgm";
  b.mask_human_object = "mask_human_object.pgm";
  b.mask_object = "mask_object.pgm";
  b.view_features = {"projection", o.feature_channels, 7, 0.5, {}, {}};

  write_obj(dir / b.object_mesh, object);
  write_feature_map(dir / b.target_features, target, dir / *b.target_valid);
  write_pgm(dir / b.mask_human_object, mask_ho);
  write_pgm(dir / b.mask_object, mask_o);

  if (o.with_human) {
    b.human_mesh = "human.obj";
    write_obj(dir / *b.human_mesh, human);
    if (o.with_contact) {
      ContactSpec spec;
      spec.left_hand = true;
      spec.left_palm = VertexSelection(palm, human);
      b.contact = "contact.json";
      write_text(dir / *b.contact, contact_spec_to_json(spec));
    }
  }
  if (o.with_depth) {
    // Relative depth: an affine map of the true scene depth.
    std::vector<PosedMesh> scene = {{&object, truth}};
    if (o.with_human) scene.push_back({&human, Pose6DoF::identity()});
    const auto soft = render_soft(scene, o.camera);
    Image<double> rel(o.camera.width, o.camera.height, 0.0);
    for (std::size_t i = 0; i < rel.size(); ++i) {
      if (soft.depth[i] > 0.0) rel[i] = 0.3 + 0.7 * (soft.depth[i] - 1.0);
    }
    b.depth = "depth.dmap";
    write_scalar_map(dir / *b.depth, rel, MapKind::Depth);
  }

  fx.bundle_path = dir / "bundle.json";
  write_text(fx.bundle_path, bundle_to_json(b));
  nlohmann::json truth_json = nlohmann::json::parse(pose_to_json(truth));
  truth_json["planted_view"] = view;
  truth_json["bounding_diagonal"] = fx.bounding_diagonal;
  write_text(dir / "truth.json", truth_json.dump(1) + "\n");
  return fx;
}

HOISequence demo_motion(int frames, double fps) {
  HOISequence seq;
  seq.fps = fps;
  seq.skeleton = labeled_body_parts();
  const std::size_t n = seq.skeleton.size();
  for (int i = 0; i < frames; ++i) {
    HOIFrame f;
    f.time = i / fps;
    f.root_position = {0.0, 0.0, 0.9};
    f.joint_rotations.assign(n, Eigen::Quaterniond::Identity());
    f.joint_positions.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      f.joint_positions[j] = {0.1 * static_cast<double>(j % 3), 0.05 * static_cast<double>(j),
                              0.02 + 0.1 * static_cast<double>(j)};
    }
    f.object.pose = Pose6DoF(Eigen::Quaterniond::Identity(), {0.5 + 0.01 * i, 0.0, 0.8});
    seq.frames.push_back(std::move(f));
  }
  return seq;
}

}  // namespace hoi::tools
