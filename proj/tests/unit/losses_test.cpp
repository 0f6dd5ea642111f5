#include <filesystem>
#include <random>

#include "doctest.h"
#include "fd_gradient.hpp"
#include "fixture.hpp"
#include "hoi/error.hpp"
#include "hoi/geometry/mesh.hpp"
#include "hoi/io/bundle.hpp"
#include "hoi/io/config.hpp"
#include "hoi/losses/hoi_losses.hpp"
#include "hoi/losses/image_losses.hpp"
#include "hoi/losses/total_loss.hpp"

using namespace hoi;

namespace {

// One palm vertex, the rest of the human far away.
TriangleMesh palm_probe(const Eigen::Vector3d& palm) {
  std::vector<Eigen::Vector3d> v = {palm, palm + Eigen::Vector3d(0, 1, 0),
                                    palm + Eigen::Vector3d(0, 0, 1)};
  v[1] += Eigen::Vector3d(5, 0, 0);
  v[2] += Eigen::Vector3d(5, 0, 0);
  return TriangleMesh(v, {{0, 1, 2}});
}

}  // namespace

TEST_CASE("depth normalizer on a three-value vector") {
  const std::vector<double> v = {1.0, 2.0, 3.0};
  const auto n = normalize_depth<double>(v);
  CHECK(n[0] == -1.5);
  CHECK(n[1] == 0.0);
  CHECK(n[2] == 1.5);
}

TEST_CASE("depth normalizer is affine invariant") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.5, 4.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> v(51 + trial), w;
    for (double& x : v) x = u(rng);
    const double a = 0.1 + trial, b = -3.0 + 0.7 * trial;
    for (double x : v) w.push_back(a * x + b);
    const auto nv = normalize_depth<double>(v), nw = normalize_depth<double>(w);
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(nv[i] - nw[i]) < 1e-6);
  }
}

TEST_CASE("depth normalizer edge cases") {
  CHECK_THROWS_AS(normalize_depth<double>(std::vector<double>{}), InputError);
  const auto flat = normalize_depth<double>(std::vector<double>{2.0, 2.0, 2.0});
  for (double x : flat) CHECK(x == 0.0);
  const auto even = normalize_depth<double>(std::vector<double>{1.0, 2.0, 4.0, 5.0});
  CHECK(even[0] == doctest::Approx(-4.0 / 3.0));
  CHECK(even[3] == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("human depth anchor is the gap between mean object depth and human depth") {
  Image<double> depth(2, 2, 2.8);
  Mask region(2, 2, 1);
  depth(1, 1) = 100.0;
  region(1, 1) = 0;
  CHECK(std::abs(human_depth_anchor_loss<double>(depth, region, 2.5) - 0.3) < 1e-9);
  CHECK_THROWS_AS(human_depth_anchor_loss<double>(depth, Mask(2, 2, 0), 2.5), InputError);
}

TEST_CASE("contact loss counts a palm vertex within the threshold") {
  const TriangleMesh object = make_box({0, 0, 0}, {0.5, 0.5, 0.5});
  const TriangleMesh human = palm_probe({0.55, 0.0, 0.0});
  ContactSpec spec;
  spec.left_hand = true;
  spec.left_palm = VertexSelection({0}, human);
  CHECK(std::abs(contact_loss(object, human, spec, 0.1) - 0.05) < 1e-9);
  CHECK(contact_loss(object, human, spec, 0.05) == 0.0);  // strict gate
  spec.left_hand = false;
  CHECK(contact_loss(object, human, spec, 0.1) == 0.0);
}

TEST_CASE("penetration loss counts an object vertex inside the human") {
  const TriangleMesh human = make_box({0, 0, 0}, {0.5, 0.5, 0.5});
  const TriangleMesh object({{0.48, 0.0, 0.0}, {0.9, 0.1, 0.0}, {0.9, 0.0, 0.1}}, {{0, 1, 2}});
  CHECK(std::abs(penetration_loss(object, human) - 0.02) < 1e-9);
  const TriangleMesh outside({{0.6, 0.0, 0.0}, {0.9, 0.1, 0.0}, {0.9, 0.0, 0.1}}, {{0, 1, 2}});
  CHECK(penetration_loss(outside, human) == 0.0);
}

TEST_CASE("silhouette loss is the mean absolute difference") {
  Image<double> r(2, 1, 0.0), o(2, 1, 0.0);
  r[0] = 1.0;
  o[1] = 0.5;
  CHECK(silhouette_loss<double>(r, o, r, o, 2.0) == doctest::Approx(0.75 + 2.0 * 0.75));
  CHECK_THROWS_AS(silhouette_loss<double>(r, Image<double>(3, 1), r, o, 1.0), InputError);
}

TEST_CASE("stage schedule and weighting") {
  CHECK(term_active(LossTerm::Silhouette, 1));
  CHECK_FALSE(term_active(LossTerm::DepthRelative, 1));
  CHECK(term_active(LossTerm::DepthAbsolute, 2));
  CHECK_FALSE(term_active(LossTerm::Contact, 2));
  CHECK(term_active(LossTerm::Penetration, 3));
  LossBreakdown b;
  b.silhouette = 1;
  b.depth_relative = 2;
  b.depth_absolute = 3;
  b.contact = 4;
  b.penetration = 5;
  const LossWeights w;
  CHECK(total_loss(b, w, 1).total == doctest::Approx(100.0));
  CHECK(total_loss(b, w, 2).total == doctest::Approx(100.0 + 1.0 + 0.3));
  CHECK(total_loss(b, w, 3).total == doctest::Approx(101.3 + 4.0 + 500.0));
  CHECK_THROWS_AS(total_loss(b, w, 4), InputError);
  LossWeights bad;
  bad.w_sil = -1.0;
  CHECK_THROWS_AS(bad.validate(), InputError);
}

TEST_CASE("scene objective gradients match finite differences near the planted pose") {
  const auto dir = std::filesystem::temp_directory_path() / "hoi_unit_objective";
  std::filesystem::remove_all(dir);
  tools::FixtureOptions opts;
  opts.seed = 3;
  const tools::Fixture fx = tools::make_fixture(dir, opts);
  const PipelineSettings settings;
  const LoadedScene scene = load_scene(fx.bundle, settings);
  const SceneObjective objective(scene.inputs, settings.weights);
  REQUIRE(objective.max_supported_stage() == 3);

  std::mt19937_64 rng(4);
  std::normal_distribution<double> rot(0.0, 0.05), tr(0.0, 0.01);
  for (int trial = 0; trial < 3; ++trial) {
    const Pose6DoF pose = fx.truth.perturbed({rot(rng), rot(rng), rot(rng)},
                                             {tr(rng), tr(rng), tr(rng)});
    for (LossTerm term : {LossTerm::Silhouette, LossTerm::DepthAbsolute, LossTerm::Contact}) {
      const testing::PoseVector analytic = objective.term_gradient(pose, term);
      const testing::PoseVector numeric = testing::central_difference(
          pose, [&](const Pose6DoF& p) { return objective.term_value(p, term); }, 1e-4);
      INFO(std::string(loss_term_name(term)), " trial ", trial);
      CHECK(testing::max_relative_error(analytic, numeric) < 1e-3);
    }
  }
  const LossBreakdown at_truth = objective.evaluate(fx.truth, 3);
  CHECK(at_truth.silhouette < 0.05);
  std::filesystem::remove_all(dir);
}
