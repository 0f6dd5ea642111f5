#include "doctest.h"
#include "hoi/correspondence/coarse_pose.hpp"
#include "hoi/correspondence/feature_map.hpp"
#include "hoi/correspondence/matching.hpp"
#include "hoi/correspondence/pnp.hpp"
#include "hoi/correspondence/ransac.hpp"
#include "hoi/correspondence/synthetic_features.hpp"
#include "hoi/correspondence/viewpoint.hpp"
#include "hoi/error.hpp"
#include "hoi/geometry/mesh.hpp"
#include "hoi/render/hard_rasterizer.hpp"
#include "planted.hpp"

using namespace hoi;

TEST_CASE("PnP recovers noiseless general and coplanar poses") {
  const Camera cam = Camera::desk();
  std::mt19937_64 rng(11);
  for (bool planar : {false, true}) {
    for (int trial = 0; trial < 20; ++trial) {
      const Pose6DoF truth = testing::random_camera_pose(rng);
      const auto corrs = testing::planted_correspondences(rng, truth, cam, 8, planar);
      const PnPResult r = solve_pnp(corrs, cam);
      CHECK(r.planar == planar);
      CHECK(rotation_error(r.pose, truth) * 180.0 / M_PI < 0.01);
      CHECK(translation_error(r.pose, truth) < 1e-4);
      CHECK(r.reprojection_error < 1e-6);
    }
  }
}

TEST_CASE("PnP refinement does not increase the reprojection error") {
  const Camera cam = Camera::desk();
  std::mt19937_64 rng(12);
  std::normal_distribution<double> noise(0.0, 0.5);
  const Pose6DoF truth = testing::random_camera_pose(rng);
  auto corrs = testing::planted_correspondences(rng, truth, cam, 30, false);
  for (auto& c : corrs) c.pixel += Eigen::Vector2d(noise(rng), noise(rng));
  const PnPResult r = solve_pnp(corrs, cam);
  REQUIRE(!r.refinement_trace.empty());
  for (std::size_t i = 1; i < r.refinement_trace.size(); ++i) {
    CHECK(r.refinement_trace[i] <= r.refinement_trace[i - 1] + 1e-12);
  }
  CHECK(rotation_error(r.pose, truth) * 180.0 / M_PI < 2.0);
}

TEST_CASE("PnP rejects too few or degenerate points") {
  const Camera cam = Camera::desk();
  std::vector<Correspondence3D2D> three(3, {{0, 0, 0}, {64, 64}});
  CHECK_THROWS_AS(solve_pnp(three, cam), InsufficientDataError);
  std::vector<Correspondence3D2D> line;
  for (int i = 0; i < 6; ++i) line.push_back({{0.1 * i, 0, 0}, {64.0 + i, 64.0}});
  CHECK_THROWS_AS(solve_pnp(line, cam), InputError);
}

TEST_CASE("homography fit is exact on noiseless points") {
  std::mt19937_64 rng(13);
  const auto pm = testing::planted_homography_matches(rng, 20, 0.0);
  std::vector<Eigen::Vector2d> a, b;
  for (const auto& m : pm.matches) {
    a.push_back(m.pixel_a);
    b.push_back(m.pixel_b);
  }
  const Eigen::Matrix3d h = fit_homography(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(homography_transfer_error(h, a[i], b[i]) < 1e-8);
  }
}

TEST_CASE("RANSAC separates planted outliers and is deterministic") {
  std::mt19937_64 rng(14);
  const auto pm = testing::planted_homography_matches(rng, 200, 0.3);
  RansacOptions opts;
  opts.seed = 5;
  const RansacResult r = ransac_homography_filter(pm.matches, opts);
  int kept_inliers = 0, kept_outliers = 0;
  for (std::size_t i : r.inlier_indices) (pm.inlier[i] ? kept_inliers : kept_outliers)++;
  CHECK(kept_inliers >= 133);
  CHECK(kept_outliers <= 2);
  const RansacResult again = ransac_homography_filter(pm.matches, opts);
  CHECK(again.inlier_indices == r.inlier_indices);
  std::vector<Match2D> few(pm.matches.begin(), pm.matches.begin() + 3);
  CHECK_THROWS_AS(ransac_homography_filter(few, opts), InsufficientDataError);
}

TEST_CASE("mutual nearest neighbours pair identical descriptors") {
  FeatureMap a(4, 1, 2), b(4, 1, 2);
  const float da[4][2] = {{0, 0}, {1, 0}, {0, 1}, {5, 5}};
  const int perm[4] = {2, 0, 3, 1};
  for (int x = 0; x < 4; ++x) {
    for (int c = 0; c < 2; ++c) {
      a.descriptor(x, 0)[c] = da[x][c];
      b.descriptor(perm[x], 0)[c] = da[x][c] + 0.01f * float(x);
    }
    a.set_valid(x, 0, true);
    b.set_valid(x, 0, true);
  }
  const auto m = bidirectional_match(a, b, 10);
  REQUIRE(m.size() == 4);
  for (const auto& match : m) {
    const int xa = static_cast<int>(match.pixel_a.x() - 0.5);
    CHECK(static_cast<int>(match.pixel_b.x() - 0.5) == perm[xa]);
  }
  for (std::size_t i = 1; i < m.size(); ++i) CHECK(m[i - 1].distance <= m[i].distance);
  CHECK(bidirectional_match(a, b, 2).size() == 2);
  FeatureMap wrong(4, 1, 3);
  CHECK_THROWS_AS(bidirectional_match(a, wrong, 10), InputError);
}

TEST_CASE("viewpoint selection finds the planted canonical view") {
  const TriangleMesh mesh = [] {
    const TriangleMesh parts[2] = {make_box({0, 0, 0}, {0.2, 0.1, 0.05}),
                                   make_box({0.15, 0.12, 0.0}, {0.05, 0.03, 0.04})};
    return merge_meshes(parts);
  }();
  const Camera cam = Camera::desk();
  const ProjectionFeatureExtractor extractor(16, 7, 0.5);
  const FeatureExtractor fx = [&](const GBuffer& g, int i) { return extractor(g, i); };
  const Eigen::Vector3d anchor(0, 0, 2.0);
  for (int view : {0, 5, 17}) {
    const Pose6DoF pose = canonical_view_pose(mesh, view, anchor);
    const FeatureMap target = extractor(rasterize_hard(mesh, pose, cam));
    const ViewpointSelection sel = select_viewpoint(mesh, target, cam, fx, anchor);
    CHECK(sel.index == view);
    CHECK(sel.score < 1e-9);
  }
}
