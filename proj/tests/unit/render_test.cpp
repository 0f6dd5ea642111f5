#include <cmath>

#include "doctest.h"
#include "fd_gradient.hpp"
#include "hoi/geometry/mesh.hpp"
#include "hoi/geometry/rotation.hpp"
#include "hoi/render/camera.hpp"
#include "hoi/render/hard_rasterizer.hpp"
#include "hoi/render/soft_rasterizer.hpp"

using namespace hoi;

namespace {

Pose6DoF tilted(double z) {
  const Eigen::Quaterniond q = Eigen::AngleAxisd(0.5, Eigen::Vector3d::UnitY()) *
                               Eigen::AngleAxisd(0.35, Eigen::Vector3d::UnitX());
  return Pose6DoF(q, {0.05, -0.03, z});
}

SoftImages<double> soft_of(const TriangleMesh& mesh, const Pose6DoF& pose, double sigma) {
  const PosedMesh pm{&mesh, pose};
  SoftRasterSettings s;
  s.sigma = sigma;
  return render_soft(std::span<const PosedMesh>(&pm, 1), Camera::desk(), s);
}

// Pixels whose (2r+1)^2 neighborhood lies on a single hard-rendered face.
bool interior(const GBuffer& g, int x, int y, int r) {
  const int face = g.face(x, y);
  if (face < 0) return false;
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      const int u = x + dx, v = y + dy;
      if (u < 0 || v < 0 || u >= g.face.width() || v >= g.face.height()) return false;
      if (g.face(u, v) != face) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("camera projects and back-projects consistently") {
  const Camera cam = Camera::desk();
  CHECK(cam.width == 128);
  CHECK(std::abs(cam.focal - 175.0) < 1e-12);
  const Eigen::Vector3d p(0.1, -0.2, 2.0);
  CHECK((cam.back_project(cam.project(p), 2.0) - p).norm() < 1e-12);
}

TEST_CASE("hard rasterizer depth of a fronto-parallel box") {
  const TriangleMesh box = make_box({0, 0, 0}, {0.2, 0.2, 0.2});
  const Pose6DoF pose(Eigen::Quaterniond::Identity(), {0, 0, 2.0});
  const GBuffer g = rasterize_hard(box, pose, Camera::desk());
  CHECK(std::abs(g.depth(64, 64) - 1.8) < 1e-12);
  // Front face spans +-0.2 at z = 1.8: 2 * 175 * 0.2 / 1.8 pixels across.
  const double side = 2.0 * 175.0 * 0.2 / 1.8;
  CHECK(std::abs(double(g.covered()) - side * side) < 4.0 * side);
  CHECK(g.face(0, 0) == -1);
}

TEST_CASE("topology of closed and open meshes") {
  const TriangleMesh box = make_box({0, 0, 0}, {1, 1, 1});
  const MeshTopology t = compute_topology(box.faces());
  CHECK(t.component_count() == 1);
  CHECK(t.component_closed[0]);
  std::vector<Face> two = {{0, 1, 2}, {0, 2, 3}};
  const MeshTopology open = compute_topology(two);
  CHECK(open.component_count() == 1);
  CHECK_FALSE(open.component_closed[0]);
  CHECK(open.neighbor[0][2] == 1);
  CHECK(open.neighbor[0][0] == MeshTopology::kNoNeighbor);
}

TEST_CASE("soft depth matches hard depth away from edges") {
  const TriangleMesh box = make_box({0, 0, 0}, {0.25, 0.2, 0.15}, 2);
  const Pose6DoF pose = tilted(2.0);
  const GBuffer hard = rasterize_hard(box, pose, Camera::desk());
  const auto soft = soft_of(box, pose, 0.5);
  int checked = 0;
  for (int y = 0; y < 128; ++y) {
    for (int x = 0; x < 128; ++x) {
      if (!interior(hard, x, y, 2)) continue;
      ++checked;
      CHECK(std::abs(soft.depth(x, y) - hard.depth(x, y)) < 1e-4);
      CHECK(soft.silhouette(x, y) > 0.95);
    }
  }
  CHECK(checked > 300);
}

TEST_CASE("small sigma silhouette approaches the hard silhouette") {
  const TriangleMesh box = make_box({0, 0, 0}, {0.25, 0.2, 0.15});
  const Pose6DoF pose = tilted(2.2);
  const GBuffer hard = rasterize_hard(box, pose, Camera::desk());
  const auto soft = soft_of(box, pose, 0.01);
  int differ = 0;
  for (std::size_t i = 0; i < hard.silhouette.size(); ++i) {
    differ += (soft.silhouette[i] > 0.5) != (hard.silhouette[i] > 0.5);
  }
  CHECK(double(differ) / double(hard.silhouette.size()) < 0.02);
}

TEST_CASE("silhouette is monotone under nesting and bounded") {
  const TriangleMesh small = make_box({0, 0, 0}, {0.1, 0.1, 0.1});
  const TriangleMesh large = make_box({0, 0, 0}, {0.2, 0.15, 0.12});
  const Pose6DoF pose = tilted(1.8);
  const auto a = soft_of(small, pose, 0.5);
  const auto b = soft_of(large, pose, 0.5);
  for (std::size_t i = 0; i < a.silhouette.size(); ++i) {
    CHECK(a.silhouette[i] >= 0.0);
    CHECK(b.silhouette[i] <= 1.0);
    CHECK(b.silhouette[i] >= a.silhouette[i] - 1e-9);
  }
}

TEST_CASE("a nearer layer occludes the object depth") {
  const TriangleMesh obj = make_box({0, 0, 0}, {0.2, 0.2, 0.2});
  const TriangleMesh wall = make_box({0, 0, 0}, {0.5, 0.5, 0.01});
  const PosedMesh both[2] = {{&obj, Pose6DoF(Eigen::Quaterniond::Identity(), {0, 0, 2.0})},
                             {&wall, Pose6DoF(Eigen::Quaterniond::Identity(), {0, 0, 1.0})}};
  const auto img = render_soft(std::span<const PosedMesh>(both, 2), Camera::desk());
  CHECK(std::abs(img.depth(64, 64) - 0.99) < 1e-6);
  CHECK(img.silhouette(64, 64) > 0.999);
}

TEST_CASE("silhouette gradient matches finite differences") {
  const TriangleMesh box = make_box({0, 0, 0}, {0.25, 0.2, 0.15});
  const Pose6DoF pose = tilted(2.0);
  const Camera cam = Camera::desk();
  const SoftRasterSettings settings;
  auto value = [&](const Pose6DoF& p) {
    const auto img = soft_of(box, p, settings.sigma);
    double s = 0.0;
    for (std::size_t i = 0; i < img.silhouette.size(); ++i) {
      s += img.silhouette[i] * (1.0 + 0.01 * double(i % 128)) + 0.1 * img.depth[i];
    }
    return s;
  };
  // Jet seeded at the identity increment.
  std::vector<Eigen::Matrix<PoseJet, 3, 1>> verts;
  for (const auto& v : box.vertices()) {
    Eigen::Matrix<PoseJet, 3, 1> w, dt;
    for (int k = 0; k < 3; ++k) {
      w[k] = PoseJet(0.0, k);
      dt[k] = PoseJet(0.0, 3 + k);
    }
    const PoseJet s = exp(PoseJet(0.0, 6));
    const Eigen::Vector3d r = pose.apply(v) - pose.translation();
    const Eigen::Matrix<PoseJet, 3, 1> rj(PoseJet(r.x()), PoseJet(r.y()), PoseJet(r.z()));
    const Eigen::Vector3d& t = pose.translation();
    const Eigen::Matrix<PoseJet, 3, 1> tj(PoseJet(t.x()), PoseJet(t.y()), PoseJet(t.z()));
    // First-order rotation suffices for a derivative at zero.
    verts.push_back(s * (rj + w.cross(rj)) + tj + dt);
  }
  const FaceLayer<PoseJet> layer{verts, box.faces()};
  const auto img = rasterize_soft<PoseJet>(std::span<const FaceLayer<PoseJet>>(&layer, 1),
                                           SoftLayerCache{}, cam, settings);
  PoseJet total(0.0);
  for (std::size_t i = 0; i < img.silhouette.size(); ++i) {
    total += img.silhouette[i] * (1.0 + 0.01 * double(i % 128)) + 0.1 * img.depth[i];
  }
  CHECK(std::abs(total.a - value(pose)) < 1e-9);
  const testing::PoseVector analytic = total.v;
  const testing::PoseVector numeric = testing::central_difference(pose, value, 1e-5);
  CHECK(testing::max_relative_error(analytic, numeric) < 1e-3);
}
