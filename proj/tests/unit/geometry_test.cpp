#include <random>
#include <sstream>

#include "doctest.h"
#include "hoi/error.hpp"
#include "hoi/geometry/distance.hpp"
#include "hoi/geometry/mesh.hpp"
#include "hoi/geometry/obj_io.hpp"
#include "hoi/geometry/pose.hpp"
#include "hoi/geometry/rotation.hpp"

using namespace hoi;

namespace {

Eigen::Quaterniond random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Quaterniond q(n(rng), n(rng), n(rng), n(rng));
  return q.normalized();
}

Eigen::Vector3d random_vector(std::mt19937_64& rng, double sd = 1.0) {
  std::normal_distribution<double> n(0.0, sd);
  return {n(rng), n(rng), n(rng)};
}

// Brute-force closest point: dense barycentric sampling plus the three edges.
double sampled_triangle_distance(const Eigen::Vector3d& p, const Eigen::Vector3d& a,
                                 const Eigen::Vector3d& b, const Eigen::Vector3d& c) {
  double best = std::numeric_limits<double>::infinity();
  const int n = 400;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; i + j <= n; ++j) {
      const double u = double(i) / n, v = double(j) / n;
      best = std::min(best, (a + u * (b - a) + v * (c - a) - p).norm());
    }
  }
  return best;
}

}  // namespace

TEST_CASE("pose composition agrees with 4x4 matrices") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const Pose6DoF a(random_rotation(rng), random_vector(rng), 0.5 + trial * 0.03);
    const Pose6DoF b(random_rotation(rng), random_vector(rng), 1.3);
    const Eigen::Matrix4d expected = a.matrix() * b.matrix();
    CHECK((compose(a, b).matrix() - expected).cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::Vector3d p = random_vector(rng);
    CHECK((compose(a, b).apply(p) - a.apply(b.apply(p))).norm() < 1e-12);
    CHECK((compose(a, a.inverse()).matrix() - Eigen::Matrix4d::Identity()).norm() < 1e-12);
  }
}

TEST_CASE("perturbed pose rotates and scales about the object origin") {
  const Pose6DoF base(Eigen::Quaterniond(Eigen::AngleAxisd(0.4, Eigen::Vector3d::UnitY())),
                      {0.1, -0.2, 2.0}, 1.2);
  const Eigen::Vector3d w(0.01, -0.02, 0.03), dt(0.1, 0.0, -0.05);
  const Pose6DoF p = base.perturbed(w, dt, 0.1);
  const Eigen::Vector3d x(0.3, -0.1, 0.2);
  const Eigen::Vector3d expected =
      std::exp(0.1) * (exp_map(w) * (base.apply(x) - base.translation())) + base.translation() + dt;
  CHECK((p.apply(x) - expected).norm() < 1e-12);
}

TEST_CASE("exp and log maps invert each other") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const Eigen::Quaterniond q = random_rotation(rng);
    CHECK(angular_distance(exp_map(log_map(q)), q) < 1e-9);
  }
  CHECK(log_map(Eigen::Quaterniond::Identity()).norm() == 0.0);
}

TEST_CASE("octahedral set has 24 distinct members closed under composition") {
  const auto& rots = octahedral_rotations();
  REQUIRE(rots.size() == 24);
  for (std::size_t i = 0; i < rots.size(); ++i) {
    for (std::size_t j = i + 1; j < rots.size(); ++j) {
      CHECK(angular_distance(rots[i], rots[j]) > 1e-6);
    }
  }
  for (const auto& a : rots) {
    for (const auto& b : rots) {
      double nearest = 10.0;
      for (const auto& c : rots) nearest = std::min(nearest, angular_distance(a * b, c));
      CHECK(nearest < 1e-9);
    }
  }
}

TEST_CASE("slerp midpoint of a quarter turn is an eighth turn") {
  const Eigen::Quaterniond q1(Eigen::AngleAxisd(M_PI / 2, Eigen::Vector3d::UnitZ()));
  const Eigen::Quaterniond mid = slerp(Eigen::Quaterniond::Identity(), q1, 0.5);
  CHECK(std::abs(rotation_angle(mid) - M_PI / 4) < 1e-9);
  CHECK(angular_distance(slerp(Eigen::Quaterniond::Identity(), q1, 0.0),
                         Eigen::Quaterniond::Identity()) < 1e-12);
  CHECK(angular_distance(slerp(Eigen::Quaterniond::Identity(), q1, 1.0), q1) < 1e-12);
}

TEST_CASE("closest point on triangle matches dense sampling") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::Vector3d a = random_vector(rng), b = random_vector(rng), c = random_vector(rng);
    const Eigen::Vector3d p = random_vector(rng, 1.5);
    const double exact = (closest_point_on_triangle<double>(p, a, b, c) - p).norm();
    const double sampled = sampled_triangle_distance(p, a, b, c);
    CHECK(exact <= sampled + 1e-12);
    CHECK(sampled - exact < 0.02);
  }
}

TEST_CASE("signed distance of a unit cube") {
  const TriangleMesh cube = make_box({0, 0, 0}, {0.5, 0.5, 0.5});
  REQUIRE(cube.is_watertight());
  const SignedDistance center = signed_point_mesh_distance({0, 0, 0}, cube);
  CHECK(center.reliable);
  CHECK(std::abs(center.value + 0.5) < 1e-9);
  CHECK(std::abs(signed_point_mesh_distance({1.0, 0, 0}, cube).value - 0.5) < 1e-9);
  CHECK(std::abs(signed_point_mesh_distance({0.5, 0.5, 1.5}, cube).value - 1.0) < 1e-9);
  CHECK(point_inside_mesh({0.1, 0.2, -0.3}, cube));
  CHECK_FALSE(point_inside_mesh({0.6, 0.0, 0.0}, cube));
}

TEST_CASE("open meshes report unreliable signs") {
  const TriangleMesh tri({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 2}});
  CHECK_FALSE(tri.is_watertight());
  CHECK_FALSE(signed_point_mesh_distance({0.2, 0.2, 1.0}, tri).reliable);
}

TEST_CASE("mesh construction drops degenerate faces and rejects bad indices") {
  const TriangleMesh m({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {2, 0, 0}}, {{0, 1, 2}, {0, 1, 3}});
  CHECK(m.face_count() == 1);
  CHECK(m.dropped_degenerate() == 1);
  CHECK_THROWS_AS(TriangleMesh({{0, 0, 0}}, {{0, 1, 2}}), InputError);
}

TEST_CASE("icosphere is watertight with vertices on the sphere") {
  const TriangleMesh s = make_icosphere({1, 2, 3}, 0.5, 2);
  CHECK(s.is_watertight());
  for (const auto& v : s.vertices()) CHECK(std::abs((v - Eigen::Vector3d(1, 2, 3)).norm() - 0.5) < 1e-12);
}

TEST_CASE("OBJ round trip preserves geometry") {
  const TriangleMesh box = make_box({0.1, 0.2, 0.3}, {0.4, 0.5, 0.6}, 2);
  std::stringstream ss;
  write_obj(ss, box);
  const TriangleMesh back = read_obj(ss);
  REQUIRE(back.vertex_count() == box.vertex_count());
  REQUIRE(back.face_count() == box.face_count());
  for (std::size_t i = 0; i < box.vertex_count(); ++i) {
    CHECK((back.vertices()[i] - box.vertices()[i]).norm() < 1e-12);
  }
  CHECK(back.faces() == box.faces());
}

TEST_CASE("OBJ reader handles polygons, slashes and negative indices") {
  std::istringstream in(
      "# quad\nv 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nvn 0 0 1\nf 1//1 2//1 3//1 4//1\nf -4 -2 -1\n");
  const TriangleMesh m = read_obj(in);
  CHECK(m.vertex_count() == 4);
  CHECK(m.face_count() == 3);
  std::istringstream bad("v 0 0 0\nf 1 2 x\n");
  CHECK_THROWS(read_obj(bad));
}
