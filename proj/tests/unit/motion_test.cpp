#include "doctest.h"
#include "fixture.hpp"
#include "hoi/error.hpp"
#include "hoi/geometry/rotation.hpp"
#include "hoi/motion/sequence.hpp"

using namespace hoi;

TEST_CASE("keyframe indices are evenly spaced and include both ends") {
  CHECK(keyframe_indices(10, 1) == std::vector<int>{0});
  CHECK(keyframe_indices(10, 2) == std::vector<int>{0, 9});
  CHECK(keyframe_indices(9, 5) == std::vector<int>{0, 2, 4, 6, 8});
  CHECK(keyframe_indices(10, 4) == std::vector<int>{0, 3, 6, 9});
  const HOISequence seq = tools::demo_motion(10, 30.0);
  CHECK_THROWS_AS(extract_keyframes(seq, 0), InputError);
  CHECK_THROWS_AS(extract_keyframes(seq, 11), InputError);
  const HOISequence k = extract_keyframes(seq, 4);
  CHECK(k.frames.size() == 4);
  CHECK(k.keyframe_indices == std::vector<int>{0, 3, 6, 9});
  CHECK(k.frames[1].time == seq.frames[3].time);
}

TEST_CASE("interpolation reproduces milestones bitwise") {
  const HOISequence dense = tools::demo_motion(31, 30.0);
  HOISequence ms = extract_keyframes(dense, 4);
  ms.frames[1].object.pose = Pose6DoF(
      Eigen::Quaterniond(Eigen::AngleAxisd(0.7, Eigen::Vector3d::UnitZ())), {0.3, 0.2, 0.1});
  ms.frames[2].joint_rotations[3] =
      Eigen::Quaterniond(Eigen::AngleAxisd(1.1, Eigen::Vector3d(1, 2, 3).normalized()));
  const HOISequence out = interpolate(ms, 30.0);
  REQUIRE(out.frames.size() == 31);
  for (const auto& m : ms.frames) {
    const auto it = std::find_if(out.frames.begin(), out.frames.end(),
                                 [&](const HOIFrame& f) { return f.time == m.time; });
    REQUIRE(it != out.frames.end());
    CHECK(it->root_position == m.root_position);
    CHECK(it->joint_positions == m.joint_positions);
    CHECK(it->object.pose.translation() == m.object.pose.translation());
    CHECK(it->object.pose.rotation().coeffs() == m.object.pose.rotation().coeffs());
    for (std::size_t j = 0; j < m.joint_rotations.size(); ++j) {
      CHECK(it->joint_rotations[j].coeffs() == m.joint_rotations[j].coeffs());
    }
  }
}

TEST_CASE("interior velocities of a linear translation equal displacement times fps") {
  const HOISequence dense = tools::demo_motion(61, 30.0);
  const HOISequence ms = extract_keyframes(dense, 3);
  const HOISequence out = interpolate(ms, 30.0);
  for (std::size_t t = 1; t + 1 < out.frames.size(); ++t) {
    REQUIRE(out.frames[t].object.linear_velocity.has_value());
    CHECK((*out.frames[t].object.linear_velocity - Eigen::Vector3d(0.01 * 30.0, 0, 0)).norm() <
          1e-6);
  }
}

TEST_CASE("slerp is used between milestone rotations") {
  HOISequence ms = tools::demo_motion(2, 1.0);
  ms.frames[1].object.pose = Pose6DoF(
      Eigen::Quaterniond(Eigen::AngleAxisd(M_PI / 2, Eigen::Vector3d::UnitX())), {1, 0, 0});
  const HOIFrame mid = sample_milestones(ms, 0.5);
  CHECK(std::abs(rotation_angle(mid.object.pose.rotation()) - M_PI / 4) < 1e-9);
  CHECK((mid.object.pose.translation() - Eigen::Vector3d(0.75, 0, 0.4)).norm() < 1e-12);
  CHECK(sample_milestones(ms, -3.0).time == ms.frames[0].time);
}

TEST_CASE("interpolation rejects bad milestones") {
  HOISequence one = tools::demo_motion(1, 30.0);
  CHECK_THROWS_AS(interpolate(one, 30.0), InputError);
  HOISequence dup = tools::demo_motion(3, 30.0);
  dup.frames[2].time = dup.frames[1].time;
  CHECK_THROWS_AS(interpolate(dup, 30.0), InputError);
  CHECK_THROWS_AS(interpolate(tools::demo_motion(3, 30.0), 0.0), InputError);
}

TEST_CASE("sequence validation") {
  HOISequence s = tools::demo_motion(3, 30.0);
  CHECK_NOTHROW(s.validate());
  CHECK(s.joint_index("L_Wrist") >= 0);
  CHECK(s.joint_index("nope") == -1);
  s.frames[1].joint_positions.pop_back();
  CHECK_THROWS_AS(s.validate(), InputError);
  s = tools::demo_motion(3, 30.0);
  s.frames[0].joint_rotations[0].coeffs() *= 2.0;
  CHECK_THROWS_AS(s.validate(), InputError);
}

TEST_CASE("finite-difference velocities") {
  HOISequence s = tools::demo_motion(5, 10.0);
  fill_velocities(s);
  for (const auto& f : s.frames) {
    REQUIRE(f.object.linear_velocity.has_value());
    CHECK((*f.object.linear_velocity - Eigen::Vector3d(0.1, 0, 0)).norm() < 1e-12);
    REQUIRE(f.joint_velocities.size() == s.skeleton.size());
    CHECK(f.joint_velocities[0].norm() < 1e-12);
    CHECK(f.joint_angular_velocities[0].norm() < 1e-12);
  }
}
