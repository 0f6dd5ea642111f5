#include <cmath>

#include "doctest.h"
#include "fixture.hpp"
#include "hoi/error.hpp"
#include "hoi/geometry/mesh.hpp"
#include "hoi/scoring/metrics.hpp"
#include "hoi/scoring/rewards.hpp"

using namespace hoi;

namespace {

HOISequence tracked() {
  HOISequence s = tools::demo_motion(4, 30.0);
  fill_velocities(s);
  for (auto& f : s.frames) {
    f.action = Eigen::VectorXd::Zero(5);
    f.forces.assign(s.skeleton.size(), Eigen::Vector3d::Zero());
  }
  return s;
}

}  // namespace

TEST_CASE("perfect tracking gives unit rewards") {
  const HOISequence s = tracked();
  const RewardConfig cfg;
  const HOIFrame& f = s.frames[1];
  CHECK(body_reward(f, f, s.skeleton, cfg) == 1.0);
  CHECK(object_reward(f.object, f.object, cfg) == 1.0);
  CHECK(regularization_reward(f, f, cfg) == 1.0);
  ContactLabels labels{{}, {"L_Wrist", "R_Wrist"}};
  CHECK(contact_reward(f.forces, s.skeleton, labels, cfg) == 1.0);
  CHECK(imitation_reward(1.0, 1.0, 1.0) == 1.0);
}

TEST_CASE("one metre key-joint offset gives exp(-1)") {
  const HOISequence s = tracked();
  const RewardConfig cfg;
  HOIFrame sim = s.frames[1];
  sim.joint_positions[static_cast<std::size_t>(s.joint_index("L_Wrist"))] +=
      Eigen::Vector3d(0, 1, 0);
  CHECK(std::abs(body_reward(sim, s.frames[1], s.skeleton, cfg) - std::exp(-1.0)) < 1e-9);
  // Non-key joints do not enter the position term.
  HOIFrame other = s.frames[1];
  other.joint_positions[static_cast<std::size_t>(s.joint_index("Head"))] += Eigen::Vector3d(1, 0, 0);
  CHECK(body_reward(other, s.frames[1], s.skeleton, cfg) == 1.0);
}

TEST_CASE("one contact mismatch gives exp(-3)") {
  const HOISequence s = tracked();
  const RewardConfig cfg;
  std::vector<Eigen::Vector3d> forces(s.skeleton.size(), Eigen::Vector3d::Zero());
  const ContactLabels labels{{"L_Wrist"}, {"R_Wrist"}};
  CHECK(std::abs(contact_reward(forces, s.skeleton, labels, cfg) - std::exp(-3.0)) < 1e-9);
  forces[static_cast<std::size_t>(s.joint_index("L_Wrist"))] = {0, 0, 2.0};
  CHECK(contact_reward(forces, s.skeleton, labels, cfg) == 1.0);
}

TEST_CASE("object and regularization rewards") {
  const RewardConfig cfg;
  ObjectState a, b;
  b.pose = Pose6DoF(Eigen::Quaterniond::Identity(), {0.5, 0, 0});
  CHECK(object_reward(a, b, cfg) == doctest::Approx(std::exp(-0.25)));
  b.linear_velocity = Eigen::Vector3d::Zero();
  CHECK_THROWS_AS(object_reward(a, b, cfg), InputError);
  HOISequence s = tracked();
  HOIFrame f = s.frames[1];
  f.action = Eigen::VectorXd::Constant(4, 0.5);  // |a| = 1
  CHECK(regularization_reward(f, s.frames[1], cfg) == doctest::Approx(std::exp(-0.01)));
  CHECK_THROWS_AS(imitation_reward(1.2, 1.0, 1.0), InputError);
  RewardConfig bad;
  bad.lambda_p = 0.5;
  CHECK_THROWS_AS(bad.validate(), InputError);
}

TEST_CASE("contact label parsing") {
  const ContactLabels j = parse_contact_labels(R"({"contact": ["L_Wrist"], "separate": []})");
  CHECK(j.contact == std::vector<std::string>{"L_Wrist"});
  const ContactLabels bare = parse_contact_labels(R"(contact:["L_Wrist"], separate:["R_Elbow"])");
  CHECK(bare.separate == std::vector<std::string>{"R_Elbow"});
  CHECK(parse_contact_labels(format_contact_labels(bare)).contact == bare.contact);
  CHECK_THROWS_AS(parse_contact_labels("contact: L_Wrist"), FormatError);
  const ContactLabels overlap{{"L_Wrist"}, {"L_Wrist"}};
  CHECK_THROWS_AS(overlap.validate(), InputError);
  const HandFlags h = parse_hand_flags("Left Hand: True, Right Hand: False");
  CHECK(h.left);
  CHECK_FALSE(h.right);
  CHECK_THROWS_AS(parse_hand_flags("Left Hand: maybe"), FormatError);
}

TEST_CASE("intersection volume of half-overlapping unit cubes") {
  const TriangleMesh a = make_box({0, 0, 0}, {0.5, 0.5, 0.5});
  const TriangleMesh b = make_box({0.5, 0, 0}, {0.5, 0.5, 0.5});
  CHECK(std::abs(intersection_volume(a, b, 0.005) - 0.5) < 0.01);
  const TriangleMesh far = make_box({3, 0, 0}, {0.5, 0.5, 0.5});
  CHECK(intersection_volume(a, far, 0.01) == 0.0);
  const TriangleMesh open({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 2}});
  CHECK_THROWS_AS(intersection_volume(a, open, 0.01), InputError);
  CHECK_THROWS_AS(intersection_volume(a, b, 0.0), InputError);
}

TEST_CASE("contact percentage of a half-contact sequence") {
  HOISequence s = tools::demo_motion(10, 30.0);
  const TriangleMesh object = make_box({0, 0, 0}, {0.1, 0.1, 0.1});
  const int lw = s.joint_index("L_Wrist"), rw = s.joint_index("R_Wrist");
  for (std::size_t t = 0; t < s.frames.size(); ++t) {
    auto& f = s.frames[t];
    f.object.pose = Pose6DoF(Eigen::Quaterniond::Identity(), {0, 0, 1});
    f.joint_positions[static_cast<std::size_t>(rw)] = {0, 0, 3};
    f.joint_positions[static_cast<std::size_t>(lw)] =
        t % 2 == 0 ? Eigen::Vector3d(0.13, 0, 1) : Eigen::Vector3d(0.2, 0, 1);
  }
  CHECK(contact_percentage(s, object) == 50.0);
  CHECK(frame_in_contact({Eigen::Vector3d(0.149, 0, 0)}, object, 0.05));
  CHECK_FALSE(frame_in_contact({Eigen::Vector3d(0.151, 0, 0)}, object, 0.05));
}

TEST_CASE("foot sliding") {
  HOISequence s = tools::demo_motion(6, 30.0);
  CHECK(foot_sliding(s) == 0.0);
  const int la = s.joint_index("L_Ankle");
  for (std::size_t t = 0; t < s.frames.size(); ++t) {
    auto& p = s.frames[t].joint_positions[static_cast<std::size_t>(la)];
    p = {0.01 * double(t), 0.0, 0.0};  // on the ground, sliding 1 cm per frame
  }
  CHECK(foot_sliding(s) == doctest::Approx(0.01));
  for (std::size_t t = 0; t < s.frames.size(); ++t) {
    s.frames[t].joint_positions[static_cast<std::size_t>(la)].z() = 0.2;  // airborne
  }
  CHECK(foot_sliding(s) == 0.0);
  s.frames[0].joint_positions.clear();
  CHECK_THROWS_AS(foot_sliding(s), InputError);
}
