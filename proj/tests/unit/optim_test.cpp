#include <limits>

#include "doctest.h"
#include "hoi/error.hpp"
#include "hoi/optim/adam.hpp"
#include "hoi/optim/refine.hpp"

using namespace hoi;

TEST_CASE("first Adam step moves each parameter by lr against the gradient sign") {
  const AdamParams hp;
  const Eigen::VectorXd x = Eigen::VectorXd::Zero(3);
  Eigen::VectorXd g(3);
  g << 2.0, -0.001, 0.0;
  const AdamResult r = adam_step(x, g, AdamState::zeros(3), hp);
  CHECK(r.params(0) == doctest::Approx(-1e-3).epsilon(1e-6));
  CHECK(r.params(1) == doctest::Approx(1e-3).epsilon(1e-4));
  CHECK(r.params(2) == 0.0);
  CHECK(r.state.step == 1);
  CHECK_FALSE(r.skipped);
}

TEST_CASE("Adam minimizes a quadratic") {
  AdamParams hp;
  hp.lr = 0.05;
  Eigen::VectorXd x(2);
  x << 3.0, -2.0;
  AdamState st = AdamState::zeros(2);
  for (int i = 0; i < 2000; ++i) {
    const Eigen::VectorXd g = 2.0 * (x - Eigen::Vector2d(1.0, 0.5));
    const AdamResult r = adam_step(x, g, st, hp);
    x = r.params;
    st = r.state;
  }
  CHECK(std::abs(x(0) - 1.0) < 1e-3);
  CHECK(std::abs(x(1) - 0.5) < 1e-3);
}

TEST_CASE("Adam skips non-finite gradients and validates inputs") {
  const Eigen::VectorXd x = Eigen::VectorXd::Ones(2);
  Eigen::VectorXd g(2);
  g << 1.0, std::numeric_limits<double>::quiet_NaN();
  const AdamResult r = adam_step(x, g, AdamState::zeros(2), AdamParams{});
  CHECK(r.skipped);
  CHECK(r.params == x);
  CHECK(r.state.step == 0);
  CHECK_THROWS_AS(adam_step(x, Eigen::VectorXd::Ones(3), AdamState::zeros(2), AdamParams{}),
                  InputError);
  AdamParams bad;
  bad.beta1 = 1.0;
  CHECK_THROWS_AS(bad.validate(), InputError);
}

TEST_CASE("schedule validation") {
  OptimizeSchedule s;
  CHECK(s.total_iterations() == 600);
  CHECK(s.final_stage() == 3);
  s.stages = {{4, 10}};
  CHECK_THROWS_AS(s.validate(), InputError);
  s.stages = {{1, 0}};
  CHECK_THROWS_AS(s.validate(), InputError);
  s.stages.clear();
  CHECK_THROWS_AS(s.validate(), InputError);
}
