#include "hoi/optim/refine.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "hoi/error.hpp"

namespace hoi {

void OptimizeSchedule::validate() const {
  if (stages.empty()) throw InputError("optimization schedule has no stages");
  for (const auto& s : stages) {
    if (s.stage < 1 || s.stage > 3) throw InputError("stage ids must be 1, 2 or 3");
    if (s.iterations <= 0) throw InputError("stage iteration counts must be positive");
  }
  adam.validate();
}

int OptimizeSchedule::total_iterations() const {
  int n = 0;
  for (const auto& s : stages) n += s.iterations;
  return n;
}

int OptimizeSchedule::final_stage() const {
  int best = 1;
  for (const auto& s : stages) best = std::max(best, s.stage);
  return best;
}

namespace {

bool finite_eval(const SceneObjective::Evaluation& ev) {
  return std::isfinite(ev.smooth_total) && std::isfinite(ev.values.total);
}

}  // namespace

RefineResult refine_pose(const Pose6DoF& initial, const SceneObjective& objective,
                         const OptimizeSchedule& schedule) {
  schedule.validate();
  const int final_stage = schedule.final_stage();
  for (const auto& s : schedule.stages) objective.require_stage(s.stage);

  const Eigen::Index dim = schedule.optimize_scale ? 7 : 6;
  RefineResult result;
  result.pose = initial;
  result.trace.reserve(static_cast<std::size_t>(schedule.total_iterations()));

  auto final_objective = [&](const LossBreakdown& values) {
    return total_loss(values, objective.weights(), final_stage).total;
  };

  Pose6DoF pose = initial;
  bool have_best = false;
  auto consider = [&](const Pose6DoF& p, double value) {
    if (!std::isfinite(value)) return;
    if (!have_best || value < result.best_objective) {
      result.best_objective = value;
      result.pose = p;
      have_best = true;
    }
  };
  auto diverge = [&](std::string why) {
    result.diverged = true;
    result.divergence_reason = std::move(why);
  };

  int iteration = 0;
  for (const auto& plan : schedule.stages) {
    AdamState state = AdamState::zeros(dim);
    for (int k = 0; k < plan.iterations; ++k, ++iteration) {
      SceneObjective::Evaluation ev;
      try {
        ev = objective.evaluate_with_gradient(pose, plan.stage);
      } catch (const InputError& e) {
        diverge(std::string("loss undefined at iteration ") + std::to_string(iteration) + ": " +
                e.what());
        break;
      }
      const double obj = final_objective(ev.values);
      if (iteration == 0) result.initial_objective = obj;
      if (!finite_eval(ev) || !std::isfinite(obj)) {
        diverge("non-finite loss at iteration " + std::to_string(iteration));
        break;
      }
      consider(pose, obj);

      TraceRow row{iteration, plan.stage, ev.values, obj, false};
      const Eigen::VectorXd grad = ev.gradient.head(dim);
      const auto step = adam_step(Eigen::VectorXd::Zero(dim), grad, state, schedule.adam);
      if (step.skipped) {
        row.step_skipped = true;
        ++result.skipped_steps;
      } else {
        state = step.state;
        const Eigen::VectorXd& d = step.params;
        pose = pose.perturbed(d.head<3>(), d.segment<3>(3), dim == 7 ? d[6] : 0.0);
      }
      result.trace.push_back(row);
    }
    if (result.diverged) break;
  }

  if (!result.diverged) {
    try {
      const auto last = objective.evaluate(pose, final_stage, ContactGate::Hard);
      if (std::isfinite(last.total)) {
        consider(pose, last.total);
      } else {
        diverge("non-finite loss at the final pose");
      }
    } catch (const InputError& e) {
      diverge(std::string("loss undefined at the final pose: ") + e.what());
    }
  }
  if (!have_best) {
    result.pose = initial;
    result.best_objective = std::numeric_limits<double>::quiet_NaN();
  }
  return result;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace) {
  out << "iteration,stage";
  for (LossTerm t : kAllLossTerms) out << ',' << loss_term_name(t);
  out << ",total,objective\n";
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << ',' << buf;
  };
  for (const auto& row : trace) {
    out << row.iteration << ',' << row.stage;
    for (LossTerm t : kAllLossTerms) num(row.losses.term(t));
    num(row.losses.total);
    num(row.objective);
    out << '\n';
  }
}

}  // namespace hoi
