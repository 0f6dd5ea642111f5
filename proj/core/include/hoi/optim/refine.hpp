#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hoi/geometry/pose.hpp"
#include "hoi/losses/total_loss.hpp"
#include "hoi/optim/adam.hpp"

namespace hoi {

struct StagePlan {
  int stage = 1;
  int iterations = 200;
};

struct OptimizeSchedule {
  std::vector<StagePlan> stages = {{1, 200}, {2, 200}, {3, 200}};
  AdamParams adam;
  /// Appends log-scale as a seventh parameter.
  bool optimize_scale = false;

  /// Throws InputError on an empty plan, stage ids outside 1..3, non-positive
  /// iteration counts or bad Adam parameters.
  void validate() const;
  int total_iterations() const;
  int final_stage() const;
};

struct TraceRow {
  int iteration = 0;
  int stage = 1;
  /// Terms at the pose before this iteration's step; total is the stage total.
  LossBreakdown losses;
  /// Final-stage total (hard contact gate) of the same pose.
  double objective = 0.0;
  bool step_skipped = false;
};

struct RefineResult {
  Pose6DoF pose;
  double best_objective = 0.0;
  /// Final-stage objective of the initial pose.
  double initial_objective = 0.0;
  std::vector<TraceRow> trace;
  bool diverged = false;
  std::string divergence_reason;
  int skipped_steps = 0;
};

/// Staged Adam refinement of a pose increment [omega, dt(, dlog_scale)]
/// applied on the left of the current pose. Moments reset at each stage.
/// Returns the pose with the lowest final-stage objective among every pose
/// visited, the initial one included.
RefineResult refine_pose(const Pose6DoF& initial, const SceneObjective& objective,
                         const OptimizeSchedule& schedule = {});

/// iteration,stage,sil,depth_rel,depth_abs,contact,penetration,total,objective
void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace);

}  // namespace hoi
