#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hoi/geometry/mesh.hpp"
#include "hoi/geometry/pose.hpp"
#include "hoi/losses/hoi_losses.hpp"
#include "hoi/losses/loss_weights.hpp"
#include "hoi/render/camera.hpp"
#include "hoi/render/image.hpp"
#include "hoi/render/soft_rasterizer.hpp"

namespace hoi {

enum class LossTerm { Silhouette, DepthRelative, DepthAbsolute, Contact, Penetration };

inline constexpr std::array<LossTerm, 5> kAllLossTerms = {
    LossTerm::Silhouette, LossTerm::DepthRelative, LossTerm::DepthAbsolute, LossTerm::Contact,
    LossTerm::Penetration};

const char* loss_term_name(LossTerm term);

/// Unweighted term values plus the stage-weighted total.
struct LossBreakdown {
  double silhouette = 0.0;
  double depth_relative = 0.0;
  double depth_absolute = 0.0;
  double contact = 0.0;
  double penetration = 0.0;
  double total = 0.0;
  int stage = 1;

  double term(LossTerm t) const;
  double& term(LossTerm t);
};

/// Whether a term contributes at a stage: 1 = silhouette; 2 adds both depth
/// terms; 3 adds contact and penetration.
bool term_active(LossTerm term, int stage);

/// Fills `total` with the weighted sum of the terms active at `stage`.
/// Throws InputError for a stage outside 1..3.
LossBreakdown total_loss(LossBreakdown terms, const LossWeights& weights, int stage);

/// Observed inputs of one refinement problem. Meshes and images are in the
/// camera frame; the object template is in its own frame.
struct SceneInputs {
  Camera camera;
  SoftRasterSettings raster;
  TriangleMesh object;
  std::optional<TriangleMesh> human;
  Image<double> mask_human_object;  ///< S_hat
  Image<double> mask_object;        ///< S_o_hat
  std::optional<DepthImage> depth;  ///< D_hat, relative depth
  std::optional<ContactSpec> contact;
  /// Metric human depth; computed from the rendered human mesh when absent.
  std::optional<double> human_depth;
};

/// Loss of an object pose against a scene, with exact derivatives with respect
/// to the pose increment [omega (3), dt (3), dlog_scale (1)] of Pose6DoF::perturbed.
class SceneObjective {
public:
  using Gradient = Eigen::Matrix<double, kPoseParams, 1>;

  SceneObjective(SceneInputs inputs, LossWeights weights);

  /// Throws InputError when inputs needed by `stage` are missing.
  void require_stage(int stage) const;
  /// Highest stage whose inputs are present.
  int max_supported_stage() const;
  bool has_term(LossTerm term) const;

  /// All available terms at the pose; total weighted for `stage`.
  LossBreakdown evaluate(const Pose6DoF& pose, int stage,
                         ContactGate gate = ContactGate::Hard) const;

  struct Evaluation {
    LossBreakdown values;  ///< hard contact gate, total for the requested stage
    double smooth_total = 0.0;
    Gradient gradient = Gradient::Zero();  ///< of the smooth-gate stage total
  };
  Evaluation evaluate_with_gradient(const Pose6DoF& pose, int stage) const;

  /// Value (smooth gate) and gradient of a single unweighted term.
  double term_value(const Pose6DoF& pose, LossTerm term) const;
  Gradient term_gradient(const Pose6DoF& pose, LossTerm term) const;

  const LossWeights& weights() const { return weights_; }
  const SceneInputs& inputs() const { return inputs_; }
  double human_depth() const { return human_depth_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

private:
  template <class T>
  struct Terms {
    std::array<std::optional<T>, 5> values;
  };

  template <class T>
  Terms<T> compute(const Pose6DoF& pose, ContactGate gate, bool need_all) const;

  SceneInputs inputs_;
  LossWeights weights_;
  Mask region_human_object_;
  Mask region_object_;
  std::vector<Eigen::Vector3d> human_vertices_;
  MeshTopology object_topology_;
  MeshTopology human_topology_;
  SoftLayerCache human_layer_;
  double human_depth_ = 0.0;
  bool penetration_enabled_ = false;
  std::vector<std::string> warnings_;
};

/// d(stage total)/d[omega, dt] at the pose (smooth contact gate).
Eigen::Matrix<double, 6, 1> pose_gradient(const SceneObjective& objective, const Pose6DoF& pose,
                                          int stage);

}  // namespace hoi
