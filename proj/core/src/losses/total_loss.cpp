#include "hoi/losses/total_loss.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <ceres/rotation.h>

#include "hoi/error.hpp"
#include "hoi/losses/image_losses.hpp"

namespace hoi {

const char* loss_term_name(LossTerm term) {
  switch (term) {
    case LossTerm::Silhouette: return "sil";
    case LossTerm::DepthRelative: return "depth_rel";
    case LossTerm::DepthAbsolute: return "depth_abs";
    case LossTerm::Contact: return "contact";
    case LossTerm::Penetration: return "penetration";
  }
  return "?";
}

double LossBreakdown::term(LossTerm t) const {
  return const_cast<LossBreakdown*>(this)->term(t);
}

double& LossBreakdown::term(LossTerm t) {
  switch (t) {
    case LossTerm::Silhouette: return silhouette;
    case LossTerm::DepthRelative: return depth_relative;
    case LossTerm::DepthAbsolute: return depth_absolute;
    case LossTerm::Contact: return contact;
    case LossTerm::Penetration: return penetration;
  }
  return silhouette;
}

bool term_active(LossTerm term, int stage) {
  switch (term) {
    case LossTerm::Silhouette: return stage >= 1;
    case LossTerm::DepthRelative:
    case LossTerm::DepthAbsolute: return stage >= 2;
    case LossTerm::Contact:
    case LossTerm::Penetration: return stage >= 3;
  }
  return false;
}

namespace {

double weight_of(LossTerm term, const LossWeights& w) {
  switch (term) {
    case LossTerm::Silhouette: return w.w_sil;
    case LossTerm::DepthRelative: return w.w_depth_rel;
    case LossTerm::DepthAbsolute: return w.w_depth_abs;
    case LossTerm::Contact: return w.w_contact;
    case LossTerm::Penetration: return w.w_penetration;
  }
  return 0.0;
}

void check_stage(int stage) {
  if (stage < 1 || stage > 3) throw InputError("stage must be 1, 2 or 3");
}

std::size_t term_index(LossTerm t) { return static_cast<std::size_t>(t); }

}  // namespace

LossBreakdown total_loss(LossBreakdown terms, const LossWeights& weights, int stage) {
  check_stage(stage);
  terms.stage = stage;
  terms.total = 0.0;
  for (LossTerm t : kAllLossTerms) {
    if (term_active(t, stage)) terms.total += weight_of(t, weights) * terms.term(t);
  }
  return terms;
}

SceneObjective::SceneObjective(SceneInputs inputs, LossWeights weights)
    : inputs_(std::move(inputs)), weights_(weights) {
  weights_.validate();
  inputs_.camera.validate();
  if (!(inputs_.raster.sigma > 0.0)) throw InputError("soft rasterizer sigma must be positive");
  if (inputs_.object.empty()) throw InputError("object template mesh has no faces");
  const Camera& cam = inputs_.camera;
  auto check_size = [&](const Image<double>& img, const char* what) {
    if (img.width() != cam.width || img.height() != cam.height) {
      throw InputError(std::string(what) + " size does not match the camera (" +
                       std::to_string(img.width()) + "x" + std::to_string(img.height()) + " vs " +
                       std::to_string(cam.width) + "x" + std::to_string(cam.height) + ")");
    }
  };
  check_size(inputs_.mask_human_object, "human-object mask");
  check_size(inputs_.mask_object, "object mask");
  if (inputs_.depth) check_size(*inputs_.depth, "depth map");
  region_human_object_ = threshold_mask(inputs_.mask_human_object);
  region_object_ = threshold_mask(inputs_.mask_object);
  object_topology_ = compute_topology(inputs_.object.faces());

  if (inputs_.human) {
    human_vertices_ = inputs_.human->vertices();
    human_topology_ = compute_topology(inputs_.human->faces());
    const FaceLayer<double> layer{human_vertices_, inputs_.human->faces(), &human_topology_};
    human_layer_ = prerender_soft(std::span<const FaceLayer<double>>(&layer, 1), cam, inputs_.raster);
    penetration_enabled_ = inputs_.human->is_watertight();
    if (!penetration_enabled_) {
      warnings_.push_back("human mesh is not watertight; penetration term disabled");
    }
    if (inputs_.contact) {
      // Re-validate palm indices against this human mesh.
      VertexSelection(inputs_.contact->left_palm.indices(), *inputs_.human);
      VertexSelection(inputs_.contact->right_palm.indices(), *inputs_.human);
    }
  }

  if (inputs_.human_depth) {
    human_depth_ = *inputs_.human_depth;
  } else if (inputs_.human) {
    const PosedMesh pm{&*inputs_.human, Pose6DoF::identity()};
    const auto img = render_soft(std::span<const PosedMesh>(&pm, 1), cam, inputs_.raster);
    double total = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < img.silhouette.size(); ++i) {
      if (img.silhouette[i] > 0.5 && img.depth[i] > 0.0) {
        total += img.depth[i];
        ++n;
      }
    }
    if (n > 0) {
      human_depth_ = total / static_cast<double>(n);
      inputs_.human_depth = human_depth_;
    } else {
      warnings_.push_back("human mesh is not visible; metric depth anchor unavailable");
    }
  }
}

int SceneObjective::max_supported_stage() const {
  const bool depth_ready = inputs_.depth.has_value() && inputs_.human_depth.has_value();
  if (!depth_ready) return 1;
  if (!inputs_.human || !inputs_.contact) return 2;
  return 3;
}

void SceneObjective::require_stage(int stage) const {
  check_stage(stage);
  if (stage >= 2 && !inputs_.depth) throw InputError("stage 2 requires a depth map");
  if (stage >= 2 && !inputs_.human_depth) {
    throw InputError("stage 2 requires a human mesh (or an explicit human depth)");
  }
  if (stage >= 3 && !inputs_.human) throw InputError("stage 3 requires a human mesh");
  if (stage >= 3 && !inputs_.contact) throw InputError("stage 3 requires a contact spec");
}

bool SceneObjective::has_term(LossTerm term) const {
  switch (term) {
    case LossTerm::Silhouette: return true;
    case LossTerm::DepthRelative:
    case LossTerm::DepthAbsolute:
      return inputs_.depth.has_value() && inputs_.human_depth.has_value();
    case LossTerm::Contact: return inputs_.human.has_value() && inputs_.contact.has_value();
    case LossTerm::Penetration: return penetration_enabled_;
  }
  return false;
}

template <class T>
SceneObjective::Terms<T> SceneObjective::compute(const Pose6DoF& pose, ContactGate gate,
                                                 bool /*need_all*/) const {
  using Vec3T = Eigen::Matrix<T, 3, 1>;
  T inc[kPoseParams];
  for (int k = 0; k < kPoseParams; ++k) {
    if constexpr (std::is_same_v<T, double>) {
      inc[k] = 0.0;
    } else {
      inc[k] = T(0.0, k);
    }
  }
  using std::exp;
  const T scale_factor = exp(inc[6]);
  const Eigen::Matrix3d r0 = pose.rotation().toRotationMatrix();
  std::vector<Vec3T> object_vertices;
  object_vertices.reserve(inputs_.object.vertex_count());
  for (const auto& v : inputs_.object.vertices()) {
    const Eigen::Vector3d base = r0 * (pose.scale() * v);
    const T in[3] = {T(base.x()), T(base.y()), T(base.z())};
    T out[3];
    ceres::AngleAxisRotatePoint(inc, in, out);
    object_vertices.emplace_back(out[0] * scale_factor + T(pose.translation().x()) + inc[3],
                                 out[1] * scale_factor + T(pose.translation().y()) + inc[4],
                                 out[2] * scale_factor + T(pose.translation().z()) + inc[5]);
  }

  const FaceLayer<T> object_layer{object_vertices, inputs_.object.faces(), &object_topology_};
  const std::span<const FaceLayer<T>> object_span(&object_layer, 1);
  const auto joint = rasterize_soft<T>(object_span, human_layer_, inputs_.camera, inputs_.raster);
  const auto alone =
      rasterize_soft<T>(object_span, SoftLayerCache{}, inputs_.camera, inputs_.raster);

  Terms<T> terms;
  terms.values[term_index(LossTerm::Silhouette)] =
      silhouette_loss<T>(joint.silhouette, inputs_.mask_human_object, alone.silhouette,
                         inputs_.mask_object, weights_.lambda_object);
  if (has_term(LossTerm::DepthRelative)) {
    terms.values[term_index(LossTerm::DepthRelative)] =
        relative_depth_loss<T>(joint.depth, alone.depth, *inputs_.depth, region_human_object_,
                               region_object_, weights_.lambda_object);
    terms.values[term_index(LossTerm::DepthAbsolute)] =
        human_depth_anchor_loss<T>(alone.depth, region_object_, human_depth_);
  }
  if (has_term(LossTerm::Contact)) {
    terms.values[term_index(LossTerm::Contact)] =
        contact_loss<T>(std::span<const Vec3T>(object_vertices), inputs_.object.faces(),
                        *inputs_.human, *inputs_.contact, weights_.theta_contact, gate);
  }
  if (penetration_enabled_) {
    terms.values[term_index(LossTerm::Penetration)] =
        penetration_loss<T>(std::span<const Vec3T>(object_vertices), *inputs_.human);
  }
  return terms;
}

LossBreakdown SceneObjective::evaluate(const Pose6DoF& pose, int stage, ContactGate gate) const {
  require_stage(stage);
  const auto terms = compute<double>(pose, gate, true);
  LossBreakdown out;
  for (LossTerm t : kAllLossTerms) {
    if (const auto& v = terms.values[term_index(t)]) out.term(t) = *v;
  }
  return total_loss(out, weights_, stage);
}

SceneObjective::Evaluation SceneObjective::evaluate_with_gradient(const Pose6DoF& pose,
                                                                  int stage) const {
  require_stage(stage);
  const auto terms = compute<PoseJet>(pose, ContactGate::Smooth, true);
  Evaluation ev;
  PoseJet total(0.0);
  for (LossTerm t : kAllLossTerms) {
    const auto& v = terms.values[term_index(t)];
    if (!v) continue;
    ev.values.term(t) = v->a;
    if (term_active(t, stage)) total += weight_of(t, weights_) * *v;
  }
  if (has_term(LossTerm::Contact)) {
    // Reported contact uses the hard gate.
    const TriangleMesh posed = inputs_.object.transformed(pose);
    ev.values.contact = contact_loss(posed, *inputs_.human, *inputs_.contact,
                                     weights_.theta_contact);
  }
  ev.values = total_loss(ev.values, weights_, stage);
  ev.smooth_total = total.a;
  ev.gradient = total.v;
  return ev;
}

double SceneObjective::term_value(const Pose6DoF& pose, LossTerm term) const {
  if (!has_term(term)) throw InputError(std::string("loss term unavailable: ") + loss_term_name(term));
  return *compute<double>(pose, ContactGate::Smooth, true).values[term_index(term)];
}

SceneObjective::Gradient SceneObjective::term_gradient(const Pose6DoF& pose, LossTerm term) const {
  if (!has_term(term)) throw InputError(std::string("loss term unavailable: ") + loss_term_name(term));
  return compute<PoseJet>(pose, ContactGate::Smooth, true).values[term_index(term)]->v;
}

Eigen::Matrix<double, 6, 1> pose_gradient(const SceneObjective& objective, const Pose6DoF& pose,
                                          int stage) {
  return objective.evaluate_with_gradient(pose, stage).gradient.head<6>();
}

}  // namespace hoi
