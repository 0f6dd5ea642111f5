#pragma once

#include "hoi/geometry/mesh.hpp"

namespace hoi {

/// Refinement loss weights; defaults are the reference schedule's values.
struct LossWeights {
  double w_sil = 100.0;
  double w_depth_rel = 0.5;
  double w_depth_abs = 0.1;
  double w_contact = 1.0;
  double w_penetration = 100.0;
  /// Palm-to-object proximity (meters) under which the contact term is active.
  double theta_contact = 0.1;
  /// Object-mask confidence in [0, 1].
  double lambda_object = 1.0;

  /// Throws InputError on negative weights, theta <= 0 or lambda outside [0, 1].
  void validate() const;
};

/// Which hands must touch the object, and their palm vertices on the human mesh.
struct ContactSpec {
  bool left_hand = false;
  bool right_hand = false;
  VertexSelection left_palm;
  VertexSelection right_palm;
};

}  // namespace hoi
