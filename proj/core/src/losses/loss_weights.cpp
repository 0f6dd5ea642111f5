#include "hoi/losses/loss_weights.hpp"

#include "hoi/error.hpp"

namespace hoi {

void LossWeights::validate() const {
  if (w_sil < 0.0 || w_depth_rel < 0.0 || w_depth_abs < 0.0 || w_contact < 0.0 ||
      w_penetration < 0.0) {
    throw InputError("loss weights must be non-negative");
  }
  if (!(theta_contact > 0.0)) throw InputError("theta_contact must be positive");
  if (!(lambda_object >= 0.0 && lambda_object <= 1.0)) {
    throw InputError("lambda_object must lie in [0, 1]");
  }
}

}  // namespace hoi
