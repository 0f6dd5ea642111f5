#include "hoi/optim/adam.hpp"

#include <cmath>

#include "hoi/error.hpp"

namespace hoi {

void AdamParams::validate() const {
  if (!(lr > 0.0) || !std::isfinite(lr)) throw InputError("learning rate must be positive");
  if (!(beta1 > 0.0 && beta1 < 1.0)) throw InputError("beta1 must lie in (0, 1)");
  if (!(beta2 > 0.0 && beta2 < 1.0)) throw InputError("beta2 must lie in (0, 1)");
  if (!(eps > 0.0)) throw InputError("eps must be positive");
}

AdamResult adam_step(const Eigen::VectorXd& params, const Eigen::VectorXd& grad,
                     const AdamState& state, const AdamParams& hp) {
  const Eigen::Index n = params.size();
  if (grad.size() != n || state.m.size() != n || state.v.size() != n) {
    throw InputError("adam_step: parameter, gradient and state sizes differ");
  }
  if (!grad.allFinite()) return {params, state, true};

  AdamResult out{params, state, false};
  out.state.step += 1;
  out.state.m = hp.beta1 * state.m + (1.0 - hp.beta1) * grad;
  out.state.v = hp.beta2 * state.v + (1.0 - hp.beta2) * grad.cwiseProduct(grad);
  const double t = static_cast<double>(out.state.step);
  const double c1 = 1.0 - std::pow(hp.beta1, t);
  const double c2 = 1.0 - std::pow(hp.beta2, t);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double m_hat = out.state.m[i] / c1;
    const double v_hat = out.state.v[i] / c2;
    out.params[i] -= hp.lr * m_hat / (std::sqrt(v_hat) + hp.eps);
  }
  return out;
}

}  // namespace hoi
