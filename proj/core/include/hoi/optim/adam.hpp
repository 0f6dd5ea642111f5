#pragma once

#include <Eigen/Core>

namespace hoi {

struct AdamParams {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;

  /// Throws InputError unless lr > 0, 0 < beta1, beta2 < 1 and eps > 0.
  void validate() const;
};

struct AdamState {
  Eigen::VectorXd m;
  Eigen::VectorXd v;
  long step = 0;

  static AdamState zeros(Eigen::Index n) {
    return {Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n), 0};
  }
};

struct AdamResult {
  Eigen::VectorXd params;
  AdamState state;
  /// The gradient had a non-finite entry; params and state are returned unchanged.
  bool skipped = false;
};

/// One bias-corrected Adam update. Throws InputError when dimensions disagree.
AdamResult adam_step(const Eigen::VectorXd& params, const Eigen::VectorXd& grad,
                     const AdamState& state, const AdamParams& hp);

}  // namespace hoi
