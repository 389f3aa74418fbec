#pragma once

#include <chrono>
#include <vector>

#include "segbound/data_io.hpp"
#include "segbound/losses.hpp"

namespace segbound {

struct TrainConfig {
  double C = 1.0;
  /// Stop once ||grad||_inf <= grad_tol * max(1, ||grad f(0)||_inf).
  double grad_tol = 1e-10;
  int max_iters = 10000;
};

struct TrainedModel {
  Vector w;
  LossKind kind = LossKind::Logistic;
  double C = 1.0;
  double achieved_grad_norm = 0.0;
  int iterations = 0;
  std::chrono::duration<double, std::milli> wall_time{0};
  /// Objective after initialization and after every accepted step.
  std::vector<double> objective_trace;
};

/// Minimizes (C/2)||w||^2 + (1/n) sum l_i(w) from w = 0 with damped Newton
/// steps. Throws ConvergenceError when max_iters is exhausted or the line
/// search stalls above tolerance.
TrainedModel train(LossKind kind, const Dataset& data, const TrainConfig& cfg);

/// Retrains from scratch on apply_modification(base, m).
TrainedModel retrain_oracle(LossKind kind, const Dataset& base,
                            const Modification& m, const TrainConfig& cfg);

}  // namespace segbound
