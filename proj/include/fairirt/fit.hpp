#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fairirt/irt.hpp"

namespace fairirt {

struct FitConfig {
  std::size_t epochs = 3000;
  double learning_rate = 0.01;
  std::uint64_t seed = 0;
  bool rasch = false;
  // Convergence is declared when the objective improves by less than this
  // over the trailing window.
  double convergence_tol = 1e-8;
  std::size_t convergence_window = 50;
  double init_jitter = 0.05;

  // Scale anchor: weight of the (|a_j| - 1)^2 penalty that pins the logit
  // scale the model is otherwise free to drift along.
  double scale_anchor_weight = 0.5;
  // Proximal weight toward the least-squares starting point.
  double proximal_weight = 0.1;
  // Every reflect_interval epochs each item may jump to its reflected twin
  // (1 - delta, -a) when that improves the item's log-likelihood by more
  // than reflect_margin. 0 disables the moves.
  std::size_t reflect_interval = 25;
  double reflect_margin = 0.5;
  // Per-coordinate cap on a single update step, in surrogate space.
  double max_step = 0.2;

  void validate() const;
};

struct FitReport {
  FitParameters parameters;
  // Negative mean beta log-likelihood at the returned parameters.
  double final_loss = 0.0;
  // Optimized objective per epoch (the log-likelihood term plus penalties).
  std::vector<double> loss_trace;
  bool converged = false;
  std::size_t epochs_run = 0;
  std::size_t clamp_count = 0;
  FitConfig config;
  std::vector<std::string> model_ids;
  std::vector<std::string> individual_ids;
};

// Unconstrained coordinates used by the optimizer: logit(theta), logit(delta)
// and raw discrimination. Exposed so the analytic gradient can be checked
// against finite differences.
struct SurrogateState {
  std::vector<double> ability_logit;
  std::vector<double> difficulty_logit;
  std::vector<double> discrimination;
};

// Negative mean beta log-likelihood of the matrix under the surrogate state.
double surrogate_loss(const ResponseMatrix& matrix, const SurrogateState& state);

// Analytic gradient of surrogate_loss in the same coordinates.
SurrogateState surrogate_gradient(const ResponseMatrix& matrix, const SurrogateState& state);

// Negative mean beta log-likelihood of the matrix under fitted parameters.
double negative_loss(const ResponseMatrix& matrix, const FitParameters& params);

struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
};

// Cell (i,j) = beta_icc(theta_i, item_j).
DenseMatrix predicted_matrix(const FitParameters& params, std::size_t n_models,
                             std::size_t n_individuals);

// Estimates abilities, difficulties and discriminations from the response
// matrix. Deterministic given (matrix, config). With config.rasch the
// discriminations are held at exactly 1.
FitReport fit_beta_irt(const ResponseMatrix& matrix, const FitConfig& config);

}  // namespace fairirt
