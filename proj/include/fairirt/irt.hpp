#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fairirt/common.hpp"

namespace fairirt {

// Responses live in the open unit interval; the beta density is undefined at
// the endpoints, so matrix construction clamps into [kClampEps, 1 - kClampEps].
inline constexpr double kClampEps = 1e-6;

// Latent fairness ability of a predictive model, strictly inside (0,1).
class Ability {
 public:
  explicit Ability(double value);

  double value() const noexcept { return value_; }
  double logit() const noexcept;

 private:
  double value_;
};

// Per-individual item parameters: difficulty in (0,1), finite discrimination.
class ItemParams {
 public:
  ItemParams(double difficulty, double discrimination);

  double difficulty() const noexcept { return difficulty_; }
  double discrimination() const noexcept { return discrimination_; }

 private:
  double difficulty_;
  double discrimination_;
};

// Shape pair of the per-cell beta response distribution.
struct BetaShape {
  BetaShape(double alpha_in, double beta_in);

  double alpha;
  double beta;
};

// N x M fairness responses; rows are predictive models, columns individuals.
class ResponseMatrix {
 public:
  ResponseMatrix(std::vector<std::string> model_ids,
                 std::vector<std::string> individual_ids,
                 std::vector<double> row_major_values);

  std::size_t n_models() const noexcept { return model_ids_.size(); }
  std::size_t n_individuals() const noexcept { return individual_ids_.size(); }
  double at(std::size_t model, std::size_t individual) const {
    return values_[model * n_individuals() + individual];
  }
  const std::vector<double>& values() const noexcept { return values_; }
  const std::vector<std::string>& model_ids() const noexcept { return model_ids_; }
  const std::vector<std::string>& individual_ids() const noexcept { return individual_ids_; }
  std::size_t clamp_count() const noexcept { return clamp_count_; }

  double row_mean(std::size_t model) const;

 private:
  std::vector<std::string> model_ids_;
  std::vector<std::string> individual_ids_;
  std::vector<double> values_;
  std::size_t clamp_count_ = 0;
};

// Full parameter set of a fitted (or simulated) model.
struct FitParameters {
  std::vector<Ability> abilities;
  std::vector<ItemParams> items;
  bool rasch_constrained = false;

  // Throws Error(constraint) if rasch_constrained but some discrimination != 1.
  void validate() const;
};

// alpha = (theta/delta)^a, beta = ((1-theta)/(1-delta))^a.
BetaShape beta_shapes(const Ability& theta, const ItemParams& item);

// Expected response alpha/(alpha+beta); equals
// 1 / (1 + (delta/(1-delta))^a (theta/(1-theta))^(-a)).
double beta_icc(const Ability& theta, const ItemParams& item);

// Classic logistic curve 1/(1+exp(-a(theta-delta))); theta and delta are on
// the real line here, evaluation only.
double logistic_icc(double theta, double difficulty, double discrimination);
double logistic_icc(double theta, const ItemParams& item);

// Log of the Beta(alpha,beta) density at response, via log-gamma.
double beta_log_density(double response, const BetaShape& shape);

// d/dtheta of beta_icc; sign follows the sign of the discrimination.
double icc_derivative(const Ability& theta, const ItemParams& item);

// Flatness Indicator: sum of |icc_derivative| over the supplied abilities.
double flatness_indicator(const ItemParams& item, std::span<const Ability> abilities);

}  // namespace fairirt
