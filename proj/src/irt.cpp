#include "fairirt/irt.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace fairirt {

namespace {

double stable_sigmoid(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

Ability::Ability(double value) : value_(value) {
  if (!std::isfinite(value) || value <= 0.0 || value >= 1.0) {
    raise(ErrorCategory::input,
          "ability must lie strictly inside (0,1), got " + std::to_string(value));
  }
}

double Ability::logit() const noexcept { return std::log(value_ / (1.0 - value_)); }

ItemParams::ItemParams(double difficulty, double discrimination)
    : difficulty_(difficulty), discrimination_(discrimination) {
  if (!std::isfinite(difficulty) || difficulty <= 0.0 || difficulty >= 1.0) {
    raise(ErrorCategory::input,
          "difficulty must lie strictly inside (0,1), got " + std::to_string(difficulty));
  }
  if (!std::isfinite(discrimination)) {
    raise(ErrorCategory::input, "discrimination must be finite");
  }
}

BetaShape::BetaShape(double alpha_in, double beta_in) : alpha(alpha_in), beta(beta_in) {
  if (!std::isfinite(alpha) || alpha <= 0.0 || !std::isfinite(beta) || beta <= 0.0) {
    raise(ErrorCategory::input, "beta shape parameters must be finite and positive");
  }
}

ResponseMatrix::ResponseMatrix(std::vector<std::string> model_ids,
                               std::vector<std::string> individual_ids,
                               std::vector<double> row_major_values)
    : model_ids_(std::move(model_ids)),
      individual_ids_(std::move(individual_ids)),
      values_(std::move(row_major_values)) {
  const std::size_t n = model_ids_.size();
  const std::size_t m = individual_ids_.size();
  if (n < 2 || m < 2) {
    raise(ErrorCategory::input,
          "a response matrix needs at least 2 models and 2 individuals, got " +
              std::to_string(n) + "x" + std::to_string(m));
  }
  if (values_.size() != n * m) {
    raise(ErrorCategory::dimension,
          "expected " + std::to_string(n * m) + " values, got " + std::to_string(values_.size()));
  }
  for (const auto* ids : {&model_ids_, &individual_ids_}) {
    std::unordered_set<std::string> seen;
    for (const auto& id : *ids) {
      if (!seen.insert(id).second) {
        raise(ErrorCategory::input, "duplicate label '" + id + "'");
      }
    }
  }
  for (double& v : values_) {
    if (!std::isfinite(v)) {
      raise(ErrorCategory::input, "responses must be finite");
    }
    if (v < kClampEps) {
      v = kClampEps;
      ++clamp_count_;
    } else if (v > 1.0 - kClampEps) {
      v = 1.0 - kClampEps;
      ++clamp_count_;
    }
  }
}

double ResponseMatrix::row_mean(std::size_t model) const {
  double sum = 0.0;
  for (std::size_t j = 0; j < n_individuals(); ++j) sum += at(model, j);
  return sum / static_cast<double>(n_individuals());
}

void FitParameters::validate() const {
  if (rasch_constrained) {
    for (const auto& item : items) {
      if (item.discrimination() != 1.0) {
        raise(ErrorCategory::constraint,
              "rasch-constrained parameters must have unit discrimination");
      }
    }
  }
}

BetaShape beta_shapes(const Ability& theta, const ItemParams& item) {
  const double t = theta.value();
  const double d = item.difficulty();
  const double a = item.discrimination();
  return BetaShape(std::pow(t / d, a), std::pow((1.0 - t) / (1.0 - d), a));
}

double beta_icc(const Ability& theta, const ItemParams& item) {
  // alpha/(alpha+beta) rewritten as a logistic in the logit difference.
  const double d = item.difficulty();
  const double logit_d = std::log(d / (1.0 - d));
  return stable_sigmoid(item.discrimination() * (theta.logit() - logit_d));
}

double logistic_icc(double theta, double difficulty, double discrimination) {
  if (!std::isfinite(theta) || !std::isfinite(difficulty) || !std::isfinite(discrimination)) {
    raise(ErrorCategory::input, "logistic curve arguments must be finite");
  }
  return stable_sigmoid(discrimination * (theta - difficulty));
}

double logistic_icc(double theta, const ItemParams& item) {
  return logistic_icc(theta, item.difficulty(), item.discrimination());
}

double beta_log_density(double response, const BetaShape& shape) {
  if (!(response > 0.0 && response < 1.0)) {
    raise(ErrorCategory::input, "beta density is defined on the open interval only");
  }
  const double log_norm =
      std::lgamma(shape.alpha) + std::lgamma(shape.beta) - std::lgamma(shape.alpha + shape.beta);
  return (shape.alpha - 1.0) * std::log(response) +
         (shape.beta - 1.0) * std::log1p(-response) - log_norm;
}

double icc_derivative(const Ability& theta, const ItemParams& item) {
  // Equivalent to the quotient-rule expansion: with p = beta_icc(theta),
  // f'(theta) = a * p * (1-p) / (theta * (1-theta)).
  const double p = beta_icc(theta, item);
  const double t = theta.value();
  return item.discrimination() * p * (1.0 - p) / (t * (1.0 - t));
}

double flatness_indicator(const ItemParams& item, std::span<const Ability> abilities) {
  if (abilities.empty()) {
    raise(ErrorCategory::input, "no respondents");
  }
  double sum = 0.0;
  for (const auto& theta : abilities) {
    sum += std::abs(icc_derivative(theta, item));
  }
  return sum;
}

}  // namespace fairirt
