#include "fairirt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace fairirt {

namespace {

void check_probability(double value, const std::string& what,
                       const PredictionPairRecord* record) {
  if (!std::isfinite(value) || value < 0.0 || value > 1.0) {
    std::string msg = what + " must be a probability in [0,1], got " + std::to_string(value);
    if (record != nullptr) {
      msg += " for (" + record->model_id + ", " + record->individual_id + ")";
    }
    raise(ErrorCategory::input, msg);
  }
}

void check_label(const PredictionPairRecord& record) {
  if (!record.label.has_value()) {
    raise(ErrorCategory::input, "record (" + record.model_id + ", " + record.individual_id +
                                    ") requires a label for the equalised score");
  }
  const double y = *record.label;
  if (y != 0.0 && y != 1.0) {
    raise(ErrorCategory::input, "label must be binary (0 or 1), got " + std::to_string(y) +
                                    " for (" + record.model_id + ", " + record.individual_id + ")");
  }
}

double relative_difference(const PredictionPairRecord& r) {
  return std::abs((r.value_original - r.value_flipped) / r.value_original);
}

}  // namespace

void MetricConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    raise(ErrorCategory::input, "epsilon must lie strictly inside (0,1)");
  }
  if (fixed_lambda.has_value() && !(*fixed_lambda > 0.0 && std::isfinite(*fixed_lambda))) {
    raise(ErrorCategory::input, "fixed lambda must be a positive real");
  }
}

double sts_classification(double p_original, double p_flipped) {
  check_probability(p_original, "original prediction", nullptr);
  check_probability(p_flipped, "flipped prediction", nullptr);
  return 1.0 - std::abs(p_original - p_flipped);
}

double sts_regression(double y_original, double y_flipped, double lambda) {
  if (y_original == 0.0) {
    raise(ErrorCategory::input, "undefined relative difference: prediction under the original "
                                "attribute is zero");
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    raise(ErrorCategory::input, "lambda must be a positive real");
  }
  return 1.0 - lambda * std::abs((y_original - y_flipped) / y_original);
}

double auto_lambda(std::span<const PredictionPairRecord> records) {
  double r_max = -1.0;
  for (const auto& r : records) {
    if (r.value_original == 0.0) continue;
    r_max = std::max(r_max, relative_difference(r));
  }
  if (r_max < 0.0) {
    raise(ErrorCategory::input, "all records degenerate: no nonzero original predictions");
  }
  return r_max > 1.0 ? 1.0 / r_max : 1.0;
}

double equalised_score(double p_original, double p_flipped,
                       std::optional<double> label, const MetricConfig& config) {
  config.validate();
  if (!label.has_value()) {
    raise(ErrorCategory::input, "equalised score requires a label");
  }
  if (*label != 0.0 && *label != 1.0) {
    raise(ErrorCategory::input, "label must be binary (0 or 1)");
  }
  if (config.task == Task::classification) {
    return sts_classification(p_original, p_flipped);
  }
  if (!config.fixed_lambda.has_value()) {
    raise(ErrorCategory::input,
          "standalone equalised score in regression mode requires a fixed lambda");
  }
  return sts_regression(p_original, p_flipped, *config.fixed_lambda);
}

FairnessFlag fairness_flag(double response, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    raise(ErrorCategory::input, "epsilon must lie strictly inside (0,1)");
  }
  // The tie is flagged unfair so boundary cases surface for review.
  return response > epsilon ? FairnessFlag::fair : FairnessFlag::unfair;
}

MatrixBuildResult build_response_matrix(std::span<const PredictionPairRecord> records,
                                        const MetricConfig& config) {
  config.validate();
  if (records.empty()) {
    raise(ErrorCategory::input, "no records");
  }

  std::vector<std::string> models;
  std::vector<std::string> individuals;
  std::unordered_map<std::string, std::size_t> model_index;
  std::unordered_map<std::string, std::size_t> individual_index;
  std::unordered_map<std::size_t, const PredictionPairRecord*> cells;

  for (const auto& r : records) {
    if (model_index.emplace(r.model_id, models.size()).second) models.push_back(r.model_id);
    if (individual_index.emplace(r.individual_id, individuals.size()).second) {
      individuals.push_back(r.individual_id);
    }
  }
  const std::size_t m = individuals.size();
  for (const auto& r : records) {
    const std::size_t key = model_index.at(r.model_id) * m + individual_index.at(r.individual_id);
    if (!cells.emplace(key, &r).second) {
      raise(ErrorCategory::input,
            "duplicate cell (" + r.model_id + ", " + r.individual_id + ")");
    }
  }

  std::vector<std::string> missing;
  for (std::size_t i = 0; i < models.size(); ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (!cells.contains(i * m + j)) {
        missing.push_back("(" + models[i] + ", " + individuals[j] + ")");
      }
    }
  }
  if (!missing.empty()) {
    std::string list;
    const std::size_t shown = std::min<std::size_t>(missing.size(), 5);
    for (std::size_t k = 0; k < shown; ++k) {
      if (k > 0) list += ", ";
      list += missing[k];
    }
    if (missing.size() > shown) {
      list += " and " + std::to_string(missing.size() - shown) + " more";
    }
    raise(ErrorCategory::input, "missing cells: " + list);
  }

  const bool regression = config.task == Task::regression;
  const bool needs_label = config.metric == Metric::es;

  if (needs_label) {
    for (const auto& r : records) check_label(r);
  }

  double lambda = 1.0;
  std::size_t degenerate_count = 0;
  std::vector<std::string> dropped_individuals;
  std::unordered_set<std::string> dropped;
  if (regression) {
    for (const auto& r : records) {
      if (r.value_original == 0.0) {
        ++degenerate_count;
        if (dropped.insert(r.individual_id).second) {
          dropped_individuals.push_back(r.individual_id);
        }
      }
    }
    lambda = config.fixed_lambda.has_value() ? *config.fixed_lambda : auto_lambda(records);
  } else {
    for (const auto& r : records) {
      check_probability(r.value_original, "original prediction", &r);
      check_probability(r.value_flipped, "flipped prediction", &r);
    }
  }

  std::vector<std::string> kept_individuals;
  for (const auto& id : individuals) {
    if (!dropped.contains(id)) kept_individuals.push_back(id);
  }
  if (kept_individuals.size() < 2) {
    raise(ErrorCategory::input,
          "fewer than 2 individuals remain after excluding degenerate records");
  }

  std::vector<double> values;
  values.reserve(models.size() * kept_individuals.size());
  for (const auto& model : models) {
    for (const auto& ind : kept_individuals) {
      const auto& r =
          *cells.at(model_index.at(model) * m + individual_index.at(ind));
      const double score = regression
                               ? sts_regression(r.value_original, r.value_flipped, lambda)
                               : sts_classification(r.value_original, r.value_flipped);
      values.push_back(score);
    }
  }
  return MatrixBuildResult{ResponseMatrix(models, kept_individuals, std::move(values)), lambda,
                           degenerate_count, std::move(dropped_individuals)};
}

}  // namespace fairirt
