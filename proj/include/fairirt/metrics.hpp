#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fairirt/irt.hpp"

namespace fairirt {

// One model's prediction for one individual, under the original and the
// flipped value of the sensitive attribute. `label` is the true outcome Y,
// required only for the equalised score.
struct PredictionPairRecord {
  std::string model_id;
  std::string individual_id;
  double value_original = 0.0;
  double value_flipped = 0.0;
  std::optional<double> label;
};

enum class Task { classification, regression };
enum class Metric { sts, es };

struct MetricConfig {
  Task task = Task::classification;
  Metric metric = Metric::sts;
  double epsilon = 0.5;
  // nullopt selects the automatic scaling factor for regression scores.
  std::optional<double> fixed_lambda;

  void validate() const;
};

enum class FairnessFlag { fair, unfair };

// 1 - |p - p_flipped| for classification probabilities.
double sts_classification(double p_original, double p_flipped);

// 1 - lambda * |(y - y_flipped)/y| for regression predictions.
double sts_regression(double y_original, double y_flipped, double lambda);

// lambda = min(1, 1/r_max) over the batch's relative differences, so that
// every resulting regression score lands in [0,1]. Records with
// y_original == 0 are skipped; all records degenerate is an error.
double auto_lambda(std::span<const PredictionPairRecord> records);

// STS arithmetic conditioned on the record's label; the label must be present.
// Regression mode requires a fixed lambda in the config.
double equalised_score(double p_original, double p_flipped,
                       std::optional<double> label, const MetricConfig& config);

// fair iff response > epsilon; the tie response == epsilon is flagged unfair.
FairnessFlag fairness_flag(double response, double epsilon);

struct MatrixBuildResult {
  ResponseMatrix matrix;
  // Scaling factor applied to regression scores (1 for classification).
  double lambda = 1.0;
  // Regression records with y_original == 0, excluded from the matrix.
  std::size_t degenerate_count = 0;
  // Individuals dropped entirely because one of their cells was degenerate.
  std::vector<std::string> dropped_individuals;
};

// Builds the N x M response matrix from a complete grid of records. Row order
// follows first appearance of model ids, column order first appearance of
// individual ids. Missing or duplicate cells are errors.
MatrixBuildResult build_response_matrix(std::span<const PredictionPairRecord> records,
                                        const MetricConfig& config);

}  // namespace fairirt
