#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "fairirt/fit.hpp"
#include "fairirt/metrics.hpp"

namespace fairirt {

struct ModelSummary {
  std::string model_id;
  double ability = 0.0;
  // Mean of the model's row of the predicted matrix.
  double mean_fitted_response = 0.0;
};

struct IndividualSummary {
  std::string individual_id;
  double difficulty = 0.0;
  double discrimination = 0.0;
  double flatness = 0.0;
  bool special = false;  // discrimination < 0
};

// One cell of the Rasch decomposition: g = log_delta + log_theta.
struct DisentangleRecord {
  std::string model_id;
  std::string individual_id;
  double log_delta = 0.0;
  double log_theta = 0.0;
  double g_value = 0.0;
  FairnessFlag flag = FairnessFlag::fair;
};

// One summary per model, sorted by ability descending (ties by id).
std::vector<ModelSummary> model_summaries(const FitReport& report,
                                          const ResponseMatrix& matrix);

// One summary per individual, in column order; flatness over fitted abilities.
std::vector<IndividualSummary> individual_summaries(const FitReport& report);

// Individuals with negative discrimination, sorted by discrimination ascending.
std::vector<IndividualSummary> special_individuals(const FitReport& report);

// The k flattest individuals, ascending flatness (ties by id).
std::vector<IndividualSummary> flattest_individuals(const FitReport& report, std::size_t k);

// Same, with flatness summed over a uniform ability grid instead of the
// fitted abilities.
std::vector<IndividualSummary> flattest_individuals_on_grid(const FitReport& report,
                                                            std::size_t k,
                                                            std::size_t grid_size);

// beta_icc sampled on a uniform theta grid over [0.01, 0.99].
std::vector<std::pair<double, double>> tabulate_icc(const ItemParams& item,
                                                    std::size_t grid_size);

// Decomposition of the disentangle cell arithmetic, usable on its own:
// g = log(delta/(1-delta)) + log((1-theta)/theta), unfair iff g >= 0.
double log_delta_component(double difficulty);
double log_theta_component(double ability);

// Full Rasch decomposition; requires a rasch-constrained report.
std::vector<DisentangleRecord> disentangle(const FitReport& rasch_report);

}  // namespace fairirt
