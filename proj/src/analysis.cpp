#include "fairirt/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace fairirt {

namespace {

std::vector<Ability> uniform_ability_grid(std::size_t grid_size) {
  std::vector<Ability> grid;
  grid.reserve(grid_size);
  for (std::size_t k = 0; k < grid_size; ++k) {
    const double theta =
        0.01 + 0.98 * static_cast<double>(k) / static_cast<double>(grid_size - 1);
    grid.emplace_back(theta);
  }
  return grid;
}

std::vector<IndividualSummary> summaries_with_flatness(const FitReport& report,
                                                       std::span<const Ability> abilities) {
  std::vector<IndividualSummary> out;
  out.reserve(report.parameters.items.size());
  for (std::size_t j = 0; j < report.parameters.items.size(); ++j) {
    const ItemParams& item = report.parameters.items[j];
    IndividualSummary s;
    s.individual_id =
        j < report.individual_ids.size() ? report.individual_ids[j] : std::to_string(j);
    s.difficulty = item.difficulty();
    s.discrimination = item.discrimination();
    s.flatness = flatness_indicator(item, abilities);
    s.special = item.discrimination() < 0.0;
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<IndividualSummary> k_flattest(std::vector<IndividualSummary> all, std::size_t k) {
  if (k < 1 || k > all.size()) {
    raise(ErrorCategory::input, "k must lie in [1, number of individuals]");
  }
  std::sort(all.begin(), all.end(), [](const IndividualSummary& x, const IndividualSummary& y) {
    if (x.flatness != y.flatness) return x.flatness < y.flatness;
    return x.individual_id < y.individual_id;
  });
  all.resize(k);
  return all;
}

}  // namespace

std::vector<ModelSummary> model_summaries(const FitReport& report, const ResponseMatrix& matrix) {
  const std::size_t n = matrix.n_models();
  const std::size_t m = matrix.n_individuals();
  if (report.parameters.abilities.size() != n || report.parameters.items.size() != m) {
    raise(ErrorCategory::dimension, "report dimensions do not match the matrix");
  }
  const DenseMatrix predicted = predicted_matrix(report.parameters, n, m);

  std::vector<ModelSummary> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ModelSummary s;
    s.model_id = matrix.model_ids()[i];
    s.ability = report.parameters.abilities[i].value();
    double sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) sum += predicted.at(i, j);
    s.mean_fitted_response = sum / static_cast<double>(m);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const ModelSummary& x, const ModelSummary& y) {
    if (x.ability != y.ability) return x.ability > y.ability;
    return x.model_id < y.model_id;
  });
  return out;
}

std::vector<IndividualSummary> individual_summaries(const FitReport& report) {
  return summaries_with_flatness(report, report.parameters.abilities);
}

std::vector<IndividualSummary> special_individuals(const FitReport& report) {
  std::vector<IndividualSummary> out;
  for (auto& s : individual_summaries(report)) {
    if (s.special) out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const IndividualSummary& x, const IndividualSummary& y) {
    if (x.discrimination != y.discrimination) return x.discrimination < y.discrimination;
    return x.individual_id < y.individual_id;
  });
  return out;
}

std::vector<IndividualSummary> flattest_individuals(const FitReport& report, std::size_t k) {
  return k_flattest(individual_summaries(report), k);
}

std::vector<IndividualSummary> flattest_individuals_on_grid(const FitReport& report,
                                                            std::size_t k,
                                                            std::size_t grid_size) {
  if (grid_size < 2) raise(ErrorCategory::input, "grid size must be at least 2");
  const auto grid = uniform_ability_grid(grid_size);
  return k_flattest(summaries_with_flatness(report, grid), k);
}

std::vector<std::pair<double, double>> tabulate_icc(const ItemParams& item,
                                                    std::size_t grid_size) {
  if (grid_size < 2) raise(ErrorCategory::input, "grid size must be at least 2");
  std::vector<std::pair<double, double>> out;
  out.reserve(grid_size);
  for (const Ability& theta : uniform_ability_grid(grid_size)) {
    out.emplace_back(theta.value(), beta_icc(theta, item));
  }
  return out;
}

double log_delta_component(double difficulty) {
  if (!(difficulty > 0.0 && difficulty < 1.0)) {
    raise(ErrorCategory::input, "difficulty must lie strictly inside (0,1)");
  }
  return std::log(difficulty / (1.0 - difficulty));
}

double log_theta_component(double ability) {
  if (!(ability > 0.0 && ability < 1.0)) {
    raise(ErrorCategory::input, "ability must lie strictly inside (0,1)");
  }
  return std::log((1.0 - ability) / ability);
}

std::vector<DisentangleRecord> disentangle(const FitReport& rasch_report) {
  if (!rasch_report.parameters.rasch_constrained) {
    raise(ErrorCategory::constraint, "disentangling requires the Rasch-constrained fit");
  }
  rasch_report.parameters.validate();

  const auto& abilities = rasch_report.parameters.abilities;
  const auto& items = rasch_report.parameters.items;
  std::vector<DisentangleRecord> out;
  out.reserve(abilities.size() * items.size());
  for (std::size_t i = 0; i < abilities.size(); ++i) {
    const double log_theta = log_theta_component(abilities[i].value());
    for (std::size_t j = 0; j < items.size(); ++j) {
      DisentangleRecord rec;
      rec.model_id =
          i < rasch_report.model_ids.size() ? rasch_report.model_ids[i] : std::to_string(i);
      rec.individual_id = j < rasch_report.individual_ids.size()
                              ? rasch_report.individual_ids[j]
                              : std::to_string(j);
      rec.log_delta = log_delta_component(items[j].difficulty());
      rec.log_theta = log_theta;
      rec.g_value = rec.log_delta + rec.log_theta;
      // g >= 0 means a predicted response at or below one half.
      rec.flag = rec.g_value >= 0.0 ? FairnessFlag::unfair : FairnessFlag::fair;
      out.push_back(std::move(rec));
    }
  }
  return out;
}

}  // namespace fairirt
