#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fairirt/analysis.hpp"
#include "fairirt/fit.hpp"
#include "fairirt/io.hpp"
#include "fairirt/metrics.hpp"
#include "fairirt/simulate.hpp"

namespace py = pybind11;
using namespace fairirt;

namespace {

using Grid = std::vector<std::vector<double>>;

ResponseMatrix matrix_from_rows(const Grid& rows,
                                std::vector<std::string> model_ids,
                                std::vector<std::string> individual_ids) {
  if (rows.empty() || rows.front().empty()) {
    raise(ErrorCategory::input, "matrix must be non-empty");
  }
  const std::size_t n = rows.size();
  const std::size_t m = rows.front().size();
  std::vector<double> values;
  values.reserve(n * m);
  for (const auto& row : rows) {
    if (row.size() != m) raise(ErrorCategory::input, "ragged matrix");
    values.insert(values.end(), row.begin(), row.end());
  }
  if (model_ids.empty()) {
    for (std::size_t i = 0; i < n; ++i) model_ids.push_back("model_" + std::to_string(i + 1));
  }
  if (individual_ids.empty()) {
    for (std::size_t j = 0; j < m; ++j) individual_ids.push_back("ind_" + std::to_string(j + 1));
  }
  return ResponseMatrix(std::move(model_ids), std::move(individual_ids), std::move(values));
}

py::dict report_to_dict(const FitReport& report) {
  py::dict out;
  std::vector<double> abilities, difficulties, discriminations;
  for (const auto& a : report.parameters.abilities) abilities.push_back(a.value());
  for (const auto& item : report.parameters.items) {
    difficulties.push_back(item.difficulty());
    discriminations.push_back(item.discrimination());
  }
  out["abilities"] = abilities;
  out["difficulties"] = difficulties;
  out["discriminations"] = discriminations;
  out["rasch"] = report.parameters.rasch_constrained;
  out["final_loss"] = report.final_loss;
  out["converged"] = report.converged;
  out["epochs_run"] = report.epochs_run;
  out["clamp_count"] = report.clamp_count;
  out["model_ids"] = report.model_ids;
  out["individual_ids"] = report.individual_ids;
  out["loss_trace"] = report.loss_trace;
  return out;
}

FitConfig config_from_kwargs(std::size_t epochs, double learning_rate, std::uint64_t seed,
                             bool rasch) {
  FitConfig config;
  config.epochs = epochs;
  config.learning_rate = learning_rate;
  config.seed = seed;
  config.rasch = rasch;
  return config;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Beta item response theory for fairness evaluation";

  py::register_exception<Error>(m, "FairIrtError");

  m.def(
      "beta_shapes",
      [](double theta, double difficulty, double discrimination) {
        const BetaShape s = beta_shapes(Ability(theta), ItemParams(difficulty, discrimination));
        return std::make_pair(s.alpha, s.beta);
      },
      py::arg("theta"), py::arg("difficulty"), py::arg("discrimination"),
      "Beta shape pair (alpha, beta) for one model/individual cell");

  m.def(
      "beta_icc",
      [](double theta, double difficulty, double discrimination) {
        return beta_icc(Ability(theta), ItemParams(difficulty, discrimination));
      },
      py::arg("theta"), py::arg("difficulty"), py::arg("discrimination"),
      "Expected response alpha/(alpha+beta)");

  m.def(
      "logistic_icc",
      [](double theta, double difficulty, double discrimination) {
        return logistic_icc(theta, difficulty, discrimination);
      },
      py::arg("theta"), py::arg("difficulty"), py::arg("discrimination"));

  m.def(
      "beta_log_density",
      [](double response, double alpha, double beta) {
        return beta_log_density(response, BetaShape(alpha, beta));
      },
      py::arg("response"), py::arg("alpha"), py::arg("beta"));

  m.def(
      "icc_derivative",
      [](double theta, double difficulty, double discrimination) {
        return icc_derivative(Ability(theta), ItemParams(difficulty, discrimination));
      },
      py::arg("theta"), py::arg("difficulty"), py::arg("discrimination"));

  m.def(
      "flatness_indicator",
      [](double difficulty, double discrimination, const std::vector<double>& thetas) {
        std::vector<Ability> abilities;
        abilities.reserve(thetas.size());
        for (double t : thetas) abilities.emplace_back(t);
        return flatness_indicator(ItemParams(difficulty, discrimination), abilities);
      },
      py::arg("difficulty"), py::arg("discrimination"), py::arg("thetas"));

  m.def("sts_classification", &sts_classification, py::arg("p_original"), py::arg("p_flipped"));
  m.def("sts_regression", &sts_regression, py::arg("y_original"), py::arg("y_flipped"),
        py::arg("lam"));
  m.def(
      "fairness_flag",
      [](double response, double epsilon) {
        return fairness_flag(response, epsilon) == FairnessFlag::fair ? "fair" : "unfair";
      },
      py::arg("response"), py::arg("epsilon") = 0.5);

  m.def("log_delta_component", &log_delta_component, py::arg("difficulty"));
  m.def("log_theta_component", &log_theta_component, py::arg("ability"));

  m.def(
      "fit_beta_irt",
      [](const Grid& responses, std::size_t epochs, double learning_rate, std::uint64_t seed,
         bool rasch, std::vector<std::string> model_ids, std::vector<std::string> individual_ids) {
        const auto matrix =
            matrix_from_rows(responses, std::move(model_ids), std::move(individual_ids));
        return report_to_dict(
            fit_beta_irt(matrix, config_from_kwargs(epochs, learning_rate, seed, rasch)));
      },
      py::arg("responses"), py::arg("epochs") = FitConfig{}.epochs,
      py::arg("learning_rate") = FitConfig{}.learning_rate, py::arg("seed") = 0,
      py::arg("rasch") = false, py::arg("model_ids") = std::vector<std::string>{},
      py::arg("individual_ids") = std::vector<std::string>{},
      "Fit the beta IRT model to an N x M list-of-rows response matrix");

  m.def(
      "simulate",
      [](std::size_t n_models, std::size_t n_individuals, std::uint64_t seed, bool noiseless,
         double negative_fraction) {
        SimulationSpec spec;
        spec.n_models = n_models;
        spec.n_individuals = n_individuals;
        spec.seed = seed;
        spec.noiseless = noiseless;
        spec.discrimination = DiscriminationDistribution::mixed(negative_fraction);
        const auto truth = generate_ground_truth(spec);
        const auto matrix = sample_responses(truth, spec);
        py::dict out;
        std::vector<double> abilities, difficulties, discriminations;
        for (const auto& a : truth.abilities) abilities.push_back(a.value());
        for (const auto& item : truth.items) {
          difficulties.push_back(item.difficulty());
          discriminations.push_back(item.discrimination());
        }
        out["abilities"] = abilities;
        out["difficulties"] = difficulties;
        out["discriminations"] = discriminations;
        Grid rows(matrix.n_models(), std::vector<double>(matrix.n_individuals()));
        for (std::size_t i = 0; i < matrix.n_models(); ++i) {
          for (std::size_t j = 0; j < matrix.n_individuals(); ++j) rows[i][j] = matrix.at(i, j);
        }
        out["responses"] = rows;
        out["model_ids"] = matrix.model_ids();
        out["individual_ids"] = matrix.individual_ids();
        return out;
      },
      py::arg("n_models") = 20, py::arg("n_individuals") = 50, py::arg("seed") = 0,
      py::arg("noiseless") = false, py::arg("negative_fraction") = 0.15,
      "Draw ground-truth parameters and a response matrix");

  m.def(
      "tabulate_icc",
      [](double difficulty, double discrimination, std::size_t grid_size) {
        return tabulate_icc(ItemParams(difficulty, discrimination), grid_size);
      },
      py::arg("difficulty"), py::arg("discrimination"), py::arg("grid_size") = 200);
}
