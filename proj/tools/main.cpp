#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fairirt/analysis.hpp"
#include "fairirt/fit.hpp"
#include "fairirt/io.hpp"
#include "fairirt/metrics.hpp"
#include "fairirt/simulate.hpp"

namespace {

using namespace fairirt;

Task parse_task(const std::string& s) {
  if (s == "classification") return Task::classification;
  if (s == "regression") return Task::regression;
  raise(ErrorCategory::usage, "unknown task '" + s + "'");
}

Metric parse_metric(const std::string& s) {
  if (s == "sts") return Metric::sts;
  if (s == "es") return Metric::es;
  raise(ErrorCategory::usage, "unknown metric '" + s + "'");
}

std::optional<double> parse_lambda(const std::string& s) {
  if (s == "auto") return std::nullopt;
  try {
    return std::stod(s);
  } catch (const std::exception&) {
    raise(ErrorCategory::usage, "--lambda expects 'auto' or a positive real");
  }
}

struct FitFlags {
  std::size_t epochs = FitConfig{}.epochs;
  double lr = FitConfig{}.learning_rate;
  std::uint64_t seed = 0;
  bool rasch = false;
  double tol = FitConfig{}.convergence_tol;
  double jitter = FitConfig{}.init_jitter;

  FitConfig to_config() const {
    FitConfig config;
    config.epochs = epochs;
    config.learning_rate = lr;
    config.seed = seed;
    config.rasch = rasch;
    config.convergence_tol = tol;
    config.init_jitter = jitter;
    return config;
  }
};

void add_fit_flags(CLI::App* cmd, FitFlags& flags) {
  cmd->add_option("--epochs", flags.epochs, "Training epochs")->capture_default_str();
  cmd->add_option("--lr", flags.lr, "Learning rate")->capture_default_str();
  cmd->add_option("--seed", flags.seed, "Seed for initialization jitter")->capture_default_str();
  cmd->add_flag("--rasch", flags.rasch, "Hold all discriminations at 1");
  cmd->add_option("--tol", flags.tol, "Convergence tolerance on the loss window")
      ->capture_default_str();
  cmd->add_option("--jitter", flags.jitter, "Initialization jitter half-width")
      ->capture_default_str();
}

int run(int argc, char** argv) {
  CLI::App app{"Beta IRT fairness evaluation toolkit"};
  app.require_subcommand(1);

  // metrics: prediction pairs -> response matrix
  auto* metrics_cmd = app.add_subcommand("metrics", "Compute a response matrix from prediction pairs");
  std::string metrics_input, metrics_output;
  std::string task_name = "classification", metric_name = "sts", lambda_arg = "auto";
  double epsilon = 0.5;
  metrics_cmd->add_option("--input", metrics_input, "Prediction pair CSV")->required();
  metrics_cmd->add_option("--output", metrics_output, "Matrix CSV to write")->required();
  metrics_cmd->add_option("--task", task_name, "classification|regression")->capture_default_str();
  metrics_cmd->add_option("--metric", metric_name, "sts|es")->capture_default_str();
  metrics_cmd->add_option("--epsilon", epsilon, "Fairness threshold")->capture_default_str();
  metrics_cmd->add_option("--lambda", lambda_arg, "Regression scaling: auto or a positive real")
      ->capture_default_str();

  // fit: matrix -> report
  auto* fit_cmd = app.add_subcommand("fit", "Fit the beta IRT model to a response matrix");
  std::string fit_input, fit_output;
  FitFlags fit_flags;
  fit_cmd->add_option("--input", fit_input, "Matrix CSV")->required();
  fit_cmd->add_option("--output", fit_output, "Fit report JSON to write")->required();
  add_fit_flags(fit_cmd, fit_flags);

  // simulate: spec -> truth + matrix
  auto* sim_cmd = app.add_subcommand("simulate", "Generate ground truth and sampled responses");
  std::string sim_output;
  SimulationSpec spec;
  double negative_fraction = 0.15;
  bool positive_only = false;
  double fixed_a = 0.0;
  bool has_fixed_a = false;
  sim_cmd->add_option("--output", sim_output, "Output directory")->required();
  sim_cmd->add_option("--models", spec.n_models, "Number of predictive models")
      ->capture_default_str();
  sim_cmd->add_option("--individuals", spec.n_individuals, "Number of individuals")
      ->capture_default_str();
  sim_cmd->add_option("--seed", spec.seed, "Simulation seed")->capture_default_str();
  sim_cmd->add_flag("--noiseless", spec.noiseless, "Emit curve means instead of beta draws");
  sim_cmd->add_option("--negative-fraction", negative_fraction,
                      "Fraction of individuals with negative discrimination")
      ->capture_default_str();
  sim_cmd->add_flag("--positive-only", positive_only, "Draw only positive discriminations");
  auto* fixed_a_opt = sim_cmd->add_option("--fixed-a", fixed_a,
                                          "Hold every discrimination at this value");

  // analyze: report (+ matrix) -> summary tables
  auto* analyze_cmd = app.add_subcommand("analyze", "Summaries, special individuals, flatness ranking");
  std::string analyze_report, analyze_matrix, analyze_output;
  std::size_t top_k = 5;
  analyze_cmd->add_option("--input", analyze_report, "Fit report JSON")->required();
  analyze_cmd->add_option("--matrix", analyze_matrix, "Response matrix CSV")->required();
  analyze_cmd->add_option("--output", analyze_output, "Output directory")->required();
  analyze_cmd->add_option("--top-k", top_k, "Number of flattest individuals")
      ->capture_default_str();

  // disentangle: rasch report -> decomposition table
  auto* dis_cmd = app.add_subcommand("disentangle", "Rasch decomposition of unfairness");
  std::string dis_input, dis_output;
  dis_cmd->add_option("--input", dis_input, "Rasch-constrained fit report JSON")->required();
  dis_cmd->add_option("--output", dis_output, "Decomposition CSV to write")->required();

  // curves: report -> curve table
  auto* curves_cmd = app.add_subcommand("curves", "Export item characteristic curve points");
  std::string curves_input, curves_output;
  std::size_t grid = 200;
  curves_cmd->add_option("--input", curves_input, "Fit report JSON")->required();
  curves_cmd->add_option("--output", curves_output, "Curve CSV to write")->required();
  curves_cmd->add_option("--grid", grid, "Grid size")->capture_default_str();

  // pipeline: manifest -> everything
  auto* pipe_cmd = app.add_subcommand("pipeline", "Run the full workflow from a manifest");
  std::string pipe_input, pipe_output;
  pipe_cmd->add_option("--input", pipe_input, "Workspace manifest JSON")->required();
  pipe_cmd->add_option("--output", pipe_output, "Override the manifest's output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() != 0) {
      std::cerr << "error: usage: " << e.what() << "\n";
      return 2;
    }
    return app.exit(e);  // --help and friends
  }
  has_fixed_a = fixed_a_opt->count() > 0;

  if (metrics_cmd->parsed()) {
    MetricConfig config;
    config.task = parse_task(task_name);
    config.metric = parse_metric(metric_name);
    config.epsilon = epsilon;
    config.fixed_lambda = parse_lambda(lambda_arg);
    config.validate();
    const auto records = read_prediction_pairs(metrics_input);
    const auto built = build_response_matrix(records, config);
    write_response_matrix(metrics_output, built.matrix);
    std::cout << "wrote " << metrics_output << " (" << built.matrix.n_models() << "x"
              << built.matrix.n_individuals() << ", clamped " << built.matrix.clamp_count()
              << ")";
    if (config.task == Task::regression) {
      std::cout << " lambda=" << built.lambda << " degenerate=" << built.degenerate_count;
      if (!built.dropped_individuals.empty()) {
        std::cout << " dropped=";
        for (std::size_t k = 0; k < built.dropped_individuals.size(); ++k) {
          if (k > 0) std::cout << "|";
          std::cout << built.dropped_individuals[k];
        }
      }
    }
    std::cout << "\n";
  } else if (fit_cmd->parsed()) {
    const auto matrix = read_response_matrix(fit_input);
    const auto report = fit_beta_irt(matrix, fit_flags.to_config());
    write_fit_report(fit_output, report);
    std::cout << "wrote " << fit_output << " (final_loss=" << report.final_loss
              << ", epochs_run=" << report.epochs_run
              << ", converged=" << (report.converged ? "true" : "false") << ")\n";
  } else if (sim_cmd->parsed()) {
    if (has_fixed_a) {
      spec.discrimination = DiscriminationDistribution::fixed(fixed_a);
    } else if (positive_only) {
      spec.discrimination = DiscriminationDistribution::positive_only();
    } else {
      spec.discrimination = DiscriminationDistribution::mixed(negative_fraction);
    }
    const auto truth = generate_ground_truth(spec);
    const auto matrix = sample_responses(truth, spec);
    std::filesystem::create_directories(sim_output);
    write_parameter_set(std::filesystem::path(sim_output) / "truth.json", truth,
                        matrix.model_ids(), matrix.individual_ids());
    write_response_matrix(std::filesystem::path(sim_output) / "responses.csv", matrix);
    std::cout << "wrote " << sim_output << "/truth.json and " << sim_output
              << "/responses.csv\n";
  } else if (analyze_cmd->parsed()) {
    const auto report = read_fit_report(analyze_report);
    const auto matrix = read_response_matrix(analyze_matrix);
    std::filesystem::create_directories(analyze_output);
    const std::filesystem::path dir(analyze_output);
    write_model_summaries(dir / "models.csv", model_summaries(report, matrix));
    write_individual_summaries(dir / "individuals.csv", individual_summaries(report));
    const auto special = special_individuals(report);
    write_individual_summaries(dir / "special.csv", special);
    write_individual_summaries(dir / "flattest.csv", flattest_individuals(report, top_k));
    std::cout << "wrote " << analyze_output << "/{models,individuals,special,flattest}.csv ("
              << special.size() << " special individuals)\n";
  } else if (dis_cmd->parsed()) {
    const auto report = read_fit_report(dis_input);
    write_disentangle_records(dis_output, disentangle(report));
    std::cout << "wrote " << dis_output << "\n";
  } else if (curves_cmd->parsed()) {
    const auto report = read_fit_report(curves_input);
    export_curves(report, grid, curves_output);
    std::cout << "wrote " << curves_output << "\n";
  } else if (pipe_cmd->parsed()) {
    const auto manifest = read_manifest(pipe_input);
    std::optional<std::filesystem::path> override_dir;
    if (!pipe_output.empty()) override_dir = pipe_output;
    const auto files = run_pipeline(manifest, override_dir);
    for (const auto& f : files) std::cout << "wrote " << f.string() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const fairirt::Error& e) {
    std::cerr << "error: " << fairirt::to_string(e.category()) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 3;
  }
}
