#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fairirt/analysis.hpp"
#include "fairirt/fit.hpp"
#include "fairirt/metrics.hpp"
#include "fairirt/simulate.hpp"

namespace fairirt {

inline constexpr int kFormatVersion = 1;

// --- delimited text -------------------------------------------------------

// Header: model_id,individual_id,value_original,value_flipped[,label].
std::vector<PredictionPairRecord> read_prediction_pairs(const std::filesystem::path& path);
void write_prediction_pairs(const std::filesystem::path& path,
                            std::span<const PredictionPairRecord> records);

// First row: corner cell then individual labels; first column: model labels.
// Values outside [0,1] by more than 1e-9 are errors; in-range values are
// clamped and counted on read.
ResponseMatrix read_response_matrix(const std::filesystem::path& path);
void write_response_matrix(const std::filesystem::path& path, const ResponseMatrix& matrix);

void write_model_summaries(const std::filesystem::path& path,
                           std::span<const ModelSummary> summaries);
void write_individual_summaries(const std::filesystem::path& path,
                                std::span<const IndividualSummary> summaries);
void write_disentangle_records(const std::filesystem::path& path,
                               std::span<const DisentangleRecord> records);

// Long-format curve table (individual_id, theta, response) with the fitted
// ability range in leading comment lines.
void export_curves(const FitReport& report, std::size_t grid_size,
                   const std::filesystem::path& path);

// --- structured reports ----------------------------------------------------

void write_fit_report(const std::filesystem::path& path, const FitReport& report);
FitReport read_fit_report(const std::filesystem::path& path);

// Bare parameter sets (e.g. simulated ground truth).
void write_parameter_set(const std::filesystem::path& path, const FitParameters& params,
                         std::span<const std::string> model_ids,
                         std::span<const std::string> individual_ids);
struct ParameterSetFile {
  FitParameters params;
  std::vector<std::string> model_ids;
  std::vector<std::string> individual_ids;
};
ParameterSetFile read_parameter_set(const std::filesystem::path& path);

// --- pipeline ---------------------------------------------------------------

struct AnalysisOptions {
  std::size_t top_k = 5;
  std::size_t grid_size = 200;
  double epsilon = 0.5;
};

// Where the pipeline's response matrix comes from: a simulation, a prediction
// pair file, or a ready-made matrix file.
struct WorkspaceManifest {
  int format_version = kFormatVersion;
  std::filesystem::path output_dir;

  enum class Source { simulate, pairs, matrix };
  Source source = Source::simulate;
  SimulationSpec simulation;          // source == simulate
  std::filesystem::path input_path;   // source == pairs | matrix
  MetricConfig metric_config;         // source == pairs

  FitConfig fit_config;
  AnalysisOptions analysis;
};

WorkspaceManifest read_manifest(const std::filesystem::path& path);

// Runs the whole workflow (matrix acquisition, full fit, Rasch fit, analyses,
// decomposition, curve export) and returns the list of files written.
std::vector<std::filesystem::path> run_pipeline(const WorkspaceManifest& manifest,
                                                const std::optional<std::filesystem::path>&
                                                    output_dir_override = std::nullopt);

}  // namespace fairirt
