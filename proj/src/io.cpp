#include "fairirt/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unordered_map>

#include <json.hpp>

namespace fairirt {

namespace {

using nlohmann::json;

std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& token, const std::string& where) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc() || res.ptr != end) {
    raise(ErrorCategory::parse, where + ": non-numeric value '" + token + "'");
  }
  return value;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    raise(ErrorCategory::io, "cannot open '" + path.string() + "' for reading");
  }
  return in;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    raise(ErrorCategory::io, "cannot open '" + path.string() + "' for writing");
  }
  return out;
}

void check_label_writable(const std::string& label, const std::filesystem::path& path) {
  if (label.find(',') != std::string::npos || label.find('\n') != std::string::npos) {
    raise(ErrorCategory::input,
          "label '" + label + "' contains a delimiter and cannot be written to " + path.string());
  }
}

json load_json(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    raise(ErrorCategory::parse, "malformed JSON in '" + path.string() + "': " + e.what());
  }
  return j;
}

void check_format_version(const json& j, const std::filesystem::path& path) {
  if (!j.contains("format_version") || !j["format_version"].is_number_integer()) {
    raise(ErrorCategory::parse, "'" + path.string() + "' lacks a format_version field");
  }
  const int version = j["format_version"].get<int>();
  if (version != kFormatVersion) {
    raise(ErrorCategory::parse, "unsupported format_version " + std::to_string(version) +
                                    " in '" + path.string() + "'");
  }
}

json parameters_to_json(const FitParameters& params, std::span<const std::string> model_ids,
                        std::span<const std::string> individual_ids) {
  json models = json::array();
  for (std::size_t i = 0; i < params.abilities.size(); ++i) {
    models.push_back({{"id", i < model_ids.size() ? model_ids[i] : std::to_string(i)},
                      {"ability", params.abilities[i].value()}});
  }
  json individuals = json::array();
  for (std::size_t j = 0; j < params.items.size(); ++j) {
    individuals.push_back(
        {{"id", j < individual_ids.size() ? individual_ids[j] : std::to_string(j)},
         {"difficulty", params.items[j].difficulty()},
         {"discrimination", params.items[j].discrimination()}});
  }
  return json{{"rasch", params.rasch_constrained},
              {"models", std::move(models)},
              {"individuals", std::move(individuals)}};
}

struct ParsedParameters {
  FitParameters params;
  std::vector<std::string> model_ids;
  std::vector<std::string> individual_ids;
};

ParsedParameters parameters_from_json(const json& j, const std::filesystem::path& path) {
  if (!j.contains("models") || !j.contains("individuals")) {
    raise(ErrorCategory::parse, "'" + path.string() + "' lacks models/individuals");
  }
  ParsedParameters out;
  out.params.rasch_constrained = j.value("rasch", false);
  try {
    for (const auto& mj : j.at("models")) {
      out.model_ids.push_back(mj.at("id").get<std::string>());
      out.params.abilities.emplace_back(mj.at("ability").get<double>());
    }
    for (const auto& ij : j.at("individuals")) {
      out.individual_ids.push_back(ij.at("id").get<std::string>());
      out.params.items.emplace_back(ij.at("difficulty").get<double>(),
                                    ij.at("discrimination").get<double>());
    }
  } catch (const json::exception& e) {
    raise(ErrorCategory::parse, "malformed parameter set in '" + path.string() + "': " + e.what());
  }
  out.params.validate();
  return out;
}

json fit_config_to_json(const FitConfig& config) {
  return json{{"epochs", config.epochs},
              {"learning_rate", config.learning_rate},
              {"seed", config.seed},
              {"rasch", config.rasch},
              {"convergence_tol", config.convergence_tol},
              {"convergence_window", config.convergence_window},
              {"init_jitter", config.init_jitter},
              {"scale_anchor_weight", config.scale_anchor_weight},
              {"proximal_weight", config.proximal_weight},
              {"reflect_interval", config.reflect_interval},
              {"reflect_margin", config.reflect_margin},
              {"max_step", config.max_step}};
}

FitConfig fit_config_from_json(const json& j) {
  FitConfig config;
  config.epochs = j.value("epochs", config.epochs);
  config.learning_rate = j.value("learning_rate", config.learning_rate);
  config.seed = j.value("seed", config.seed);
  config.rasch = j.value("rasch", config.rasch);
  config.convergence_tol = j.value("convergence_tol", config.convergence_tol);
  config.convergence_window = j.value("convergence_window", config.convergence_window);
  config.init_jitter = j.value("init_jitter", config.init_jitter);
  config.scale_anchor_weight = j.value("scale_anchor_weight", config.scale_anchor_weight);
  config.proximal_weight = j.value("proximal_weight", config.proximal_weight);
  config.reflect_interval = j.value("reflect_interval", config.reflect_interval);
  config.reflect_margin = j.value("reflect_margin", config.reflect_margin);
  config.max_step = j.value("max_step", config.max_step);
  config.validate();
  return config;
}

}  // namespace

std::vector<PredictionPairRecord> read_prediction_pairs(const std::filesystem::path& path) {
  auto in = open_for_read(path);

  std::string line;
  if (!std::getline(in, line)) {
    raise(ErrorCategory::parse, "'" + path.string() + "' is empty");
  }
  const auto header = split_csv(strip_cr(line));
  const std::vector<std::string> required{"model_id", "individual_id", "value_original",
                                          "value_flipped"};
  bool has_label = false;
  if (header.size() == 5 && header[4] == "label") {
    has_label = true;
  } else if (header.size() != 4) {
    raise(ErrorCategory::parse,
          "'" + path.string() +
              "': header must be model_id,individual_id,value_original,value_flipped[,label]");
  }
  for (std::size_t k = 0; k < required.size(); ++k) {
    if (header[k] != required[k]) {
      raise(ErrorCategory::parse,
            "'" + path.string() + "': missing required column '" + required[k] + "'");
    }
  }

  std::vector<PredictionPairRecord> records;
  std::vector<std::string> problems;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    const std::string where = "line " + std::to_string(line_no);
    if (fields.size() != header.size()) {
      problems.push_back(where + ": expected " + std::to_string(header.size()) +
                         " fields, got " + std::to_string(fields.size()));
      continue;
    }
    try {
      PredictionPairRecord r;
      r.model_id = fields[0];
      r.individual_id = fields[1];
      r.value_original = parse_double(fields[2], where);
      r.value_flipped = parse_double(fields[3], where);
      if (has_label && !fields[4].empty()) {
        r.label = parse_double(fields[4], where);
      }
      records.push_back(std::move(r));
    } catch (const Error& e) {
      problems.push_back(e.what());
    }
  }
  if (!problems.empty()) {
    std::string joined;
    for (std::size_t k = 0; k < problems.size(); ++k) {
      if (k > 0) joined += "; ";
      joined += problems[k];
    }
    raise(ErrorCategory::parse, "'" + path.string() + "': " + joined);
  }
  if (records.empty()) {
    raise(ErrorCategory::parse, "'" + path.string() + "': no records");
  }

  // Duplicate cells are caught here so the error carries the file context.
  std::unordered_map<std::string, std::size_t> seen;
  for (const auto& r : records) {
    const std::string key = r.model_id + "\x1f" + r.individual_id;
    if (!seen.emplace(key, 1).second) {
      raise(ErrorCategory::parse, "'" + path.string() + "': duplicate pair (" + r.model_id +
                                      ", " + r.individual_id + ")");
    }
  }
  return records;
}

void write_prediction_pairs(const std::filesystem::path& path,
                            std::span<const PredictionPairRecord> records) {
  auto out = open_for_write(path);
  const bool any_label =
      std::any_of(records.begin(), records.end(), [](const auto& r) { return r.label.has_value(); });
  out << "model_id,individual_id,value_original,value_flipped";
  if (any_label) out << ",label";
  out << "\n";
  for (const auto& r : records) {
    check_label_writable(r.model_id, path);
    check_label_writable(r.individual_id, path);
    out << r.model_id << ',' << r.individual_id << ',' << format_double(r.value_original) << ','
        << format_double(r.value_flipped);
    if (any_label) {
      out << ',';
      if (r.label.has_value()) out << format_double(*r.label);
    }
    out << "\n";
  }
}

ResponseMatrix read_response_matrix(const std::filesystem::path& path) {
  auto in = open_for_read(path);

  std::string line;
  if (!std::getline(in, line)) {
    raise(ErrorCategory::parse, "'" + path.string() + "' is empty");
  }
  auto header = split_csv(strip_cr(line));
  if (header.size() < 3) {
    raise(ErrorCategory::parse,
          "'" + path.string() + "': header must contain at least two individual labels");
  }
  std::vector<std::string> individual_ids(header.begin() + 1, header.end());

  std::vector<std::string> model_ids;
  std::vector<double> values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    const std::string where = "line " + std::to_string(line_no);
    if (fields.size() != individual_ids.size() + 1) {
      raise(ErrorCategory::parse, "'" + path.string() + "' " + where + ": ragged row (expected " +
                                      std::to_string(individual_ids.size() + 1) + " fields, got " +
                                      std::to_string(fields.size()) + ")");
    }
    model_ids.push_back(fields[0]);
    for (std::size_t k = 1; k < fields.size(); ++k) {
      double v = parse_double(fields[k], "'" + path.string() + "' " + where);
      if (v < -1e-9 || v > 1.0 + 1e-9) {
        raise(ErrorCategory::input, "'" + path.string() + "' " + where + ": value " +
                                        format_double(v) + " outside [0,1]");
      }
      values.push_back(std::clamp(v, 0.0, 1.0));
    }
  }
  return ResponseMatrix(std::move(model_ids), std::move(individual_ids), std::move(values));
}

void write_response_matrix(const std::filesystem::path& path, const ResponseMatrix& matrix) {
  auto out = open_for_write(path);
  out << "model_id";
  for (const auto& id : matrix.individual_ids()) {
    check_label_writable(id, path);
    out << ',' << id;
  }
  out << "\n";
  for (std::size_t i = 0; i < matrix.n_models(); ++i) {
    check_label_writable(matrix.model_ids()[i], path);
    out << matrix.model_ids()[i];
    for (std::size_t j = 0; j < matrix.n_individuals(); ++j) {
      out << ',' << format_double(matrix.at(i, j));
    }
    out << "\n";
  }
}

void write_model_summaries(const std::filesystem::path& path,
                           std::span<const ModelSummary> summaries) {
  auto out = open_for_write(path);
  out << "model_id,ability,mean_fitted_response\n";
  for (const auto& s : summaries) {
    check_label_writable(s.model_id, path);
    out << s.model_id << ',' << format_double(s.ability) << ','
        << format_double(s.mean_fitted_response) << "\n";
  }
}

void write_individual_summaries(const std::filesystem::path& path,
                                std::span<const IndividualSummary> summaries) {
  auto out = open_for_write(path);
  out << "individual_id,difficulty,discrimination,flatness,special\n";
  for (const auto& s : summaries) {
    check_label_writable(s.individual_id, path);
    out << s.individual_id << ',' << format_double(s.difficulty) << ','
        << format_double(s.discrimination) << ',' << format_double(s.flatness) << ','
        << (s.special ? "true" : "false") << "\n";
  }
}

void write_disentangle_records(const std::filesystem::path& path,
                               std::span<const DisentangleRecord> records) {
  auto out = open_for_write(path);
  out << "model_id,individual_id,log_delta,log_theta,g_value,flag\n";
  for (const auto& r : records) {
    check_label_writable(r.model_id, path);
    check_label_writable(r.individual_id, path);
    out << r.model_id << ',' << r.individual_id << ',' << format_double(r.log_delta) << ','
        << format_double(r.log_theta) << ',' << format_double(r.g_value) << ','
        << (r.flag == FairnessFlag::fair ? "fair" : "unfair") << "\n";
  }
}

void export_curves(const FitReport& report, std::size_t grid_size,
                   const std::filesystem::path& path) {
  double lo = 1.0;
  double hi = 0.0;
  for (const auto& theta : report.parameters.abilities) {
    lo = std::min(lo, theta.value());
    hi = std::max(hi, theta.value());
  }
  auto out = open_for_write(path);
  out << "# fitted_ability_min=" << format_double(lo) << "\n";
  out << "# fitted_ability_max=" << format_double(hi) << "\n";
  out << "individual_id,theta,response\n";
  for (std::size_t j = 0; j < report.parameters.items.size(); ++j) {
    const std::string id =
        j < report.individual_ids.size() ? report.individual_ids[j] : std::to_string(j);
    check_label_writable(id, path);
    for (const auto& [theta, response] : tabulate_icc(report.parameters.items[j], grid_size)) {
      out << id << ',' << format_double(theta) << ',' << format_double(response) << "\n";
    }
  }
}

void write_fit_report(const std::filesystem::path& path, const FitReport& report) {
  json j{{"format_version", kFormatVersion},
         {"kind", "fit_report"},
         {"final_loss", report.final_loss},
         {"converged", report.converged},
         {"epochs_run", report.epochs_run},
         {"clamp_count", report.clamp_count},
         {"config", fit_config_to_json(report.config)},
         {"parameters", parameters_to_json(report.parameters, report.model_ids,
                                           report.individual_ids)},
         {"loss_trace", report.loss_trace}};
  auto out = open_for_write(path);
  out << j.dump(2) << "\n";
}

FitReport read_fit_report(const std::filesystem::path& path) {
  const json j = load_json(path);
  check_format_version(j, path);
  if (j.value("kind", "") != "fit_report") {
    raise(ErrorCategory::parse, "'" + path.string() + "' is not a fit report");
  }
  FitReport report;
  try {
    auto parsed = parameters_from_json(j.at("parameters"), path);
    report.parameters = std::move(parsed.params);
    report.model_ids = std::move(parsed.model_ids);
    report.individual_ids = std::move(parsed.individual_ids);
    report.final_loss = j.at("final_loss").get<double>();
    report.converged = j.at("converged").get<bool>();
    report.epochs_run = j.at("epochs_run").get<std::size_t>();
    report.clamp_count = j.at("clamp_count").get<std::size_t>();
    report.config = fit_config_from_json(j.at("config"));
    report.loss_trace = j.at("loss_trace").get<std::vector<double>>();
  } catch (const json::exception& e) {
    raise(ErrorCategory::parse, "truncated or malformed fit report in '" + path.string() +
                                    "': " + e.what());
  }
  return report;
}

void write_parameter_set(const std::filesystem::path& path, const FitParameters& params,
                         std::span<const std::string> model_ids,
                         std::span<const std::string> individual_ids) {
  json j = parameters_to_json(params, model_ids, individual_ids);
  j["format_version"] = kFormatVersion;
  j["kind"] = "parameter_set";
  auto out = open_for_write(path);
  out << j.dump(2) << "\n";
}

ParameterSetFile read_parameter_set(const std::filesystem::path& path) {
  const json j = load_json(path);
  check_format_version(j, path);
  if (j.value("kind", "") != "parameter_set") {
    raise(ErrorCategory::parse, "'" + path.string() + "' is not a parameter set");
  }
  auto parsed = parameters_from_json(j, path);
  return ParameterSetFile{std::move(parsed.params), std::move(parsed.model_ids),
                          std::move(parsed.individual_ids)};
}

WorkspaceManifest read_manifest(const std::filesystem::path& path) {
  const json j = load_json(path);
  check_format_version(j, path);

  const auto base = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  auto resolve = [&](const std::string& p) {
    std::filesystem::path fp(p);
    return fp.is_absolute() ? fp : base / fp;
  };

  WorkspaceManifest manifest;
  try {
    manifest.output_dir = resolve(j.value("output_dir", "out"));

    const json& src = j.at("source");
    const std::string kind = src.at("kind").get<std::string>();
    if (kind == "simulate") {
      manifest.source = WorkspaceManifest::Source::simulate;
      SimulationSpec& spec = manifest.simulation;
      spec.n_models = src.value("n_models", spec.n_models);
      spec.n_individuals = src.value("n_individuals", spec.n_individuals);
      spec.seed = src.value("seed", spec.seed);
      spec.noiseless = src.value("noiseless", spec.noiseless);
      if (src.contains("ability_range")) {
        spec.ability_range = {src["ability_range"][0].get<double>(),
                              src["ability_range"][1].get<double>()};
      }
      if (src.contains("difficulty_range")) {
        spec.difficulty_range = {src["difficulty_range"][0].get<double>(),
                                 src["difficulty_range"][1].get<double>()};
      }
      const std::string dist = src.value("discrimination", "mixed");
      if (dist == "mixed") {
        spec.discrimination = DiscriminationDistribution::mixed(
            src.value("negative_fraction", 0.15));
      } else if (dist == "positive_only") {
        spec.discrimination = DiscriminationDistribution::positive_only();
      } else if (dist == "fixed") {
        spec.discrimination =
            DiscriminationDistribution::fixed(src.value("fixed_value", 1.0));
      } else {
        raise(ErrorCategory::parse, "unknown discrimination distribution '" + dist + "'");
      }
      spec.validate();
    } else if (kind == "pairs" || kind == "matrix") {
      manifest.source = kind == "pairs" ? WorkspaceManifest::Source::pairs
                                        : WorkspaceManifest::Source::matrix;
      manifest.input_path = resolve(src.at("path").get<std::string>());
      if (kind == "pairs") {
        MetricConfig& mc = manifest.metric_config;
        const std::string task = src.value("task", "classification");
        if (task == "classification") {
          mc.task = Task::classification;
        } else if (task == "regression") {
          mc.task = Task::regression;
        } else {
          raise(ErrorCategory::parse, "unknown task '" + task + "'");
        }
        const std::string metric = src.value("metric", "sts");
        if (metric == "sts") {
          mc.metric = Metric::sts;
        } else if (metric == "es") {
          mc.metric = Metric::es;
        } else {
          raise(ErrorCategory::parse, "unknown metric '" + metric + "'");
        }
        mc.epsilon = src.value("epsilon", 0.5);
        if (src.contains("lambda") && src["lambda"].is_number()) {
          mc.fixed_lambda = src["lambda"].get<double>();
        }
        mc.validate();
      }
    } else {
      raise(ErrorCategory::parse, "unknown source kind '" + kind + "'");
    }

    if (j.contains("fit")) manifest.fit_config = fit_config_from_json(j["fit"]);
    if (j.contains("analysis")) {
      const json& aj = j["analysis"];
      manifest.analysis.top_k = aj.value("top_k", manifest.analysis.top_k);
      manifest.analysis.grid_size = aj.value("grid", manifest.analysis.grid_size);
      manifest.analysis.epsilon = aj.value("epsilon", manifest.analysis.epsilon);
    }
  } catch (const json::exception& e) {
    raise(ErrorCategory::parse, "malformed manifest '" + path.string() + "': " + e.what());
  }
  return manifest;
}

std::vector<std::filesystem::path> run_pipeline(
    const WorkspaceManifest& manifest,
    const std::optional<std::filesystem::path>& output_dir_override) {
  const auto out_dir = output_dir_override.value_or(manifest.output_dir);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    raise(ErrorCategory::io, "cannot create output directory '" + out_dir.string() + "'");
  }

  std::vector<std::filesystem::path> written;
  auto track = [&](std::filesystem::path p) {
    written.push_back(std::move(p));
    return written.back();
  };

  json summary;
  summary["format_version"] = kFormatVersion;
  summary["kind"] = "pipeline_summary";

  // Stage 1: obtain the response matrix.
  std::optional<ResponseMatrix> matrix;
  switch (manifest.source) {
    case WorkspaceManifest::Source::simulate: {
      const FitParameters truth = generate_ground_truth(manifest.simulation);
      matrix = sample_responses(truth, manifest.simulation);
      write_parameter_set(track(out_dir / "truth.json"), truth, matrix->model_ids(),
                          matrix->individual_ids());
      summary["source"] = "simulate";
      break;
    }
    case WorkspaceManifest::Source::pairs: {
      const auto records = read_prediction_pairs(manifest.input_path);
      auto built = build_response_matrix(records, manifest.metric_config);
      summary["source"] = "pairs";
      summary["lambda"] = built.lambda;
      summary["degenerate_count"] = built.degenerate_count;
      summary["dropped_individuals"] = built.dropped_individuals;
      matrix = std::move(built.matrix);
      break;
    }
    case WorkspaceManifest::Source::matrix: {
      matrix = read_response_matrix(manifest.input_path);
      summary["source"] = "matrix";
      break;
    }
  }
  write_response_matrix(track(out_dir / "responses.csv"), *matrix);
  summary["n_models"] = matrix->n_models();
  summary["n_individuals"] = matrix->n_individuals();
  summary["clamp_count"] = matrix->clamp_count();

  // Stage 2: the unconstrained and the Rasch-constrained fits.
  FitConfig full_config = manifest.fit_config;
  full_config.rasch = false;
  const FitReport full = fit_beta_irt(*matrix, full_config);
  write_fit_report(track(out_dir / "fit_report.json"), full);

  FitConfig rasch_config = manifest.fit_config;
  rasch_config.rasch = true;
  const FitReport rasch = fit_beta_irt(*matrix, rasch_config);
  write_fit_report(track(out_dir / "rasch_report.json"), rasch);

  summary["final_loss"] = full.final_loss;
  summary["rasch_final_loss"] = rasch.final_loss;
  summary["converged"] = full.converged;
  summary["rasch_converged"] = rasch.converged;

  // Stage 3: analyses of the unconstrained fit.
  const auto models = model_summaries(full, *matrix);
  write_model_summaries(track(out_dir / "models.csv"), models);
  const auto individuals = individual_summaries(full);
  write_individual_summaries(track(out_dir / "individuals.csv"), individuals);
  const auto special = special_individuals(full);
  write_individual_summaries(track(out_dir / "special.csv"), special);
  const std::size_t top_k = std::min(manifest.analysis.top_k, matrix->n_individuals());
  const auto flattest = flattest_individuals(full, std::max<std::size_t>(top_k, 1));
  write_individual_summaries(track(out_dir / "flattest.csv"), flattest);
  export_curves(full, manifest.analysis.grid_size, track(out_dir / "curves.csv"));

  // Stage 4: the Rasch decomposition.
  const auto records = disentangle(rasch);
  write_disentangle_records(track(out_dir / "disentangle.csv"), records);

  std::size_t unfair_cells = 0;
  for (std::size_t i = 0; i < matrix->n_models(); ++i) {
    for (std::size_t j = 0; j < matrix->n_individuals(); ++j) {
      if (fairness_flag(matrix->at(i, j), manifest.analysis.epsilon) == FairnessFlag::unfair) {
        ++unfair_cells;
      }
    }
  }
  summary["epsilon"] = manifest.analysis.epsilon;
  summary["unfair_cells"] = unfair_cells;
  summary["special_count"] = special.size();

  json files = json::array();
  for (const auto& p : written) files.push_back(p.filename().string());
  files.push_back("pipeline_summary.json");
  summary["files"] = std::move(files);

  auto out = open_for_write(out_dir / "pipeline_summary.json");
  out << summary.dump(2) << "\n";
  written.push_back(out_dir / "pipeline_summary.json");
  return written;
}

}  // namespace fairirt
