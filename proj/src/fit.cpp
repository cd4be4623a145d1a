#include "fairirt/fit.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <boost/math/special_functions/digamma.hpp>

namespace fairirt {

namespace {

constexpr double kInitWinsor = 1e-3;      // logit clipping for the starting-value regressions
constexpr double kAbilityLogitCap = 3.8918202981106265;  // logit(0.98)
constexpr double kDifficultyLogitCap = 3.0;
constexpr double kDiscriminationCap = 4.0;
constexpr double kParamFloor = 1e-9;      // keeps returned probabilities off the boundary

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double logit(double p) { return std::log(p / (1.0 - p)); }

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Per-cell log-likelihood and its partials with respect to the surrogate
// coordinates (logit theta, logit delta, raw a).
struct CellGrad {
  double ll;
  double d_t;
  double d_d;
  double d_a;
};

CellGrad cell_loglik(double response, double t, double d, double a) {
  const double theta = sigmoid(t);
  const double delta = sigmoid(d);
  const double alpha = std::pow(theta / delta, a);
  const double beta = std::pow((1.0 - theta) / (1.0 - delta), a);

  const double log_r = std::log(response);
  const double log_1mr = std::log1p(-response);
  const double ll = (alpha - 1.0) * log_r + (beta - 1.0) * log_1mr -
                    (std::lgamma(alpha) + std::lgamma(beta) - std::lgamma(alpha + beta));

  const double psi_ab = boost::math::digamma(alpha + beta);
  const double dll_dalpha = log_r - boost::math::digamma(alpha) + psi_ab;
  const double dll_dbeta = log_1mr - boost::math::digamma(beta) + psi_ab;

  // dalpha/dtheta = a*alpha/theta, dbeta/dtheta = -a*beta/(1-theta); the
  // sigmoid link contributes theta*(1-theta) (and likewise for delta).
  const double d_t = (dll_dalpha * a * alpha / theta - dll_dbeta * a * beta / (1.0 - theta)) *
                     theta * (1.0 - theta);
  const double d_d = (-dll_dalpha * a * alpha / delta + dll_dbeta * a * beta / (1.0 - delta)) *
                     delta * (1.0 - delta);
  const double d_a = dll_dalpha * alpha * std::log(theta / delta) +
                     dll_dbeta * beta * std::log((1.0 - theta) / (1.0 - delta));
  return {ll, d_t, d_d, d_a};
}

[[noreturn]] void raise_bad_cell(const ResponseMatrix& matrix, const SurrogateState& s,
                                 std::size_t epoch) {
  for (std::size_t i = 0; i < matrix.n_models(); ++i) {
    for (std::size_t j = 0; j < matrix.n_individuals(); ++j) {
      const CellGrad g = cell_loglik(matrix.at(i, j), s.ability_logit[i],
                                     s.difficulty_logit[j], s.discrimination[j]);
      if (!std::isfinite(g.ll) || !std::isfinite(g.d_t) || !std::isfinite(g.d_d) ||
          !std::isfinite(g.d_a)) {
        raise(ErrorCategory::numeric,
              "non-finite loss or gradient at epoch " + std::to_string(epoch) + ", cell (" +
                  matrix.model_ids()[i] + ", " + matrix.individual_ids()[j] + ")");
      }
    }
  }
  raise(ErrorCategory::numeric,
        "non-finite loss at epoch " + std::to_string(epoch));
}

// Least-squares starting values on the logit scale: row means of the response
// logits act as provisional ability scores, and each item's slope/location is
// read off a per-column regression against them. Responses are winsorized so
// clamped cells do not dominate the regressions.
struct StartingPoint {
  std::vector<double> t;
  std::vector<double> d;
  std::vector<double> a;
};

StartingPoint least_squares_start(const ResponseMatrix& matrix) {
  const std::size_t n = matrix.n_models();
  const std::size_t m = matrix.n_individuals();

  std::vector<double> z(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double p = std::clamp(matrix.at(i, j), kInitWinsor, 1.0 - kInitWinsor);
      z[i * m + j] = logit(p);
    }
  }

  StartingPoint s;
  s.t.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) sum += z[i * m + j];
    s.t[i] = std::clamp(sum / static_cast<double>(m), -kAbilityLogitCap, kAbilityLogitCap);
  }

  double x_mean = 0.0;
  for (double v : s.t) x_mean += v;
  x_mean /= static_cast<double>(n);
  double denom = 0.0;
  for (double v : s.t) denom += (v - x_mean) * (v - x_mean);

  s.d.resize(m);
  s.a.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    double z_mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) z_mean += z[i * m + j];
    z_mean /= static_cast<double>(n);

    if (denom < 1e-9) {
      // All rows look alike; fall back to unit slope and level matching.
      s.a[j] = 1.0;
      s.d[j] = std::clamp(x_mean - z_mean, -kDifficultyLogitCap, kDifficultyLogitCap);
      continue;
    }
    double cov = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      cov += (s.t[i] - x_mean) * (z[i * m + j] - z_mean);
    }
    const double slope = cov / denom;
    const double intercept = z_mean - slope * x_mean;
    if (std::abs(slope) < 1e-3) {
      s.a[j] = slope == 0.0 ? 1e-3 : std::copysign(1e-3, slope);
      s.d[j] = 0.0;
    } else {
      s.a[j] = std::clamp(slope, -kDiscriminationCap, kDiscriminationCap);
      s.d[j] = std::clamp(-intercept / slope, -kDifficultyLogitCap, kDifficultyLogitCap);
    }
  }
  return s;
}

StartingPoint rasch_start(const ResponseMatrix& matrix) {
  const std::size_t n = matrix.n_models();
  const std::size_t m = matrix.n_individuals();
  StartingPoint s;
  s.t.resize(n);
  s.d.resize(m);
  s.a.assign(m, 1.0);

  std::vector<double> col_mean(m, 0.0);
  double x_mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double p = std::clamp(matrix.at(i, j), kInitWinsor, 1.0 - kInitWinsor);
      const double zz = logit(p);
      sum += zz;
      col_mean[j] += zz;
    }
    s.t[i] = std::clamp(sum / static_cast<double>(m), -kAbilityLogitCap, kAbilityLogitCap);
    x_mean += s.t[i];
  }
  x_mean /= static_cast<double>(n);
  for (std::size_t j = 0; j < m; ++j) {
    s.d[j] = std::clamp(x_mean - col_mean[j] / static_cast<double>(n), -kDifficultyLogitCap,
                        kDifficultyLogitCap);
  }
  return s;
}

double column_loglik(const ResponseMatrix& matrix, const std::vector<double>& t, double d,
                     double a, std::size_t j) {
  double sum = 0.0;
  for (std::size_t i = 0; i < matrix.n_models(); ++i) {
    sum += cell_loglik(matrix.at(i, j), t[i], d, a).ll;
  }
  return sum;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

void FitConfig::validate() const {
  if (epochs < 1) raise(ErrorCategory::input, "epochs must be at least 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    raise(ErrorCategory::input, "learning rate must be a positive real");
  }
  if (convergence_tol < 0.0) raise(ErrorCategory::input, "convergence tolerance must be >= 0");
  if (init_jitter < 0.0) raise(ErrorCategory::input, "init jitter must be >= 0");
  if (scale_anchor_weight < 0.0 || proximal_weight < 0.0) {
    raise(ErrorCategory::input, "penalty weights must be >= 0");
  }
  if (!(max_step > 0.0)) raise(ErrorCategory::input, "max step must be positive");
}

double surrogate_loss(const ResponseMatrix& matrix, const SurrogateState& state) {
  const std::size_t n = matrix.n_models();
  const std::size_t m = matrix.n_individuals();
  if (state.ability_logit.size() != n || state.difficulty_logit.size() != m ||
      state.discrimination.size() != m) {
    raise(ErrorCategory::dimension, "surrogate state does not match the matrix");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      sum += cell_loglik(matrix.at(i, j), state.ability_logit[i], state.difficulty_logit[j],
                         state.discrimination[j])
                 .ll;
    }
  }
  return -sum / static_cast<double>(n * m);
}

SurrogateState surrogate_gradient(const ResponseMatrix& matrix, const SurrogateState& state) {
  const std::size_t n = matrix.n_models();
  const std::size_t m = matrix.n_individuals();
  if (state.ability_logit.size() != n || state.difficulty_logit.size() != m ||
      state.discrimination.size() != m) {
    raise(ErrorCategory::dimension, "surrogate state does not match the matrix");
  }
  SurrogateState g;
  g.ability_logit.assign(n, 0.0);
  g.difficulty_logit.assign(m, 0.0);
  g.discrimination.assign(m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const CellGrad c = cell_loglik(matrix.at(i, j), state.ability_logit[i],
                                     state.difficulty_logit[j], state.discrimination[j]);
      g.ability_logit[i] -= c.d_t;
      g.difficulty_logit[j] -= c.d_d;
      g.discrimination[j] -= c.d_a;
    }
  }
  const double scale = 1.0 / static_cast<double>(n * m);
  for (double& v : g.ability_logit) v *= scale;
  for (double& v : g.difficulty_logit) v *= scale;
  for (double& v : g.discrimination) v *= scale;
  return g;
}

double negative_loss(const ResponseMatrix& matrix, const FitParameters& params) {
  const std::size_t n = matrix.n_models();
  const std::size_t m = matrix.n_individuals();
  if (params.abilities.size() != n || params.items.size() != m) {
    raise(ErrorCategory::dimension, "parameter dimensions do not match the matrix");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      sum += beta_log_density(matrix.at(i, j), beta_shapes(params.abilities[i], params.items[j]));
    }
  }
  return -sum / static_cast<double>(n * m);
}

DenseMatrix predicted_matrix(const FitParameters& params, std::size_t n_models,
                             std::size_t n_individuals) {
  if (params.abilities.size() != n_models || params.items.size() != n_individuals) {
    raise(ErrorCategory::dimension, "parameter dimensions do not match the requested shape");
  }
  DenseMatrix out;
  out.rows = n_models;
  out.cols = n_individuals;
  out.values.resize(n_models * n_individuals);
  for (std::size_t i = 0; i < n_models; ++i) {
    for (std::size_t j = 0; j < n_individuals; ++j) {
      out.values[i * n_individuals + j] = beta_icc(params.abilities[i], params.items[j]);
    }
  }
  return out;
}

FitReport fit_beta_irt(const ResponseMatrix& matrix, const FitConfig& config) {
  config.validate();
  const std::size_t n = matrix.n_models();
  const std::size_t m = matrix.n_individuals();
  const double cells = static_cast<double>(n * m);

  StartingPoint start = config.rasch ? rasch_start(matrix) : least_squares_start(matrix);
  std::mt19937_64 rng(config.seed);
  for (double& v : start.t) v += config.init_jitter * (2.0 * uniform01(rng) - 1.0);
  for (double& v : start.d) v += config.init_jitter * (2.0 * uniform01(rng) - 1.0);

  std::vector<double> t = start.t;
  std::vector<double> d = start.d;
  std::vector<double> a = start.a;
  std::vector<double> t0 = start.t;
  std::vector<double> d0 = start.d;
  std::vector<double> a0 = start.a;

  const double lr = config.learning_rate;
  const double rho = config.proximal_weight;
  const double lam = config.scale_anchor_weight;

  // Objective: mean negative log-likelihood plus the scale anchor and the
  // proximal pull toward the starting point. Updates are the objective's
  // gradient scaled per coordinate by the number of cells that touch it.
  auto objective = [&](const std::vector<double>& tt, const std::vector<double>& dd,
                       const std::vector<double>& aa, double nll_mean) {
    double pen = 0.0;
    for (std::size_t i = 0; i < n; ++i) pen += rho / (2.0 * n) * (tt[i] - t0[i]) * (tt[i] - t0[i]);
    for (std::size_t j = 0; j < m; ++j) {
      pen += rho / (2.0 * m) * (dd[j] - d0[j]) * (dd[j] - d0[j]);
      if (!config.rasch) {
        pen += rho / (2.0 * m) * (aa[j] - a0[j]) * (aa[j] - a0[j]);
        const double mag = std::abs(aa[j]) - 1.0;
        pen += lam / (2.0 * cells) * mag * mag;
      }
    }
    return nll_mean + pen;
  };

  std::vector<double> grad_t(n), grad_d(m), grad_a(m);
  std::vector<double> trace;
  trace.reserve(config.epochs);
  bool converged = false;

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    if (!config.rasch && config.reflect_interval > 0 && epoch > 0 &&
        epoch % config.reflect_interval == 0) {
      // Jump to the per-item reflected twin (1-delta, -a) when it clearly
      // fits the column better; the gradient flow cannot cross a = 0 itself.
      for (std::size_t j = 0; j < m; ++j) {
        const double cur = column_loglik(matrix, t, d[j], a[j], j);
        const double ref = column_loglik(matrix, t, -d[j], -a[j], j);
        if (ref > cur + config.reflect_margin) {
          d[j] = -d[j];
          a[j] = -a[j];
          d0[j] = -d0[j];
          a0[j] = -a0[j];
        }
      }
    }

    double ll_sum = 0.0;
    std::fill(grad_t.begin(), grad_t.end(), 0.0);
    std::fill(grad_d.begin(), grad_d.end(), 0.0);
    std::fill(grad_a.begin(), grad_a.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        const CellGrad c = cell_loglik(matrix.at(i, j), t[i], d[j], a[j]);
        ll_sum += c.ll;
        grad_t[i] -= c.d_t;
        grad_d[j] -= c.d_d;
        grad_a[j] -= c.d_a;
      }
    }

    const double loss = objective(t, d, a, -ll_sum / cells);
    if (!std::isfinite(loss)) {
      SurrogateState s{t, d, a};
      raise_bad_cell(matrix, s, epoch);
    }
    trace.push_back(loss);

    if (epoch >= config.convergence_window &&
        trace[epoch - config.convergence_window] - trace[epoch] < config.convergence_tol) {
      converged = true;
      break;
    }

    for (std::size_t i = 0; i < n; ++i) {
      const double step =
          lr * (grad_t[i] / static_cast<double>(m) + rho * (t[i] - t0[i]));
      if (!std::isfinite(step)) raise_bad_cell(matrix, SurrogateState{t, d, a}, epoch);
      t[i] -= std::clamp(step, -config.max_step, config.max_step);
    }
    for (std::size_t j = 0; j < m; ++j) {
      const double step_d =
          lr * (grad_d[j] / static_cast<double>(n) + rho * (d[j] - d0[j]));
      if (!std::isfinite(step_d)) raise_bad_cell(matrix, SurrogateState{t, d, a}, epoch);
      d[j] -= std::clamp(step_d, -config.max_step, config.max_step);
      if (!config.rasch) {
        const double anchor = lam * (std::abs(a[j]) - 1.0) * (a[j] < 0.0 ? -1.0 : 1.0);
        const double step_a =
            lr * ((grad_a[j] + anchor) / static_cast<double>(n) + rho * (a[j] - a0[j]));
        if (!std::isfinite(step_a)) raise_bad_cell(matrix, SurrogateState{t, d, a}, epoch);
        a[j] -= std::clamp(step_a, -config.max_step, config.max_step);
      }
    }
  }

  std::vector<double> theta(n), delta(m);
  for (std::size_t i = 0; i < n; ++i) {
    theta[i] = std::clamp(sigmoid(t[i]), kParamFloor, 1.0 - kParamFloor);
  }
  for (std::size_t j = 0; j < m; ++j) {
    delta[j] = std::clamp(sigmoid(d[j]), kParamFloor, 1.0 - kParamFloor);
  }

  if (!config.rasch) {
    // Resolve the global reflection symmetry: higher ability must mean
    // higher observed responses.
    std::vector<double> row_means(n);
    for (std::size_t i = 0; i < n; ++i) row_means[i] = matrix.row_mean(i);
    if (pearson(theta, row_means) < 0.0) {
      for (std::size_t i = 0; i < n; ++i) theta[i] = 1.0 - theta[i];
      for (std::size_t j = 0; j < m; ++j) {
        delta[j] = 1.0 - delta[j];
        a[j] = -a[j];
      }
    }
  } else {
    a.assign(m, 1.0);
  }

  FitReport report;
  report.parameters.abilities.reserve(n);
  for (std::size_t i = 0; i < n; ++i) report.parameters.abilities.emplace_back(theta[i]);
  report.parameters.items.reserve(m);
  for (std::size_t j = 0; j < m; ++j) report.parameters.items.emplace_back(delta[j], a[j]);
  report.parameters.rasch_constrained = config.rasch;
  report.parameters.validate();
  report.final_loss = negative_loss(matrix, report.parameters);
  report.loss_trace = std::move(trace);
  report.converged = converged;
  report.epochs_run = report.loss_trace.size();
  report.clamp_count = matrix.clamp_count();
  report.config = config;
  report.model_ids = matrix.model_ids();
  report.individual_ids = matrix.individual_ids();
  return report;
}

}  // namespace fairirt
