#include "fairirt/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace fairirt {

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform_in(std::mt19937_64& rng, double lo, double hi) {
  return lo + uniform01(rng) * (hi - lo);
}

std::mt19937_64 stream(std::uint64_t seed, std::uint32_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    salt};
  return std::mt19937_64(seq);
}

void check_range(std::pair<double, double> range, const char* what) {
  if (!(range.first > 0.0 && range.first < range.second && range.second < 1.0)) {
    raise(ErrorCategory::input,
          std::string(what) + " range must satisfy 0 < lo < hi < 1");
  }
}

}  // namespace

void SimulationSpec::validate() const {
  if (n_models < 2 || n_individuals < 2) {
    raise(ErrorCategory::input, "simulation needs at least 2 models and 2 individuals");
  }
  check_range(ability_range, "ability");
  check_range(difficulty_range, "difficulty");
  if (discrimination.kind == DiscriminationDistribution::Kind::mixed &&
      (discrimination.negative_fraction < 0.0 || discrimination.negative_fraction > 1.0)) {
    raise(ErrorCategory::input, "negative fraction must lie in [0,1]");
  }
  if (discrimination.kind == DiscriminationDistribution::Kind::fixed &&
      !std::isfinite(discrimination.fixed_value)) {
    raise(ErrorCategory::input, "fixed discrimination must be finite");
  }
}

FitParameters generate_ground_truth(const SimulationSpec& spec) {
  spec.validate();
  auto rng = stream(spec.seed, 0x7472u);

  FitParameters params;
  params.abilities.reserve(spec.n_models);
  for (std::size_t i = 0; i < spec.n_models; ++i) {
    params.abilities.emplace_back(
        uniform_in(rng, spec.ability_range.first, spec.ability_range.second));
  }

  std::vector<double> difficulty(spec.n_individuals);
  for (double& v : difficulty) {
    v = uniform_in(rng, spec.difficulty_range.first, spec.difficulty_range.second);
  }

  std::vector<double> discrimination(spec.n_individuals);
  switch (spec.discrimination.kind) {
    case DiscriminationDistribution::Kind::fixed:
      std::fill(discrimination.begin(), discrimination.end(), spec.discrimination.fixed_value);
      break;
    case DiscriminationDistribution::Kind::positive_only:
      for (double& v : discrimination) {
        v = uniform_in(rng, kDiscriminationMagnitudeLo, kDiscriminationMagnitudeHi);
      }
      break;
    case DiscriminationDistribution::Kind::mixed: {
      for (double& v : discrimination) {
        v = uniform_in(rng, kDiscriminationMagnitudeLo, kDiscriminationMagnitudeHi);
      }
      const auto n_negative = static_cast<std::size_t>(
          std::floor(spec.discrimination.negative_fraction *
                     static_cast<double>(spec.n_individuals)));
      // Partial Fisher-Yates pick of the negative items.
      std::vector<std::size_t> idx(spec.n_individuals);
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      for (std::size_t k = 0; k < n_negative; ++k) {
        const auto span = spec.n_individuals - k;
        const auto pick = k + static_cast<std::size_t>(uniform01(rng) * static_cast<double>(span));
        std::swap(idx[k], idx[pick]);
        discrimination[idx[k]] = -discrimination[idx[k]];
      }
      break;
    }
  }

  params.items.reserve(spec.n_individuals);
  for (std::size_t j = 0; j < spec.n_individuals; ++j) {
    params.items.emplace_back(difficulty[j], discrimination[j]);
  }
  params.rasch_constrained = spec.discrimination.kind == DiscriminationDistribution::Kind::fixed &&
                             spec.discrimination.fixed_value == 1.0;
  return params;
}

ResponseMatrix sample_responses(const FitParameters& truth, const SimulationSpec& spec) {
  spec.validate();
  if (truth.abilities.size() != spec.n_models || truth.items.size() != spec.n_individuals) {
    raise(ErrorCategory::dimension, "ground truth does not match the simulation shape");
  }

  auto rng = stream(spec.seed, 0x7265u);
  std::vector<double> values;
  values.reserve(spec.n_models * spec.n_individuals);
  for (std::size_t i = 0; i < spec.n_models; ++i) {
    for (std::size_t j = 0; j < spec.n_individuals; ++j) {
      if (spec.noiseless) {
        values.push_back(beta_icc(truth.abilities[i], truth.items[j]));
      } else {
        const BetaShape shape = beta_shapes(truth.abilities[i], truth.items[j]);
        const double x = std::gamma_distribution<double>(shape.alpha, 1.0)(rng);
        const double y = std::gamma_distribution<double>(shape.beta, 1.0)(rng);
        // x + y can underflow for tiny shapes; fall back to the mean.
        const double draw =
            (x + y) > 0.0 ? x / (x + y) : shape.alpha / (shape.alpha + shape.beta);
        values.push_back(draw);
      }
    }
  }

  std::vector<std::string> model_ids(spec.n_models);
  for (std::size_t i = 0; i < spec.n_models; ++i) model_ids[i] = "model_" + std::to_string(i + 1);
  std::vector<std::string> individual_ids(spec.n_individuals);
  for (std::size_t j = 0; j < spec.n_individuals; ++j) {
    individual_ids[j] = "ind_" + std::to_string(j + 1);
  }
  return ResponseMatrix(std::move(model_ids), std::move(individual_ids), std::move(values));
}

}  // namespace fairirt
