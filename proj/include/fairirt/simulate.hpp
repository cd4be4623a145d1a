#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>

#include "fairirt/irt.hpp"

namespace fairirt {

struct DiscriminationDistribution {
  enum class Kind { mixed, positive_only, fixed };

  Kind kind = Kind::mixed;
  double negative_fraction = 0.15;  // mixed: floor(fraction * M) items negative
  double fixed_value = 1.0;

  static DiscriminationDistribution mixed(double fraction = 0.15) {
    return {Kind::mixed, fraction, 1.0};
  }
  static DiscriminationDistribution positive_only() {
    return {Kind::positive_only, 0.0, 1.0};
  }
  static DiscriminationDistribution fixed(double value) {
    return {Kind::fixed, 0.0, value};
  }
};

// Discrimination magnitudes are drawn uniformly from this range, spanning the
// flat, anti-sigmoidal and sigmoidal curve regimes.
inline constexpr double kDiscriminationMagnitudeLo = 0.3;
inline constexpr double kDiscriminationMagnitudeHi = 3.0;

struct SimulationSpec {
  std::size_t n_models = 20;
  std::size_t n_individuals = 50;
  std::uint64_t seed = 0;
  std::pair<double, double> ability_range{0.2, 0.9};
  std::pair<double, double> difficulty_range{0.05, 0.95};
  DiscriminationDistribution discrimination = DiscriminationDistribution::mixed();
  // If set, responses are the exact curve means instead of beta draws.
  bool noiseless = false;

  void validate() const;
};

// Draws ground-truth abilities, difficulties and discriminations.
// Deterministic given the seed.
FitParameters generate_ground_truth(const SimulationSpec& spec);

// Draws the response matrix from the per-cell beta distributions (or evaluates
// the curve means when noiseless). Deterministic given the seed.
ResponseMatrix sample_responses(const FitParameters& truth, const SimulationSpec& spec);

}  // namespace fairirt
