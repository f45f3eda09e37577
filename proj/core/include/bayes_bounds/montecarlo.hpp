#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "bayes_bounds/model.hpp"

namespace bayes_bounds {

struct McConfig {
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
  // Coarse search grid has grid_factor * N cells over [0, 1].
  int grid_factor = 16;
  // Golden-section steps inside the winning cell.
  int refine_iters = 40;

  // Throws std::invalid_argument unless trials >= 1, grid_factor >= 4 and
  // refine_iters >= 0.
  void validate() const;
};

struct McResult {
  double mse = 0.0;
  // Standard error of mse, from the sample variance of the squared errors.
  double std_error = 0.0;
  std::size_t trials_used = 0;
};

using Observation = std::vector<std::complex<double>>;

// Re{ conj(alpha) sum_n x_n exp(-j 2 pi n theta) }; its argmax is the MAP
// (= ML) estimate for the known-amplitude tone and a uniform prior.
double map_objective(std::span<const std::complex<double>> x, const ToneModel& model,
                     double theta);

// Argmax of map_objective over [0, 1]: coarse grid, then golden section in
// the cells adjacent to the best node, clamped to [0, 1].
double map_estimate(std::span<const std::complex<double>> x, const ToneModel& model,
                    const McConfig& cfg);

struct Draw {
  double theta = 0.0;
  Observation x;
};

// The (theta, x) pair used by trial number `trial`. Each trial owns a
// generator seeded from (seed, trial), so draws do not depend on scheduling.
Draw draw_trial(const ToneModel& model, std::uint64_t seed, std::uint64_t trial);

// Mean of (theta_hat - theta)^2 with theta ~ U[0, 1]; the error is not
// wrapped. Trials run in parallel and are reduced in trial order.
McResult simulate_map_mse(const ToneModel& model, const McConfig& cfg);

}  // namespace bayes_bounds
