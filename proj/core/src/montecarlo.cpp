#include "bayes_bounds/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "bayes_bounds/numerics.hpp"
#include "bayes_bounds/parallel.hpp"

namespace bayes_bounds {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_length(std::span<const std::complex<double>> x, const ToneModel& model) {
  if (x.size() != static_cast<std::size_t>(model.n_samples()))
    throw std::invalid_argument("observation length must equal n_samples");
}

}  // namespace

void McConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("McConfig: trials must be >= 1");
  if (grid_factor < 4) throw std::invalid_argument("McConfig: grid_factor must be >= 4");
  if (refine_iters < 0) throw std::invalid_argument("McConfig: refine_iters must be >= 0");
}

double map_objective(std::span<const std::complex<double>> x, const ToneModel& model,
                     double theta) {
  check_length(x, model);
  std::complex<double> acc = 0.0;
  for (std::size_t n = 0; n < x.size(); ++n)
    acc += x[n] * std::polar(1.0, -kTwoPi * static_cast<double>(n) * theta);
  return std::sqrt(model.snr()) * acc.real();
}

double map_estimate(std::span<const std::complex<double>> x, const ToneModel& model,
                    const McConfig& cfg) {
  cfg.validate();
  check_length(x, model);
  const int cells = cfg.grid_factor * model.n_samples();

  // Coarse grid theta_k = k / cells, k = 0..cells, by phase recurrence.
  int best_k = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (int k = 0; k <= cells; ++k) {
    const std::complex<double> step = std::polar(1.0, -kTwoPi * k / cells);
    std::complex<double> phase = 1.0;
    std::complex<double> acc = 0.0;
    for (const auto& xn : x) {
      acc += xn * phase;
      phase *= step;
    }
    if (acc.real() > best) {
      best = acc.real();
      best_k = k;
    }
  }
  const double lo = std::max(0, best_k - 1) / static_cast<double>(cells);
  const double hi = std::min(cells, best_k + 1) / static_cast<double>(cells);
  double estimate = best_k / static_cast<double>(cells);
  if (cfg.refine_iters > 0) {
    // refine_iters golden steps shrink the bracket by 0.618^refine_iters.
    const double tol = (hi - lo) * std::pow(0.6180339887498948482, cfg.refine_iters);
    const GoldenResult r =
        golden_max([&](double t) { return map_objective(x, model, t); }, lo, hi, tol);
    if (r.value >= map_objective(x, model, estimate)) estimate = r.x;
  }
  return std::clamp(estimate, 0.0, 1.0);
}

Draw draw_trial(const ToneModel& model, std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, std::sqrt(0.5));

  Draw d;
  d.theta = uniform(rng);
  const double amplitude = std::sqrt(model.snr());
  d.x.resize(static_cast<std::size_t>(model.n_samples()));
  for (std::size_t n = 0; n < d.x.size(); ++n) {
    const double re = noise(rng);
    const double im = noise(rng);
    d.x[n] = std::polar(amplitude, kTwoPi * static_cast<double>(n) * d.theta) +
             std::complex<double>(re, im);
  }
  return d;
}

McResult simulate_map_mse(const ToneModel& model, const McConfig& cfg) {
  cfg.validate();
  std::vector<double> sq(cfg.trials);
  parallel_for(cfg.trials, [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      const Draw d = draw_trial(model, cfg.seed, t);
      const double e = map_estimate(d.x, model, cfg) - d.theta;
      sq[t] = e * e;
    }
  });

  double sum = 0.0;
  for (double v : sq) sum += v;
  McResult r;
  r.trials_used = cfg.trials;
  r.mse = sum / static_cast<double>(cfg.trials);
  if (cfg.trials > 1) {
    double ss = 0.0;
    for (double v : sq) ss += (v - r.mse) * (v - r.mse);
    const double var = ss / static_cast<double>(cfg.trials - 1);
    r.std_error = std::sqrt(var / static_cast<double>(cfg.trials));
  }
  return r;
}

}  // namespace bayes_bounds
