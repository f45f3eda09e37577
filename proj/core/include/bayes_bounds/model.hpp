#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace bayes_bounds {

//------------------------------------------------------------------------------
// Interval sets

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
  bool operator==(const Interval&) const = default;
};

using IntervalSet = std::vector<Interval>;

// Pairwise intersection of two sorted, disjoint interval lists. Degenerate
// (zero-length) pieces are dropped.
IntervalSet intersect(std::span<const Interval> a, std::span<const Interval> b);
IntervalSet shifted(std::span<const Interval> set, double offset);
double measure(std::span<const Interval> set);

//------------------------------------------------------------------------------
// Priors

// Uniform density over a finite union of disjoint closed intervals.
class UniformPrior {
 public:
  // Intervals must be sorted with lo < hi and strictly separated
  // (hi_k < lo_{k+1}); throws std::invalid_argument otherwise.
  explicit UniformPrior(IntervalSet intervals);

  static UniformPrior unit() { return UniformPrior({{0.0, 1.0}}); }

  std::span<const Interval> intervals() const { return intervals_; }
  double total_length() const { return total_length_; }
  double lower() const { return intervals_.front().lo; }
  double upper() const { return intervals_.back().hi; }
  double extent() const { return upper() - lower(); }

  bool contains(double theta) const;
  double density(double theta) const { return contains(theta) ? 1.0 / total_length_ : 0.0; }
  // Index of the interval holding theta, if any.
  std::optional<std::size_t> interval_index(double theta) const;

  bool operator==(const UniformPrior& other) const { return intervals_ == other.intervals_; }

 private:
  IntervalSet intervals_;
  double total_length_ = 0.0;
};

double prior_variance(const UniformPrior& prior);

// Prior probability of {theta in support : theta - h in support}.
double shifted_overlap(const UniformPrior& prior, double h);

//------------------------------------------------------------------------------
// Single tone

// x = m(theta) + n with m_n(theta) = alpha * exp(j 2 pi n theta), n < N, and
// circular complex white noise. Amplitude is normalised to alpha = sqrt(snr),
// sigma_n^2 = 1.
class ToneModel {
 public:
  ToneModel(int n_samples, double snr);
  static ToneModel from_db(int n_samples, double snr_db);

  int n_samples() const { return n_samples_; }
  double snr() const { return snr_; }

 private:
  int n_samples_;
  double snr_;
};

// v(h) = sum_{n<N} (1 - cos(2 pi n h)) = N - cos(pi (N-1) h) sin(pi N h) / sin(pi h).
double tone_v(double h, int n_samples);

// ||m(t1) - m(t2)||^2 / sigma_n^2 = 2 rho v(t1 - t2).
double tone_diff_energy(double theta1, double theta2, const ToneModel& model);

// Fisher information c = (2 / sigma_n^2) ||dm/dtheta||^2
//                      = (4 pi^2 / 3) rho N (N-1) (2N-1), constant in theta.
double tone_deriv_energy(const ToneModel& model);

//------------------------------------------------------------------------------
// Generic Gaussian-mean models

class MeanModel {
 public:
  virtual ~MeanModel() = default;

  // ||m(t1) - m(t2)||^2 / sigma_n^2
  virtual double diff_energy(double theta1, double theta2) const = 0;

  // ||dm/dtheta||^2 / sigma_n^2 when known in closed form.
  virtual std::optional<double> analytic_deriv_energy(double theta) const {
    (void)theta;
    return std::nullopt;
  }
};

// ||dm/dtheta||^2 / sigma_n^2, falling back to a symmetric difference of
// diff_energy with the given step.
double deriv_energy(const MeanModel& model, double theta, double fd_step);

// Single tone as a MeanModel. period rescales the frequency axis:
// m_n(theta) = alpha exp(j 2 pi n theta / period).
class ToneMeanModel final : public MeanModel {
 public:
  explicit ToneMeanModel(ToneModel tone, double period = 1.0);

  double diff_energy(double theta1, double theta2) const override;
  std::optional<double> analytic_deriv_energy(double theta) const override;

  const ToneModel& tone() const { return tone_; }
  double period() const { return period_; }

 private:
  ToneModel tone_;
  double period_;
};

//------------------------------------------------------------------------------
// Estimand

// g(theta) with its derivative and the points where either is not smooth.
struct EstimandFn {
  std::function<double(double)> g;
  std::function<double(double)> g_deriv;
  std::vector<double> breakpoints;

  static EstimandFn identity();
};

}  // namespace bayes_bounds
