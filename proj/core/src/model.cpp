#include "bayes_bounds/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace bayes_bounds {

IntervalSet intersect(std::span<const Interval> a, std::span<const Interval> b) {
  IntervalSet out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const double lo = std::max(a[i].lo, b[j].lo);
    const double hi = std::min(a[i].hi, b[j].hi);
    if (lo < hi) out.push_back({lo, hi});
    if (a[i].hi < b[j].hi)
      ++i;
    else
      ++j;
  }
  return out;
}

IntervalSet shifted(std::span<const Interval> set, double offset) {
  IntervalSet out;
  out.reserve(set.size());
  for (const auto& iv : set) out.push_back({iv.lo + offset, iv.hi + offset});
  return out;
}

double measure(std::span<const Interval> set) {
  double total = 0.0;
  for (const auto& iv : set) total += iv.length();
  return total;
}

//------------------------------------------------------------------------------

UniformPrior::UniformPrior(IntervalSet intervals) : intervals_(std::move(intervals)) {
  if (intervals_.empty()) throw std::invalid_argument("UniformPrior: no intervals");
  for (std::size_t k = 0; k < intervals_.size(); ++k) {
    const auto& iv = intervals_[k];
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || !(iv.lo < iv.hi))
      throw std::invalid_argument("UniformPrior: each interval needs finite lo < hi");
    if (k > 0 && !(intervals_[k - 1].hi < iv.lo))
      throw std::invalid_argument("UniformPrior: intervals must be sorted and disjoint");
    total_length_ += iv.length();
  }
}

std::optional<std::size_t> UniformPrior::interval_index(double theta) const {
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), theta,
                             [](double x, const Interval& iv) { return x < iv.lo; });
  if (it == intervals_.begin()) return std::nullopt;
  --it;
  if (theta > it->hi) return std::nullopt;
  return static_cast<std::size_t>(it - intervals_.begin());
}

bool UniformPrior::contains(double theta) const { return interval_index(theta).has_value(); }

double prior_variance(const UniformPrior& prior) {
  const double length = prior.total_length();
  double mean = 0.0;
  for (const auto& iv : prior.intervals()) mean += 0.5 * (iv.hi * iv.hi - iv.lo * iv.lo);
  mean /= length;
  double second = 0.0;
  for (const auto& iv : prior.intervals()) {
    const double a = iv.lo - mean;
    const double b = iv.hi - mean;
    second += (b * b * b - a * a * a) / 3.0;
  }
  return std::max(0.0, second / length);
}

double shifted_overlap(const UniformPrior& prior, double h) {
  if (!std::isfinite(h)) throw std::invalid_argument("shifted_overlap: h must be finite");
  const IntervalSet moved = shifted(prior.intervals(), h);
  return measure(intersect(prior.intervals(), moved)) / prior.total_length();
}

//------------------------------------------------------------------------------

ToneModel::ToneModel(int n_samples, double snr) : n_samples_(n_samples), snr_(snr) {
  if (n_samples < 2) throw std::invalid_argument("ToneModel: n_samples must be >= 2");
  if (!std::isfinite(snr) || !(snr > 0.0))
    throw std::invalid_argument("ToneModel: snr must be finite and > 0");
}

ToneModel ToneModel::from_db(int n_samples, double snr_db) {
  return ToneModel(n_samples, std::pow(10.0, snr_db / 10.0));
}

double tone_v(double h, int n_samples) {
  // v is even and 1-periodic; reducing first keeps sin(pi h) away from the
  // integer zeros (the subtraction is exact for |h| <= 2).
  const double r = h - std::nearbyint(h);
  if (r == 0.0) return 0.0;
  const double n = static_cast<double>(n_samples);
  if (std::abs(r) < 1e-6) {
    double sum = 0.0;
    for (int k = 1; k < n_samples; ++k) {
      const double s = std::sin(std::numbers::pi * k * r);
      sum += 2.0 * s * s;
    }
    return sum;
  }
  const double pi_r = std::numbers::pi * r;
  const double v = n - std::cos((n - 1.0) * pi_r) * std::sin(n * pi_r) / std::sin(pi_r);
  return std::max(0.0, v);
}

double tone_diff_energy(double theta1, double theta2, const ToneModel& model) {
  return 2.0 * model.snr() * tone_v(theta1 - theta2, model.n_samples());
}

double tone_deriv_energy(const ToneModel& model) {
  const double n = model.n_samples();
  return 4.0 * std::numbers::pi * std::numbers::pi / 3.0 * model.snr() * n * (n - 1.0) *
         (2.0 * n - 1.0);
}

//------------------------------------------------------------------------------

double deriv_energy(const MeanModel& model, double theta, double fd_step) {
  if (auto exact = model.analytic_deriv_energy(theta)) return *exact;
  if (!(fd_step > 0.0)) throw std::invalid_argument("deriv_energy: fd_step must be > 0");
  const double span = 2.0 * fd_step;
  return model.diff_energy(theta + fd_step, theta - fd_step) / (span * span);
}

ToneMeanModel::ToneMeanModel(ToneModel tone, double period) : tone_(tone), period_(period) {
  if (!std::isfinite(period) || !(period > 0.0))
    throw std::invalid_argument("ToneMeanModel: period must be finite and > 0");
}

double ToneMeanModel::diff_energy(double theta1, double theta2) const {
  return 2.0 * tone_.snr() * tone_v((theta1 - theta2) / period_, tone_.n_samples());
}

std::optional<double> ToneMeanModel::analytic_deriv_energy(double) const {
  // Half the Fisher information, rescaled by the frequency axis.
  return 0.5 * tone_deriv_energy(tone_) / (period_ * period_);
}

EstimandFn EstimandFn::identity() {
  return {[](double theta) { return theta; }, [](double) { return 1.0; }, {}};
}

}  // namespace bayes_bounds
