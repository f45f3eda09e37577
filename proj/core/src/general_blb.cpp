#include "bayes_bounds/general_blb.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "bayes_bounds/closed_bounds.hpp"

namespace bayes_bounds {

namespace {

constexpr int kShiftSamples = 32;

// Panels over a set of intervals, cut at every listed point.
std::vector<Panel> panels_over(std::span<const Interval> set, std::span<const double> cuts) {
  std::vector<Panel> out;
  for (const auto& iv : set) {
    const auto part = panels_between(iv.lo, iv.hi, cuts);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

// int weight(theta) exp(exponent(theta)) over the panels, as
// coefficient * exp(shift) with shift the sampled maximum of the exponent, so
// that large exponents neither overflow nor underflow.
ExpTerm shifted_integral(const RealFunction& weight, const RealFunction& exponent,
                         std::span<const Panel> panels, const QuadratureSpec& quad) {
  if (panels.empty()) return {0.0, 0.0};
  double shift = -std::numeric_limits<double>::infinity();
  for (const auto& p : panels) {
    for (int i = 0; i <= kShiftSamples; ++i) {
      const double e = exponent(p.lo + (p.hi - p.lo) * i / kShiftSamples);
      if (std::isfinite(e)) shift = std::max(shift, e);
    }
  }
  if (!std::isfinite(shift)) shift = 0.0;
  auto f = [&](double t) {
    const double w = weight(t);
    return w == 0.0 ? 0.0 : w * std::exp(exponent(t) - shift);
  };
  return {integrate(f, panels, quad), shift};
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

void BlbProblem::validate() const {
  if (!mean) throw std::invalid_argument("BlbProblem: mean model is missing");
  if (!estimand.g || !estimand.g_deriv)
    throw std::invalid_argument("BlbProblem: estimand needs g and g'");
  if (!(weight.support() == prior))
    throw std::invalid_argument("BlbProblem: weight support must equal the prior support");
  quad.validate();
  for (const auto& iv : prior.intervals()) {
    for (double t : {iv.lo, 0.5 * (iv.lo + iv.hi), iv.hi}) {
      if (!std::isfinite(estimand.g(t)))
        throw std::invalid_argument("BlbProblem: estimand is not finite on the support");
    }
  }
}

BlbProblem BlbProblem::tone(const ToneModel& model, WeightFamily weight, QuadratureSpec quad) {
  BlbProblem prob;
  prob.mean = std::make_shared<ToneMeanModel>(model);
  prob.prior = weight.support();
  prob.weight = std::move(weight);
  prob.quad = quad;
  return prob;
}

BlbValue blb_eval(const BlbProblem& prob, double h, double s) {
  prob.validate();
  if (!std::isfinite(h) || h == 0.0)
    throw std::invalid_argument("blb_eval: h must be finite and non-zero");
  if (!(s > 0.0 && s <= 1.0)) throw std::invalid_argument("blb_eval: s must lie in (0, 1]");

  const auto support = prob.prior.intervals();
  const IntervalSet omega_minus = intersect(support, shifted(support, h));
  if (measure(omega_minus) <= 0.0) return {0.0, true};
  const IntervalSet omega_plus = intersect(support, shifted(support, -h));
  const IntervalSet omega_both = intersect(omega_plus, omega_minus);

  std::vector<double> cuts;
  for (double b : prob.weight.breakpoints()) {
    cuts.push_back(b);
    cuts.push_back(b - h);
  }
  for (double b : prob.estimand.breakpoints) {
    cuts.push_back(b);
    cuts.push_back(b + h);
  }
  cuts = sorted_unique(std::move(cuts));

  const MeanModel& m = *prob.mean;
  const WeightFamily& q = prob.weight;
  const auto& g = prob.estimand.g;
  const double length = prob.prior.total_length();

  const auto p_minus = panels_over(omega_minus, cuts);
  const auto p_plus = panels_over(omega_plus, cuts);
  const auto p_both = panels_over(omega_both, cuts);

  const ExpTerm num = shifted_integral(
      [&](double t) { return (g(t - h) - g(t)) * q.eval(t); },
      [&](double t) { return -s * (1.0 - s) * m.diff_energy(t - h, t); }, p_minus, prob.quad);

  const std::array<ExpTerm, 3> parts = {
      shifted_integral([&](double t) { return std::pow(q.eval(t + h), 2); },
                       [&](double t) { return -2.0 * s * (1.0 - 2.0 * s) * m.diff_energy(t + h, t); },
                       p_plus, prob.quad),
      shifted_integral(
          [&](double t) { return std::pow(q.eval(t), 2); },
          [&](double t) { return -2.0 * (1.0 - s) * (2.0 * s - 1.0) * m.diff_energy(t - h, t); },
          p_minus, prob.quad),
      shifted_integral([&](double t) { return q.eval(t + h) * q.eval(t); },
                       [&](double t) { return -s * (1.0 - s) * m.diff_energy(t + h, t - h); },
                       p_both, prob.quad)};

  const std::array<ExpTerm, 3> terms = {parts[0], parts[1],
                                        ExpTerm{-2.0 * parts[2].coefficient, parts[2].exponent}};
  const LogMagnitude den = signed_exp_sum(terms);
  if (den.sign <= 0) throw DegenerateDenominator("blb_eval: degenerate denominator");
  if (num.coefficient == 0.0) return {0.0, false};

  const double log_value = 2.0 * (std::log(std::abs(num.coefficient)) + num.exponent) -
                           std::log(length) - den.log_abs;
  return {std::exp(log_value), false};
}

double bmzb_general(const BlbProblem& prob) {
  prob.validate();
  const WeightFamily& q = prob.weight;
  if (!q.endpoint_vanishing())
    throw std::invalid_argument(
        "bmzb_general: the weight must vanish at every end of the support (q(a) = q(b) = 0)");

  const double length = prob.prior.total_length();
  const double fd_step = 1e-6 * length;
  const double grade = q.endpoint_grading();
  std::vector<double> cuts = q.breakpoints();
  cuts.insert(cuts.end(), prob.estimand.breakpoints.begin(), prob.estimand.breakpoints.end());
  cuts = sorted_unique(std::move(cuts));

  const auto& g_deriv = prob.estimand.g_deriv;
  const MeanModel& m = *prob.mean;
  // Each interval is integrated as two halves in the distance r from the
  // nearer end: with alpha near 3/2 a visible share of the (q')^2 mass sits
  // closer to the upper end than theta can resolve.
  double num = 0.0;
  double den = 0.0;
  const auto& intervals = prob.prior.intervals();
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const Interval iv = intervals[i];
    const double half = 0.5 * iv.length();
    for (bool from_hi : {false, true}) {
      std::vector<double> r_cuts;
      for (double c : cuts) {
        const double r = from_hi ? iv.hi - c : c - iv.lo;
        if (r > 0.0 && r < half) r_cuts.push_back(r);
      }
      std::sort(r_cuts.begin(), r_cuts.end());
      auto panels = panels_between(0.0, half, r_cuts);
      panels.front().grade_lo = grade;
      auto theta = [&](double r) { return from_hi ? iv.hi - r : iv.lo + r; };
      num += integrate(
          [&](double r) { return g_deriv(theta(r)) * q.at_end_offset(i, r, from_hi).value; },
          panels, prob.quad);
      den += integrate(
          [&](double r) {
            const WeightSample w = q.at_end_offset(i, r, from_hi);
            return w.deriv * w.deriv + 2.0 * deriv_energy(m, theta(r), fd_step) * w.value * w.value;
          },
          panels, prob.quad);
    }
  }
  if (!(den > 0.0)) throw DegenerateDenominator("bmzb_general: non-positive denominator");
  return num * num / (length * den);
}

std::vector<LimitProbeRow> limit_probe(const BlbProblem& prob, double s,
                                       std::span<const double> h_sequence) {
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("limit_probe: s must lie in (0, 1)");
  if (h_sequence.empty()) throw std::invalid_argument("limit_probe: empty h sequence");
  for (std::size_t i = 0; i < h_sequence.size(); ++i) {
    if (!(h_sequence[i] > 0.0) || (i > 0 && !(h_sequence[i] < h_sequence[i - 1])))
      throw std::invalid_argument("limit_probe: h sequence must be positive and strictly decreasing");
  }
  std::vector<LimitProbeRow> rows;
  for (double h : h_sequence) {
    rows.push_back({h, blb_eval(prob, h, s).value, blb_eval(prob, -h, s).value,
                    blb_eval(prob, h, 1.0 - s).value, blb_eval(prob, -h, 1.0 - s).value});
  }
  return rows;
}

}  // namespace bayes_bounds
