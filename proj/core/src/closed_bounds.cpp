#include "bayes_bounds/closed_bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

namespace bayes_bounds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

void check_h(double h) {
  if (!(std::abs(h) > 0.0 && std::abs(h) < 1.0)) {
    std::ostringstream msg;
    msg << "test point h must satisfy 0 < |h| < 1, got " << h;
    throw std::invalid_argument(msg.str());
  }
}

void check_s(double s) {
  if (!(s > 0.0 && s < 1.0)) {
    std::ostringstream msg;
    msg << "exponent s must satisfy 0 < s < 1, got " << s;
    throw std::invalid_argument(msg.str());
  }
}

void check_unit_support(const WeightFamily& w) {
  if (!(w.support() == UniformPrior::unit()))
    throw std::invalid_argument("single-tone closed forms need a weight supported on [0, 1]");
}

// log of the modified WWB at (h, s) given v(h), v(2h) and the shift integrals;
// s = 1 gives the modified BZB. nullopt flags a degenerate denominator.
std::optional<double> log_modified_wwb(double rho, double v_h, double v_2h, double h, double s,
                                       const ShiftIntegrals& in) {
  if (in.mass <= 0.0) return -kInf;
  const double x = rho * v_h;
  const double numerator = 2.0 * std::log(std::abs(h)) + 2.0 * std::log(in.mass) +
                           4.0 * (s - 1.0) * s * x;
  const std::array<ExpTerm, 3> terms = {
      ExpTerm{in.energy, 4.0 * s * (2.0 * s - 1.0) * x},
      ExpTerm{in.energy, 4.0 * (s - 1.0) * (2.0 * s - 1.0) * x},
      ExpTerm{-2.0 * in.cross, 2.0 * s * (s - 1.0) * rho * v_2h}};
  const LogMagnitude den = signed_exp_sum(terms);
  if (den.sign <= 0) return std::nullopt;
  return numerator - den.log_abs;
}

ShiftIntegrals indicator_integrals(double h) {
  const double a = std::abs(h);
  return {1.0 - a, 1.0 - a, std::max(1.0 - 2.0 * a, 0.0)};
}

double integrate_on(const RealFunction& f, double lo, double hi, std::vector<double> cuts,
                    const QuadratureSpec& quad) {
  if (!(lo < hi)) return 0.0;
  const auto panels = panels_between(lo, hi, cuts);
  return integrate(f, panels, quad);
}

double finish(std::optional<double> log_value, const char* what) {
  if (!log_value) throw DegenerateDenominator(std::string(what) + ": degenerate denominator");
  return std::exp(*log_value);
}

struct Candidate {
  double log_value;
  double h;
  double s;
};

// Ordering for tied maxima: smallest |h|, then smallest s, then smallest h.
bool preferred(const Candidate& a, const Candidate& b) {
  if (std::abs(a.h) != std::abs(b.h)) return std::abs(a.h) < std::abs(b.h);
  if (a.s != b.s) return a.s < b.s;
  return a.h < b.h;
}

BoundResult reduce(const std::vector<Candidate>& points, std::size_t skipped, bool with_s) {
  if (points.empty()) throw DegenerateDenominator("every grid point has a degenerate denominator");
  double best = -kInf;
  for (const auto& p : points) best = std::max(best, p.log_value);
  const Candidate* chosen = nullptr;
  for (const auto& p : points) {
    const bool tied = best == -kInf ? p.log_value == -kInf : p.log_value >= best - kTieTolerance;
    if (tied && (chosen == nullptr || preferred(p, *chosen))) chosen = &p;
  }
  BoundResult r;
  r.log_value = best;
  r.value = std::exp(best);
  r.skipped = skipped;
  r.arg["h"] = chosen->h;
  if (with_s) r.arg["s"] = chosen->s;
  return r;
}

BoundResult sup_over(const ToneModel& model, const ShiftIntegralTable& table,
                     std::span<const double> s_values, bool with_s) {
  const auto hs = table.h_values();
  const auto ints = table.integrals();
  const int n = model.n_samples();
  const double rho = model.snr();
  std::vector<Candidate> points;
  points.reserve(hs.size() * s_values.size());
  std::size_t skipped = 0;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const double h = hs[i];
    const double v_h = tone_v(h, n);
    const double v_2h = tone_v(2.0 * h, n);
    for (double s : s_values) {
      const auto lv = log_modified_wwb(rho, v_h, v_2h, h, s, ints[i]);
      if (!lv) {
        ++skipped;
        continue;
      }
      points.push_back({*lv, h, s});
    }
  }
  return reduce(points, skipped, with_s);
}

// Scan log(x) over the range, then golden-section refine around the best cell.
BoundResult log_scan_max(const std::function<double(double)>& f, ParamRange range,
                         const char* key) {
  if (!(range.lo > 0.0 && range.lo < range.hi))
    throw std::invalid_argument(std::string("invalid ") + key + " range");
  constexpr int kScan = 64;
  const double a = std::log(range.lo);
  const double b = std::log(range.hi);
  auto g = [&f](double log_x) { return f(std::exp(log_x)); };
  int best_i = 0;
  double best_v = -kInf;
  for (int i = 0; i <= kScan; ++i) {
    const double x = a + (b - a) * i / kScan;
    const double v = g(x);
    if (v > best_v) {
      best_v = v;
      best_i = i;
    }
  }
  const double lo = a + (b - a) * std::max(0, best_i - 1) / kScan;
  const double hi = a + (b - a) * std::min(kScan, best_i + 1) / kScan;
  GoldenResult refined = golden_max(g, lo, hi, 1e-10 * std::max(1.0, std::abs(b - a)));
  double arg = refined.x;
  double value = refined.value;
  if (best_v > value) {
    value = best_v;
    arg = a + (b - a) * best_i / kScan;
  }
  BoundResult r;
  r.value = value;
  r.log_value = std::log(value);
  r.arg[key] = std::exp(arg);
  return r;
}

}  // namespace

//------------------------------------------------------------------------------

HsGrid HsGrid::standard() {
  HsGrid grid;
  for (int k = 1; k <= 1999; ++k)
    if (k != 1000) grid.h_values.push_back((k - 1000) / 1000.0);
  for (int l = 1; l <= 99; ++l) grid.s_values.push_back(l / 100.0);
  return grid;
}

HsGrid HsGrid::uniform(double h_step, double s_step) {
  if (!(h_step > 0.0 && h_step < 1.0) || !(s_step > 0.0 && s_step < 1.0))
    throw std::invalid_argument("grid steps must lie in (0, 1)");
  HsGrid grid;
  const long kmax = static_cast<long>(std::ceil(1.0 / h_step));
  for (long k = -kmax; k <= kmax; ++k) {
    const double h = k * h_step;
    if (k != 0 && std::abs(h) < 1.0) grid.h_values.push_back(h);
  }
  const long lmax = static_cast<long>(std::ceil(1.0 / s_step));
  for (long l = 1; l <= lmax; ++l) {
    const double s = l * s_step;
    if (s < 1.0) grid.s_values.push_back(s);
  }
  return grid;
}

void HsGrid::validate() const {
  if (h_values.empty() || s_values.empty()) throw std::invalid_argument("empty (h, s) grid");
  for (double h : h_values) check_h(h);
  for (double s : s_values) check_s(s);
}

//------------------------------------------------------------------------------

double wwb_hs(const ToneModel& model, double h, double s) {
  check_h(h);
  check_s(s);
  const int n = model.n_samples();
  return finish(log_modified_wwb(model.snr(), tone_v(h, n), tone_v(2.0 * h, n), h, s,
                                 indicator_integrals(h)),
                "wwb_hs");
}

double bzb_h(const ToneModel& model, double h) {
  check_h(h);
  const int n = model.n_samples();
  return finish(log_modified_wwb(model.snr(), tone_v(h, n), tone_v(2.0 * h, n), h, 1.0,
                                 indicator_integrals(h)),
                "bzb_h");
}

ShiftIntegrals shift_integrals(const WeightFamily& w, double h, const QuadratureSpec& quad) {
  check_h(h);
  check_unit_support(w);
  if (w.kind() == WeightKind::indicator) return indicator_integrals(h);

  const std::vector<double> bps = w.breakpoints();
  std::vector<double> cross_cuts = bps;
  for (double b : bps) cross_cuts.push_back(b - h);
  auto q = [&w](double t) { return w.eval(t); };
  auto q2 = [&w](double t) {
    const double v = w.eval(t);
    return v * v;
  };
  auto qq = [&w, h](double t) { return w.eval(t) * w.eval(t + h); };

  ShiftIntegrals out;
  if (h >= 0.0) {
    out.mass = integrate_on(q, h, 1.0, bps, quad);
    out.energy = integrate_on(q2, h, 1.0, bps, quad);
    out.cross = h >= 0.5 ? 0.0 : integrate_on(qq, h, 1.0 - h, cross_cuts, quad);
  } else {
    out.mass = integrate_on(q, 0.0, 1.0 + h, bps, quad);
    out.energy = integrate_on(q2, 0.0, 1.0 + h, bps, quad);
    out.cross = h <= -0.5 ? 0.0 : integrate_on(qq, -h, 1.0 + h, cross_cuts, quad);
  }
  return out;
}

double mod_wwb_hs(const ToneModel& model, const WeightFamily& w, double h, double s,
                  const QuadratureSpec& quad) {
  check_s(s);
  const ShiftIntegrals in = shift_integrals(w, h, quad);
  const int n = model.n_samples();
  return finish(log_modified_wwb(model.snr(), tone_v(h, n), tone_v(2.0 * h, n), h, s, in),
                "mod_wwb_hs");
}

double mod_bzb_h(const ToneModel& model, const WeightFamily& w, double h,
                 const QuadratureSpec& quad) {
  const ShiftIntegrals in = shift_integrals(w, h, quad);
  const int n = model.n_samples();
  return finish(log_modified_wwb(model.snr(), tone_v(h, n), tone_v(2.0 * h, n), h, 1.0, in),
                "mod_bzb_h");
}

double bmzb_q1(const ToneModel& model, double delta) {
  if (!(delta > 0.0 && delta <= 0.5))
    throw std::invalid_argument("bmzb_q1 requires 0 < delta <= 0.5");
  const double c = tone_deriv_energy(model);
  const double num = (1.0 - delta) * (1.0 - delta);
  return num / (kPi * kPi / (4.0 * delta) + c * (1.0 - 1.25 * delta));
}

double bmzb_q2(const ToneModel& model, double alpha) {
  if (!(alpha > 1.5) || !std::isfinite(alpha))
    throw std::domain_error("bmzb_q2 requires alpha > 3/2");
  const double c = tone_deriv_energy(model);
  const double log_num = 4.0 * ln_gamma(alpha) - 2.0 * ln_gamma(2.0 * alpha);
  // E[(q')^2] = 2 (alpha-1)^2 [G(2a-3) G(2a-1) - G(2a-2)^2] / G(4(a-1))
  const double lg4 = ln_gamma(4.0 * (alpha - 1.0));
  const std::array<ExpTerm, 2> bracket = {
      ExpTerm{1.0, ln_gamma(2.0 * alpha - 3.0) + ln_gamma(2.0 * alpha - 1.0) - lg4},
      ExpTerm{-1.0, 2.0 * ln_gamma(2.0 * (alpha - 1.0)) - lg4}};
  const LogMagnitude slope = signed_exp_sum(bracket);
  if (slope.sign <= 0) throw std::domain_error("bmzb_q2: cancellation in the slope term");
  const double log_slope = std::log(2.0) + 2.0 * std::log(alpha - 1.0) + slope.log_abs;
  // E[c q^2] = c G(2a-1)^2 / G(2(2a-1))
  const double log_info =
      std::log(c) + 2.0 * ln_gamma(2.0 * alpha - 1.0) - ln_gamma(2.0 * (2.0 * alpha - 1.0));
  const std::array<ExpTerm, 2> den = {ExpTerm{1.0, log_slope}, ExpTerm{1.0, log_info}};
  return std::exp(log_num - signed_exp_sum(den).log_abs);
}

double bmzb_ub(const ToneModel& model) {
  const double n = model.n_samples();
  return 3.0 / (4.0 * kPi * kPi * (n - 1.0) * (2.0 * n - 1.0) * n * model.snr());
}

//------------------------------------------------------------------------------

ShiftIntegralTable::ShiftIntegralTable(const WeightFamily& w, std::vector<double> h_values,
                                       const QuadratureSpec& quad)
    : h_values_(std::move(h_values)) {
  integrals_.reserve(h_values_.size());
  for (double h : h_values_) integrals_.push_back(shift_integrals(w, h, quad));
}

ShiftIntegralTable ShiftIntegralTable::indicator(std::vector<double> h_values) {
  ShiftIntegralTable table;
  table.h_values_ = std::move(h_values);
  for (double h : table.h_values_) {
    check_h(h);
    table.integrals_.push_back(indicator_integrals(h));
  }
  return table;
}

BoundResult wwb_sup(const ToneModel& model, const HsGrid& grid) {
  grid.validate();
  return sup_over(model, ShiftIntegralTable::indicator(grid.h_values), grid.s_values, true);
}

BoundResult bzb_sup(const ToneModel& model, std::span<const double> h_values) {
  const std::array<double, 1> one = {1.0};
  return sup_over(model, ShiftIntegralTable::indicator({h_values.begin(), h_values.end()}), one,
                  false);
}

BoundResult mod_wwb_sup(const ToneModel& model, const WeightFamily& w, const HsGrid& grid,
                        const QuadratureSpec& quad) {
  grid.validate();
  return mod_wwb_sup(model, ShiftIntegralTable(w, grid.h_values, quad), grid.s_values);
}

BoundResult mod_bzb_sup(const ToneModel& model, const WeightFamily& w,
                        std::span<const double> h_values, const QuadratureSpec& quad) {
  return mod_bzb_sup(model, ShiftIntegralTable(w, {h_values.begin(), h_values.end()}, quad));
}

BoundResult mod_wwb_sup(const ToneModel& model, const ShiftIntegralTable& table,
                        std::span<const double> s_values) {
  if (s_values.empty()) throw std::invalid_argument("empty s grid");
  for (double s : s_values) check_s(s);
  return sup_over(model, table, s_values, true);
}

BoundResult mod_bzb_sup(const ToneModel& model, const ShiftIntegralTable& table) {
  const std::array<double, 1> one = {1.0};
  return sup_over(model, table, one, false);
}

BoundResult bcrb_q1_sup(const ToneModel& model, ParamRange delta_range) {
  if (!(delta_range.hi <= 0.5)) throw std::invalid_argument("delta range must lie in (0, 0.5]");
  return log_scan_max([&model](double d) { return bmzb_q1(model, std::min(d, 0.5)); },
                      delta_range, "delta");
}

BoundResult bcrb_q2_sup(const ToneModel& model, ParamRange alpha_range) {
  if (!(alpha_range.lo > 1.5)) throw std::invalid_argument("alpha range must lie in (1.5, inf)");
  return log_scan_max(
      [&model, &alpha_range](double a) { return bmzb_q2(model, std::max(a, alpha_range.lo)); },
      alpha_range, "alpha");
}

BoundResult bcrb_sup(const ToneModel& model, ParamRange delta_range, ParamRange alpha_range) {
  BoundResult q1 = bcrb_q1_sup(model, delta_range);
  BoundResult q2 = bcrb_q2_sup(model, alpha_range);
  BoundResult& best = q1.value >= q2.value ? q1 : q2;
  best.arg["family"] = (&best == &q1) ? 1.0 : 2.0;
  return best;
}

}  // namespace bayes_bounds
