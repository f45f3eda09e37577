#include "bayes_bounds/numerics.hpp"

#include <algorithm>
#include <array>
#include <numbers>
#include <queue>
#include <sstream>

namespace bayes_bounds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

LogMagnitude LogMagnitude::from_value(double x) {
  if (x == 0.0) return zero();
  return {std::log(std::abs(x)), x > 0.0 ? 1 : -1};
}

double LogMagnitude::value() const {
  if (sign == 0) return 0.0;
  return sign * std::exp(log_abs);
}

LogMagnitude operator*(LogMagnitude a, LogMagnitude b) {
  if (a.sign == 0 || b.sign == 0) return LogMagnitude::zero();
  return {a.log_abs + b.log_abs, a.sign * b.sign};
}

LogMagnitude operator/(LogMagnitude a, LogMagnitude b) {
  if (b.sign == 0) throw std::domain_error("LogMagnitude division by zero");
  if (a.sign == 0) return LogMagnitude::zero();
  return {a.log_abs - b.log_abs, a.sign * b.sign};
}

//------------------------------------------------------------------------------
// ln_gamma

double ln_gamma(double x) {
  if (!(x > 0.0)) {
    std::ostringstream msg;
    msg << "ln_gamma: argument must be positive, got " << x;
    throw std::domain_error(msg.str());
  }
  if (x < 0.5) {
    // Gamma(x) Gamma(1 - x) = pi / sin(pi x); sin(pi x) > 0 on (0, 0.5).
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) -
           ln_gamma(1.0 - x);
  }
  static constexpr double g = 7.0;
  static constexpr std::array<double, 9> c = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  const double z = x - 1.0;
  double series = c[0];
  for (std::size_t i = 1; i < c.size(); ++i) series += c[i] / (z + static_cast<double>(i));
  const double t = z + g + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
         std::log(series);
}

//------------------------------------------------------------------------------
// signed_exp_sum

LogMagnitude signed_exp_sum(std::span<const ExpTerm> terms) {
  if (terms.empty()) throw std::invalid_argument("signed_exp_sum: empty term list");
  double shift = -kInf;
  for (const auto& t : terms) {
    if (!std::isfinite(t.exponent) || !std::isfinite(t.coefficient))
      throw std::invalid_argument("signed_exp_sum: non-finite term");
    if (t.coefficient != 0.0) shift = std::max(shift, t.exponent);
  }
  if (shift == -kInf) return LogMagnitude::zero();

  double sum = 0.0;
  double magnitude = 0.0;
  for (const auto& t : terms) {
    if (t.coefficient == 0.0) continue;
    const double scaled = t.coefficient * std::exp(t.exponent - shift);
    sum += scaled;
    magnitude += std::abs(scaled);
  }
  if (std::abs(sum) <= kCancellationTolerance * magnitude) return LogMagnitude::zero();
  return {shift + std::log(std::abs(sum)), sum > 0.0 ? 1 : -1};
}

//------------------------------------------------------------------------------
// Quadrature

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
    throw std::invalid_argument("QuadratureSpec: tolerances must be strictly positive");
  if (max_panel_depth < 1 || max_panel_depth > 60)
    throw std::invalid_argument("QuadratureSpec: max_panel_depth must lie in [1, 60]");
}

namespace {

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  int depth;
};

template <class F>
Segment gauss_kronrod(const F& f, double a, double b, int depth, long& evals) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  std::array<double, 7> f1{};
  std::array<double, 7> f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    const double pair = f1[j] + f2[j];
    resk += kWgk[j] * pair;
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * pair;
  }
  evals += 15;
  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(f1[j] - reskh) + std::abs(f2[j] - reskh));

  const double scale = std::abs(half);
  const double value = resk * half;
  resabs *= scale;
  resasc *= scale;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps))
    err = std::max(50.0 * kEps * resabs, err);
  if (!std::isfinite(value)) err = kInf;
  return {a, b, value, err, depth};
}

constexpr std::size_t kMaxSegments = 200000;

}  // namespace

QuadratureResult integrate_adaptive(const RealFunction& f, std::span<const Panel> panels,
                                    const QuadratureSpec& spec) {
  spec.validate();

  // Every panel is integrated in a local variable t; graded ends are expanded
  // into a map t -> theta and its Jacobian.
  struct Mapped {
    Panel panel;
    bool graded_lo;
    bool graded_hi;
  };
  std::vector<Mapped> mapped;
  for (const auto& p : panels) {
    if (!std::isfinite(p.lo) || !std::isfinite(p.hi) || p.lo > p.hi)
      throw std::invalid_argument("integrate: panels must be finite with lo <= hi");
    if (!(p.grade_lo >= 1.0) || !(p.grade_hi >= 1.0))
      throw std::invalid_argument("integrate: grading exponents must be >= 1");
    if (p.lo == p.hi) continue;
    const bool glo = p.grade_lo > 1.0;
    const bool ghi = p.grade_hi > 1.0;
    if (glo && ghi) {
      const double mid = 0.5 * (p.lo + p.hi);
      mapped.push_back({{p.lo, mid, p.grade_lo, 1.0}, true, false});
      mapped.push_back({{mid, p.hi, 1.0, p.grade_hi}, false, true});
    } else {
      mapped.push_back({p, glo, ghi});
    }
  }

  QuadratureResult result;
  std::vector<std::function<double(double)>> integrands;
  integrands.reserve(mapped.size());

  for (const auto& m : mapped) {
    const Panel p = m.panel;
    const double width = p.hi - p.lo;
    if (m.graded_lo) {
      const double k = p.grade_lo;
      integrands.emplace_back([&f, p, width, k](double t) {
        if (t <= 0.0) return 0.0;
        const double tk1 = std::pow(t, k - 1.0);
        return f(p.lo + width * tk1 * t) * k * width * tk1;
      });
    } else if (m.graded_hi) {
      const double k = p.grade_hi;
      integrands.emplace_back([&f, p, width, k](double t) {
        if (t <= 0.0) return 0.0;
        const double tk1 = std::pow(t, k - 1.0);
        return f(p.hi - width * tk1 * t) * k * width * tk1;
      });
    } else {
      integrands.emplace_back([&f](double x) { return f(x); });
    }
  }

  struct Tagged {
    Segment seg;
    std::size_t which;
  };
  struct TaggedByError {
    bool operator()(const Tagged& x, const Tagged& y) const { return x.seg.error < y.seg.error; }
  };
  std::priority_queue<Tagged, std::vector<Tagged>, TaggedByError> queue;
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i < mapped.size(); ++i) {
    const bool graded = mapped[i].graded_lo || mapped[i].graded_hi;
    const double a = graded ? 0.0 : mapped[i].panel.lo;
    const double b = graded ? 1.0 : mapped[i].panel.hi;
    Segment s = gauss_kronrod(integrands[i], a, b, 0, result.evaluations);
    total += s.value;
    total_err += s.error;
    queue.push({s, i});
  }

  while (!queue.empty()) {
    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
    if (total_err <= tol) break;
    Tagged worst = queue.top();
    if (worst.seg.depth >= spec.max_panel_depth || queue.size() > kMaxSegments ||
        !std::isfinite(worst.seg.error)) {
      result.converged = false;
      break;
    }
    queue.pop();
    const double mid = 0.5 * (worst.seg.a + worst.seg.b);
    Segment left = gauss_kronrod(integrands[worst.which], worst.seg.a, mid, worst.seg.depth + 1,
                                 result.evaluations);
    Segment right = gauss_kronrod(integrands[worst.which], mid, worst.seg.b, worst.seg.depth + 1,
                                  result.evaluations);
    total += left.value + right.value - worst.seg.value;
    total_err += left.error + right.error - worst.seg.error;
    queue.push({left, worst.which});
    queue.push({right, worst.which});
  }

  // Re-sum from scratch to shed the drift of the running updates.
  double value = 0.0;
  double err = 0.0;
  while (!queue.empty()) {
    value += queue.top().seg.value;
    err += queue.top().seg.error;
    queue.pop();
  }
  result.value = value;
  result.error_estimate = err;
  if (!std::isfinite(value)) result.converged = false;
  return result;
}

double integrate(const RealFunction& f, std::span<const Panel> panels, const QuadratureSpec& spec) {
  QuadratureResult r = integrate_adaptive(f, panels, spec);
  if (!r.converged) {
    std::ostringstream msg;
    msg << "integrate: no convergence within max_panel_depth " << spec.max_panel_depth
        << " (estimate " << r.value << ", error " << r.error_estimate << ")";
    throw QuadratureError(msg.str(), r);
  }
  return r.value;
}

std::vector<Panel> panels_between(double lo, double hi, std::span<const double> breakpoints) {
  std::vector<double> cuts;
  cuts.push_back(lo);
  for (double b : breakpoints)
    if (b > lo && b < hi) cuts.push_back(b);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Panel> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) out.push_back({cuts[i], cuts[i + 1]});
  return out;
}

//------------------------------------------------------------------------------
// Golden section

GoldenResult golden_max(const RealFunction& f, double lo, double hi, double tol) {
  if (!(lo < hi)) throw std::invalid_argument("golden_max: requires lo < hi");
  if (!(tol > 0.0)) throw std::invalid_argument("golden_max: requires tol > 0");
  auto eval = [&f](double x) {
    const double y = f(x);
    return std::isnan(y) ? -kInf : y;
  };
  constexpr double inv_phi = 0.6180339887498948482;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  for (int iter = 0; iter < 500 && (b - a) > tol; ++iter) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = eval(d);
    }
  }
  GoldenResult best = fc >= fd ? GoldenResult{c, fc} : GoldenResult{d, fd};
  // Monotone objectives peak at an end of the range.
  for (double end : {lo, hi}) {
    const double fe = eval(end);
    if (fe > best.value) best = {end, fe};
  }
  return best;
}

}  // namespace bayes_bounds
