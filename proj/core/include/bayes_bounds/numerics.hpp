#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace bayes_bounds {

// A real number stored as sign * exp(log_abs). sign == 0 means exactly zero.
struct LogMagnitude {
  double log_abs = -std::numeric_limits<double>::infinity();
  int sign = 0;

  static LogMagnitude zero() { return {}; }
  static LogMagnitude from_value(double x);

  bool is_zero() const { return sign == 0; }
  // May underflow to 0 or overflow to +-inf; the stored pair never does.
  double value() const;
};

LogMagnitude operator*(LogMagnitude a, LogMagnitude b);
LogMagnitude operator/(LogMagnitude a, LogMagnitude b);

// ln(Gamma(x)) for x > 0. Lanczos approximation (g = 7, 9 terms) with the
// reflection formula below 0.5. Throws std::domain_error for x <= 0.
double ln_gamma(double x);

struct ExpTerm {
  double coefficient = 0.0;
  double exponent = 0.0;
};

// Sums below this fraction of the summed term magnitudes are reported as
// an exact zero (sign 0).
inline constexpr double kCancellationTolerance = 1e-15;

// sum_i c_i * exp(e_i), shifted by max e_i so that no intermediate overflows.
// Requires a non-empty list with finite exponents (std::invalid_argument).
LogMagnitude signed_exp_sum(std::span<const ExpTerm> terms);

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_panel_depth = 40;

  // Throws std::invalid_argument unless both tolerances are positive and
  // 1 <= max_panel_depth <= 60.
  void validate() const;
};

// An integration panel [lo, hi]. A grading exponent k > 1 at an end maps
// the panel through theta = end +- (hi - lo) * t^k, which clusters nodes
// toward that end and absorbs integrable algebraic endpoint singularities.
struct Panel {
  double lo = 0.0;
  double hi = 0.0;
  double grade_lo = 1.0;
  double grade_hi = 1.0;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = true;
  long evaluations = 0;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, QuadratureResult partial)
      : std::runtime_error(what), partial_(partial) {}
  const QuadratureResult& partial() const noexcept { return partial_; }

 private:
  QuadratureResult partial_;
};

using RealFunction = std::function<double(double)>;

// Globally adaptive Gauss-Kronrod (7/15) quadrature over each panel, summed.
// Never throws on non-convergence; the result carries converged = false.
QuadratureResult integrate_adaptive(const RealFunction& f,
                                    std::span<const Panel> panels,
                                    const QuadratureSpec& spec = {});

// As integrate_adaptive, but throws QuadratureError (carrying the partial
// estimate) when the tolerance cannot be met within max_panel_depth.
double integrate(const RealFunction& f, std::span<const Panel> panels,
                 const QuadratureSpec& spec = {});

// Splits [lo, hi] at the given interior points (sorted, deduplicated; points
// outside the interval are ignored) into plain panels.
std::vector<Panel> panels_between(double lo, double hi,
                                  std::span<const double> breakpoints);

struct GoldenResult {
  double x = 0.0;
  double value = 0.0;
};

// Golden-section maximisation of f on [lo, hi] down to a bracket of width tol.
GoldenResult golden_max(const RealFunction& f, double lo, double hi,
                        double tol);

}  // namespace bayes_bounds
