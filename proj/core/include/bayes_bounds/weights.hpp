#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "bayes_bounds/model.hpp"

namespace bayes_bounds {

enum class WeightKind { indicator, sine_taper, power_taper, tabulated };

struct WeightSample {
  double value = 0.0;
  double deriv = 0.0;
};

struct WeightKnot {
  double theta = 0.0;
  double q = 0.0;
};

// Weight q(theta) used by the modified WWB/BZB and BMZB families. The
// built-in shapes are defined on the unit interval and mapped affinely onto
// each interval of the support; q is zero outside the support.
//
//   indicator     q = 1
//   sine_taper    q1^delta: half-sine ramps of width delta at both ends,
//                 plateau of 1 in between, 0 < delta <= 1/2
//   power_taper   q2^alpha = u^(alpha-1) (1-u)^(alpha-1), alpha > 3/2
//   tabulated     linear interpolation of (theta, q) knots, 0 beyond them
class WeightFamily {
 public:
  static WeightFamily indicator(UniformPrior support = UniformPrior::unit());
  static WeightFamily sine_taper(double delta, UniformPrior support = UniformPrior::unit());
  static WeightFamily power_taper(double alpha, UniformPrior support = UniformPrior::unit());
  static WeightFamily tabulated(std::vector<WeightKnot> knots,
                                UniformPrior support = UniformPrior::unit());

  WeightKind kind() const;
  // delta for sine_taper, alpha for power_taper, NaN otherwise.
  double parameter() const;
  // Short name in the command line syntax, e.g. "q1:0.25".
  std::string label() const;
  const UniformPrior& support() const { return support_; }

  double eval(double theta) const;
  // Analytic derivative; the right-hand one at breakpoints. Infinite at the
  // support ends for power_taper with alpha < 2.
  double deriv(double theta) const;
  // q and q' at distance `offset` inside support interval `interval`, measured
  // from its upper end when from_hi is set. The built-in shapes work from the
  // offset itself, so they stay exact where theta = hi - offset would round.
  // 0 <= offset <= half the interval length.
  WeightSample at_end_offset(std::size_t interval, double offset, bool from_hi) const;
  // Sorted points inside the support (ends included) where q or q' is not smooth.
  std::vector<double> breakpoints() const;
  // True iff q -> 0 at both ends of every support interval.
  bool endpoint_vanishing() const;
  // Grading exponent for quadrature panels touching a support end, chosen so
  // that (q')^2 becomes smooth in the mapped variable.
  double endpoint_grading() const;

 private:
  struct Indicator {};
  struct SineTaper {
    double delta;
  };
  struct PowerTaper {
    double alpha;
  };
  struct Tabulated {
    std::vector<WeightKnot> knots;
  };
  using Shape = std::variant<Indicator, SineTaper, PowerTaper, Tabulated>;

  WeightFamily(Shape shape, UniformPrior support)
      : shape_(std::move(shape)), support_(std::move(support)) {}

  Shape shape_;
  UniformPrior support_;
};

// Two-column CSV (theta, q), optional header row, strictly increasing theta.
std::vector<WeightKnot> parse_weight_table(std::istream& in);
WeightFamily load_weight_table(const std::filesystem::path& path,
                               UniformPrior support = UniformPrior::unit());

}  // namespace bayes_bounds
