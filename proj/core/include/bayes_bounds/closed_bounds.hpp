#pragma once

#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bayes_bounds/model.hpp"
#include "bayes_bounds/numerics.hpp"
#include "bayes_bounds/weights.hpp"

namespace bayes_bounds {

// The denominator of a WWB-type bound cancelled to within
// kCancellationTolerance of its term magnitudes (or went negative).
class DegenerateDenominator : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Test points for the (h, s) supremum searches.
struct HsGrid {
  std::vector<double> h_values;
  std::vector<double> s_values;

  // h = -1 + k/1000 for k = 1..1999 except h = 0; s = l/100 for l = 1..99.
  static HsGrid standard();
  // h = k * h_step over (-1, 1) \ {0}; s = l * s_step over (0, 1).
  static HsGrid uniform(double h_step, double s_step);

  // Throws std::invalid_argument on empty lists, h = 0, |h| >= 1 or s outside (0, 1).
  void validate() const;
};

struct BoundResult {
  double value = 0.0;
  // Natural log of value; stays finite where value underflows to 0.
  double log_value = -std::numeric_limits<double>::infinity();
  // Maximising hyperparameters: "h", "s", "delta", "alpha", and "family"
  // (1 or 2) for the combined BCRB.
  std::map<std::string, double> arg;
  // Grid points skipped because their denominator was degenerate.
  std::size_t skipped = 0;
};

// Grid points whose log value lies within this distance of the maximum are
// treated as tied; ties go to the smallest |h|, then the smallest s, then the
// smallest h. The reported value is always the exact grid maximum.
inline constexpr double kTieTolerance = 1e-10;

//------------------------------------------------------------------------------
// Pointwise single-tone bounds on the unit prior, g(theta) = theta.

// Weiss-Weinstein bound for test point h and exponent s, 0 < |h| < 1, 0 < s < 1.
double wwb_hs(const ToneModel& model, double h, double s);
// Bobrovsky-Zakai bound, the s -> 1 limit of wwb_hs.
double bzb_h(const ToneModel& model, double h);

// Integrals of the weight that enter the modified bounds for offset h:
//   mass   = int q(theta)              over {theta, theta - h in [0, 1]}
//   energy = int q(theta)^2            over the same set
//   cross  = int q(theta) q(theta + h) over {theta, theta +- h in [0, 1]}
struct ShiftIntegrals {
  double mass = 0.0;
  double energy = 0.0;
  double cross = 0.0;
};
ShiftIntegrals shift_integrals(const WeightFamily& w, double h, const QuadratureSpec& quad = {});

// Modified WWB / BZB for a weight on the unit interval.
double mod_wwb_hs(const ToneModel& model, const WeightFamily& w, double h, double s,
                  const QuadratureSpec& quad = {});
double mod_bzb_h(const ToneModel& model, const WeightFamily& w, double h,
                 const QuadratureSpec& quad = {});

// Closed-form BMZB for the sine taper q1^delta and the power taper q2^alpha.
double bmzb_q1(const ToneModel& model, double delta);
double bmzb_q2(const ToneModel& model, double alpha);
// 1 / c: the high-SNR ceiling of every BMZB on this model.
double bmzb_ub(const ToneModel& model);

//------------------------------------------------------------------------------
// Suprema

// Shift integrals of one weight precomputed for a list of h, reusable across
// SNR values.
class ShiftIntegralTable {
 public:
  ShiftIntegralTable(const WeightFamily& w, std::vector<double> h_values,
                     const QuadratureSpec& quad = {});
  static ShiftIntegralTable indicator(std::vector<double> h_values);

  std::span<const double> h_values() const { return h_values_; }
  std::span<const ShiftIntegrals> integrals() const { return integrals_; }

 private:
  ShiftIntegralTable() = default;
  std::vector<double> h_values_;
  std::vector<ShiftIntegrals> integrals_;
};

BoundResult wwb_sup(const ToneModel& model, const HsGrid& grid);
BoundResult bzb_sup(const ToneModel& model, std::span<const double> h_values);
BoundResult mod_wwb_sup(const ToneModel& model, const WeightFamily& w, const HsGrid& grid,
                        const QuadratureSpec& quad = {});
BoundResult mod_bzb_sup(const ToneModel& model, const WeightFamily& w,
                        std::span<const double> h_values, const QuadratureSpec& quad = {});
BoundResult mod_wwb_sup(const ToneModel& model, const ShiftIntegralTable& table,
                        std::span<const double> s_values);
BoundResult mod_bzb_sup(const ToneModel& model, const ShiftIntegralTable& table);

struct ParamRange {
  double lo = 0.0;
  double hi = 0.0;
};
inline constexpr ParamRange kDefaultDeltaRange{1e-9, 0.5};
inline constexpr ParamRange kDefaultAlphaRange{1.5 + 1e-6, 64.0};

// sup over delta of bmzb_q1 and over alpha of bmzb_q2: a log-spaced scan
// followed by golden-section refinement around the best scan point.
BoundResult bcrb_q1_sup(const ToneModel& model, ParamRange delta_range = kDefaultDeltaRange);
BoundResult bcrb_q2_sup(const ToneModel& model, ParamRange alpha_range = kDefaultAlphaRange);
// The larger of the two family suprema.
BoundResult bcrb_sup(const ToneModel& model, ParamRange delta_range = kDefaultDeltaRange,
                     ParamRange alpha_range = kDefaultAlphaRange);

}  // namespace bayes_bounds
