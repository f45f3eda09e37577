#pragma once

#include <memory>
#include <span>
#include <vector>

#include "bayes_bounds/model.hpp"
#include "bayes_bounds/numerics.hpp"
#include "bayes_bounds/weights.hpp"

namespace bayes_bounds {

// A Gaussian mean model with a uniform prior, a weight and an estimand.
// The weight must live on the prior's support.
struct BlbProblem {
  std::shared_ptr<const MeanModel> mean;
  UniformPrior prior = UniformPrior::unit();
  WeightFamily weight = WeightFamily::indicator();
  EstimandFn estimand = EstimandFn::identity();
  QuadratureSpec quad{};

  // Throws std::invalid_argument on a missing model or estimand, a weight on
  // a different support, or an estimand that is not finite on the support.
  void validate() const;

  // Single tone on [0, 1] with g(theta) = theta.
  static BlbProblem tone(const ToneModel& model, WeightFamily weight = WeightFamily::indicator(),
                         QuadratureSpec quad = {});
};

struct BlbValue {
  double value = 0.0;
  // The support never meets its h-shift; value is exactly 0.
  bool empty_overlap = false;
};

// Modified WWB for test point h and exponent s in (0, 1]; s = 1 gives the
// modified BZB. The observation integral is done in closed form through
//   E_x|theta[(p(x|t') / p(x|theta))^s] = exp((s^2 - s) D(t', theta)),
// D = diff_energy, leaving one-dimensional integrals over the overlap sets
//   O-  = {theta in S : theta - h in S}
//   O+  = {theta in S : theta + h in S}
//   O+- = O+ intersect O-
// which are built by interval arithmetic. Throws DegenerateDenominator.
BlbValue blb_eval(const BlbProblem& prob, double h, double s);

// (E[g' q])^2 / (E[(q')^2] + E[c q^2]), c = 2 ||dm/dtheta||^2 / sigma^2.
// Requires a weight vanishing at every support end (std::invalid_argument).
// Models without an analytic derivative energy use a finite difference with
// step 1e-6 * total_length, which limits accuracy to about 1e-5.
double bmzb_general(const BlbProblem& prob);

struct LimitProbeRow {
  double h = 0.0;
  double plus = 0.0;          // blb_eval(h, s)
  double minus = 0.0;         // blb_eval(-h, s)
  double plus_mirror = 0.0;   // blb_eval(h, 1 - s)
  double minus_mirror = 0.0;  // blb_eval(-h, 1 - s)
};

// blb_eval along a strictly decreasing positive h sequence, at both signs of
// h and at both s and 1 - s (s in (0, 1)).
std::vector<LimitProbeRow> limit_probe(const BlbProblem& prob, double s,
                                       std::span<const double> h_sequence);

}  // namespace bayes_bounds
