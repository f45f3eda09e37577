#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "bayes_bounds/numerics.hpp"
#include "bayes_bounds/parallel.hpp"
#include "support/oracles.hpp"

using namespace bayes_bounds;

TEST(LogMagnitude, RoundTripsSignedValues) {
  for (double x : {3.5, -2.0, 1e-300, -7e250}) {
    const auto m = LogMagnitude::from_value(x);
    EXPECT_NEAR(m.value(), x, 1e-13 * std::abs(x));
  }
  EXPECT_TRUE(LogMagnitude::from_value(0.0).is_zero());
  const auto p = LogMagnitude::from_value(-4.0) * LogMagnitude::from_value(0.5);
  EXPECT_DOUBLE_EQ(p.value(), -2.0);
  const auto q = LogMagnitude::from_value(-4.0) / LogMagnitude::from_value(-8.0);
  EXPECT_DOUBLE_EQ(q.value(), 0.5);
}

TEST(LnGamma, MatchesLibmAcrossRange) {
  for (double x : {1e-8, 0.1, 0.5, 1.0, 1.5, 2.0, 3.7, 10.0, 57.25, 170.0, 1e5}) {
    const double ref = std::lgamma(x);
    EXPECT_NEAR(ln_gamma(x), ref, 1e-13 * std::max(1.0, std::abs(ref))) << "x=" << x;
  }
}

TEST(LnGamma, IntegerFactorials) {
  double fact = 1.0;
  for (int n = 1; n <= 20; ++n) {
    EXPECT_NEAR(ln_gamma(n + 1.0), std::log(fact *= n), 1e-12 * std::log(fact) + 1e-14);
  }
}

TEST(LnGamma, RejectsNonPositive) {
  EXPECT_THROW(ln_gamma(0.0), std::domain_error);
  EXPECT_THROW(ln_gamma(-1.5), std::domain_error);
}

TEST(SignedExpSum, LargeExponentsDoNotOverflow) {
  const std::array<ExpTerm, 2> t = {ExpTerm{1.0, 1000.0}, ExpTerm{1.0, 1000.0}};
  const auto r = signed_exp_sum(t);
  EXPECT_EQ(r.sign, 1);
  EXPECT_NEAR(r.log_abs, 1000.0 + std::log(2.0), 1e-12);
}

TEST(SignedExpSum, NegativeResultAndExactCancellation) {
  const std::array<ExpTerm, 2> neg = {ExpTerm{1.0, 0.0}, ExpTerm{-3.0, 0.0}};
  EXPECT_NEAR(signed_exp_sum(neg).value(), -2.0, 1e-15);
  const std::array<ExpTerm, 2> zero = {ExpTerm{2.0, 5.0}, ExpTerm{-2.0, 5.0}};
  EXPECT_TRUE(signed_exp_sum(zero).is_zero());
}

TEST(SignedExpSum, RejectsBadInput) {
  EXPECT_THROW(signed_exp_sum(std::span<const ExpTerm>{}), std::invalid_argument);
  const std::array<ExpTerm, 1> bad = {ExpTerm{1.0, std::nan("")}};
  EXPECT_THROW(signed_exp_sum(bad), std::invalid_argument);
}

TEST(Quadrature, PolynomialAndTranscendental) {
  const auto p = panels_between(0.0, 2.0, {});
  EXPECT_NEAR(integrate([](double x) { return x * x * x; }, p), 4.0, 1e-13);
  EXPECT_NEAR(integrate([](double x) { return std::exp(-x) * std::sin(5 * x); }, p),
              oracle::simpson([](double x) { return std::exp(-x) * std::sin(5 * x); }, 0, 2, 20000),
              1e-12);
}

TEST(Quadrature, KinkNeedsBreakpoint) {
  const std::vector<double> cut = {0.3};
  auto f = [](double x) { return std::abs(x - 0.3); };
  const double exact = 0.5 * (0.09 + 0.49);
  EXPECT_NEAR(integrate(f, panels_between(0.0, 1.0, cut)), exact, 1e-14);
}

TEST(Quadrature, GradedEndAbsorbsSqrtSingularity) {
  Panel p{0.0, 1.0, 4.0, 1.0};
  const std::array<Panel, 1> panels = {p};
  const double v = integrate([](double x) { return 1.0 / std::sqrt(x); }, panels);
  EXPECT_NEAR(v, 2.0, 1e-10);
}

TEST(Quadrature, ReportsNonConvergence) {
  QuadratureSpec spec;
  spec.max_panel_depth = 2;
  spec.rel_tol = 1e-14;
  spec.abs_tol = 1e-300;
  const auto p = panels_between(0.0, 1.0, {});
  auto f = [](double x) { return std::sin(1.0 / (x + 1e-3)); };
  const auto r = integrate_adaptive(f, p, spec);
  EXPECT_FALSE(r.converged);
  EXPECT_THROW(integrate(f, p, spec), QuadratureError);
}

TEST(QuadratureSpec, Validation) {
  QuadratureSpec s;
  EXPECT_NO_THROW(s.validate());
  s.rel_tol = 0.0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
}

TEST(GoldenMax, FindsInteriorAndEndpointMaxima) {
  const auto r = golden_max([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0, 1e-10);
  EXPECT_NEAR(r.x, 0.3, 1e-8);
  const auto e = golden_max([](double x) { return x; }, 0.0, 1.0, 1e-10);
  EXPECT_EQ(e.x, 1.0);
}

TEST(ParallelFor, CoversRangeOnceAndPropagatesErrors) {
  set_max_threads(4);
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) ++hits[i];
  });
  for (int h : hits) EXPECT_EQ(h, 1);
  EXPECT_THROW(parallel_for(10, [](std::size_t, std::size_t) { throw std::runtime_error("x"); }),
               std::runtime_error);
  set_max_threads(0);
}
