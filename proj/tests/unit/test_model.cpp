#include <gtest/gtest.h>

#include <cmath>

#include "bayes_bounds/model.hpp"
#include "support/oracles.hpp"

using namespace bayes_bounds;

TEST(ToneV, ClosedFormMatchesDirectSum) {
  for (int n : {2, 4, 8, 32}) {
    for (double h : {1e-9, 1e-7, 3e-6, 1e-3, 0.1, 1.0 / 3.0, 0.5, 0.77, -0.4, 1.2}) {
      const double ref = oracle::v_direct(h, n);
      EXPECT_NEAR(tone_v(h, n), ref, 1e-12 * std::max(1.0, ref)) << "n=" << n << " h=" << h;
    }
  }
}

TEST(ToneV, EvenPeriodicAndBounded) {
  for (double h : {0.01, 0.2, 0.45}) {
    EXPECT_NEAR(tone_v(h, 32), tone_v(-h, 32), 1e-12);
    EXPECT_NEAR(tone_v(h, 32), tone_v(h + 1.0, 32), 1e-10);
    EXPECT_LE(tone_v(h, 32), 2.0 * 32);
  }
  EXPECT_EQ(tone_v(0.0, 32), 0.0);
  EXPECT_EQ(tone_v(1.0, 32), 0.0);
}

TEST(ToneModel, DiffEnergyIsTwoRhoV) {
  const ToneModel m(8, 2.5);
  for (double d : {0.05, 0.3, 0.9}) {
    EXPECT_NEAR(tone_diff_energy(0.1 + d, 0.1, m), oracle::diff_energy_direct(0.1 + d, 0.1, 8, 2.5),
                1e-11);
  }
}

TEST(ToneModel, FisherInformation) {
  const ToneModel m(32, 1.0);
  EXPECT_NEAR(tone_deriv_energy(m), oracle::fisher_direct(32, 1.0), 1e-9 * tone_deriv_energy(m));
}

TEST(ToneModel, RejectsBadParameters) {
  EXPECT_THROW(ToneModel(1, 1.0), std::invalid_argument);
  EXPECT_THROW(ToneModel(8, 0.0), std::invalid_argument);
  EXPECT_THROW(ToneModel(8, INFINITY), std::invalid_argument);
  EXPECT_NEAR(ToneModel::from_db(8, 20.0).snr(), 100.0, 1e-12);
}

TEST(UniformPrior, UnionOfIntervals) {
  const UniformPrior p({{0.0, 0.4}, {0.6, 1.0}});
  EXPECT_DOUBLE_EQ(p.total_length(), 0.8);
  EXPECT_TRUE(p.contains(0.2));
  EXPECT_FALSE(p.contains(0.5));
  EXPECT_DOUBLE_EQ(p.density(0.7), 1.25);
  EXPECT_THROW(UniformPrior({{0.0, 0.5}, {0.5, 1.0}}), std::invalid_argument);
  EXPECT_THROW(UniformPrior({}), std::invalid_argument);
}

TEST(UniformPrior, VarianceMatchesQuadrature) {
  EXPECT_NEAR(prior_variance(UniformPrior::unit()), 1.0 / 12.0, 1e-15);
  const UniformPrior p({{0.0, 0.4}, {0.6, 1.0}});
  const double mean = 0.5;
  auto f = [&](double t) { return p.contains(t) ? (t - mean) * (t - mean) / 0.8 : 0.0; };
  EXPECT_NEAR(prior_variance(p), oracle::midpoint(f, 0.0, 1.0, 1000000), 1e-9);
}

TEST(UniformPrior, ShiftedOverlap) {
  EXPECT_NEAR(shifted_overlap(UniformPrior::unit(), 0.3), 0.7, 1e-15);
  const UniformPrior p({{0.0, 0.4}, {0.6, 1.0}});
  // {t in S : t - 0.5 in S} = [0.6, 0.9]
  EXPECT_NEAR(shifted_overlap(p, 0.5), 0.3 / 0.8, 1e-15);
  EXPECT_EQ(shifted_overlap(p, 1.5), 0.0);
}

TEST(MeanModel, FiniteDifferenceFallback) {
  struct Linear final : MeanModel {
    double diff_energy(double a, double b) const override { return 9.0 * (a - b) * (a - b); }
  };
  Linear m;
  EXPECT_NEAR(deriv_energy(m, 0.3, 1e-4), 9.0, 1e-9);
  const ToneMeanModel tone(ToneModel(8, 1.0));
  EXPECT_NEAR(*tone.analytic_deriv_energy(0.2), 0.5 * tone_deriv_energy(ToneModel(8, 1.0)), 1e-9);
}
