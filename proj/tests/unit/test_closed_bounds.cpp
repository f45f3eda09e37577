#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bayes_bounds/closed_bounds.hpp"
#include "bayes_bounds/general_blb.hpp"
#include "support/oracles.hpp"

using namespace bayes_bounds;

namespace {

constexpr double kZeroSnr = 1e-12;
// Small enough that the Fisher term is below double resolution of the prior term.
constexpr double kVanishingSnr = 1e-20;
constexpr double kPriorVar = 1.0 / 12.0;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(WwbHs, ZeroSnrValue) {
  const ToneModel m(32, kZeroSnr);
  for (double s : {0.1, 0.5, 0.9}) EXPECT_NEAR(wwb_hs(m, 1.0 / 3.0, s), 2.0 / 27.0, 1e-6);
}

TEST(WwbHs, HalfExponentSpecialisation) {
  const ToneModel m(16, 0.7);
  for (double h : {0.05, -0.2, 0.4, 0.7}) {
    const double a = std::abs(h);
    const double v1 = tone_v(h, 16);
    const double v2 = tone_v(2 * h, 16);
    const double hand = h * h * (1 - a) * (1 - a) * std::exp(-0.7 * v1) /
                        (2 * (1 - a) - 2 * std::exp(-0.5 * 0.7 * v2) * std::max(1 - 2 * a, 0.0));
    EXPECT_NEAR(wwb_hs(m, h, 0.5), hand, 1e-12 * hand) << "h=" << h;
  }
}

TEST(WwbHs, MatchesDirectEvaluationWhereItDoesNotOverflow) {
  for (double rho : {0.01, 0.3, 2.0}) {
    const ToneModel m(8, rho);
    for (double h : {-0.7, -0.15, 0.02, 0.3, 0.55}) {
      for (double s : {0.2, 0.5, 0.85}) {
        EXPECT_LT(rel(wwb_hs(m, h, s), oracle::wwb_direct(8, rho, h, s)), 1e-10);
      }
    }
  }
}

TEST(WwbHs, PreconditionsAndDegeneracy) {
  const ToneModel m(32, 1.0);
  EXPECT_THROW(wwb_hs(m, 0.0, 0.5), std::invalid_argument);
  EXPECT_THROW(wwb_hs(m, 1.0, 0.5), std::invalid_argument);
  EXPECT_THROW(wwb_hs(m, 0.1, 1.0), std::invalid_argument);
  EXPECT_THROW(wwb_hs(ToneModel(32, kZeroSnr), 1e-17, 0.5), DegenerateDenominator);
}

TEST(BzbH, ZeroSnrAndLimits) {
  EXPECT_NEAR(bzb_h(ToneModel(32, kZeroSnr), 1.0 / 3.0), 2.0 / 27.0, 1e-6);
  const ToneModel m(32, 1.0);
  // First order in 1 - s with a constant near 270 here, so 0.999 is only ~27%.
  EXPECT_LT(rel(wwb_hs(m, 0.1, 1 - 1e-5), bzb_h(m, 0.1)), 1e-2);
  EXPECT_LT(rel(wwb_hs(m, 0.1, 1 - 1e-6), bzb_h(m, 0.1)), 1e-3);
  const double c = tone_deriv_energy(m);
  for (double h : {1e-4, 3e-5, -1e-5}) {
    EXPECT_LT(rel(bzb_h(m, h), 1.0 / (2.0 / std::abs(h) + c)), 1e-2) << "h=" << h;
  }
}

TEST(ShiftIntegrals, IndicatorAndQuadratureAgree) {
  const auto tab = WeightFamily::tabulated({{0.0, 1.0}, {1.0, 1.0}});
  for (double h : {-0.8, -0.3, 0.1, 0.5, 0.6}) {
    const auto a = shift_integrals(WeightFamily::indicator(), h);
    const auto b = shift_integrals(tab, h);
    EXPECT_NEAR(a.mass, b.mass, 1e-13);
    EXPECT_NEAR(a.energy, b.energy, 1e-13);
    EXPECT_NEAR(a.cross, b.cross, 1e-13);
  }
}

TEST(ShiftIntegrals, SineTaperAgainstMidpointRule) {
  const auto w = WeightFamily::sine_taper(0.3);
  auto q = [&](double t) { return w.eval(t); };
  for (double h : {0.2, -0.35}) {
    const auto r = shift_integrals(w, h);
    const double lo = h > 0 ? h : 0.0;
    const double hi = h > 0 ? 1.0 : 1.0 + h;
    EXPECT_NEAR(r.mass, oracle::midpoint(q, lo, hi, 200000), 1e-9);
    EXPECT_NEAR(r.cross,
                oracle::midpoint([&](double t) { return q(t) * q(t + h); }, std::abs(h),
                                 1.0 - std::abs(h), 200000),
                1e-9);
  }
  EXPECT_EQ(shift_integrals(w, 0.5).cross, 0.0);
}

TEST(ModWwbHs, IndicatorReducesToWwb) {
  const ToneModel m(32, 1.0);
  const auto w = WeightFamily::indicator();
  for (double h : {-0.4, 0.1, 0.6})
    for (double s : {0.3, 0.5, 0.7}) EXPECT_LT(rel(mod_wwb_hs(m, w, h, s), wwb_hs(m, h, s)), 1e-10);
  for (double h : {-0.4, 0.1}) EXPECT_LT(rel(mod_bzb_h(m, w, h), bzb_h(m, h)), 1e-10);
}

TEST(ModWwbHs, SineTaperMatchesEngine) {
  const ToneModel m(32, 1.0);
  const auto w = WeightFamily::sine_taper(0.5);
  const double engine = blb_eval(BlbProblem::tone(m, w), 0.1, 0.5).value;
  EXPECT_LT(rel(mod_wwb_hs(m, w, 0.1, 0.5), engine), 1e-6);
}

TEST(ModWwbHs, ApproachesModBzbAsSGoesToOne) {
  const ToneModel m(32, 1.0);
  const auto w = WeightFamily::sine_taper(0.5);
  EXPECT_LT(rel(mod_wwb_hs(m, w, 0.1, 1 - 1e-5), mod_bzb_h(m, w, 0.1)), 1e-2);
  EXPECT_LT(rel(mod_wwb_hs(m, w, 0.1, 1 - 1e-6), mod_bzb_h(m, w, 0.1)), 1e-3);
  double prev = INFINITY;
  for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const double d = std::abs(mod_wwb_hs(m, w, 0.1, 1 - eps) - mod_bzb_h(m, w, 0.1));
    EXPECT_LT(d, prev);
    prev = d;
  }
}

TEST(ModBzbH, SmallShiftNearBmzb) {
  const ToneModel m(8, 1.0);
  const auto w = WeightFamily::sine_taper(0.5);
  EXPECT_LT(rel(mod_bzb_h(m, w, 1e-3), bmzb_q1(m, 0.5)), 0.1);
}

TEST(BmzbQ1, ClosedFormValuesAndCeiling) {
  EXPECT_NEAR(bmzb_q1(ToneModel(32, kVanishingSnr), 0.5), 1.0 / (2 * oracle::kPi * oracle::kPi), 1e-12);
  for (double rho : {1e-3, 1.0, 1e3})
    for (double d : {1e-6, 1e-3, 0.1, 0.5})
      EXPECT_LE(bmzb_q1(ToneModel(32, rho), d), 4 * d / (oracle::kPi * oracle::kPi));
  EXPECT_THROW(bmzb_q1(ToneModel(32, 1.0), 0.0), std::invalid_argument);
}

TEST(BmzbQ1, MatchesEngine) {
  const ToneModel m(8, 1.0);
  const double engine = bmzb_general(BlbProblem::tone(m, WeightFamily::sine_taper(0.25)));
  EXPECT_LT(rel(bmzb_q1(m, 0.25), engine), 1e-8);
}

TEST(BmzbQ2, ZeroSnrReachesPriorVariance) {
  EXPECT_NEAR(bmzb_q2(ToneModel(32, kVanishingSnr), 2.0), kPriorVar, 1e-10);
}

TEST(BmzbQ2, MatchesBetaFunctionOracleAndEngine) {
  for (double a : {1.6, 2.0, 3.0, 5.0}) {
    const ToneModel m(32, 1.0);
    const double v = bmzb_q2(m, a);
    EXPECT_GT(v, 0.0);
    EXPECT_TRUE(std::isfinite(v));
    EXPECT_LT(rel(v, oracle::q2_bmzb_beta(a, tone_deriv_energy(m))), 1e-10) << "alpha=" << a;
  }
  const ToneModel m(8, 1.0);
  const double engine = bmzb_general(BlbProblem::tone(m, WeightFamily::power_taper(2.5)));
  EXPECT_LT(rel(bmzb_q2(m, 2.5), engine), 1e-7);
  EXPECT_THROW(bmzb_q2(m, 1.5), std::domain_error);
}

TEST(BmzbUb, ValueScalingAndCeiling) {
  const ToneModel m(32, 1.0);
  const double pi2 = oracle::kPi * oracle::kPi;
  EXPECT_NEAR(bmzb_ub(m), 3.0 / (4 * pi2 * 31 * 63 * 32), 1e-20);
  EXPECT_NEAR(bmzb_ub(ToneModel(32, 2.0)), 0.5 * bmzb_ub(m), 1e-20);
  EXPECT_NEAR(bmzb_ub(m), 1.0 / tone_deriv_energy(m), 1e-20);
  for (double d = 1e-4; d <= 0.5; d *= 1.5) EXPECT_LE(bmzb_q1(m, d), bmzb_ub(m));
  for (double a = 1.51; a < 64; a *= 1.3) EXPECT_LE(bmzb_q2(m, a), bmzb_ub(m));
}

TEST(WwbSup, ZeroSnrMaximiser) {
  const ToneModel m(32, kZeroSnr);
  const auto r = wwb_sup(m, HsGrid::standard());
  EXPECT_NEAR(r.value, 2.0 / 27.0, 1e-4);
  EXPECT_NEAR(std::abs(r.arg.at("h")), 1.0 / 3.0, 1e-3);
  const auto b = bzb_sup(m, HsGrid::standard().h_values);
  EXPECT_NEAR(b.value, 2.0 / 27.0, 1e-4);
  EXPECT_NEAR(std::abs(b.arg.at("h")), 1.0 / 3.0, 1e-3);
}

TEST(WwbSup, IsTheGridMaximum) {
  const ToneModel m(32, 0.05);
  const HsGrid g = HsGrid::uniform(0.01, 0.05);
  const auto r = wwb_sup(m, g);
  for (double h : g.h_values) {
    for (double s : g.s_values) {
      try {
        EXPECT_LE(wwb_hs(m, h, s), r.value * (1 + 1e-12));
      } catch (const DegenerateDenominator&) {
      }
    }
  }
  EXPECT_NEAR(wwb_hs(m, r.arg.at("h"), r.arg.at("s")), r.value, 1e-15);
}

TEST(WwbSup, FineSmallShiftGridReachesBmzbUbAtHighSnr) {
  // The default grid starts at |h| = 1e-3, far outside the local error scale
  // at +20 dB; shifts comparable to that scale recover the ceiling.
  const ToneModel m = ToneModel::from_db(32, 20.0);
  HsGrid g;
  for (double h = 1e-7; h < 1e-3; h *= 1.05) {
    g.h_values.push_back(h);
    g.h_values.push_back(-h);
  }
  g.s_values = HsGrid::standard().s_values;
  EXPECT_LT(rel(wwb_sup(m, g).value, bmzb_ub(m)), 0.05);
}

TEST(Sups, OrderingAndIndicatorEquivalence) {
  const HsGrid g = HsGrid::uniform(5e-3, 0.01);
  for (double db : {-10.0, 0.0, 10.0}) {
    const ToneModel m = ToneModel::from_db(32, db);
    const auto w = wwb_sup(m, g);
    const auto b = bzb_sup(m, g.h_values);
    EXPECT_GE(w.value, b.value - 1e-12);
    const auto mw = mod_wwb_sup(m, WeightFamily::indicator(), g);
    const auto mb = mod_bzb_sup(m, WeightFamily::indicator(), g.h_values);
    EXPECT_EQ(mw.value, w.value);
    EXPECT_EQ(mb.value, b.value);
    for (double v : {w.value, b.value}) EXPECT_LE(v, kPriorVar + 1e-9);
    const auto q = mod_wwb_sup(m, WeightFamily::sine_taper(0.5), g);
    EXPECT_LE(q.value, kPriorVar + 1e-9);
  }
}

TEST(Sups, RejectEmptyGrid) {
  HsGrid g;
  EXPECT_THROW(wwb_sup(ToneModel(8, 1.0), g), std::invalid_argument);
}

TEST(BcrbSup, LowAndHighSnr) {
  const auto lo = bcrb_sup(ToneModel(32, kZeroSnr));
  EXPECT_EQ(lo.arg.at("family"), 2.0);
  EXPECT_NEAR(lo.value, kPriorVar, 1e-8);
  EXPECT_NEAR(lo.arg.at("alpha"), 2.0, 1e-3);

  const ToneModel hi = ToneModel::from_db(32, 20.0);
  const auto r = bcrb_sup(hi);
  EXPECT_EQ(r.arg.at("family"), 1.0);
  EXPECT_LT(rel(r.value, bmzb_ub(hi)), 0.1);
  EXPECT_GE(r.value, bmzb_q1(hi, 0.25));
  EXPECT_GE(r.value, bmzb_q2(hi, 2.0));
}

TEST(Invariants, LogDomainAtVeryHighSnr) {
  const ToneModel m(32, 1e4);
  const HsGrid g = HsGrid::standard();
  std::size_t finite = 0;
  for (std::size_t i = 0; i < g.h_values.size(); i += 7) {
    for (double s : g.s_values) {
      try {
        const double v = wwb_hs(m, g.h_values[i], s);
        EXPECT_TRUE(std::isfinite(v));
        EXPECT_GE(v, 0.0);
        ++finite;
      } catch (const DegenerateDenominator&) {
      }
    }
  }
  EXPECT_GT(finite, 0u);
  const auto r = wwb_sup(m, g);
  EXPECT_TRUE(std::isfinite(r.value));
}

TEST(Invariants, ExponentMirrorSymmetry) {
  std::mt19937_64 rng(7);
  const HsGrid g = HsGrid::standard();
  std::uniform_int_distribution<std::size_t> hi(0, g.h_values.size() - 1);
  std::uniform_int_distribution<std::size_t> si(0, g.s_values.size() - 1);
  const ToneModel m(32, 1.0);
  int checked = 0;
  for (int k = 0; k < 200; ++k) {
    const double h = g.h_values[hi(rng)];
    const double s = g.s_values[si(rng)];
    try {
      const double a = wwb_hs(m, h, s);
      const double b = wwb_hs(m, -h, 1.0 - s);
      EXPECT_NEAR(a, b, 1e-9 * std::max(a, b) + 1e-300);
      ++checked;
    } catch (const DegenerateDenominator&) {
    }
  }
  EXPECT_GT(checked, 150);
}

TEST(Invariants, PointwiseBelowPriorVariance) {
  for (int i = 0; i < 10; ++i) {
    const ToneModel m = ToneModel::from_db(32, -40.0 + 8.0 * i);
    for (int j = 0; j < 10; ++j) {
      const double h = -0.95 + 0.19 * j + 0.013;
      const double s = 0.05 + 0.09 * j;
      try {
        EXPECT_LE(wwb_hs(m, h, s), kPriorVar + 1e-9);
        EXPECT_LE(bzb_h(m, h), kPriorVar + 1e-9);
      } catch (const DegenerateDenominator&) {
      }
      EXPECT_LE(bmzb_q1(m, 0.001 + 0.05 * j), kPriorVar + 1e-9);
      EXPECT_LE(bmzb_q2(m, 1.51 + 0.5 * j), kPriorVar + 1e-9);
    }
  }
}

TEST(Invariants, BmzbQ1VanishesWithDelta) {
  const ToneModel m(32, 1.0);
  for (double d : {1e-3, 1e-4, 1e-5, 1e-6})
    EXPECT_LE(bmzb_q1(m, d), 4 * d / (oracle::kPi * oracle::kPi));
}

TEST(HsGrid, StandardLayout) {
  const HsGrid g = HsGrid::standard();
  EXPECT_EQ(g.h_values.size(), 1998u);
  EXPECT_EQ(g.s_values.size(), 99u);
  EXPECT_DOUBLE_EQ(g.h_values.front(), -0.999);
  EXPECT_DOUBLE_EQ(g.h_values.back(), 0.999);
  for (double h : g.h_values) EXPECT_NE(h, 0.0);
  EXPECT_NO_THROW(g.validate());
}
