#include <benchmark/benchmark.h>

#include "bayes_bounds/closed_bounds.hpp"
#include "bayes_bounds/general_blb.hpp"
#include "bayes_bounds/montecarlo.hpp"

using namespace bayes_bounds;

static void BM_WwbHs(benchmark::State& state) {
  const ToneModel m(32, 1.0);
  double h = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(wwb_hs(m, h, 0.5));
    h = h > 0.9 ? 0.1 : h + 1e-3;
  }
}
BENCHMARK(BM_WwbHs);

static void BM_WwbSupDefaultGrid(benchmark::State& state) {
  const ToneModel m = ToneModel::from_db(32, static_cast<double>(state.range(0)));
  const HsGrid g = HsGrid::standard();
  for (auto _ : state) benchmark::DoNotOptimize(wwb_sup(m, g).value);
}
BENCHMARK(BM_WwbSupDefaultGrid)->Arg(-10)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_ShiftIntegralTable(benchmark::State& state) {
  const auto w = WeightFamily::sine_taper(0.5);
  const auto hs = HsGrid::uniform(1e-2, 0.5).h_values;
  for (auto _ : state) {
    ShiftIntegralTable t(w, hs);
    benchmark::DoNotOptimize(t.integrals().data());
  }
}
BENCHMARK(BM_ShiftIntegralTable)->Unit(benchmark::kMillisecond);

static void BM_BcrbSup(benchmark::State& state) {
  const ToneModel m = ToneModel::from_db(32, 10.0);
  for (auto _ : state) benchmark::DoNotOptimize(bcrb_sup(m).value);
}
BENCHMARK(BM_BcrbSup)->Unit(benchmark::kMicrosecond);

static void BM_BlbEval(benchmark::State& state) {
  const auto p = BlbProblem::tone(ToneModel(8, 1.0), WeightFamily::power_taper(2.5));
  for (auto _ : state) benchmark::DoNotOptimize(blb_eval(p, 0.2, 0.4).value);
}
BENCHMARK(BM_BlbEval)->Unit(benchmark::kMicrosecond);

static void BM_BmzbGeneral(benchmark::State& state) {
  const auto p = BlbProblem::tone(ToneModel(8, 1.0), WeightFamily::power_taper(1.6));
  for (auto _ : state) benchmark::DoNotOptimize(bmzb_general(p));
}
BENCHMARK(BM_BmzbGeneral)->Unit(benchmark::kMicrosecond);

static void BM_MapEstimate(benchmark::State& state) {
  const ToneModel m(32, 1.0);
  const Draw d = draw_trial(m, 1, 0);
  const McConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(map_estimate(d.x, m, cfg));
}
BENCHMARK(BM_MapEstimate)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
