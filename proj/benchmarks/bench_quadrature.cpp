#include "arena/bounds.hpp"
#include "arena/quadrature.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace arena;

static void BM_HalflineGauss(benchmark::State& state) {
  for (auto _ : state) {
    auto r = halfline_gauss([](double z) { return 1.0 / (1.0 + 0.1 * std::exp(0.5 * z)); }, 1.0);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_HalflineGauss);

static void BM_WedgeCdf(benchmark::State& state) {
  const LogisticParams lp{1.0, 0.1, 0.5, 1.0};
  for (auto _ : state) {
    auto r = logistic_wedge_cdf(lp, 2.0, 1.0, JointWith::Min, kDefaultTol2d);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_WedgeCdf)->Unit(benchmark::kMicrosecond);

static void BM_MomentLowerX(benchmark::State& state) {
  const ModelParams p = ModelParams::figure2(0.5, 0.3);
  for (auto _ : state) {
    auto v = moment_lower_x(p, 1.0, 1.0);
    benchmark::DoNotOptimize(v.value);
  }
}
BENCHMARK(BM_MomentLowerX)->Unit(benchmark::kMillisecond);

static void BM_CdfLowerY(benchmark::State& state) {
  const ModelParams p = ModelParams::figure2(0.5, 0.3);
  BoundsOptions o;
  o.k2_variant = PredatorConstants::Corrected;
  for (auto _ : state) {
    auto v = cdf_lower_y(p, 0.2, 1.0, o);
    benchmark::DoNotOptimize(v.value);
  }
}
BENCHMARK(BM_CdfLowerY)->Unit(benchmark::kMillisecond);
