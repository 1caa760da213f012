#include "arena/brownian.hpp"
#include "arena/envelopes.hpp"
#include "arena/montecarlo.hpp"
#include "arena/sde.hpp"

#include <benchmark/benchmark.h>

using namespace arena;

static void BM_BrownianPath(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    BrownianPath bp = BrownianPath::sample(1.0, n, seed++);
    benchmark::DoNotOptimize(bp.values().back());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BrownianPath)->Arg(1000)->Arg(100000);

static void BM_SimulateSystem(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ModelParams p = ModelParams::figure2(0.5, 0.3);
  const DriverPair d = make_drivers(10.0, n, 1, 0);
  for (auto _ : state) {
    TrajectoryBundle b = simulate_system(p, d.b1, d.b2);
    benchmark::DoNotOptimize(b.x.back());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateSystem)->Arg(10000);

static void BM_Audit(benchmark::State& state) {
  const ModelParams p = ModelParams::figure2(1.5, 1.3);
  const DriverPair d = make_drivers(10.0, 10000, 1, 0);
  const TrajectoryBundle b = simulate_system(p, d.b1, d.b2);
  for (auto _ : state) {
    ViolationReport r = audit(b, p);
    benchmark::DoNotOptimize(r.n_viol_x);
  }
  state.SetItemsProcessed(state.iterations() * 10001);
}
BENCHMARK(BM_Audit);

static void BM_SimulateTerminal(benchmark::State& state) {
  const ModelParams p = ModelParams::figure2(0.5, 0.3);
  McConfig cfg;
  cfg.n_paths = 256;
  cfg.threads = 1;
  for (auto _ : state) {
    auto s = simulate_terminal(p, 1.0, cfg);
    benchmark::DoNotOptimize(s.back().x);
  }
  state.SetItemsProcessed(state.iterations() * 256 * 1000);
}
BENCHMARK(BM_SimulateTerminal)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
