#include "arena/sde.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

using namespace arena;

namespace {

BrownianPath zero_path(double t_end, std::size_t n) {
  return BrownianPath::from_increments(t_end / static_cast<double>(n), std::vector<double>(n, 0.0));
}

// Reference solution of the noise-free system by classical RK4.
std::array<double, 2> rk4_system(const ModelParams& p, double t_end, double h) {
  auto f = [&](double x, double y) -> std::array<double, 2> {
    const double r = x * y / (p.beta + y);
    return {x * (p.a1 - p.b1 * x) - p.c1 * r, y * (-p.a2 - p.b2 * y) + p.c2 * r};
  };
  double x = p.x0, y = p.y0;
  const auto n = static_cast<std::size_t>(std::llround(t_end / h));
  for (std::size_t i = 0; i < n; ++i) {
    const auto k1 = f(x, y);
    const auto k2 = f(x + 0.5 * h * k1[0], y + 0.5 * h * k1[1]);
    const auto k3 = f(x + 0.5 * h * k2[0], y + 0.5 * h * k2[1]);
    const auto k4 = f(x + h * k3[0], y + h * k3[1]);
    x += h / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
    y += h / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
  }
  return {x, y};
}

}  // namespace

TEST(SimulateSystem, UncoupledEqualsComparisonBitForBit) {
  ModelParams p = ModelParams::figure2(0.5, 0.3);
  p.c1 = p.c2 = 0.0;
  const DriverPair d = make_drivers(5.0, 5000, 3, 0);
  const TrajectoryBundle b = simulate_system(p, d.b1, d.b2);
  for (std::size_t i = 0; i < b.size(); ++i) {
    ASSERT_EQ(b.x[i], b.l1[i]) << "i=" << i;
    ASSERT_EQ(b.y[i], b.l2[i]) << "i=" << i;
  }
}

TEST(SimulateSystem, NoiseFreeMatchesRk4) {
  const ModelParams p = ModelParams::figure2(0.0, 0.0);
  const TrajectoryBundle b = simulate_system(p, zero_path(10.0, 100000), zero_path(10.0, 100000));
  const auto ref = rk4_system(p, 10.0, 1e-4);
  EXPECT_NEAR(b.x.back() / ref[0], 1.0, 1e-3);
  EXPECT_NEAR(b.y.back() / ref[1], 1.0, 1e-3);
}

TEST(SimulateSystem, NoiseFreeCoupledStartMatchesRk4) {
  ModelParams p = ModelParams::figure2(0.0, 0.0);
  p.c2 = 3.0;  // predator persists, both components stay order one
  p.x0 = 5.0;
  const TrajectoryBundle b = simulate_system(p, zero_path(10.0, 100000), zero_path(10.0, 100000));
  const auto ref = rk4_system(p, 10.0, 1e-4);
  EXPECT_NEAR(b.x.back() / ref[0], 1.0, 1e-3);
  EXPECT_NEAR(b.y.back() / ref[1], 1.0, 1e-3);
}

TEST(SimulateSystem, PositiveUnderStrongNoise) {
  const ModelParams p = ModelParams::figure2(1.5, 1.3);
  const DriverPair d = make_drivers(20.0, 2000, 9, 4);
  const TrajectoryBundle b = simulate_system(p, d.b1, d.b2);
  for (std::size_t i = 0; i < b.size(); ++i) {
    ASSERT_GT(b.x[i], 0.0);
    ASSERT_GT(b.y[i], 0.0);
  }
  EXPECT_EQ(b.x[0], p.x0);
  EXPECT_EQ(b.y[0], p.y0);
}

TEST(SimulateSystem, ComparisonMatchesExactLogistic) {
  const ModelParams p = ModelParams::figure2(0.5, 0.3);
  const DriverPair d = make_drivers(1.0, 20000, 12, 0);
  const TrajectoryBundle b = simulate_system(p, d.b1, d.b2);
  const LogisticPath l1 = logistic_exact(prey_logistic(p), d.b1);
  const LogisticPath l2 = logistic_exact(predator_logistic(p), d.b2);
  EXPECT_NEAR(b.l1.back() / l1.l.back(), 1.0, 5e-3);
  EXPECT_NEAR(b.l2.back() / l2.l.back(), 1.0, 5e-3);
}

TEST(SimulateSystem, RejectsMismatchedGrids) {
  const ModelParams p = ModelParams::figure2(0.5, 0.3);
  EXPECT_THROW(simulate_system(p, zero_path(1.0, 10), zero_path(1.0, 20)), std::invalid_argument);
}

TEST(SimulateSystem, RecordsSeeds) {
  const DriverPair d = make_drivers(1.0, 10, 5, 2);
  const TrajectoryBundle b = simulate_system(ModelParams::figure2(0.5, 0.3), d.b1, d.b2);
  EXPECT_EQ(b.seed1, d.b1.seed());
  EXPECT_EQ(b.seed2, d.b2.seed());
  EXPECT_NE(b.seed1, b.seed2);
}

TEST(MakeDrivers, CorrelationOption) {
  const DriverPair a = make_drivers(1.0, 100, 5, 0, 1.0);
  for (std::size_t i = 0; i < 100; ++i) EXPECT_EQ(a.b1.increments()[i], a.b2.increments()[i]);
  const DriverPair b = make_drivers(1.0, 100, 5, 0);
  const DriverPair c = make_drivers(1.0, 100, 5, 0, 0.0);
  EXPECT_EQ(b.b2.values().back(), c.b2.values().back());
}

TEST(LogisticScheme, ExactForGbm) {
  const LogisticParams lp{0.8, 0.0, 0.6, 1.4};
  const BrownianPath bp = BrownianPath::sample(2.0, 1024, 31);
  const auto errors = strong_error_probe(lp, bp, 3);
  ASSERT_EQ(errors.size(), 3u);
  for (double e : errors) EXPECT_LE(e, 1e-12);
}

TEST(LogisticScheme, FirstOrderWithoutNoise) {
  const LogisticParams lp{1.0, 0.1, 0.0, 1.0};
  const auto errors = strong_error_probe(lp, zero_path(1.0, 1 << 14), 3);
  // coarse to fine: dt*8, dt*4, dt*2
  EXPECT_NEAR(errors[0] / errors[1], 2.0, 0.05);
  EXPECT_NEAR(errors[1] / errors[2], 2.0, 0.05);
}

TEST(LogisticScheme, ProbePreconditions) {
  const LogisticParams lp{1.0, 0.1, 0.5, 1.0};
  EXPECT_THROW(strong_error_probe(lp, BrownianPath::sample(1.0, 64, 1), 1), std::invalid_argument);
  EXPECT_THROW(strong_error_probe(lp, BrownianPath::sample(1.0, 100, 1), 3), std::invalid_argument);
}

TEST(LogisticScheme, ErrorsShrinkOnAverage) {
  const LogisticParams lp{1.0, 0.1, 0.5, 1.0};
  double coarse = 0.0, fine = 0.0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto e = strong_error_probe(lp, BrownianPath::sample(1.0, 1024, 100 + i), 3);
    coarse += e[0];
    fine += e[2];
  }
  EXPECT_GT(coarse / fine, 1.4);
}

TEST(LogState, OverflowIsReported) {
  LogState s(700.0);
  EXPECT_THROW(s.step(100.0, 0.0, 0.0, 0.0, 1.0), std::overflow_error);
}
