// Randomized properties over hand-rolled generators. Each case prints its
// generator seed on failure.

#include "arena/bounds.hpp"
#include "arena/envelopes.hpp"
#include "arena/params_io.hpp"
#include "arena/sde.hpp"
#include "generators.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace arena;
using arena::testing::Gen;

namespace {
constexpr int kCases = 40;
}

TEST(Properties, ConfigTextRoundTrip) {
  for (int i = 0; i < 200; ++i) {
    Gen g(1000 + i);
    const ModelParams p = g.model();
    EXPECT_EQ(params_from_config(KeyValueConfig::parse(to_config_text(p))), p) << g.describe();
  }
}

TEST(Properties, RegimeInvariantUnderTimeRescaling) {
  for (int i = 0; i < 200; ++i) {
    Gen g(2000 + i);
    ModelParams p = g.model();
    const double s = g.log_uniform(0.1, 10.0);
    ModelParams q = p;
    q.a1 *= s;
    q.a2 *= s;
    q.b1 *= s;
    q.b2 *= s;
    q.c1 *= s;
    q.c2 *= s;
    q.sigma1 *= std::sqrt(s);
    q.sigma2 *= std::sqrt(s);
    const Regime rp = classify_regime(p), rq = classify_regime(q);
    // skip cases sitting numerically on a boundary
    if (std::abs(p.a1 - rp.phi) < 1e-9 || std::abs(p.a1 - 0.5 * p.sigma1 * p.sigma1) < 1e-9) continue;
    EXPECT_EQ(rp.tag, rq.tag) << g.describe();
  }
}

TEST(Properties, GammaMeanIdentity) {
  for (int i = 0; i < 200; ++i) {
    Gen g(3000 + i);
    LogisticParams lp = g.logistic();
    lp.sigma = std::max(lp.sigma, 0.05);
    lp.a = 0.5 * lp.sigma * lp.sigma + g.uniform(0.01, 2.0);
    const GammaLaw law = gamma_stationary(lp);
    EXPECT_NEAR(law.mean(), (lp.a - 0.5 * lp.sigma * lp.sigma) / lp.b, 1e-10 * law.mean()) << g.describe();
  }
}

TEST(Properties, SimulationPositiveAndEnvelopesOrdered) {
  for (int i = 0; i < kCases; ++i) {
    Gen g(4000 + i);
    const ModelParams p = g.model();
    const DriverPair d = make_drivers(5.0, 2000, g.bits(), 0);
    const TrajectoryBundle b = simulate_system(p, d.b1, d.b2);
    const PredatorEnvelope ey = envelope_y(b, p);
    const PreyEnvelope ex = envelope_x(b, p, classify_regime(p));
    for (std::size_t k = 0; k < b.size(); ++k) {
      ASSERT_GT(b.x[k], 0.0) << g.describe();
      ASSERT_GT(b.y[k], 0.0) << g.describe();
      ASSERT_LE(ey.y_lo[k], ey.y_hi[k]) << g.describe();
      ASSERT_LE(ex.x_lo[k], ex.x_hi[k]) << g.describe();
    }
  }
}

TEST(Properties, EnvelopesContainPathsUpToDiscretization) {
  AuditOptions loose;
  loose.tol_rel = 5e-2;
  for (int i = 0; i < kCases; ++i) {
    Gen g(5000 + i);
    const ModelParams p = g.model();
    const DriverPair d = make_drivers(2.0, 20000, g.bits(), 0);
    const ViolationReport r = audit(simulate_system(p, d.b1, d.b2), p, loose);
    EXPECT_LT(r.violation_fraction(), 1e-2) << g.describe() << " worst " << r.worst_rel_excess;
  }
}

TEST(Properties, UncoupledSystemIsComparisonPair) {
  for (int i = 0; i < kCases; ++i) {
    Gen g(6000 + i);
    ModelParams p = g.model();
    p.c1 = p.c2 = 0.0;
    const DriverPair d = make_drivers(1.0, 500, g.bits(), 0, g.uniform(-1.0, 1.0));
    const TrajectoryBundle b = simulate_system(p, d.b1, d.b2);
    for (std::size_t k = 0; k < b.size(); ++k) {
      ASSERT_EQ(b.x[k], b.l1[k]) << g.describe();
      ASSERT_EQ(b.y[k], b.l2[k]) << g.describe();
    }
  }
}

TEST(Properties, LogisticMomentBracketOrdered) {
  for (int i = 0; i < kCases; ++i) {
    Gen g(7000 + i);
    const LogisticParams lp = g.logistic();
    const double p = g.uniform(0.0, 3.0);
    const double t = g.uniform(0.05, 3.0);
    const Bracket b = logistic_moment_bracket(lp, p, t);
    EXPECT_TRUE(b.consistent()) << g.describe();
    EXPECT_GE(b.lower, 0.0) << g.describe();
    EXPECT_TRUE(std::isfinite(b.upper)) << g.describe();
  }
}

TEST(Properties, LogisticCdfBracketOrderedAndMonotone) {
  for (int i = 0; i < kCases; ++i) {
    Gen g(8000 + i);
    LogisticParams lp = g.logistic();
    lp.sigma = std::max(lp.sigma, 0.1);
    const double t = g.uniform(0.2, 2.0);
    const double z1 = lp.lambda * g.log_uniform(0.05, 20.0);
    const double z2 = z1 * g.uniform(1.0, 3.0);
    const Bracket a = logistic_cdf_bracket(lp, z1, t);
    const Bracket b = logistic_cdf_bracket(lp, z2, t);
    EXPECT_TRUE(a.consistent()) << g.describe();
    EXPECT_LE(a.lower, b.lower + a.lower_err + b.lower_err) << g.describe();
    EXPECT_LE(a.upper, b.upper + a.upper_err + b.upper_err) << g.describe();
    EXPECT_GE(a.lower, 0.0);
    EXPECT_LE(b.upper, 1.0);
  }
}

TEST(Properties, ZeroOrderMomentsAreOne) {
  for (int i = 0; i < kCases; ++i) {
    Gen g(9000 + i);
    const ModelParams p = g.model();
    const double t = g.uniform(0.1, 3.0);
    EXPECT_EQ(joint_moment_lower(p, 0.0, 0.0, t).value, 1.0);
    EXPECT_EQ(moment_lower_x(p, 0.0, t).value, 1.0);
    EXPECT_EQ(moment_lower_y(p, 0.0, t).value, 1.0);
    const Bracket b = logistic_moment_bracket(prey_logistic(p), 0.0, t);
    EXPECT_EQ(b.lower, 1.0);
    EXPECT_EQ(b.upper, 1.0);
  }
}

TEST(Properties, CoarsenedPathStaysOnFinePath) {
  for (int i = 0; i < kCases; ++i) {
    Gen g(10000 + i);
    const std::size_t factor = 1 + g.index(8);
    const std::size_t n = factor * (1 + g.index(200));
    const BrownianPath fine = BrownianPath::sample(g.uniform(0.1, 5.0), n, g.bits());
    const BrownianPath coarse = fine.coarsen(factor);
    for (std::size_t k = 0; k < coarse.size(); ++k) {
      ASSERT_NEAR(coarse.values()[k], fine.values()[k * factor], 1e-12) << g.describe();
      ASSERT_LE(coarse.run_max()[k], fine.run_max()[k * factor] + 1e-12) << g.describe();
    }
  }
}
