#include "arena/model.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

using namespace arena;

TEST(Phi, FigureParamsHighNoise) {
  const ModelParams p = ModelParams::figure2(1.5, 1.3);
  // 1.125 + 0.1*5*2/0.9 + 0.1*5*1.69/1.8
  EXPECT_NEAR(phi(p), 2.7056, 5e-5);
}

TEST(Phi, FigureParamsLowNoise) {
  EXPECT_NEAR(phi(ModelParams::figure2(0.5, 0.3)), 1.2611, 5e-5);
}

TEST(Phi, InfiniteWithoutPredatorGain) {
  ModelParams p = ModelParams::figure2(0.5, 0.3);
  p.c2 = 0.0;
  EXPECT_TRUE(std::isinf(phi(p)));
}

TEST(Regime, HighNoiseIsPreyExtinction) {
  const Regime r = classify_regime(ModelParams::figure2(1.5, 1.3));
  EXPECT_EQ(r.tag, RegimeTag::PreyExtinction);
}

TEST(Regime, LowNoiseIsPredatorExtinction) {
  const Regime r = classify_regime(ModelParams::figure2(0.5, 0.3));
  EXPECT_EQ(r.tag, RegimeTag::PredatorExtinction);
  EXPECT_NEAR(r.phi, 1.2611, 5e-5);
}

TEST(Regime, StationaryExample) {
  ModelParams p;
  p.a1 = 10.0;
  p.b1 = 0.1;
  p.beta = 5.0;
  p.a2 = 0.1;
  p.sigma1 = 0.5;
  p.sigma2 = 0.1;
  p.c2 = 1.0;
  const Regime r = classify_regime(p);
  EXPECT_EQ(r.tag, RegimeTag::Stationary);
  ASSERT_TRUE(r.stationary_threshold.has_value());
  // phi = 0.125 + 0.05 + 0.0025 = 0.1775, denominator 1 - 0.005 - 0.1
  EXPECT_NEAR(*r.stationary_threshold, 0.1775 / 0.895, 1e-12);
  EXPECT_NEAR(*r.stationary_threshold, 0.198, 5e-4);
}

TEST(Regime, BoundaryEqualitiesAreUnclassified) {
  ModelParams p = ModelParams::figure2(0.5, 0.3);
  p.a1 = 0.125;  // = sigma1^2 / 2
  EXPECT_EQ(classify_regime(p).tag, RegimeTag::Unclassified);

  p = ModelParams::figure2(0.5, 0.3);
  p.a1 = phi(p);
  EXPECT_EQ(classify_regime(p).tag, RegimeTag::Unclassified);
}

TEST(Regime, GapRegimeIsUnclassified) {
  ModelParams p = ModelParams::figure2(0.5, 0.3);
  p.c2 = 4.0;  // predator viable, threshold above phi
  const Regime r = classify_regime(p);
  ASSERT_TRUE(r.stationary_threshold.has_value());
  p.a1 = 0.5 * (r.phi + *r.stationary_threshold);
  EXPECT_EQ(classify_regime(p).tag, RegimeTag::Unclassified);
}

TEST(Regime, ThresholdAbsentWhenDenominatorNonPositive) {
  const Regime r = classify_regime(ModelParams::figure2(0.5, 0.3));  // a2 > c2
  EXPECT_FALSE(r.stationary_threshold.has_value());
}

TEST(Novikov, FigureThresholds) {
  const NovikovCheck hi = novikov_threshold(ModelParams::figure2(1.5, 1.3));
  EXPECT_NEAR(hi.threshold, 10.385, 5e-4);
  EXPECT_FALSE(hi.satisfied);
  const NovikovCheck lo = novikov_threshold(ModelParams::figure2(0.5, 0.3));
  EXPECT_NEAR(lo.threshold, 15.0, 1e-12);
  EXPECT_FALSE(lo.satisfied);
}

TEST(Novikov, BoundaryIsSatisfied) {
  ModelParams p = ModelParams::figure2(0.5, 0.25);
  p.c2 = 1.0;
  p.b1 = 0.5;
  p.beta = 4.0;  // c2 sigma1 / (b1 sigma2) = 0.5 / 0.125 = 4 exactly
  const NovikovCheck n = novikov_threshold(p);
  EXPECT_EQ(n.threshold, 4.0);
  EXPECT_TRUE(n.satisfied);
}

TEST(ModelParamsValidate, RejectsNonPositiveRates) {
  ModelParams p;
  p.a1 = 0.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = ModelParams{};
  p.beta = -1.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = ModelParams{};
  p.x0 = std::nan("");
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(ModelParamsValidate, AllowsUncoupledAndDeterministicLimits) {
  ModelParams p;
  p.c1 = p.c2 = 0.0;
  p.sigma1 = p.sigma2 = 0.0;
  EXPECT_NO_THROW(p.validate());
}

TEST(LogisticConstants, ZeroTime) {
  const LogisticParams lp{1.0, 0.1, 0.5, 2.0};
  const LogisticConstants c = logistic_constants(lp, 1.5, 0.0);
  EXPECT_DOUBLE_EQ(c.k_p, std::pow(2.0, 1.5));
  EXPECT_EQ(c.K_p, 0.0);
  EXPECT_EQ(c.k, 2.0);
  EXPECT_EQ(c.K, 0.0);
}

TEST(LogisticConstants, HandEvaluatedFirstMoment) {
  const LogisticParams lp{1.0, 0.1, 0.5, 1.0};
  EXPECT_NEAR(logistic_constants(lp, 1.0, 1.0).k_p, std::exp(1.0), 1e-14);
}

TEST(LogisticConstants, RemovableSingularity) {
  const LogisticParams lp{0.125, 0.1, 0.5, 3.0};  // a = sigma^2/2
  const LogisticConstants c = logistic_constants(lp, 0.0, 2.0);
  EXPECT_NEAR(c.K, 3.0 * 2.0, 1e-12);
  EXPECT_NEAR(c.K_p, 3.0 * 2.0, 1e-12);
}

TEST(GrowthIntegral, ContinuousAcrossGuard) {
  const double t = 1.7;
  const double below = growth_integral(0.5 * kSingularityGuard, t);
  const double above = growth_integral(2.0 * kSingularityGuard, t);
  EXPECT_NEAR(below, t, 1e-8);
  EXPECT_NEAR(above, t, 1e-8);
  EXPECT_NEAR(growth_integral(-0.3, t), (std::exp(-0.3 * t) - 1.0) / -0.3, 1e-14);
}

TEST(GammaStationary, ShapeRateMean) {
  const GammaLaw g = gamma_stationary(LogisticParams{1.0, 0.1, 0.5, 1.0});
  EXPECT_NEAR(g.shape, 7.0, 1e-12);
  EXPECT_NEAR(g.rate, 0.8, 1e-12);
  EXPECT_NEAR(g.mean(), 8.75, 1e-12);
}

TEST(GammaStationary, RejectsNoStationaryLaw) {
  EXPECT_THROW(gamma_stationary(LogisticParams{0.125, 0.1, 0.5, 1.0}), std::domain_error);
  EXPECT_THROW(gamma_stationary(LogisticParams{1.0, 0.1, 0.0, 1.0}), std::domain_error);
}

TEST(GammaStationary, CdfMatchesErlangClosedForm) {
  // Shape 7 is an integer, so P(7, x) = 1 - e^{-x} sum_{k<7} x^k/k!.
  const GammaLaw g = gamma_stationary(LogisticParams{1.0, 0.1, 0.5, 1.0});
  for (double z : {1.0, 5.0, 8.75, 15.0}) {
    const double x = 0.8 * z;
    double term = 1.0, sum = 0.0;
    for (int k = 0; k < 7; ++k) {
      sum += term;
      term *= x / (k + 1);
    }
    EXPECT_NEAR(g.cdf(z), 1.0 - std::exp(-x) * sum, 1e-13) << "z=" << z;
  }
}

TEST(PredatorConstants, Variants) {
  const ModelParams p = ModelParams::figure2(0.5, 0.3);
  EXPECT_EQ(predator_logistic(p).a, -2.0);
  EXPECT_EQ(predator_constants(p, PredatorConstants::Corrected).a, -2.0);
  EXPECT_EQ(predator_constants(p, PredatorConstants::AsPrinted).a, 2.0);
  EXPECT_EQ(parse_predator_constants("corrected"), PredatorConstants::Corrected);
  EXPECT_EQ(parse_predator_constants(to_string(PredatorConstants::AsPrinted)),
            PredatorConstants::AsPrinted);
  EXPECT_FALSE(parse_predator_constants("printed").has_value());
}
