#include "arena/model.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace arena {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string("parameter '") + name + "' must be finite");
  }
}

void require_positive(double v, const char* name) {
  require_finite(v, name);
  if (!(v > 0.0)) {
    throw std::invalid_argument(std::string("parameter '") + name + "' must be > 0");
  }
}

void require_nonnegative(double v, const char* name) {
  require_finite(v, name);
  if (v < 0.0) {
    throw std::invalid_argument(std::string("parameter '") + name + "' must be >= 0");
  }
}

}  // namespace

void ModelParams::validate() const {
  require_positive(a1, "a1");
  require_positive(b1, "b1");
  require_nonnegative(c1, "c1");
  require_positive(a2, "a2");
  require_positive(b2, "b2");
  require_nonnegative(c2, "c2");
  require_positive(beta, "beta");
  require_nonnegative(sigma1, "sigma1");
  require_nonnegative(sigma2, "sigma2");
  require_positive(x0, "x0");
  require_positive(y0, "y0");
}

ModelParams ModelParams::figure2(double sigma1, double sigma2) {
  ModelParams p;
  p.a1 = 1.0;
  p.b1 = 0.1;
  p.c1 = 6.0;
  p.a2 = 2.0;
  p.b2 = 0.5;
  p.c2 = 0.9;
  p.beta = 5.0;
  p.sigma1 = sigma1;
  p.sigma2 = sigma2;
  p.x0 = 1.0;
  p.y0 = 1.0;
  return p;
}

std::string_view to_string(RegimeTag tag) {
  switch (tag) {
    case RegimeTag::PreyExtinction: return "PreyExtinction";
    case RegimeTag::PredatorExtinction: return "PredatorExtinction";
    case RegimeTag::Stationary: return "Stationary";
    case RegimeTag::Unclassified: return "Unclassified";
  }
  return "Unclassified";
}

double phi(const ModelParams& p) {
  const double noise_floor = 0.5 * p.sigma1 * p.sigma1;
  if (p.c2 == 0.0) return std::numeric_limits<double>::infinity();
  return noise_floor + p.b1 * p.beta * p.a2 / p.c2 +
         p.b1 * p.beta * p.sigma2 * p.sigma2 / (2.0 * p.c2);
}

Regime classify_regime(const ModelParams& p) {
  Regime r;
  r.phi = phi(p);
  const double extinction_level = 0.5 * p.sigma1 * p.sigma1;

  bool predator_viable = false;
  if (p.c2 > 0.0) {
    const double denom = 1.0 - p.sigma2 * p.sigma2 / (2.0 * p.c2) - p.a2 / p.c2;
    if (denom > 0.0) r.stationary_threshold = r.phi / denom;
    predator_viable = p.a2 + 0.5 * p.sigma2 * p.sigma2 < p.c2;
  }

  if (p.a1 < extinction_level) {
    r.tag = RegimeTag::PreyExtinction;
  } else if (extinction_level < p.a1 && p.a1 < r.phi) {
    r.tag = RegimeTag::PredatorExtinction;
  } else if (predator_viable && r.stationary_threshold && p.a1 > *r.stationary_threshold) {
    r.tag = RegimeTag::Stationary;
  } else {
    r.tag = RegimeTag::Unclassified;
  }
  return r;
}

NovikovCheck novikov_threshold(const ModelParams& p) {
  NovikovCheck n;
  const double num = p.c2 * p.sigma1;
  const double den = p.b1 * p.sigma2;
  if (den == 0.0) {
    n.threshold = num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  } else {
    n.threshold = num / den;
  }
  n.satisfied = p.beta >= n.threshold;
  return n;
}

void LogisticParams::validate() const {
  require_finite(a, "a");
  require_nonnegative(b, "b");
  require_nonnegative(sigma, "sigma");
  require_positive(lambda, "lambda");
}

LogisticParams prey_logistic(const ModelParams& p) {
  return LogisticParams{p.a1, p.b1, p.sigma1, p.x0};
}

LogisticParams predator_logistic(const ModelParams& p) {
  return LogisticParams{-p.a2, p.b2, p.sigma2, p.y0};
}

LogisticParams predator_constants(const ModelParams& p, PredatorConstants variant) {
  LogisticParams lp = predator_logistic(p);
  if (variant == PredatorConstants::AsPrinted) lp.a = p.a2;
  return lp;
}

std::string_view to_string(PredatorConstants v) {
  return v == PredatorConstants::AsPrinted ? "as-printed" : "corrected";
}

std::optional<PredatorConstants> parse_predator_constants(std::string_view s) {
  if (s == "as-printed") return PredatorConstants::AsPrinted;
  if (s == "corrected") return PredatorConstants::Corrected;
  return std::nullopt;
}

double growth_integral(double rate, double t) {
  if (std::abs(rate) < kSingularityGuard) {
    const double x = rate * t;
    return t * (1.0 + x / 2.0 + x * x / 6.0);
  }
  return std::expm1(rate * t) / rate;
}

LogisticConstants logistic_constants(const LogisticParams& lp, double p, double t) {
  if (!(p >= 0.0) || !std::isfinite(p)) throw std::invalid_argument("moment order p must be >= 0");
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("time t must be >= 0");
  const double s2 = lp.sigma * lp.sigma;
  const double drift = lp.a - 0.5 * s2;

  LogisticConstants c;
  c.k_p = std::exp(p * std::log(lp.lambda) + p * drift * t + 0.5 * p * p * s2 * t);
  c.K_p = lp.lambda * growth_integral(drift + p * s2, t);
  c.k = lp.lambda * std::exp(drift * t);
  c.K = lp.lambda * growth_integral(drift, t);
  return c;
}

double GammaLaw::cdf(double x) const {
  if (x <= 0.0) return 0.0;
  return boost::math::gamma_p(shape, rate * x);
}

GammaLaw gamma_stationary(const LogisticParams& lp) {
  const double s2 = lp.sigma * lp.sigma;
  if (!(lp.sigma > 0.0) || !(lp.b > 0.0)) {
    throw std::domain_error("stationary law needs sigma > 0 and b > 0");
  }
  if (!(lp.a > 0.5 * s2)) {
    throw std::domain_error("no stationary law: a <= sigma^2/2");
  }
  return GammaLaw{2.0 * lp.a / s2 - 1.0, 2.0 * lp.b / s2};
}

}  // namespace arena
