#pragma once

// Model parameters, regime classification and the closed-form constants of
// the stochastic logistic equation dL = L(a - bL)dt + sigma L dB.

#include <optional>
#include <string_view>

namespace arena {

/// Parameters of the foraging-arena predator-prey system
///
///   dX = [X(a1 - b1 X) - c1 XY/(beta + Y)] dt + sigma1 X dB1,  X(0) = x0
///   dY = [Y(-a2 - b2 Y) + c2 XY/(beta + Y)] dt + sigma2 Y dB2,  Y(0) = y0
///
/// Rates, competitions, beta and the initial densities must be strictly
/// positive. The interaction coefficients c1, c2 and the noise intensities may
/// be zero so that the uncoupled and deterministic limits stay representable.
struct ModelParams {
  double a1 = 1.0;
  double b1 = 0.1;
  double c1 = 6.0;
  double a2 = 2.0;
  double b2 = 0.5;
  double c2 = 0.9;
  double beta = 5.0;
  double sigma1 = 0.5;
  double sigma2 = 0.3;
  double x0 = 1.0;
  double y0 = 1.0;

  /// Throws std::invalid_argument naming the first offending field.
  void validate() const;

  /// Parameter set of the published comparison figure with the given noise.
  static ModelParams figure2(double sigma1, double sigma2);

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

enum class RegimeTag { PreyExtinction, PredatorExtinction, Stationary, Unclassified };

std::string_view to_string(RegimeTag tag);

struct Regime {
  RegimeTag tag = RegimeTag::Unclassified;
  double phi = 0.0;
  /// phi / (1 - sigma2^2/(2 c2) - a2/c2); absent when the denominator is <= 0.
  std::optional<double> stationary_threshold;
};

/// sigma1^2/2 + b1 beta a2/c2 + b1 beta sigma2^2/(2 c2). +inf when c2 = 0.
double phi(const ModelParams& p);

/// Equalities on either boundary map to Unclassified.
Regime classify_regime(const ModelParams& p);

struct NovikovCheck {
  double threshold = 0.0;  ///< c2 sigma1 / (b1 sigma2)
  bool satisfied = false;  ///< beta >= threshold
};

NovikovCheck novikov_threshold(const ModelParams& p);

/// Logistic SDE parameters. The drift `a` may be negative (predator case).
struct LogisticParams {
  double a = 1.0;
  double b = 0.1;
  double sigma = 0.5;
  double lambda = 1.0;

  /// b >= 0, sigma >= 0, lambda > 0, all finite.
  void validate() const;

  friend bool operator==(const LogisticParams&, const LogisticParams&) = default;
};

/// Prey comparison process L1: (a1, b1, sigma1, x0).
LogisticParams prey_logistic(const ModelParams& p);

/// Which drift the predator comparison constants use. The theorem statements
/// print +a2; the comparison process L2 itself has drift -a2.
enum class PredatorConstants { AsPrinted, Corrected };

std::string_view to_string(PredatorConstants v);
std::optional<PredatorConstants> parse_predator_constants(std::string_view s);

/// Predator comparison process L2 with drift -a2 (the true L2 dynamics).
LogisticParams predator_logistic(const ModelParams& p);

/// Parameters used for predator-side bound constants under the given variant.
LogisticParams predator_constants(const ModelParams& p, PredatorConstants variant);

/// Removable-singularity guard on |rate| for growth_integral.
inline constexpr double kSingularityGuard = 1e-9;

/// int_0^t exp(rate r) dr = (e^{rate t} - 1)/rate, with the series
/// t(1 + rate t/2 + (rate t)^2/6) when |rate| < kSingularityGuard.
double growth_integral(double rate, double t);

struct LogisticConstants {
  double k_p = 0.0;  ///< lambda^p exp(p(a - sigma^2/2)t + p^2 sigma^2 t/2)
  double K_p = 0.0;  ///< lambda * growth_integral(a - sigma^2/2 + p sigma^2, t)
  double k = 0.0;    ///< lambda exp((a - sigma^2/2) t)
  double K = 0.0;    ///< lambda * growth_integral(a - sigma^2/2, t)
};

/// Requires p >= 0 and t >= 0.
LogisticConstants logistic_constants(const LogisticParams& lp, double p, double t);

struct GammaLaw {
  double shape = 0.0;
  double rate = 0.0;

  double mean() const { return shape / rate; }
  /// Regularized lower incomplete gamma P(shape, rate x).
  double cdf(double x) const;
};

/// Stationary law Gamma(2a/sigma^2 - 1, 2b/sigma^2). Requires a > sigma^2/2
/// and sigma > 0, b > 0; throws std::domain_error otherwise.
GammaLaw gamma_stationary(const LogisticParams& lp);

}  // namespace arena
