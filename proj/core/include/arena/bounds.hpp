#pragma once

// Moment and distribution-function brackets for the logistic comparison
// processes and for the coupled system, evaluated by deterministic quadrature.

#include "arena/model.hpp"
#include "arena/quadrature.hpp"

#include <string>
#include <string_view>

namespace arena {

/// Lower and upper bound for one scalar, with quadrature error estimates.
struct Bracket {
  double lower = 0.0;
  double upper = 0.0;
  double lower_err = 0.0;
  double upper_err = 0.0;
  std::string source;

  /// lower - lower_err <= upper + upper_err.
  bool consistent() const { return lower - lower_err <= upper + upper_err; }
};

/// Whether a one-sided bound was evaluated inside its stated hypotheses.
enum class Validity {
  Valid,
  OutsideRegime,  ///< stated for another regime; value still computed
  OutOfDomain     ///< precondition fails; value is NaN
};

std::string_view to_string(Validity v);

struct BoundValue {
  double value = 0.0;
  double err = 0.0;
  Validity validity = Validity::Valid;
  std::string note;      ///< human-readable validity warning, empty when Valid
  bool clamped = false;  ///< raw value fell outside [0, 1] and was clamped
  double raw = 0.0;      ///< value before clamping
};

struct BoundsOptions {
  double tol1d = kDefaultTol1d;
  double tol2d = kDefaultTol2d;
  double tol3d = kDefaultTol3d;
  PredatorConstants k2_variant = PredatorConstants::AsPrinted;
};

// Logistic equation, single process.

/// Moment bracket for E[L(t)^p]. p = 0 returns exactly (1, 1).
Bracket logistic_moment_bracket(const LogisticParams& lp, double p, double t,
                                const BoundsOptions& opts = {});

/// Bracket for P(L(t) <= z). The upper side is exactly 1 once z >= k/(bK).
Bracket logistic_cdf_bracket(const LogisticParams& lp, double z, double t,
                             const BoundsOptions& opts = {});

/// P(k e^{sigma B} / (1 + b K e^{sigma E}) <= z) for E = M (with_max) or
/// E = m (with_min), the building block of every CDF bound.
QuadratureResult logistic_wedge_cdf(const LogisticParams& lp, double z, double t, JointWith which,
                                    double tol);

// Coupled system. Predator-side constants follow opts.k2_variant.

/// Upper bound on E[X^p Y^q]; needs q c2/(beta b1) - p >= 1, else OutOfDomain.
BoundValue joint_moment_upper(const ModelParams& params, double p, double q, double t,
                              const BoundsOptions& opts = {});

/// Lower bound on E[X^p Y^q]; stated for a1 > phi.
BoundValue joint_moment_lower(const ModelParams& params, double p, double q, double t,
                              const BoundsOptions& opts = {});

/// Lower bound on E[X^p] through the integral envelope; stated for a1 < phi.
BoundValue moment_lower_x(const ModelParams& params, double p, double t,
                          const BoundsOptions& opts = {});

/// Lower bound on E[Y^q]; stated alongside moment_lower_x.
BoundValue moment_lower_y(const ModelParams& params, double q, double t,
                          const BoundsOptions& opts = {});

/// Lower bound on P(X(t) <= z1) from X <= L1.
BoundValue cdf_lower_x(const ModelParams& params, double z1, double t,
                       const BoundsOptions& opts = {});

/// Lower bound on P(Y(t) <= z2) from the predator upper envelope.
BoundValue cdf_lower_y(const ModelParams& params, double z2, double t,
                       const BoundsOptions& opts = {});

/// Upper bound on P(X(t) <= z1, Y(t) <= z2); stated for a1 > phi.
BoundValue cdf_joint_upper(const ModelParams& params, double z1, double z2, double t,
                           const BoundsOptions& opts = {});

/// Upper bound on P(X(t) <= z1) through the integral envelope; stated for a1 < phi.
BoundValue cdf_upper_x(const ModelParams& params, double z1, double t,
                       const BoundsOptions& opts = {});

/// Upper bound on P(Y(t) <= z2) from Y >= L2; stated alongside cdf_upper_x.
BoundValue cdf_upper_y(const ModelParams& params, double z2, double t,
                       const BoundsOptions& opts = {});

}  // namespace arena
