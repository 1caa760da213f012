#pragma once

// Almost-sure envelopes for (X, Y) built from the comparison processes and
// the GBM integrals of one TrajectoryBundle, plus a violation audit.

#include "arena/model.hpp"
#include "arena/sde.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace arena {

/// Which factor attains the max in the combined prey lower bound.
enum class LowerBranch : unsigned char {
  PredationCap,     ///< exp(-c1 t)
  IntegralEnvelope  ///< exp(-(c1/(beta b2)) (1 + b1 int G1)^{c2/(beta b1)} ln(1 + b2 int G2))
};

std::string_view to_string(LowerBranch b);

struct PredatorEnvelope {
  std::vector<double> y_lo, y_hi;
};

struct PreyEnvelope {
  std::vector<double> x_lo, x_hi;
  std::vector<LowerBranch> branch;  ///< attaining branch per grid point
  LowerBranch suggested = LowerBranch::IntegralEnvelope;  ///< regime-based choice, diagnostics only
};

/// y_lo = L2, y_hi = L2 (1 + b1 int G1)^{c2/(beta b1)}.
PredatorEnvelope envelope_y(const TrajectoryBundle& bundle, const ModelParams& params);

/// x_hi = L1, x_lo = L1 * max(both lower factors), valid for all parameters.
PreyEnvelope envelope_x(const TrajectoryBundle& bundle, const ModelParams& params,
                        const Regime& regime);

struct ViolationReport {
  std::size_t n_points = 0;
  std::size_t n_viol_y = 0;
  std::size_t n_viol_x = 0;
  /// Largest relative excess seen over any containment check, tolerance not
  /// subtracted, floored at 0.
  double worst_rel_excess = 0.0;
  double dt = 0.0;

  /// Failed containment checks over all checks (two per grid point).
  double violation_fraction() const;

  /// Commutative, associative merge.
  ViolationReport& merge(const ViolationReport& other);
};

struct AuditOptions {
  double tol_rel = 1e-2;
  /// Test hook: compare against swapped envelopes. Used by the harness self-test.
  bool flip_inequalities = false;
};

ViolationReport audit(const TrajectoryBundle& bundle, const ModelParams& params,
                      const AuditOptions& opts = {});

ViolationReport audit(std::span<const TrajectoryBundle> bundles, const ModelParams& params,
                      const AuditOptions& opts = {});

/// Bundle CSV: t,X,Y,L1,L2,y_lo,y_hi,x_lo,x_hi,regime_used, every `stride`-th row.
void write_bundle_csv(std::ostream& os, const TrajectoryBundle& bundle, const ModelParams& params,
                      std::size_t stride = 1);

}  // namespace arena
