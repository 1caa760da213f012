#pragma once

// Closed-form logistic solution L = G / (1 + b int_0^t G), with G the
// geometric Brownian motion lambda exp((a - sigma^2/2) t + sigma B(t)),
// evaluated along a discretized Brownian path.

#include "arena/brownian.hpp"
#include "arena/model.hpp"

#include <utility>
#include <vector>

namespace arena {

struct GbmPath {
  double dt = 0.0;
  std::vector<double> g;      ///< G(t_i) > 0
  std::vector<double> int_g;  ///< trapezoid int_0^{t_i} G, int_g[0] = 0
};

struct LogisticPath {
  double dt = 0.0;
  std::vector<double> l;  ///< L(t_i) > 0, l[0] = lambda
};

/// Exponent (a - sigma^2/2) t + sigma B(t) is accumulated in log space;
/// throws std::overflow_error if G leaves the representable range.
GbmPath gbm_path(const LogisticParams& lp, const BrownianPath& bp);

LogisticPath logistic_exact(const LogisticParams& lp, const BrownianPath& bp);
LogisticPath logistic_exact(const LogisticParams& lp, const GbmPath& gbm);

/// (trapezoid int_0^T L, (1/b) ln(1 + b int_0^T G)) at the path's end. Needs b > 0.
std::pair<double, double> log_integral_identity(const LogisticParams& lp, const BrownianPath& bp);

}  // namespace arena
