#pragma once

// Adaptive Gauss-Kronrod quadrature for the integral shapes used by the bound
// formulas: Gaussian-weighted half-line integrals and indicator-constrained
// integrals against the joint density of Brownian motion and its extremum.

#include "arena/brownian.hpp"

#include <cstddef>
#include <functional>
#include <stdexcept>

namespace arena {

struct QuadratureResult {
  double value = 0.0;
  double err_est = 0.0;
  std::size_t n_evals = 0;
};

/// Raised when the subdivision budget is exhausted before err_est <= tol.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultTol1d = 1e-6;
inline constexpr double kDefaultTol2d = 1e-5;
inline constexpr double kDefaultTol3d = 1e-4;

/// Unbounded directions are cut at this many standard deviations.
inline constexpr double kTruncationSigmas = 8.0;

inline constexpr std::size_t kMaxSubdivisions = 20000;

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double u, double v)>;
using Pred2 = std::function<bool(double u, double v)>;
using Fn3 = std::function<double(double u1, double v1, double v2)>;
using Pred3 = std::function<bool(double u1, double v1, double v2)>;

/// Global adaptive G7/K15 on [a, b]. err_est = sum over panels of |K15 - G7|.
QuadratureResult integrate_adaptive(const Fn1& f, double a, double b, double tol,
                                    std::size_t max_subdivisions = kMaxSubdivisions);

/// Integral of f over {x in [a, b] : inside(x)}. The indicator is scanned on
/// `scan_points` equispaced points, sign changes are located by bisection and
/// each interval where it holds is integrated separately. f is only evaluated
/// where inside() is true.
QuadratureResult integrate_indicator(const Fn1& f, const std::function<bool(double)>& inside,
                                     double a, double b, double tol, std::size_t scan_points = 24);

/// int_0^inf f(z) N_{0,t}(z) dz after z = sqrt(t) s, cut at s = 8. The tail
/// mass times the largest |f| seen is added to err_est.
QuadratureResult halfline_gauss(const Fn1& f, double t, double tol = kDefaultTol1d);

/// int h(u, v) f_{B,M}(u, v) du dv over region ∩ wedge (with_max), or the
/// mirrored with_min wedge. Integration runs in (s, w) = (|v|, |v - u|) on the
/// triangle s + w <= 8 sqrt(t).
QuadratureResult region_integral_2d(const Fn2& h, const Pred2& region, double t, JointWith which,
                                    double tol = kDefaultTol2d);

/// int h(u1, v1, v2) f_{B,M}(u1, v1) 2 N_{0,t}(v2) over region ∩ {v1 > 0, u1 < v1, v2 > 0}.
QuadratureResult region_integral_3d(const Fn3& h, const Pred3& region, double t,
                                    double tol = kDefaultTol3d);

}  // namespace arena
