#include "arena/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

namespace arena {

namespace {

// QUADPACK 15-point Kronrod abscissae (positive half) and weights; the
// odd-indexed abscissae together with 0 are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, err;
  bool operator<(const Panel& o) const { return err < o.err; }
};

/// One G7/K15 panel with the QUADPACK error heuristic: the raw |K15 - G7|
/// is rescaled against the mean absolute deviation of the integrand, which is
/// far less prone to accidental agreement on kinked integrands.
Panel gk15(const Fn1& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  std::array<double, 15> fv;
  fv[7] = f(c);
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    fv[j] = f(c - dx);
    fv[14 - j] = f(c + dx);
  }
  double kron = fv[7] * kWgk[7];
  double gauss = fv[7] * kWg[3];
  double abs_sum = std::abs(fv[7]) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double pair = fv[j] + fv[14 - j];
    kron += kWgk[j] * pair;
    abs_sum += kWgk[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  const double mean = 0.5 * kron;
  double asc = kWgk[7] * std::abs(fv[7] - mean);
  for (int j = 0; j < 7; ++j) asc += kWgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));

  double err = std::abs((kron - gauss) * h);
  asc *= std::abs(h);
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  err = std::max(err, 50.0 * eps * abs_sum * std::abs(h));
  return {a, b, kron * h, err};
}

/// Standard normal upper tail mass beyond kTruncationSigmas.
double gauss_tail() { return 0.5 * std::erfc(kTruncationSigmas / std::sqrt(2.0)); }

/// P(s + w > R) under the quadrant density, in standard units:
/// 2 int_8^inf x^2 phi(x) dx = 2 (8 phi(8) + Phibar(8)).
double wedge_tail() {
  const double x = kTruncationSigmas;
  const double phi = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
  return 2.0 * (x * phi + gauss_tail());
}

}  // namespace

QuadratureResult integrate_adaptive(const Fn1& f, double a, double b, double tol,
                                    std::size_t max_subdivisions) {
  if (!(tol > 0.0)) throw std::invalid_argument("quadrature tolerance must be positive");
  if (!(a <= b)) throw std::invalid_argument("quadrature needs a <= b");
  QuadratureResult out;
  if (a == b) return out;

  std::size_t evals = 0;
  auto counted = [&](double x) {
    ++evals;
    return f(x);
  };

  std::priority_queue<Panel> heap;
  Panel first = gk15(counted, a, b);
  double value = first.value;
  double err = first.err;
  heap.push(first);
  const double min_width = 64.0 * std::numeric_limits<double>::epsilon() * (b - a);

  std::size_t splits = 0;
  while (err > tol && err > 1e-13 * std::abs(value)) {
    Panel worst = heap.top();
    if (worst.b - worst.a < min_width) break;  // rounding-limited
    if (++splits > max_subdivisions) {
      throw QuadratureError("adaptive quadrature did not converge on [" + std::to_string(a) + ", " +
                            std::to_string(b) + "]: err " + std::to_string(err) + " > tol " +
                            std::to_string(tol));
    }
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = gk15(counted, worst.a, mid);
    Panel right = gk15(counted, mid, worst.b);
    value += left.value + right.value - worst.value;
    err += left.err + right.err - worst.err;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum to shed the drift of the running updates.
  value = 0.0;
  err = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    err += heap.top().err;
    heap.pop();
  }
  if (!std::isfinite(value)) throw QuadratureError("non-finite integrand value");
  out.value = value;
  out.err_est = err;
  out.n_evals = evals;
  return out;
}

QuadratureResult integrate_indicator(const Fn1& f, const std::function<bool(double)>& inside,
                                     double a, double b, double tol, std::size_t scan_points) {
  QuadratureResult out;
  if (!(a < b)) return out;
  scan_points = std::max<std::size_t>(scan_points, 2);

  // Locate the boundary between xs[i-1] and xs[i] by bisection.
  auto boundary = [&](double lo, double hi, bool lo_state) {
    for (int it = 0; it < 80 && hi - lo > 1e-14 * (b - a); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (inside(mid) == lo_state) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };

  std::vector<std::pair<double, double>> pieces;
  double prev_x = a;
  bool prev_in = inside(a);
  double start = a;
  for (std::size_t i = 1; i < scan_points; ++i) {
    const double x = i + 1 == scan_points ? b : a + (b - a) * static_cast<double>(i) /
                                                        static_cast<double>(scan_points - 1);
    const bool in = inside(x);
    if (in != prev_in) {
      const double cut = boundary(prev_x, x, prev_in);
      if (prev_in) {
        pieces.emplace_back(start, cut);
      } else {
        start = cut;
      }
      prev_in = in;
    }
    prev_x = x;
  }
  if (prev_in) pieces.emplace_back(start, b);
  if (pieces.empty()) return out;

  auto guarded = [&](double x) { return inside(x) ? f(x) : 0.0; };
  const double piece_tol = tol / static_cast<double>(pieces.size());
  for (const auto& [lo, hi] : pieces) {
    if (!(hi > lo)) continue;
    const QuadratureResult r = integrate_adaptive(guarded, lo, hi, piece_tol);
    out.value += r.value;
    out.err_est += r.err_est;
    out.n_evals += r.n_evals;
  }
  return out;
}

QuadratureResult halfline_gauss(const Fn1& f, double t, double tol) {
  if (!(t > 0.0)) throw std::invalid_argument("halfline_gauss needs t > 0");
  const double st = std::sqrt(t);
  double max_abs = 0.0;
  auto g = [&](double s) {
    const double fz = f(st * s);
    max_abs = std::max(max_abs, std::abs(fz));
    return fz * std::exp(-0.5 * s * s) / std::sqrt(2.0 * M_PI);
  };
  const double tail = gauss_tail();
  QuadratureResult r = integrate_adaptive(g, 0.0, kTruncationSigmas, 0.5 * tol);
  r.err_est += tail * max_abs;
  return r;
}

QuadratureResult region_integral_2d(const Fn2& h, const Pred2& region, double t, JointWith which,
                                    double tol) {
  if (!(t > 0.0)) throw std::invalid_argument("region_integral_2d needs t > 0");
  if (!(tol > 0.0)) throw std::invalid_argument("quadrature tolerance must be positive");
  const double r_max = kTruncationSigmas * std::sqrt(t);
  const double sign = which == JointWith::Max ? 1.0 : -1.0;

  // (s, w) -> (u, v): with_max v = s, u = s - w; with_min v = -s, u = w - s.
  double max_abs = 0.0;
  double worst_inner_err = 0.0;
  std::size_t evals = 0;
  const double inner_tol = tol / (4.0 * r_max);

  auto inner = [&](double s) {
    const double v = sign * s;
    auto in = [&](double w) { return region(v - sign * w, v); };
    auto f = [&](double w) {
      const double u = v - sign * w;
      const double hv = h(u, v);
      max_abs = std::max(max_abs, std::abs(hv));
      const double r = s + w;
      return hv * 2.0 * r / t * gaussian_density(r, t);
    };
    const QuadratureResult r = integrate_indicator(f, in, 0.0, r_max - s, inner_tol);
    worst_inner_err = std::max(worst_inner_err, r.err_est);
    evals += r.n_evals;
    return r.value;
  };

  QuadratureResult outer = integrate_adaptive(inner, 0.0, r_max, 0.5 * tol);
  QuadratureResult out;
  out.value = outer.value;
  out.err_est = outer.err_est + r_max * worst_inner_err + wedge_tail() * max_abs;
  out.n_evals = evals;
  return out;
}

QuadratureResult region_integral_3d(const Fn3& h, const Pred3& region, double t, double tol) {
  if (!(t > 0.0)) throw std::invalid_argument("region_integral_3d needs t > 0");
  if (!(tol > 0.0)) throw std::invalid_argument("quadrature tolerance must be positive");
  const double r_max = kTruncationSigmas * std::sqrt(t);

  double max_abs = 0.0;
  double worst_inner_err = 0.0;
  std::size_t evals = 0;
  auto inner = [&](double v2) {
    const QuadratureResult r = region_integral_2d(
        [&](double u1, double v1) { return h(u1, v1, v2); },
        [&](double u1, double v1) { return region(u1, v1, v2); }, t, JointWith::Max, 0.5 * tol);
    worst_inner_err = std::max(worst_inner_err, r.err_est);
    max_abs = std::max(max_abs, std::abs(r.value));
    evals += r.n_evals;
    return r.value * 2.0 * gaussian_density(v2, t);
  };

  QuadratureResult outer = integrate_adaptive(inner, 0.0, r_max, 0.25 * tol);
  QuadratureResult out;
  out.value = outer.value;
  // The v2 weight integrates to at most 1, so inner errors add at most once.
  out.err_est = outer.err_est + worst_inner_err + 2.0 * gauss_tail() * max_abs;
  out.n_evals = evals;
  return out;
}

}  // namespace arena
