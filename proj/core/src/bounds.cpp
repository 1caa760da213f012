#include "arena/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace arena {

std::string_view to_string(Validity v) {
  switch (v) {
    case Validity::Valid:
      return "valid";
    case Validity::OutsideRegime:
      return "outside_regime";
    case Validity::OutOfDomain:
      return "out_of_domain";
  }
  return "?";
}

namespace {

void require_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("bound evaluation needs t > 0");
}

void require_order(double p, const char* name) {
  if (!(p >= 0.0) || !std::isfinite(p)) {
    throw std::invalid_argument(std::string("moment order ") + name + " must be >= 0");
  }
}

/// int_0^inf (1 + b K e^{sign sigma z})^{-p} N_{0,t}(z) dz; exactly 1/2 at p = 0.
QuadratureResult moment_factor(double b, double sigma, double K, double p, double sign, double t,
                               double tol) {
  if (p == 0.0) return {0.5, 0.0, 0};
  return halfline_gauss(
      [=](double z) { return std::exp(-p * std::log1p(b * K * std::exp(sign * sigma * z))); }, t,
      tol);
}

double log_k(const LogisticParams& lp, double t) {
  return std::log(lp.lambda) + (lp.a - 0.5 * lp.sigma * lp.sigma) * t;
}

void tag_regime(BoundValue& out, const ModelParams& params, bool needs_a1_above_phi) {
  const double f = phi(params);
  const bool inside = needs_a1_above_phi ? params.a1 > f : params.a1 < f;
  if (!inside) {
    out.validity = Validity::OutsideRegime;
    out.note = needs_a1_above_phi ? "stated for a1 > phi; evaluated outside that regime"
                                  : "stated for a1 < phi; evaluated outside that regime";
  }
}

void clamp_probability(BoundValue& out) {
  out.raw = out.value;
  if (out.value < 0.0 || out.value > 1.0) {
    out.clamped = true;
    out.value = std::clamp(out.value, 0.0, 1.0);
  }
}

BoundValue out_of_domain(std::string note) {
  BoundValue out;
  out.value = std::numeric_limits<double>::quiet_NaN();
  out.raw = out.value;
  out.err = 0.0;
  out.validity = Validity::OutOfDomain;
  out.note = std::move(note);
  return out;
}

}  // namespace

Bracket logistic_moment_bracket(const LogisticParams& lp, double p, double t,
                                const BoundsOptions& opts) {
  lp.validate();
  require_time(t);
  require_order(p, "p");
  Bracket br;
  br.source = "logistic_moment";
  if (p == 0.0) {
    br.lower = br.upper = 1.0;
    return br;
  }
  const LogisticConstants c = logistic_constants(lp, p, t);
  const QuadratureResult up = moment_factor(lp.b, lp.sigma, c.K_p, p, -1.0, t, opts.tol1d);
  const QuadratureResult lo = moment_factor(lp.b, lp.sigma, c.K_p, p, +1.0, t, opts.tol1d);
  br.upper = 2.0 * c.k_p * up.value;
  br.upper_err = 2.0 * c.k_p * up.err_est;
  br.lower = 2.0 * c.k_p * lo.value;
  br.lower_err = 2.0 * c.k_p * lo.err_est;
  return br;
}

QuadratureResult logistic_wedge_cdf(const LogisticParams& lp, double z, double t, JointWith which,
                                    double tol) {
  lp.validate();
  require_time(t);
  if (!(z > 0.0)) return {};
  const LogisticConstants c = logistic_constants(lp, 0.0, t);
  // Every point of the max-wedge satisfies u < v, so the level set covers it.
  if (which == JointWith::Max && lp.b > 0.0 && c.K > 0.0 && z >= c.k / (lp.b * c.K)) {
    return {1.0, 0.0, 0};
  }
  const double lk = log_k(lp, t);
  const double lz = std::log(z);
  const double bK = lp.b * c.K;
  const double s = lp.sigma;
  return region_integral_2d([](double, double) { return 1.0; },
                            [=](double u, double v) {
                              return lk + s * u - std::log1p(bK * std::exp(s * v)) <= lz;
                            },
                            t, which, tol);
}

Bracket logistic_cdf_bracket(const LogisticParams& lp, double z, double t,
                             const BoundsOptions& opts) {
  if (!(z > 0.0)) throw std::invalid_argument("CDF level must be > 0");
  Bracket br;
  br.source = "logistic_cdf";
  const QuadratureResult up = logistic_wedge_cdf(lp, z, t, JointWith::Max, opts.tol2d);
  const QuadratureResult lo = logistic_wedge_cdf(lp, z, t, JointWith::Min, opts.tol2d);
  br.upper = std::min(up.value, 1.0);
  br.upper_err = up.err_est;
  br.lower = std::clamp(lo.value, 0.0, 1.0);
  br.lower_err = lo.err_est;
  return br;
}

BoundValue joint_moment_upper(const ModelParams& params, double p, double q, double t,
                              const BoundsOptions& opts) {
  params.validate();
  require_time(t);
  require_order(p, "p");
  require_order(q, "q");
  const double ratio = params.c2 / (params.beta * params.b1);
  const double s = q * ratio - p;
  if (!(s >= 1.0)) return out_of_domain("requires q c2/(beta b1) - p >= 1");

  const LogisticParams l1 = prey_logistic(params);
  const LogisticParams l2 = predator_constants(params, opts.k2_variant);
  const LogisticConstants c1 = logistic_constants(l1, p, t);
  const LogisticConstants c2 = logistic_constants(l2, q, t);

  const double s1sq = params.sigma1 * params.sigma1;
  const double rate = params.a1 + (q * ratio + p - 1.0) * 0.5 * s1sq;
  const double minkowski = std::exp(s * std::log1p(params.b1 * params.x0 * growth_integral(rate, t)));
  const QuadratureResult f2 = moment_factor(l2.b, l2.sigma, c2.K_p, q, -1.0, t, opts.tol1d);

  BoundValue out;
  const double scale = 2.0 * c1.k_p * c2.k_p * minkowski;
  out.value = scale * f2.value;
  out.err = scale * f2.err_est;
  out.raw = out.value;
  return out;
}

BoundValue joint_moment_lower(const ModelParams& params, double p, double q, double t,
                              const BoundsOptions& opts) {
  params.validate();
  require_time(t);
  require_order(p, "p");
  require_order(q, "q");
  BoundValue out;
  tag_regime(out, params, true);
  if (p == 0.0 && q == 0.0) {
    out.value = out.raw = 1.0;
    return out;
  }
  const LogisticParams l1 = prey_logistic(params);
  const LogisticParams l2 = predator_constants(params, opts.k2_variant);
  const LogisticConstants c1 = logistic_constants(l1, p, t);
  const LogisticConstants c2 = logistic_constants(l2, q, t);
  const QuadratureResult f1 = moment_factor(l1.b, l1.sigma, c1.K_p, p, +1.0, t, opts.tol1d);
  const QuadratureResult f2 = moment_factor(l2.b, l2.sigma, c2.K_p, q, +1.0, t, opts.tol1d);
  const double scale = 4.0 * std::exp(-p * params.c1 * t) * c1.k_p * c2.k_p;
  out.value = out.raw = scale * f1.value * f2.value;
  out.err = scale * (f1.err_est * f2.value + f2.err_est * f1.value + f1.err_est * f2.err_est);
  return out;
}

BoundValue moment_lower_x(const ModelParams& params, double p, double t,
                          const BoundsOptions& opts) {
  params.validate();
  require_time(t);
  require_order(p, "p");
  BoundValue out;
  tag_regime(out, params, false);
  if (p == 0.0) {
    out.value = out.raw = 1.0;
    return out;
  }
  const LogisticConstants k1 = logistic_constants(prey_logistic(params), 0.0, t);
  const LogisticConstants k2 = logistic_constants(predator_constants(params, opts.k2_variant), 0.0, t);
  const double b1K1 = params.b1 * k1.K;
  const double b2K2 = params.b2 * k2.K;
  const double inv_r = params.c2 / (params.beta * params.b1);
  const double pc = p * params.c1 / (params.beta * params.b2);
  const double s1 = params.sigma1, s2 = params.sigma2;
  const double pk = p * std::log(k1.k);

  const QuadratureResult r = region_integral_3d(
      [=](double u1, double v1, double v2) {
        const double l1 = std::log1p(b1K1 * std::exp(s1 * v1));
        const double l2 = std::log1p(b2K2 * std::exp(s2 * v2));
        return std::exp(pk + p * s1 * u1 - pc * std::exp(inv_r * l1) * l2 - p * l1);
      },
      [](double, double, double) { return true; }, t, opts.tol3d);
  out.value = out.raw = r.value;
  out.err = r.err_est;
  return out;
}

BoundValue moment_lower_y(const ModelParams& params, double q, double t,
                          const BoundsOptions& opts) {
  params.validate();
  require_time(t);
  require_order(q, "q");
  BoundValue out;
  tag_regime(out, params, false);
  if (q == 0.0) {
    out.value = out.raw = 1.0;
    return out;
  }
  const LogisticParams l2 = predator_constants(params, opts.k2_variant);
  const LogisticConstants c2 = logistic_constants(l2, q, t);
  const QuadratureResult f2 = moment_factor(l2.b, l2.sigma, c2.K_p, q, +1.0, t, opts.tol1d);
  out.value = out.raw = 2.0 * c2.k_p * f2.value;
  out.err = 2.0 * c2.k_p * f2.err_est;
  return out;
}

BoundValue cdf_lower_x(const ModelParams& params, double z1, double t, const BoundsOptions& opts) {
  params.validate();
  require_time(t);
  BoundValue out;
  const QuadratureResult r = logistic_wedge_cdf(prey_logistic(params), z1, t, JointWith::Min,
                                                opts.tol2d);
  out.value = r.value;
  out.err = r.err_est;
  clamp_probability(out);
  return out;
}

BoundValue cdf_lower_y(const ModelParams& params, double z2, double t, const BoundsOptions& opts) {
  params.validate();
  require_time(t);
  BoundValue out;
  if (!(z2 > 0.0)) return out;

  const LogisticParams l2 = predator_constants(params, opts.k2_variant);
  const double inner_tol = 0.5 * opts.tol2d;
  auto w_min = [&](double zeta) { return logistic_wedge_cdf(l2, zeta, t, JointWith::Min, inner_tol); };

  const double K1 = logistic_constants(prey_logistic(params), 0.0, t).K;
  const double b1K1 = params.b1 * K1;
  const double zeta_max = params.c2 == 0.0
                              ? z2
                              : z2 * std::exp(-params.c2 / (params.beta * params.b1) * std::log1p(b1K1));

  // Degenerate cases: no amplification factor or no prey noise (M1 = 0).
  if (params.c2 == 0.0 || params.sigma1 == 0.0 || b1K1 == 0.0) {
    const QuadratureResult r = w_min(zeta_max);
    out.value = r.value;
    out.err = r.err_est;
    clamp_probability(out);
    return out;
  }

  const double r = params.beta * params.b1 / params.c2;
  const double s1 = params.sigma1;
  const double lz2 = std::log(z2);
  const double h_max = kTruncationSigmas * std::sqrt(t);
  const double zeta_min = z2 * std::exp(-std::log1p(b1K1 * std::exp(s1 * h_max)) / r);

  double worst_inner = 0.0;
  auto integrand = [&](double zeta) {
    const double lq = r * (lz2 - std::log(zeta));  // ln (z2/zeta)^r
    const double qm1 = std::expm1(lq);
    const double h = std::log(qm1 / b1K1) / s1;
    const QuadratureResult w = w_min(zeta);
    worst_inner = std::max(worst_inner, w.err_est);
    return w.value * gaussian_density(h, t) * std::exp(lq) / qm1 / zeta;
  };
  const double pref = 2.0 * r / s1;
  const QuadratureResult outer = integrate_adaptive(integrand, zeta_min, zeta_max, 0.5 * opts.tol2d / pref);
  // The outer weight integrates to at most 1 over the M1 law.
  const double tail = std::erfc(kTruncationSigmas / std::sqrt(2.0));
  out.value = pref * outer.value;
  out.err = pref * outer.err_est + worst_inner + tail;
  clamp_probability(out);
  return out;
}

BoundValue cdf_joint_upper(const ModelParams& params, double z1, double z2, double t,
                           const BoundsOptions& opts) {
  params.validate();
  require_time(t);
  BoundValue out;
  tag_regime(out, params, true);
  if (!(z1 > 0.0) || !(z2 > 0.0)) {
    out.value = out.raw = 0.0;
    return out;
  }
  const QuadratureResult f1 = logistic_wedge_cdf(prey_logistic(params), z1 * std::exp(params.c1 * t),
                                                 t, JointWith::Max, 0.5 * opts.tol2d);
  const QuadratureResult f2 = logistic_wedge_cdf(predator_constants(params, opts.k2_variant), z2, t,
                                                 JointWith::Max, 0.5 * opts.tol2d);
  out.value = f1.value * f2.value;
  out.err = f1.err_est * f2.value + f2.err_est * f1.value + f1.err_est * f2.err_est;
  clamp_probability(out);
  return out;
}

BoundValue cdf_upper_x(const ModelParams& params, double z1, double t, const BoundsOptions& opts) {
  params.validate();
  require_time(t);
  BoundValue out;
  tag_regime(out, params, false);
  if (!(z1 > 0.0)) {
    out.value = out.raw = 0.0;
    return out;
  }
  const LogisticConstants k1 = logistic_constants(prey_logistic(params), 0.0, t);
  const LogisticConstants k2 = logistic_constants(predator_constants(params, opts.k2_variant), 0.0, t);
  const double b1K1 = params.b1 * k1.K;
  const double b2K2 = params.b2 * k2.K;
  const double inv_r = params.c2 / (params.beta * params.b1);
  const double c = params.c1 / (params.beta * params.b2);
  const double s1 = params.sigma1, s2 = params.sigma2;
  const double lk = std::log(k1.k);
  const double lz = std::log(z1);

  const QuadratureResult r = region_integral_3d(
      [](double, double, double) { return 1.0; },
      [=](double u1, double v1, double v2) {
        const double l1 = std::log1p(b1K1 * std::exp(s1 * v1));
        const double l2 = std::log1p(b2K2 * std::exp(s2 * v2));
        return lk + s1 * u1 - c * std::exp(inv_r * l1) * l2 - l1 <= lz;
      },
      t, opts.tol3d);
  out.value = r.value;
  out.err = r.err_est;
  clamp_probability(out);
  return out;
}

BoundValue cdf_upper_y(const ModelParams& params, double z2, double t, const BoundsOptions& opts) {
  params.validate();
  require_time(t);
  BoundValue out;
  tag_regime(out, params, false);
  const QuadratureResult r = logistic_wedge_cdf(predator_constants(params, opts.k2_variant), z2, t,
                                                JointWith::Max, opts.tol2d);
  out.value = r.value;
  out.err = r.err_est;
  clamp_probability(out);
  return out;
}

}  // namespace arena
