#include "arena/envelopes.hpp"

#include "arena/csv.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace arena {

std::string_view to_string(LowerBranch b) {
  return b == LowerBranch::PredationCap ? "predation_cap" : "integral_envelope";
}

namespace {

/// (1 + b1 int G1)^{c2/(beta b1)} in log form.
double log_predator_amplifier(const ModelParams& p, double int_g1) {
  return p.c2 / (p.beta * p.b1) * std::log1p(p.b1 * int_g1);
}

}  // namespace

PredatorEnvelope envelope_y(const TrajectoryBundle& bundle, const ModelParams& p) {
  PredatorEnvelope env;
  const std::size_t n = bundle.size();
  env.y_lo.resize(n);
  env.y_hi.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    env.y_lo[i] = bundle.l2[i];
    env.y_hi[i] = bundle.l2[i] * std::exp(log_predator_amplifier(p, bundle.int_g1[i]));
  }
  return env;
}

PreyEnvelope envelope_x(const TrajectoryBundle& bundle, const ModelParams& p, const Regime& regime) {
  PreyEnvelope env;
  env.suggested = regime.tag == RegimeTag::PredatorExtinction || regime.tag == RegimeTag::PreyExtinction
                      ? LowerBranch::IntegralEnvelope
                      : LowerBranch::PredationCap;
  const std::size_t n = bundle.size();
  env.x_lo.resize(n);
  env.x_hi.resize(n);
  env.branch.resize(n);
  const double k = p.c1 / (p.beta * p.b2);
  for (std::size_t i = 0; i < n; ++i) {
    const double cap = -p.c1 * bundle.t[i];
    const double integral =
        -k * std::exp(log_predator_amplifier(p, bundle.int_g1[i])) * std::log1p(p.b2 * bundle.int_g2[i]);
    const bool use_cap = cap > integral;
    env.branch[i] = use_cap ? LowerBranch::PredationCap : LowerBranch::IntegralEnvelope;
    env.x_hi[i] = bundle.l1[i];
    env.x_lo[i] = bundle.l1[i] * std::exp(use_cap ? cap : integral);
  }
  return env;
}

double ViolationReport::violation_fraction() const {
  if (n_points == 0) return 0.0;
  return static_cast<double>(n_viol_x + n_viol_y) / (2.0 * static_cast<double>(n_points));
}

ViolationReport& ViolationReport::merge(const ViolationReport& o) {
  if (n_points == 0) dt = o.dt;
  n_points += o.n_points;
  n_viol_y += o.n_viol_y;
  n_viol_x += o.n_viol_x;
  worst_rel_excess = std::max(worst_rel_excess, o.worst_rel_excess);
  return *this;
}

namespace {

/// Relative amount by which v escapes [lo, hi]; <= 0 when contained.
double rel_excess(double v, double lo, double hi) {
  return std::max((v - hi) / hi, (lo - v) / lo);
}

}  // namespace

ViolationReport audit(const TrajectoryBundle& bundle, const ModelParams& params,
                      const AuditOptions& opts) {
  const PredatorEnvelope ey = envelope_y(bundle, params);
  const PreyEnvelope ex = envelope_x(bundle, params, classify_regime(params));

  ViolationReport r;
  r.dt = bundle.dt;
  r.n_points = bundle.size();
  for (std::size_t i = 0; i < bundle.size(); ++i) {
    double ylo = ey.y_lo[i], yhi = ey.y_hi[i], xlo = ex.x_lo[i], xhi = ex.x_hi[i];
    if (opts.flip_inequalities) {
      std::swap(ylo, yhi);
      std::swap(xlo, xhi);
    }
    const double ey_i = rel_excess(bundle.y[i], ylo, yhi);
    const double ex_i = rel_excess(bundle.x[i], xlo, xhi);
    if (ey_i > opts.tol_rel) ++r.n_viol_y;
    if (ex_i > opts.tol_rel) ++r.n_viol_x;
    r.worst_rel_excess = std::max({r.worst_rel_excess, ey_i, ex_i});
  }
  return r;
}

ViolationReport audit(std::span<const TrajectoryBundle> bundles, const ModelParams& params,
                      const AuditOptions& opts) {
  if (bundles.empty()) throw std::invalid_argument("audit needs at least one bundle");
  ViolationReport total;
  for (const auto& b : bundles) total.merge(audit(b, params, opts));
  return total;
}

void write_bundle_csv(std::ostream& os, const TrajectoryBundle& bundle, const ModelParams& params,
                      std::size_t stride) {
  if (stride == 0) stride = 1;
  const PredatorEnvelope ey = envelope_y(bundle, params);
  const PreyEnvelope ex = envelope_x(bundle, params, classify_regime(params));
  CsvWriter csv(os, "bundle/1",
                {"t", "X", "Y", "L1", "L2", "y_lo", "y_hi", "x_lo", "x_hi", "regime_used"});
  for (std::size_t i = 0; i < bundle.size(); i += stride) {
    csv.cell(bundle.t[i]).cell(bundle.x[i]).cell(bundle.y[i]).cell(bundle.l1[i]).cell(bundle.l2[i]);
    csv.cell(ey.y_lo[i]).cell(ey.y_hi[i]).cell(ex.x_lo[i]).cell(ex.x_hi[i]);
    csv.cell(to_string(ex.branch[i]));
    csv.end_row();
  }
}

}  // namespace arena
