#include "arena/logistic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace arena {

namespace {
const double kMaxLog = std::log(std::numeric_limits<double>::max());
}

GbmPath gbm_path(const LogisticParams& lp, const BrownianPath& bp) {
  lp.validate();
  const double drift = lp.a - 0.5 * lp.sigma * lp.sigma;
  const double log_lambda = std::log(lp.lambda);
  const auto b = bp.values();
  const std::size_t n = bp.size();

  GbmPath out;
  out.dt = bp.dt();
  out.g.resize(n);
  out.int_g.resize(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double expo = log_lambda + drift * bp.time(i) + lp.sigma * b[i];
    if (expo > kMaxLog) throw std::overflow_error("geometric Brownian motion overflows double range");
    out.g[i] = std::exp(expo);
    if (i > 0) acc += 0.5 * (out.g[i] + out.g[i - 1]) * bp.dt();
    out.int_g[i] = acc;
  }
  if (!std::isfinite(acc)) throw std::overflow_error("integral of G overflows double range");
  return out;
}

LogisticPath logistic_exact(const LogisticParams& lp, const GbmPath& gbm) {
  LogisticPath out;
  out.dt = gbm.dt;
  out.l.resize(gbm.g.size());
  for (std::size_t i = 0; i < gbm.g.size(); ++i) {
    out.l[i] = gbm.g[i] / (1.0 + lp.b * gbm.int_g[i]);
  }
  return out;
}

LogisticPath logistic_exact(const LogisticParams& lp, const BrownianPath& bp) {
  return logistic_exact(lp, gbm_path(lp, bp));
}

std::pair<double, double> log_integral_identity(const LogisticParams& lp, const BrownianPath& bp) {
  if (!(lp.b > 0.0)) throw std::invalid_argument("log_integral_identity needs b > 0");
  const GbmPath gbm = gbm_path(lp, bp);
  const LogisticPath lpath = logistic_exact(lp, gbm);
  double lhs = 0.0;
  for (std::size_t i = 1; i < lpath.l.size(); ++i) {
    lhs += 0.5 * (lpath.l[i] + lpath.l[i - 1]) * bp.dt();
  }
  const double rhs = std::log1p(lp.b * gbm.int_g.back()) / lp.b;
  return {lhs, rhs};
}

}  // namespace arena
