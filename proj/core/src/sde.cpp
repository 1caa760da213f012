#include "arena/sde.hpp"

#include "arena/rng.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace arena {

namespace {
const double kMaxLog = std::log(std::numeric_limits<double>::max());
}

LogState::LogState(double log_value) : log_value_(log_value), value_(std::exp(log_value)) {}

void LogState::step(double drift, double competition, double interaction, double sigma_db,
                    double dt) {
  log_value_ += (drift - competition * value_ - interaction) * dt + sigma_db;
  if (!(log_value_ < kMaxLog)) {
    throw std::overflow_error("log-state exceeds the representable exponent range");
  }
  value_ = std::exp(log_value_);
}

SystemStepper::SystemStepper(const ModelParams& p)
    : p_(p),
      drift1_(p.a1 - 0.5 * p.sigma1 * p.sigma1),
      drift2_(-p.a2 - 0.5 * p.sigma2 * p.sigma2),
      lx_(std::log(p.x0)),
      ly_(std::log(p.y0)),
      ll1_(std::log(p.x0)),
      ll2_(std::log(p.y0)) {}

void SystemStepper::step(double db1, double db2, double dt) {
  const double x = lx_.value();
  const double y = ly_.value();
  const double arena = p_.beta + y;
  const double predation = p_.c1 * y / arena;
  const double intake = -(p_.c2 * x / arena);
  const double n1 = p_.sigma1 * db1;
  const double n2 = p_.sigma2 * db2;
  lx_.step(drift1_, p_.b1, predation, n1, dt);
  ly_.step(drift2_, p_.b2, intake, n2, dt);
  ll1_.step(drift1_, p_.b1, 0.0, n1, dt);
  ll2_.step(drift2_, p_.b2, 0.0, n2, dt);
}

std::vector<double> logistic_scheme(const LogisticParams& lp, const BrownianPath& bp) {
  lp.validate();
  const double drift = lp.a - 0.5 * lp.sigma * lp.sigma;
  LogState s(std::log(lp.lambda));
  std::vector<double> out(bp.size());
  out[0] = lp.lambda;
  const auto inc = bp.increments();
  for (std::size_t i = 0; i < inc.size(); ++i) {
    s.step(drift, lp.b, 0.0, lp.sigma * inc[i], bp.dt());
    out[i + 1] = s.value();
  }
  return out;
}

TrajectoryBundle simulate_system(const ModelParams& params, const BrownianPath& bp1,
                                 const BrownianPath& bp2) {
  params.validate();
  if (!bp1.same_grid(bp2)) throw std::invalid_argument("simulate_system: driver grids differ");

  const std::size_t n = bp1.size();
  TrajectoryBundle b;
  b.dt = bp1.dt();
  b.seed1 = bp1.seed();
  b.seed2 = bp2.seed();
  b.t.assign(bp1.t_grid().begin(), bp1.t_grid().end());
  b.x.resize(n);
  b.y.resize(n);
  b.l1.resize(n);
  b.l2.resize(n);

  SystemStepper stepper(params);
  b.x[0] = stepper.x();
  b.y[0] = stepper.y();
  b.l1[0] = stepper.l1();
  b.l2[0] = stepper.l2();
  const auto d1 = bp1.increments();
  const auto d2 = bp2.increments();
  for (std::size_t i = 1; i < n; ++i) {
    stepper.step(d1[i - 1], d2[i - 1], b.dt);
    b.x[i] = stepper.x();
    b.y[i] = stepper.y();
    b.l1[i] = stepper.l1();
    b.l2[i] = stepper.l2();
  }

  GbmPath gbm1 = gbm_path(prey_logistic(params), bp1);
  GbmPath gbm2 = gbm_path(predator_logistic(params), bp2);
  b.g1 = std::move(gbm1.g);
  b.int_g1 = std::move(gbm1.int_g);
  b.g2 = std::move(gbm2.g);
  b.int_g2 = std::move(gbm2.int_g);
  return b;
}

DriverPair make_drivers(double t_end, std::size_t n_steps, std::uint64_t seed_base,
                        std::uint64_t path_index, double rho) {
  BrownianPath b1 = BrownianPath::sample(t_end, n_steps, derive_seed(seed_base, path_index, 1));
  BrownianPath b2 = BrownianPath::sample(t_end, n_steps, derive_seed(seed_base, path_index, 2));
  if (rho != 0.0) b2 = BrownianPath::correlated(b1, b2, rho);
  return DriverPair{std::move(b1), std::move(b2)};
}

namespace {

template <class Scheme>
std::vector<double> probe(const LogisticParams& lp, const BrownianPath& bp, std::size_t refinements,
                          Scheme&& scheme) {
  if (refinements < 2) throw std::invalid_argument("strong_error_probe needs refinements >= 2");
  const std::size_t top = std::size_t{1} << refinements;
  if (bp.n_steps() % top != 0) {
    throw std::invalid_argument("path step count must be divisible by 2^refinements");
  }
  const double exact = logistic_exact(lp, bp).l.back();
  std::vector<double> errors;
  for (std::size_t k = refinements; k >= 1; --k) {
    const BrownianPath coarse = bp.coarsen(std::size_t{1} << k);
    errors.push_back(std::abs(scheme(lp, coarse) - exact));
  }
  return errors;
}

double plain_em_terminal(const LogisticParams& lp, const BrownianPath& bp) {
  double l = lp.lambda;
  for (double db : bp.increments()) l += l * (lp.a - lp.b * l) * bp.dt() + lp.sigma * l * db;
  return l;
}

}  // namespace

std::vector<double> strong_error_probe(const LogisticParams& lp, const BrownianPath& bp,
                                       std::size_t refinements) {
  return probe(lp, bp, refinements, [](const LogisticParams& p, const BrownianPath& path) {
    return logistic_scheme(p, path).back();
  });
}

std::vector<double> strong_error_probe_plain_em(const LogisticParams& lp, const BrownianPath& bp,
                                                std::size_t refinements) {
  return probe(lp, bp, refinements, plain_em_terminal);
}

}  // namespace arena
