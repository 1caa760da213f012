#include "arena/brownian.hpp"

#include "arena/csv.hpp"
#include "arena/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace arena {

BrownianPath::BrownianPath(double dt, std::vector<double> increments, std::uint64_t seed)
    : dt_(dt), seed_(seed), increments_(std::move(increments)) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be > 0");
  if (increments_.empty()) throw std::invalid_argument("a Brownian path needs n_steps >= 1");

  const std::size_t n = increments_.size() + 1;
  t_grid_.resize(n);
  values_.resize(n);
  run_max_.resize(n);
  run_min_.resize(n);

  double b = 0.0, hi = 0.0, lo = 0.0;
  t_grid_[0] = 0.0;
  values_[0] = run_max_[0] = run_min_[0] = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    b += increments_[i - 1];
    hi = std::max(hi, b);
    lo = std::min(lo, b);
    t_grid_[i] = dt * static_cast<double>(i);
    values_[i] = b;
    run_max_[i] = hi;
    run_min_[i] = lo;
  }
}

BrownianPath BrownianPath::sample(double t_end, std::size_t n_steps, std::uint64_t seed) {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be > 0");
  if (n_steps == 0) throw std::invalid_argument("n_steps must be >= 1");
  const double dt = t_end / static_cast<double>(n_steps);
  const double scale = std::sqrt(dt);
  NormalStream normal(seed);
  std::vector<double> inc(n_steps);
  for (auto& d : inc) d = scale * normal();
  return BrownianPath(dt, std::move(inc), seed);
}

BrownianPath BrownianPath::from_increments(double dt, std::vector<double> increments,
                                           std::uint64_t seed) {
  return BrownianPath(dt, std::move(increments), seed);
}

BrownianPath BrownianPath::correlated(const BrownianPath& b1, const BrownianPath& b_perp,
                                      double rho) {
  if (!(rho >= -1.0 && rho <= 1.0)) throw std::invalid_argument("rho must lie in [-1, 1]");
  if (!b1.same_grid(b_perp)) throw std::invalid_argument("correlated drivers need a shared grid");
  const double w = std::sqrt(1.0 - rho * rho);
  std::vector<double> inc(b1.n_steps());
  for (std::size_t i = 0; i < inc.size(); ++i) {
    inc[i] = rho * b1.increments_[i] + w * b_perp.increments_[i];
  }
  return BrownianPath(b1.dt_, std::move(inc), b_perp.seed_);
}

BrownianPath BrownianPath::coarsen(std::size_t factor) const {
  if (factor == 0 || n_steps() % factor != 0) {
    throw std::invalid_argument("coarsening factor must divide n_steps");
  }
  std::vector<double> inc(n_steps() / factor);
  for (std::size_t j = 0; j < inc.size(); ++j) {
    // difference of stored values keeps the coarse path on the fine one exactly
    inc[j] = values_[(j + 1) * factor] - values_[j * factor];
  }
  return BrownianPath(dt_ * static_cast<double>(factor), std::move(inc), seed_);
}

void write_csv(std::ostream& os, const BrownianPath& path) {
  CsvWriter csv(os, "brownian/1", {"t", "B", "M", "m"});
  for (std::size_t i = 0; i < path.size(); ++i) {
    csv.cell(path.t_grid()[i]).cell(path.values()[i]).cell(path.run_max()[i]).cell(path.run_min()[i]);
    csv.end_row();
  }
}

double gaussian_density(double r, double t) {
  return std::exp(-r * r / (2.0 * t)) / std::sqrt(2.0 * std::numbers::pi * t);
}

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double density_extremum(double z, double t, Extremum which) {
  if (!(t > 0.0)) throw std::invalid_argument("density_extremum needs t > 0");
  const bool inside = which == Extremum::Max ? z >= 0.0 : z <= 0.0;
  return inside ? 2.0 * gaussian_density(z, t) : 0.0;
}

double joint_density(double u, double v, double t, JointWith which) {
  if (!(t > 0.0)) throw std::invalid_argument("joint_density needs t > 0");
  double r = 0.0;
  if (which == JointWith::Max) {
    if (!(v > 0.0 && u < v)) return 0.0;
    r = 2.0 * v - u;
  } else {
    if (!(v < 0.0 && u > v)) return 0.0;
    r = u - 2.0 * v;
  }
  return 2.0 * r / t * gaussian_density(r, t);
}

}  // namespace arena
