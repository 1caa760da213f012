#pragma once

// Discretized Brownian paths with running extrema, and the reflection-principle
// densities of the running maximum / minimum.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace arena {

/// Brownian motion on the uniform grid t_i = i * dt, i = 0..n_steps.
/// Immutable after construction.
class BrownianPath {
 public:
  /// Increments are sqrt(dt) * N(0,1) draws from NormalStream(seed).
  static BrownianPath sample(double t_end, std::size_t n_steps, std::uint64_t seed);

  static BrownianPath from_increments(double dt, std::vector<double> increments,
                                      std::uint64_t seed = 0);

  /// B2 = rho B1 + sqrt(1 - rho^2) B_perp on the shared grid.
  static BrownianPath correlated(const BrownianPath& b1, const BrownianPath& b_perp, double rho);

  /// Same realization observed on every `factor`-th grid point.
  BrownianPath coarsen(std::size_t factor) const;

  std::size_t n_steps() const { return increments_.size(); }
  std::size_t size() const { return values_.size(); }
  double dt() const { return dt_; }
  double t_end() const { return dt_ * static_cast<double>(n_steps()); }
  double time(std::size_t i) const { return dt_ * static_cast<double>(i); }
  std::uint64_t seed() const { return seed_; }

  std::span<const double> t_grid() const { return t_grid_; }
  std::span<const double> values() const { return values_; }
  std::span<const double> increments() const { return increments_; }
  std::span<const double> run_max() const { return run_max_; }
  std::span<const double> run_min() const { return run_min_; }

  bool same_grid(const BrownianPath& other) const {
    return n_steps() == other.n_steps() && dt_ == other.dt_;
  }

 private:
  BrownianPath(double dt, std::vector<double> increments, std::uint64_t seed);

  double dt_ = 0.0;
  std::uint64_t seed_ = 0;
  std::vector<double> t_grid_;
  std::vector<double> values_;
  std::vector<double> increments_;
  std::vector<double> run_max_;
  std::vector<double> run_min_;
};

/// Writes columns t,B,M,m after a schema line.
void write_csv(std::ostream& os, const BrownianPath& path);

enum class Extremum { Max, Min };
enum class JointWith { Max, Min };

/// N(0, t) density (1/sqrt(2 pi t)) exp(-r^2 / 2t).
double gaussian_density(double r, double t);

/// Standard normal CDF.
double normal_cdf(double x);

/// Density of M(t) (support z >= 0) or m(t) (support z <= 0): 2 N_{0,t}(z).
double density_extremum(double z, double t, Extremum which);

/// Joint density of (B(t), M(t)) on {v > 0, u < v}, or of (B(t), m(t)) on
/// {v < 0, u > v}; zero outside. Both equal 2 r/t N_{0,t}(r) with r = |2v - u|.
double joint_density(double u, double v, double t, JointWith which);

}  // namespace arena
