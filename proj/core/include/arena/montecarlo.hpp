#pragma once

// Monte Carlo oracle for moments and distribution functions of the system and
// of the logistic process. Path i of a run with seed_base s draws its noise
// from derive_seed(s, i, 1) and derive_seed(s, i, 2), so estimates do not
// depend on the thread count and runs can be split and merged.

#include "arena/model.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace arena {

struct McEstimate {
  double mean = 0.0;
  double std_err = 0.0;
  std::size_t n_paths = 0;
  std::uint64_t seed_base = 0;
};

/// (sum, sum of squares, count) monoid.
struct MeanAccumulator {
  double sum = 0.0;
  double sumsq = 0.0;
  std::size_t count = 0;

  void add(double v) {
    sum += v;
    sumsq += v * v;
    ++count;
  }
  MeanAccumulator& merge(const MeanAccumulator& o) {
    sum += o.sum;
    sumsq += o.sumsq;
    count += o.count;
    return *this;
  }
  McEstimate estimate(std::uint64_t seed_base) const;
};

struct McConfig {
  double dt = 1e-3;
  std::size_t n_paths = 10000;
  std::uint64_t seed_base = 1;
  std::size_t first_path = 0;  ///< index offset, for split runs
  double rho = 0.0;            ///< driver correlation
  unsigned threads = 0;        ///< 0 = hardware concurrency
};

/// Runs body(i) for i in [0, n) on a small thread pool. Each index is
/// visited exactly once; callers write results into per-index slots.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

struct TerminalState {
  double x = 0.0;
  double y = 0.0;
};

/// Number of grid steps for horizon t at step dt; rejects t off the grid.
std::size_t grid_steps(double t, double dt);

/// (X(t), Y(t)) for paths first_path .. first_path + n_paths - 1, streamed
/// with the same increments simulate_system would see.
std::vector<TerminalState> simulate_terminal(const ModelParams& params, double t,
                                             const McConfig& cfg);

/// Sample mean of X(t)^p Y(t)^q. Throws std::overflow_error on a non-finite sample.
McEstimate mc_moment(const ModelParams& params, double p, double q, double t, const McConfig& cfg);
McEstimate moment_from_states(const std::vector<TerminalState>& states, double p, double q,
                              std::uint64_t seed_base);

enum class Marginal { X, Y, Joint };

std::string_view to_string(Marginal m);

struct CdfLevel {
  double z1 = 0.0;
  double z2 = 0.0;
};

/// Empirical P(X <= z1), P(Y <= z2) or P(X <= z1, Y <= z2) with binomial errors.
std::vector<McEstimate> mc_cdf(const ModelParams& params, const std::vector<CdfLevel>& levels,
                               double t, const McConfig& cfg, Marginal marginal);
std::vector<McEstimate> cdf_from_states(const std::vector<TerminalState>& states,
                                        const std::vector<CdfLevel>& levels, Marginal marginal,
                                        std::uint64_t seed_base);

/// L(t) from the closed-form solution, trapezoid integral on step dt.
std::vector<double> logistic_terminal_samples(const LogisticParams& lp, double t,
                                              const McConfig& cfg);

McEstimate mean_of_powers(const std::vector<double>& samples, double p, std::uint64_t seed_base);

/// Empirical frequency of samples <= z with binomial standard error.
McEstimate empirical_cdf(const std::vector<double>& samples, double z, std::uint64_t seed_base);

/// Linear-interpolated sample quantile, 0 <= prob <= 1.
double sample_quantile(std::vector<double> samples, double prob);

/// (1/T) int_0^T L dt for the closed-form logistic path driven by
/// derive_seed(seed, 0, 1). Returns lambda when T = 0.
double ergodic_average(const LogisticParams& lp, double T, double dt, std::uint64_t seed);

/// (1/T) int_0^T X dt for the coupled system on path 0 of seed.
double ergodic_average_prey(const ModelParams& params, double T, double dt, std::uint64_t seed);

/// Two-sample-free Kolmogorov distance between samples and a reference CDF.
double kolmogorov_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

/// CSV: quantity,level,order,estimate,std_err,n_paths,seed_base.
struct McRow {
  std::string_view quantity;
  double level = 0.0;
  double order = 0.0;
  McEstimate est;
};
void write_mc_csv(std::ostream& os, const std::vector<McRow>& rows);

}  // namespace arena
