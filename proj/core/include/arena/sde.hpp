#pragma once

// Log-coordinate Euler-Maruyama integration of the predator-prey system and
// of its two uncoupled logistic comparison processes on shared noise.

#include "arena/brownian.hpp"
#include "arena/logistic.hpp"
#include "arena/model.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace arena {

struct TrajectoryBundle {
  double dt = 0.0;
  std::vector<double> t;
  std::vector<double> x, y;    ///< coupled system
  std::vector<double> l1, l2;  ///< comparison logistics, same scheme, same noise
  std::vector<double> g1, g2;  ///< exact GBM components
  std::vector<double> int_g1, int_g2;
  std::uint64_t seed1 = 0, seed2 = 0;

  std::size_t size() const { return t.size(); }
};

/// One log-Euler step ln s' = ln s + (drift - b s - interaction) dt + sigma dB.
/// Shared by every state so that removing the interaction reproduces the
/// comparison process bit for bit.
class LogState {
 public:
  explicit LogState(double log_value);

  double log_value() const { return log_value_; }
  double value() const { return value_; }
  void step(double drift, double competition, double interaction, double sigma_db, double dt);

 private:
  double log_value_;
  double value_;  ///< exp(log_value_), cached
};

/// State of (X, Y, L1, L2) advanced one increment pair at a time. Used by
/// simulate_system and by the streaming Monte Carlo drivers.
class SystemStepper {
 public:
  explicit SystemStepper(const ModelParams& p);

  void step(double db1, double db2, double dt);

  double x() const { return lx_.value(); }
  double y() const { return ly_.value(); }
  double l1() const { return ll1_.value(); }
  double l2() const { return ll2_.value(); }

 private:
  ModelParams p_;
  double drift1_, drift2_;
  LogState lx_, ly_, ll1_, ll2_;
};

/// Log-Euler logistic path (the comparison scheme on its own).
std::vector<double> logistic_scheme(const LogisticParams& lp, const BrownianPath& bp);

/// Throws std::invalid_argument on mismatched grids and std::overflow_error if
/// any log-state leaves the double range.
TrajectoryBundle simulate_system(const ModelParams& params, const BrownianPath& bp1,
                                 const BrownianPath& bp2);

/// Independent (rho = 0) or correlated drivers for path `path_index` of a run.
struct DriverPair {
  BrownianPath b1;
  BrownianPath b2;
};

DriverPair make_drivers(double t_end, std::size_t n_steps, std::uint64_t seed_base,
                        std::uint64_t path_index, double rho = 0.0);

/// Terminal absolute errors |L_scheme(T) - L_exact(T)| of the log-Euler scheme
/// on the path coarsened by 2^k, k = refinements..1 (coarse to fine). The
/// exact solution is evaluated on the full-resolution path `bp`, whose step
/// count must be divisible by 2^refinements. Requires refinements >= 2.
std::vector<double> strong_error_probe(const LogisticParams& lp, const BrownianPath& bp,
                                       std::size_t refinements);

/// Same probe for the plain (non-log) Euler-Maruyama scheme.
std::vector<double> strong_error_probe_plain_em(const LogisticParams& lp, const BrownianPath& bp,
                                                std::size_t refinements);

}  // namespace arena
