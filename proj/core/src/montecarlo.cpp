#include "arena/montecarlo.hpp"

#include "arena/csv.hpp"
#include "arena/rng.hpp"
#include "arena/sde.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace arena {

McEstimate MeanAccumulator::estimate(std::uint64_t seed_base) const {
  McEstimate e;
  e.n_paths = count;
  e.seed_base = seed_base;
  if (count == 0) return e;
  const double n = static_cast<double>(count);
  e.mean = sum / n;
  if (count > 1) {
    const double var = std::max(0.0, (sumsq - n * e.mean * e.mean) / (n - 1.0));
    e.std_err = std::sqrt(var / n);
  }
  return e;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::size_t grid_steps(double t, double dt) {
  if (!(dt > 0.0) || !(t > 0.0)) throw std::invalid_argument("need t > 0 and dt > 0");
  const double steps = std::round(t / dt);
  if (steps < 1.0 || std::abs(steps * dt - t) > 1e-9 * std::max(1.0, t)) {
    throw std::invalid_argument("t must lie on the simulation grid");
  }
  return static_cast<std::size_t>(steps);
}

std::vector<TerminalState> simulate_terminal(const ModelParams& params, double t,
                                             const McConfig& cfg) {
  params.validate();
  const std::size_t n = grid_steps(t, cfg.dt);
  const double dt = t / static_cast<double>(n);
  const double scale = std::sqrt(dt);
  const double w = std::sqrt(1.0 - cfg.rho * cfg.rho);
  std::vector<TerminalState> out(cfg.n_paths);
  parallel_for(cfg.n_paths, cfg.threads, [&](std::size_t i) {
    const std::uint64_t path = cfg.first_path + i;
    NormalStream n1(derive_seed(cfg.seed_base, path, 1));
    NormalStream n2(derive_seed(cfg.seed_base, path, 2));
    SystemStepper st(params);
    for (std::size_t k = 0; k < n; ++k) {
      const double d1 = scale * n1();
      double d2 = scale * n2();
      if (cfg.rho != 0.0) d2 = cfg.rho * d1 + w * d2;
      st.step(d1, d2, dt);
    }
    out[i] = {st.x(), st.y()};
  });
  return out;
}

McEstimate moment_from_states(const std::vector<TerminalState>& states, double p, double q,
                              std::uint64_t seed_base) {
  MeanAccumulator acc;
  for (const auto& s : states) {
    const double v = (p == 0.0 ? 1.0 : std::pow(s.x, p)) * (q == 0.0 ? 1.0 : std::pow(s.y, q));
    if (!std::isfinite(v)) throw std::overflow_error("moment sample is not finite");
    acc.add(v);
  }
  return acc.estimate(seed_base);
}

McEstimate mc_moment(const ModelParams& params, double p, double q, double t, const McConfig& cfg) {
  if (cfg.n_paths < 2) throw std::invalid_argument("mc_moment needs n_paths >= 2");
  if (p == 0.0 && q == 0.0) return {1.0, 0.0, cfg.n_paths, cfg.seed_base};
  return moment_from_states(simulate_terminal(params, t, cfg), p, q, cfg.seed_base);
}

std::string_view to_string(Marginal m) {
  switch (m) {
    case Marginal::X:
      return "x";
    case Marginal::Y:
      return "y";
    case Marginal::Joint:
      return "joint";
  }
  return "?";
}

std::vector<McEstimate> cdf_from_states(const std::vector<TerminalState>& states,
                                        const std::vector<CdfLevel>& levels, Marginal marginal,
                                        std::uint64_t seed_base) {
  std::vector<McEstimate> out;
  out.reserve(levels.size());
  for (const auto& lv : levels) {
    MeanAccumulator acc;
    for (const auto& s : states) {
      bool hit = false;
      switch (marginal) {
        case Marginal::X:
          hit = s.x <= lv.z1;
          break;
        case Marginal::Y:
          hit = s.y <= lv.z2;
          break;
        case Marginal::Joint:
          hit = s.x <= lv.z1 && s.y <= lv.z2;
          break;
      }
      acc.add(hit ? 1.0 : 0.0);
    }
    out.push_back(acc.estimate(seed_base));
  }
  return out;
}

std::vector<McEstimate> mc_cdf(const ModelParams& params, const std::vector<CdfLevel>& levels,
                               double t, const McConfig& cfg, Marginal marginal) {
  if (cfg.n_paths < 2) throw std::invalid_argument("mc_cdf needs n_paths >= 2");
  for (const auto& lv : levels) {
    const bool bad_x = marginal != Marginal::Y && !(lv.z1 > 0.0);
    const bool bad_y = marginal != Marginal::X && !(lv.z2 > 0.0);
    if (bad_x || bad_y) throw std::invalid_argument("CDF levels must be > 0");
  }
  return cdf_from_states(simulate_terminal(params, t, cfg), levels, marginal, cfg.seed_base);
}

namespace {

const double kMaxLog = std::log(std::numeric_limits<double>::max());

/// Streams the closed-form logistic solution along one seeded path; calls
/// visit(L) after each step.
template <class Visit>
double stream_logistic(const LogisticParams& lp, std::size_t n, double dt, std::uint64_t seed,
                       Visit&& visit) {
  const double drift = lp.a - 0.5 * lp.sigma * lp.sigma;
  const double scale = std::sqrt(dt);
  const double log_lambda = std::log(lp.lambda);
  NormalStream normal(seed);
  double b = 0.0;
  double g_prev = lp.lambda;
  double int_g = 0.0;
  double l = lp.lambda;
  for (std::size_t k = 1; k <= n; ++k) {
    b += scale * normal();
    const double expo = log_lambda + drift * dt * static_cast<double>(k) + lp.sigma * b;
    if (expo > kMaxLog) throw std::overflow_error("geometric Brownian motion overflows double range");
    const double g = std::exp(expo);
    int_g += 0.5 * (g + g_prev) * dt;
    g_prev = g;
    l = g / (1.0 + lp.b * int_g);
    visit(l);
  }
  return l;
}

}  // namespace

std::vector<double> logistic_terminal_samples(const LogisticParams& lp, double t,
                                              const McConfig& cfg) {
  lp.validate();
  const std::size_t n = grid_steps(t, cfg.dt);
  const double dt = t / static_cast<double>(n);
  std::vector<double> out(cfg.n_paths);
  parallel_for(cfg.n_paths, cfg.threads, [&](std::size_t i) {
    out[i] = stream_logistic(lp, n, dt, derive_seed(cfg.seed_base, cfg.first_path + i, 1),
                             [](double) {});
  });
  return out;
}

McEstimate mean_of_powers(const std::vector<double>& samples, double p, std::uint64_t seed_base) {
  MeanAccumulator acc;
  for (double s : samples) acc.add(p == 0.0 ? 1.0 : std::pow(s, p));
  return acc.estimate(seed_base);
}

McEstimate empirical_cdf(const std::vector<double>& samples, double z, std::uint64_t seed_base) {
  MeanAccumulator acc;
  for (double s : samples) acc.add(s <= z ? 1.0 : 0.0);
  return acc.estimate(seed_base);
}

double sample_quantile(std::vector<double> samples, double prob) {
  if (samples.empty()) throw std::invalid_argument("quantile of an empty sample");
  if (!(prob >= 0.0 && prob <= 1.0)) throw std::invalid_argument("quantile level must be in [0, 1]");
  std::sort(samples.begin(), samples.end());
  const double pos = prob * static_cast<double>(samples.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, samples.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return samples[lo] + frac * (samples[hi] - samples[lo]);
}

double ergodic_average(const LogisticParams& lp, double T, double dt, std::uint64_t seed) {
  lp.validate();
  if (T == 0.0) return lp.lambda;
  const std::size_t n = grid_steps(T, dt);
  const double h = T / static_cast<double>(n);
  double area = 0.0;
  double prev = lp.lambda;
  stream_logistic(lp, n, h, derive_seed(seed, 0, 1), [&](double l) {
    area += 0.5 * (l + prev) * h;
    prev = l;
  });
  return area / T;
}

double ergodic_average_prey(const ModelParams& params, double T, double dt, std::uint64_t seed) {
  params.validate();
  if (T == 0.0) return params.x0;
  const std::size_t n = grid_steps(T, dt);
  const double h = T / static_cast<double>(n);
  const double scale = std::sqrt(h);
  NormalStream n1(derive_seed(seed, 0, 1));
  NormalStream n2(derive_seed(seed, 0, 2));
  SystemStepper st(params);
  double area = 0.0;
  double prev = st.x();
  for (std::size_t k = 0; k < n; ++k) {
    const double d1 = scale * n1();
    const double d2 = scale * n2();
    st.step(d1, d2, h);
    area += 0.5 * (st.x() + prev) * h;
    prev = st.x();
  }
  return area / T;
}

double kolmogorov_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("Kolmogorov distance of an empty sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

void write_mc_csv(std::ostream& os, const std::vector<McRow>& rows) {
  CsvWriter csv(os, "mc/1", {"quantity", "level", "order", "estimate", "std_err", "n_paths", "seed_base"});
  for (const auto& r : rows) {
    csv.cell(r.quantity).cell(r.level).cell(r.order).cell(r.est.mean).cell(r.est.std_err);
    csv.cell(static_cast<long long>(r.est.n_paths)).cell(std::to_string(r.est.seed_base));
    csv.end_row();
  }
}

}  // namespace arena
