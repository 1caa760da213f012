#include "arena_cli/commands.hpp"

#include "arena/csv.hpp"
#include "arena/envelopes.hpp"
#include "arena/montecarlo.hpp"
#include "arena/sde.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace fs = std::filesystem;

namespace arena::cli {

namespace {

fs::path output_dir(const RunConfig& rc, const CommandOptions& opts) {
  fs::path dir = opts.out_dir.value_or(rc.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  return os;
}

}  // namespace

nlohmann::json regime_report(const ModelParams& params) {
  const Regime reg = classify_regime(params);
  const NovikovCheck nov = novikov_threshold(params);
  nlohmann::json doc;
  doc["tag"] = std::string(to_string(reg.tag));
  doc["phi"] = reg.phi;
  doc["stationary_threshold"] =
      reg.stationary_threshold ? nlohmann::json(*reg.stationary_threshold) : nlohmann::json(nullptr);
  doc["novikov"] = {{"threshold", nov.threshold}, {"satisfied", nov.satisfied}};
  try {
    const GammaLaw g = gamma_stationary(prey_logistic(params));
    doc["gamma_l1"] = {{"shape", g.shape}, {"rate", g.rate}, {"mean", g.mean()}};
  } catch (const std::domain_error&) {
    doc["gamma_l1"] = nullptr;
  }
  return doc;
}

int cmd_regime(const RunConfig& rc, const CommandOptions& opts, std::ostream& out, std::ostream&) {
  const nlohmann::json doc = regime_report(rc.params);
  if (opts.out_dir) {
    std::ofstream os = open_output(output_dir(rc, opts) / "regime.json");
    os << doc.dump(2) << '\n';
  }
  if (opts.json) {
    out << doc.dump(2) << '\n';
    return 0;
  }
  out << "regime: " << doc["tag"].get<std::string>() << '\n';
  out << "phi: " << format_decimal(doc["phi"].get<double>()) << '\n';
  out << "stationary_threshold: "
      << (doc["stationary_threshold"].is_null() ? std::string("undefined")
                                                : format_decimal(doc["stationary_threshold"].get<double>()))
      << '\n';
  out << "novikov.threshold: " << format_decimal(doc["novikov"]["threshold"].get<double>()) << '\n';
  out << "novikov.satisfied: " << (doc["novikov"]["satisfied"].get<bool>() ? "true" : "false") << '\n';
  if (doc["gamma_l1"].is_null()) {
    out << "gamma_l1: none (a1 <= sigma1^2/2)\n";
  } else {
    out << "gamma_l1: shape " << format_decimal(doc["gamma_l1"]["shape"].get<double>()) << " rate "
        << format_decimal(doc["gamma_l1"]["rate"].get<double>()) << " mean "
        << format_decimal(doc["gamma_l1"]["mean"].get<double>()) << '\n';
  }
  return 0;
}

int cmd_simulate(const RunConfig& rc, const CommandOptions& opts, std::ostream& out, std::ostream&) {
  const fs::path dir = output_dir(rc, opts);
  const std::size_t steps = grid_steps(rc.horizon, rc.dt);

  struct Run {
    std::string name;
    ModelParams params;
  };
  std::vector<Run> runs;
  if (opts.figure2) {
    for (const auto& [s1, s2] : {std::pair{1.5, 1.3}, std::pair{0.5, 0.3}, std::pair{0.0, 0.0}}) {
      ModelParams p = ModelParams::figure2(s1, s2);
      p.x0 = rc.params.x0;
      p.y0 = rc.params.y0;
      const std::string name = s1 == 0.0 ? "figure2_deterministic"
                                          : "figure2_sigma_" + format_decimal(s1) + "_" + format_decimal(s2);
      runs.push_back({name, p});
    }
  } else {
    runs.push_back({"bundle", rc.params});
  }

  for (std::size_t i = 0; i < rc.sim_paths; ++i) {
    // every parameter set sees the same noise
    const DriverPair d = make_drivers(rc.horizon, steps, rc.seed_base, i, rc.rho);
    for (const auto& run : runs) {
      const TrajectoryBundle b = simulate_system(run.params, d.b1, d.b2);
      const fs::path file = dir / (run.name + "_" + std::to_string(i) + ".csv");
      std::ofstream os = open_output(file);
      write_bundle_csv(os, b, run.params, rc.csv_stride);
      out << "wrote " << file.string() << " (" << to_string(classify_regime(run.params).tag) << ")\n";
    }
  }
  return 0;
}

namespace {

struct BoundsRow {
  std::string quantity;
  double p = NAN, q = NAN, z1 = NAN, z2 = NAN, t = NAN;
  std::optional<BoundValue> lower, upper;
  std::optional<McEstimate> mc;
};

void put(CsvWriter& csv, double v) {
  if (std::isnan(v)) {
    csv.blank();
  } else {
    csv.cell(v);
  }
}

std::string warnings(const BoundsRow& row) {
  std::string w;
  for (const auto* side : {&row.lower, &row.upper}) {
    if (!*side || (*side)->validity == Validity::Valid) continue;
    if (!w.empty()) w += " | ";
    w += std::string(to_string((*side)->validity)) + ": " + (*side)->note;
  }
  return w;
}

BoundValue exact(double v) {
  BoundValue b;
  b.value = b.raw = v;
  return b;
}

}  // namespace

int cmd_bounds(const RunConfig& rc_in, const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  RunConfig rc = rc_in;
  if (opts.k2_variant) rc.bounds.k2_variant = *opts.k2_variant;
  const ModelParams& p = rc.params;
  const BoundsOptions& bo = rc.bounds;
  const std::string regime(to_string(classify_regime(p).tag));

  std::vector<BoundsRow> rows;
  for (double t : rc.bound_times) {
    std::vector<TerminalState> states;
    if (opts.validate_mc) {
      McConfig cfg;
      cfg.dt = rc.dt;
      cfg.n_paths = rc.n_paths;
      cfg.seed_base = rc.seed_base;
      cfg.rho = rc.rho;
      cfg.threads = rc.threads;
      states = simulate_terminal(p, t, cfg);
    }
    auto moment = [&](double mp, double mq) -> std::optional<McEstimate> {
      if (!opts.validate_mc) return std::nullopt;
      return moment_from_states(states, mp, mq, rc.seed_base);
    };
    auto cdf = [&](double z1, double z2, Marginal m) -> std::optional<McEstimate> {
      if (!opts.validate_mc) return std::nullopt;
      return cdf_from_states(states, {{z1, z2}}, m, rc.seed_base)[0];
    };

    for (double mp : rc.orders_p) {
      for (double mq : rc.orders_q) {
        BoundsRow row{"joint_moment", mp, mq, NAN, NAN, t, {}, {}, moment(mp, mq)};
        if (mp == 0.0 && mq == 0.0) {
          row.lower = row.upper = exact(1.0);
        } else {
          row.lower = joint_moment_lower(p, mp, mq, t, bo);
          row.upper = joint_moment_upper(p, mp, mq, t, bo);
        }
        rows.push_back(row);
      }
    }
    for (double mp : rc.orders_p) {
      rows.push_back({"moment_x", mp, NAN, NAN, NAN, t, moment_lower_x(p, mp, t, bo), std::nullopt, moment(mp, 0)});
    }
    for (double mq : rc.orders_q) {
      BoundsRow row{"moment_y", NAN, mq, NAN, NAN, t, moment_lower_y(p, mq, t, bo), {}, moment(0, mq)};
      row.upper = mq == 0.0 ? exact(1.0) : joint_moment_upper(p, 0.0, mq, t, bo);
      rows.push_back(row);
    }
    for (double z1 : rc.levels_z1) {
      rows.push_back({"cdf_x", NAN, NAN, z1, NAN, t, cdf_lower_x(p, z1, t, bo), cdf_upper_x(p, z1, t, bo),
                      cdf(z1, 1.0, Marginal::X)});
    }
    for (double z2 : rc.levels_z2) {
      rows.push_back({"cdf_y", NAN, NAN, NAN, z2, t, cdf_lower_y(p, z2, t, bo), cdf_upper_y(p, z2, t, bo),
                      cdf(1.0, z2, Marginal::Y)});
    }
    for (double z1 : rc.levels_z1) {
      for (double z2 : rc.levels_z2) {
        rows.push_back({"cdf_joint", NAN, NAN, z1, z2, t, std::nullopt, cdf_joint_upper(p, z1, z2, t, bo),
                        cdf(z1, z2, Marginal::Joint)});
      }
    }
  }

  const fs::path file = output_dir(rc, opts) / "bounds.csv";
  std::ofstream os = open_output(file);
  CsvWriter csv(os, "bounds/1",
                {"quantity", "p", "q", "z1", "z2", "t", "lower", "upper", "err_lo", "err_hi", "regime_tag",
                 "validity_warning", "k2_variant", "mc_estimate", "mc_std_err", "mc_verdict"});
  std::size_t outside = 0;
  for (const auto& row : rows) {
    for (const auto* side : {&row.lower, &row.upper}) {
      if (*side && (*side)->clamped) {
        err << "warning: " << row.quantity << " at t=" << format_decimal(row.t) << " clamped from "
            << format_decimal((*side)->raw) << " to " << format_decimal((*side)->value) << '\n';
      }
    }
    csv.cell(row.quantity);
    put(csv, row.p);
    put(csv, row.q);
    put(csv, row.z1);
    put(csv, row.z2);
    put(csv, row.t);
    put(csv, row.lower ? row.lower->value : NAN);
    put(csv, row.upper ? row.upper->value : NAN);
    put(csv, row.lower ? row.lower->err : NAN);
    put(csv, row.upper ? row.upper->err : NAN);
    csv.cell(regime);
    csv.cell(warnings(row));
    csv.cell(to_string(bo.k2_variant));
    if (row.mc) {
      const double k = 3.0;
      const McEstimate& m = *row.mc;
      const bool lo_ok = !row.lower || std::isnan(row.lower->value) ||
                         row.lower->value - row.lower->err <= m.mean + k * m.std_err;
      const bool hi_ok = !row.upper || std::isnan(row.upper->value) ||
                         row.upper->value + row.upper->err >= m.mean - k * m.std_err;
      outside += !(lo_ok && hi_ok);
      csv.cell(m.mean).cell(m.std_err).cell(lo_ok && hi_ok ? "inside" : "outside");
    } else {
      csv.blank().blank().blank();
    }
    csv.end_row();
  }
  out << "wrote " << file.string() << " (" << rows.size() << " rows, k2_variant "
      << to_string(bo.k2_variant) << ")\n";
  if (opts.validate_mc) out << "monte carlo containment: " << rows.size() - outside << "/" << rows.size() << " inside\n";
  return 0;
}

int cmd_validate(const RunConfig& rc, const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  SuiteOptions so;
  so.quick = opts.quick;
  so.fault = opts.fault;
  so.only = opts.criteria;
  so.threads = rc.threads;
  const auto results = run_acceptance(so, opts.json ? &err : &out);
  const nlohmann::json verdict = to_json(results, so);
  if (opts.out_dir) {
    std::ofstream os = open_output(output_dir(rc, opts) / "validate.json");
    os << verdict.dump(2) << '\n';
  }
  if (opts.json) {
    out << verdict.dump(2) << '\n';
  } else {
    std::size_t failed = 0;
    for (const auto& r : results) {
      if (r.passed()) continue;
      ++failed;
      out << "failed: criterion " << r.id << " (" << r.failures() << ")\n";
    }
    out << (failed == 0 ? "all checks passed\n" : std::to_string(failed) + " criteria failed\n");
  }
  return verdict["passed"].get<bool>() ? 0 : 1;
}

}  // namespace arena::cli
