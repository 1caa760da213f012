#include "arena_cli/run_config.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace arena::cli {

const std::vector<std::string_view>& known_keys() {
  static const std::vector<std::string_view> keys = {
      "a1",        "b1",        "c1",        "a2",       "b2",       "c2",       "beta",
      "sigma1",    "sigma2",    "x0",        "y0",       "horizon",  "dt",       "n_paths",
      "sim_paths", "seed_base", "rho",       "csv_stride", "threads", "tol1d",   "tol2d",
      "tol3d",     "k2_variant", "bounds.t", "bounds.p", "bounds.q", "bounds.z1", "bounds.z2",
      "out_dir"};
  return keys;
}

void RunConfig::validate() const {
  params.validate();
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be > 0");
  };
  positive(horizon, "horizon");
  positive(dt, "dt");
  if (!(dt < horizon)) throw std::invalid_argument("dt must be smaller than horizon");
  if (n_paths < 2) throw std::invalid_argument("n_paths must be >= 2");
  if (sim_paths < 1) throw std::invalid_argument("sim_paths must be >= 1");
  if (csv_stride < 1) throw std::invalid_argument("csv_stride must be >= 1");
  if (!(rho >= -1.0 && rho <= 1.0)) throw std::invalid_argument("rho must lie in [-1, 1]");
  positive(bounds.tol1d, "tol1d");
  positive(bounds.tol2d, "tol2d");
  positive(bounds.tol3d, "tol3d");
  for (double t : bound_times) positive(t, "bounds.t entries");
  for (double p : orders_p) {
    if (!(p >= 0.0)) throw std::invalid_argument("bounds.p entries must be >= 0");
  }
  for (double q : orders_q) {
    if (!(q >= 0.0)) throw std::invalid_argument("bounds.q entries must be >= 0");
  }
  for (double z : levels_z1) positive(z, "bounds.z1 entries");
  for (double z : levels_z2) positive(z, "bounds.z2 entries");
  if (out_dir.empty()) throw std::invalid_argument("out_dir must not be empty");
}

RunConfig run_config_from(const KeyValueConfig& cfg) {
  for (const auto& [key, value] : cfg.entries()) {
    const auto& keys = known_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) cfg.fail(key, "unknown key");
  }

  RunConfig rc;
  rc.params = params_from_config(cfg, rc.params);
  rc.horizon = cfg.get_double("horizon", rc.horizon);
  rc.dt = cfg.get_double("dt", rc.dt);
  auto count = [&](const char* key, long long fallback, long long min) {
    const long long v = cfg.get_int(key, fallback);
    if (v < min) cfg.fail(key, "must be >= " + std::to_string(min));
    return v;
  };
  rc.n_paths = static_cast<std::size_t>(count("n_paths", static_cast<long long>(rc.n_paths), 2));
  rc.sim_paths = static_cast<std::size_t>(count("sim_paths", static_cast<long long>(rc.sim_paths), 1));
  rc.seed_base = static_cast<std::uint64_t>(count("seed_base", static_cast<long long>(rc.seed_base), 0));
  rc.csv_stride = static_cast<std::size_t>(count("csv_stride", static_cast<long long>(rc.csv_stride), 1));
  rc.threads = static_cast<unsigned>(count("threads", rc.threads, 0));
  rc.rho = cfg.get_double("rho", rc.rho);
  rc.bounds.tol1d = cfg.get_double("tol1d", rc.bounds.tol1d);
  rc.bounds.tol2d = cfg.get_double("tol2d", rc.bounds.tol2d);
  rc.bounds.tol3d = cfg.get_double("tol3d", rc.bounds.tol3d);
  if (const auto v = cfg.get("k2_variant")) {
    const auto parsed = parse_predator_constants(*v);
    if (!parsed) cfg.fail("k2_variant", "expected 'as-printed' or 'corrected', got '" + *v + "'");
    rc.bounds.k2_variant = *parsed;
  }
  if (cfg.contains("bounds.t")) rc.bound_times = cfg.get_doubles("bounds.t");
  if (cfg.contains("bounds.p")) rc.orders_p = cfg.get_doubles("bounds.p");
  if (cfg.contains("bounds.q")) rc.orders_q = cfg.get_doubles("bounds.q");
  rc.levels_z1 = cfg.get_doubles("bounds.z1");
  rc.levels_z2 = cfg.get_doubles("bounds.z2");
  if (const auto v = cfg.get("out_dir")) rc.out_dir = *v;

  try {
    rc.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(cfg.source(), 0, e.what());
  }
  return rc;
}

KeyValueConfig parse_json_config(std::string_view text, std::string source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(source, 0, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError(source, 0, "JSON config must be an object");

  auto scalar = [&](const std::string& key, const nlohmann::json& v) -> std::string {
    if (v.is_number()) return format_decimal(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    throw ConfigError(source, 0, "key '" + key + "': expected a number or string");
  };

  KeyValueConfig cfg = KeyValueConfig::parse("", source);
  for (const auto& [key, v] : doc.items()) {
    if (v.is_array()) {
      std::string joined;
      for (const auto& item : v) {
        if (!joined.empty()) joined += ',';
        joined += scalar(key, item);
      }
      cfg.set(key, joined);
    } else {
      cfg.set(key, scalar(key, v));
    }
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return run_config_from(parse_json_config(text, path));
  return run_config_from(KeyValueConfig::parse(text, path));
}

std::string to_config_text(const RunConfig& rc) {
  std::string out = arena::to_config_text(rc.params);
  auto put = [&out](const char* key, const std::string& v) {
    out += key;
    out += " = ";
    out += v;
    out += '\n';
  };
  auto list = [](const std::vector<double>& xs) {
    std::string s;
    for (double x : xs) {
      if (!s.empty()) s += ',';
      s += format_decimal(x);
    }
    return s;
  };
  put("horizon", format_decimal(rc.horizon));
  put("dt", format_decimal(rc.dt));
  put("n_paths", std::to_string(rc.n_paths));
  put("sim_paths", std::to_string(rc.sim_paths));
  put("seed_base", std::to_string(rc.seed_base));
  put("rho", format_decimal(rc.rho));
  put("csv_stride", std::to_string(rc.csv_stride));
  put("threads", std::to_string(rc.threads));
  put("tol1d", format_decimal(rc.bounds.tol1d));
  put("tol2d", format_decimal(rc.bounds.tol2d));
  put("tol3d", format_decimal(rc.bounds.tol3d));
  put("k2_variant", std::string(to_string(rc.bounds.k2_variant)));
  put("bounds.t", list(rc.bound_times));
  put("bounds.p", list(rc.orders_p));
  put("bounds.q", list(rc.orders_q));
  if (!rc.levels_z1.empty()) put("bounds.z1", list(rc.levels_z1));
  if (!rc.levels_z2.empty()) put("bounds.z2", list(rc.levels_z2));
  put("out_dir", rc.out_dir);
  return out;
}

}  // namespace arena::cli
