#pragma once

// Run configuration shared by every CLI verb: model parameters plus
// simulation, Monte Carlo, quadrature and output settings.

#include "arena/bounds.hpp"
#include "arena/model.hpp"
#include "arena/params_io.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace arena::cli {

struct RunConfig {
  ModelParams params = ModelParams::figure2(0.5, 0.3);
  double horizon = 10.0;       ///< simulation horizon T
  double dt = 1e-3;
  std::size_t n_paths = 10000;  ///< Monte Carlo sample size
  std::size_t sim_paths = 1;    ///< bundles written by `simulate`
  std::uint64_t seed_base = 1;
  double rho = 0.0;
  std::size_t csv_stride = 10;
  unsigned threads = 0;
  BoundsOptions bounds;

  // `bounds` quantity spec
  std::vector<double> bound_times{1.0};
  std::vector<double> orders_p{0.0, 1.0};
  std::vector<double> orders_q{0.0, 1.0};
  std::vector<double> levels_z1;
  std::vector<double> levels_z2;

  std::string out_dir = "out";

  /// Throws std::invalid_argument on a non-positive or inconsistent field.
  void validate() const;
};

/// Every key understood by run_config_from; anything else is rejected.
const std::vector<std::string_view>& known_keys();

RunConfig run_config_from(const KeyValueConfig& cfg);

/// Flat JSON object -> key-value config. Numbers and strings map directly,
/// arrays of numbers become comma lists. Nested objects are rejected.
KeyValueConfig parse_json_config(std::string_view text, std::string source = "<json>");

/// Text or JSON, chosen by a leading '{'.
RunConfig load_run_config(const std::string& path);

std::string to_config_text(const RunConfig& rc);

}  // namespace arena::cli
