#pragma once

// The four verbs of the `arena` tool. Each returns a process exit status and
// writes its report to `out`, warnings and errors to `err`.

#include "arena_cli/acceptance.hpp"
#include "arena_cli/run_config.hpp"

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <optional>
#include <set>
#include <string>

namespace arena::cli {

struct CommandOptions {
  std::optional<std::string> out_dir;  ///< overrides RunConfig::out_dir
  bool json = false;
  bool figure2 = false;
  bool validate_mc = false;
  bool quick = false;
  std::optional<PredatorConstants> k2_variant;
  Fault fault = Fault::None;
  std::set<int> criteria;
};

nlohmann::json regime_report(const ModelParams& params);

int cmd_regime(const RunConfig& rc, const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunConfig& rc, const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_bounds(const RunConfig& rc, const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_validate(const RunConfig& rc, const CommandOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace arena::cli
