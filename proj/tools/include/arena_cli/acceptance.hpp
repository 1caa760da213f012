#pragma once

// Acceptance suite: nine numbered criteria, each made of named checks. Used
// by `arena validate` and by the acceptance test binary.

#include <nlohmann/json.hpp>

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

namespace arena::cli {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;

  bool passed() const;
  /// Names of the failing checks, comma-separated.
  std::string failures() const;
};

enum class Fault { None, FlipEnvelope };

struct SuiteOptions {
  bool quick = false;           ///< reduced sample sizes, looser tolerances
  Fault fault = Fault::None;    ///< harness self-test
  std::set<int> only;           ///< empty = all criteria
  unsigned threads = 0;
};

inline constexpr int kCriterionCount = 9;

/// Runs one criterion. Throws std::out_of_range for an unknown id.
CriterionResult run_criterion(int id, const SuiteOptions& opts);

/// Runs the selected criteria in order; `progress` (nullable) receives one
/// line per criterion as soon as it finishes.
std::vector<CriterionResult> run_acceptance(const SuiteOptions& opts, std::ostream* progress);

/// "criterion N PASS|FAIL title :: check details".
std::string summary_line(const CriterionResult& r);

nlohmann::json to_json(const std::vector<CriterionResult>& results, const SuiteOptions& opts);

}  // namespace arena::cli
