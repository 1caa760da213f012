#include "arena_cli/commands.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
  using namespace arena::cli;

  CLI::App app{"Simulation and bound verification for the stochastic foraging-arena predator-prey model"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir;
  std::string k2_variant;
  CommandOptions opts;
  app.add_option("--config", config_path, "Run configuration (key = value text, or JSON)")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory (overrides out_dir in the config)");
  app.add_flag("--json", opts.json, "Machine-readable output on stdout");
  app.add_option("--k2-variant", k2_variant, "Predator constants for the bounds")
      ->check(CLI::IsMember({"as-printed", "corrected"}));

  auto* regime = app.add_subcommand("regime", "Regime classification, phi, Novikov threshold, Gamma law");
  auto* simulate = app.add_subcommand("simulate", "Simulate bundles with envelopes into CSV files");
  simulate->add_flag("--figure2", opts.figure2, "Both published noise pairs plus the deterministic reference");
  auto* bounds = app.add_subcommand("bounds", "Evaluate moment and CDF brackets into bounds.csv");
  bounds->add_flag("--validate-mc", opts.validate_mc, "Add Monte Carlo estimates and containment verdicts");
  auto* validate = app.add_subcommand("validate", "Run the acceptance suite");
  validate->add_flag("--quick", opts.quick, "Reduced sample sizes, looser tolerances");
  std::string fault;
  validate->add_option("--inject-fault", fault, "Harness self-test")->check(CLI::IsMember({"flip-envelope"}));
  std::vector<int> criteria;
  validate->add_option("--criteria", criteria, "Run only these criteria (1-9)")->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig rc = config_path.empty() ? RunConfig{} : load_run_config(config_path);
    if (!out_dir.empty()) opts.out_dir = out_dir;
    if (!k2_variant.empty()) opts.k2_variant = arena::parse_predator_constants(k2_variant);
    if (fault == "flip-envelope") opts.fault = Fault::FlipEnvelope;
    for (int c : criteria) {
      if (c < 1 || c > kCriterionCount) throw std::invalid_argument("--criteria entries must lie in 1..9");
      opts.criteria.insert(c);
    }

    if (*regime) return cmd_regime(rc, opts, std::cout, std::cerr);
    if (*simulate) return cmd_simulate(rc, opts, std::cout, std::cerr);
    if (*bounds) return cmd_bounds(rc, opts, std::cout, std::cerr);
    if (*validate) return cmd_validate(rc, opts, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "arena: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
