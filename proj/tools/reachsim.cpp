// reachsim command-line front end.
#include "reachsim/commands.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Simulate and analyze prosthetic-elbow reaching with kinematic synergies"};
  app.require_subcommand(0, 1);

  bool print_defaults = false;
  app.add_flag("--print-defaults", print_defaults, "Print the default configuration and exit");

  reachsim::SimulateOptions sim;
  std::string sim_out;
  std::uint64_t seed = 0;
  auto* simulate = app.add_subcommand("simulate", "Run a batch of reaching iterations");
  simulate->add_option("config", sim.config, "Configuration file")->required();
  auto* seed_opt = simulate->add_option("--seed", seed, "Base seed (overrides run.seed)");
  simulate->add_flag("--keep-going", sim.keep_going, "Exit 0 even when iterations fail");
  auto* out_opt = simulate->add_option("--out", sim_out, "Output directory (overrides run.out_dir)");

  reachsim::AnalyzeOptions an;
  std::string ab, colmap, an_config;
  auto* analyze = app.add_subcommand("analyze", "Compute metrics for a trajectory directory");
  analyze->add_option("dir", an.dir, "Batch directory or external CSV directory")->required();
  auto* ab_opt = analyze->add_option("--ab", ab, "Label of the able-bodied reference");
  auto* colmap_opt = analyze->add_option("--colmap", colmap, "Column map for external CSV files");
  auto* config_opt = analyze->add_option("--config", an_config, "Configuration file for analysis settings");

  std::filesystem::path validate_config;
  auto* validate = app.add_subcommand("validate", "Check a configuration and print resolved values");
  validate->add_option("config", validate_config, "Configuration file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : reachsim::kExitConfig;
  }

  if (print_defaults) return reachsim::cmd_print_defaults(std::cout);
  if (*simulate) {
    if (*seed_opt) sim.seed = seed;
    if (*out_opt) sim.out_dir = sim_out;
    return reachsim::cmd_simulate(sim, std::cout, std::cerr);
  }
  if (*analyze) {
    if (*ab_opt) an.ab_label = ab;
    if (*colmap_opt) an.colmap = colmap;
    if (*config_opt) an.config = an_config;
    return reachsim::cmd_analyze(an, std::cout, std::cerr);
  }
  if (*validate) return reachsim::cmd_validate(validate_config, std::cout, std::cerr);
  std::cout << app.help();
  return reachsim::kExitConfig;
}
