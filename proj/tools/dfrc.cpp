// dfrc: closed-form capacity bound of a single-user, single-target MIMO
// dual-function radar-communication transmitter, with numerical checks.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dfrc/commands.hpp"
#include "dfrc/config.hpp"

namespace {

struct Args {
  std::string config_path;
  dfrc::CommandOptions options;
};

void add_common(CLI::App* cmd, Args& args) {
  cmd->add_option("--config", args.config_path, "Run configuration (YAML)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", args.options.out, "Output file (directory for batch sweeps)");
  cmd->add_option("--seed", args.options.seed, "Falsifier seed");
  cmd->add_option("--resolution", args.options.resolution,
                  "Oracle grid steps per axis")
      ->check(CLI::Range(64, 100000));
  cmd->add_option("--trials", args.options.trials, "Falsifier trials")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MIMO DFRC capacity bound under a radar SNR constraint", "dfrc"};
  app.require_subcommand(1);

  Args args;
  CLI::App* solve = app.add_subcommand("solve", "Closed-form optimal beamformer and capacity");
  CLI::App* sweep = app.add_subcommand("sweep", "Capacity versus radar SNR loss (CSV)");
  CLI::App* pattern = app.add_subcommand("beampattern", "Transmit beam patterns per SNR loss (CSV)");
  CLI::App* verify = app.add_subcommand("verify", "Check the closed form against grid search, KKT and random search");
  for (CLI::App* cmd : {solve, sweep, pattern, verify}) {
    add_common(cmd, args);
  }
  verify->add_option("--inject-perturbation", args.options.inject_perturbation,
                     "Testing only: perturb the closed-form beamformer")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return dfrc::kExitUsage;
  }

  dfrc::RunConfig config;
  try {
    config = dfrc::load_config(args.config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return dfrc::kExitUsage;
  }

  if (*solve) return dfrc::cmd_solve(config, args.options, std::cout, std::cerr);
  if (*sweep) return dfrc::cmd_sweep(config, args.options, std::cout, std::cerr);
  if (*pattern) return dfrc::cmd_beampattern(config, args.options, std::cout, std::cerr);
  return dfrc::cmd_verify(config, args.options, std::cout, std::cerr);
}
