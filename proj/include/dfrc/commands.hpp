#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include <json.hpp>

#include "dfrc/config.hpp"

namespace dfrc {

// Process exit codes of the dfrc tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInfeasible = 2,
  kExitVerificationFailed = 3,
};

struct CommandOptions {
  std::optional<std::filesystem::path> out;
  std::optional<std::uint64_t> seed;
  std::optional<int> resolution;
  std::optional<std::uint64_t> trials;
  // Test hook for `verify`: adds a fixed perturbation of this relative size to
  // the closed-form beamformer before it is checked.
  double inject_perturbation = 0.0;
};

// Each command writes its result (report or CSV) to options.out when given,
// else to `out`; diagnostics go to `err`. The return value is an ExitCode.
int cmd_solve(const RunConfig& config, const CommandOptions& options,
              std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& config, const CommandOptions& options,
              std::ostream& out, std::ostream& err);
int cmd_beampattern(const RunConfig& config, const CommandOptions& options,
                    std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, const CommandOptions& options,
               std::ostream& out, std::ostream& err);

// Report builders behind cmd_solve / cmd_verify. They throw instead of
// mapping errors to exit codes.
nlohmann::json solve_report(const RunConfig& config);
nlohmann::json verify_report(const RunConfig& config, const CommandOptions& options);

}  // namespace dfrc
