#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dfrc/core_model.hpp"

namespace dfrc {

/// Malformed or inconsistent run configuration. The message carries the
/// source name, line, and dotted field path where known.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScenarioConfig {
  int num_antennas = 10;
  double spacing_over_wavelength = 0.5;
  double target_angle_deg = -30.0;
  // Exactly one of these describes the user channel.
  std::optional<double> user_angle_deg;
  std::vector<Complex> channel;
  double power = 1.0;
  double target_amplitude = 1.0;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

struct SweepConfig {
  std::vector<double> loss_grid_db;
  // When non-empty, `sweep` emits one tradeoff curve per LoS user angle.
  std::vector<double> user_angles_deg;
  std::vector<double> pattern_losses_db;
  double angle_start_deg = -90.0;
  double angle_stop_deg = 90.0;
  double angle_step_deg = 0.25;

  friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

struct VerifyConfig {
  std::uint64_t seed = 1;
  std::uint64_t trials = 100000;
  int resolution = 2001;
  int refine_iterations = 40;

  friend bool operator==(const VerifyConfig&, const VerifyConfig&) = default;
};

/// Everything a `dfrc` subcommand needs. Angles are in degrees, powers are
/// linear; conversion to radians happens in build_scenario.
struct RunConfig {
  ScenarioConfig scenario;
  std::optional<RadarSnrSpec> radar;
  SweepConfig sweep;
  VerifyConfig verify;
  std::optional<std::string> output;

  RunConfig();
};

RunConfig parse_config(const std::string& text,
                       const std::string& source_name = "<config>");
RunConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const RunConfig& config);

/// LoS channel from user_angle_deg (or the override) or the explicit
/// channel entries.
Scenario build_scenario(const ScenarioConfig& config,
                        std::optional<double> user_angle_deg_override = std::nullopt);

}  // namespace dfrc
