#include "dfrc/commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>

#include "dfrc/closed_form.hpp"
#include "dfrc/metrics.hpp"
#include "dfrc/oracle.hpp"
#include "dfrc/sweep.hpp"

namespace dfrc {

namespace {

constexpr double kOracleGapTolerance = 1e-4;
constexpr double kFalsifierTolerance = 1e-9;

RadarSnrSpec resolved_radar(const RunConfig& config, const Scenario& scenario) {
  if (!config.radar) {
    throw ConfigError("config has no radar block (snr_loss_db, gamma or snr0)");
  }
  return snr_spec_resolve(*config.radar, scenario);
}

double wrap_phase(double phase) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  phase = std::fmod(phase, two_pi);
  return phase < 0.0 ? phase + two_pi : phase;
}

// Fixed direction used by the perturbation test hook.
ComplexVector perturbation_direction(Eigen::Index size) {
  ComplexVector v(size);
  for (Eigen::Index m = 0; m < size; ++m) {
    const double k = static_cast<double>(m);
    v[m] = std::polar(1.0 + 0.5 * std::sin(3.0 * k + 1.0), 2.3 * k + 0.7);
  }
  return v / v.norm();
}

void write_text(const std::string& text, const CommandOptions& options,
                std::ostream& out) {
  if (!options.out) {
    out << text;
    return;
  }
  std::ofstream file(*options.out, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw std::runtime_error("cannot open '" + options.out->string() +
                             "' for writing");
  }
  file << text;
  if (!file) {
    throw std::runtime_error("failed writing '" + options.out->string() + "'");
  }
}

template <typename Body>
int run_guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const InfeasibleRadarRequirement& e) {
    err << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const ResolutionError& e) {
    err << "verification failed: " << e.what() << '\n';
    return kExitVerificationFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace

nlohmann::json solve_report(const RunConfig& config) {
  const Scenario scenario = build_scenario(config.scenario);
  const RadarSnrSpec radar = resolved_radar(config, scenario);
  const double gamma = *radar.gamma;
  const BeamformerSolution sol = solve_closed_form(scenario, gamma);

  nlohmann::json report;
  report["case"] = std::string(to_string(sol.case_tag));
  report["gamma"] = gamma;
  report["snr_loss_db"] = *radar.snr_loss_db;
  report["snr0"] = *radar.snr_threshold;
  report["gamma_threshold"] = scenario.gamma_threshold();
  report["gamma_max"] = scenario.gamma_max();
  report["abs_a"] = std::abs(sol.coeff_a);
  report["abs_b"] = std::abs(sol.coeff_b);
  report["phase_diff_rad"] = wrap_phase(std::arg(sol.coeff_a) - std::arg(sol.coeff_b));
  report["eta"] = sol.eta;
  report["beta"] = sol.beta;
  report["capacity_bits"] = sol.capacity_bits;
  report["radar_snr"] = radar_snr(sol.covariance, scenario);
  report["trace_R"] = sol.covariance.trace().real();
  return report;
}

nlohmann::json verify_report(const RunConfig& config,
                             const CommandOptions& options) {
  const Scenario scenario = build_scenario(config.scenario);
  const double gamma = *resolved_radar(config, scenario).gamma;
  const double power = scenario.power_budget();

  const BeamformerSolution sol = solve_closed_form(scenario, gamma);
  ComplexVector c = sol.vector_c;
  if (options.inject_perturbation != 0.0) {
    c += options.inject_perturbation * c.norm() * perturbation_direction(c.size());
  }
  const double closed_objective = std::norm(scenario.h().dot(c));

  GridResolution resolution;
  resolution.amplitude_steps = options.resolution.value_or(config.verify.resolution);
  resolution.phase_steps = resolution.amplitude_steps;
  resolution.refine_iterations = config.verify.refine_iterations;
  const OracleSolution oracle = grid_search_oracle(scenario, gamma, resolution);
  const double gap = oracle_relative_gap(oracle.objective, closed_objective, scenario);

  const KktCertificate cert = kkt_check(c, scenario, gamma);
  const std::vector<std::string> kkt_failures = cert.failures(power, gamma);

  const std::uint64_t seed = options.seed.value_or(config.verify.seed);
  const std::uint64_t trials = options.trials.value_or(config.verify.trials);
  const FalsifierResult falsifier = random_falsifier(scenario, gamma, trials, seed);
  const bool falsifier_ok =
      falsifier.feasible_draws == 0 ||
      falsifier.best_objective <= closed_objective + kFalsifierTolerance;

  nlohmann::json report;
  report["gamma"] = gamma;
  report["case"] = std::string(to_string(sol.case_tag));
  report["closed_form_objective"] = closed_objective;
  report["oracle"] = {
      {"objective", oracle.objective},
      {"amp_a", oracle.amp_a},
      {"phase_diff_rad", oracle.phase_diff},
      {"amp_b", oracle.amp_b},
      {"amplitude_steps", oracle.resolution.amplitude_steps},
      {"phase_steps", oracle.resolution.phase_steps},
      {"refined", oracle.refined},
      {"relative_gap", gap},
  };
  report["kkt"] = {
      {"stationarity_residual", cert.stationarity_residual},
      {"power_residual", cert.power_residual},
      {"snr_slack", cert.snr_slack},
      {"dual_lambda", cert.dual_lambda},
      {"dual_mu", cert.dual_mu},
      {"comp_slackness_residual", cert.comp_slackness_residual},
      {"lambda_branch", cert.constraint_active ? "active" : "zero"},
      {"failures", kkt_failures},
  };
  nlohmann::json falsifier_json = {
      {"trials", falsifier.trials},
      {"seed", seed},
      {"feasible_draws", falsifier.feasible_draws},
  };
  if (falsifier.feasible_draws > 0) {
    falsifier_json["best_objective"] = falsifier.best_objective;
    falsifier_json["excess"] = falsifier.best_objective - closed_objective;
  } else {
    falsifier_json["best_objective"] = nullptr;
  }
  report["falsifier"] = falsifier_json;

  const bool oracle_ok = gap <= kOracleGapTolerance;
  report["checks"] = {
      {"oracle_gap", oracle_ok},
      {"kkt", kkt_failures.empty()},
      {"falsifier", falsifier_ok},
  };
  report["passed"] = oracle_ok && kkt_failures.empty() && falsifier_ok;
  return report;
}

int cmd_solve(const RunConfig& config, const CommandOptions& options,
              std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    write_text(solve_report(config).dump(2) + "\n", options, out);
    return kExitOk;
  });
}

int cmd_sweep(const RunConfig& config, const CommandOptions& options,
              std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    const auto& grid = config.sweep.loss_grid_db;
    if (config.sweep.user_angles_deg.empty()) {
      const Scenario scenario = build_scenario(config.scenario);
      std::ostringstream csv;
      emit_csv(tradeoff_table(tradeoff_sweep(scenario, grid)), csv);
      write_text(csv.str(), options, out);
      return kExitOk;
    }
    // Batch: one file per user angle inside the output directory.
    const std::filesystem::path dir = options.out.value_or(".");
    std::filesystem::create_directories(dir);
    for (const double angle : config.sweep.user_angles_deg) {
      const Scenario scenario = build_scenario(config.scenario, angle);
      const auto path = dir / ("tradeoff_user_" + format_number(angle) + "deg.csv");
      emit_csv(tradeoff_table(tradeoff_sweep(scenario, grid)), path);
      out << path.string() << '\n';
    }
    return kExitOk;
  });
}

int cmd_beampattern(const RunConfig& config, const CommandOptions& options,
                    std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    const Scenario scenario = build_scenario(config.scenario);
    const SweepConfig& sw = config.sweep;
    const std::vector<double> angles =
        angle_grid_deg(sw.angle_start_deg, sw.angle_stop_deg, sw.angle_step_deg);
    std::ostringstream csv;
    emit_csv(beampattern_table(beampattern_sweep(scenario, sw.pattern_losses_db, angles)),
             csv);
    write_text(csv.str(), options, out);
    return kExitOk;
  });
}

int cmd_verify(const RunConfig& config, const CommandOptions& options,
               std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    const nlohmann::json report = verify_report(config, options);
    write_text(report.dump(2) + "\n", options, out);
    if (report["passed"].get<bool>()) {
      return kExitOk;
    }
    std::ostringstream failed;
    for (const auto& [name, ok] : report["checks"].items()) {
      if (ok.get<bool>()) continue;
      failed << ' ' << name;
      if (name == "kkt") {
        for (const auto& which : report["kkt"]["failures"]) {
          failed << " (" << which.get<std::string>() << ')';
        }
      }
    }
    err << "verification failed:" << failed.str() << '\n';
    return kExitVerificationFailed;
  });
}

}  // namespace dfrc
