#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dfrc/closed_form.hpp"
#include "dfrc/core_model.hpp"

namespace dfrc {

// Independent numerical checks of the closed-form design. None of the code
// here uses the case split, η, β, or the optimal phase relation.

struct GridResolution {
  int amplitude_steps = 2001;
  int phase_steps = 2001;
  // Rounds of coordinate refinement around the best grid cell; 0 disables.
  int refine_iterations = 40;
};

/// Best point of the subspace search, c = amp_a e^{j phase_diff} h + amp_b a_t.
struct OracleSolution {
  double objective = 0.0;  // |h^H c|²
  double amp_a = 0.0;
  double phase_diff = 0.0;  // arg(a) - arg(b), b taken real and >= 0
  double amp_b = 0.0;
  GridResolution resolution;
  bool refined = false;

  ComplexVector reconstruct(const Scenario& scenario) const;
};

// Relative feasibility slack of the subspace search on |c^H a_t|² >= γ. It
// absorbs rounding at γ = P‖a_t‖², where the feasible set is a single beam.
inline constexpr double kOracleFeasibilityTolerance = 1e-14;

/// Evaluates the problem restricted to c = a h + b a_t with arg(b) = 0. For a
/// given |a| and phase difference, |b| >= 0 is a root of the power equation
/// ‖c‖² = P, which is a real quadratic in |b|.
class SubspaceSearch {
 public:
  SubspaceSearch(const Scenario& scenario, double gamma);

  struct Point {
    bool feasible = false;
    double objective = 0.0;
    double amp_b = 0.0;
  };

  Point evaluate(double amp_a, double phase_diff) const;

  /// Largest |a| for which the power equation has a real root: √P/‖h⊥‖, where
  /// h⊥ is the part of h orthogonal to a_t (√P/‖h‖ if h ∥ a_t).
  double amplitude_limit() const noexcept { return amp_limit_; }

  /// Number of feasible points on a full grid scan (no refinement).
  std::uint64_t count_feasible(int amplitude_steps, int phase_steps) const;

 private:
  friend OracleSolution grid_search_oracle(const Scenario&, double,
                                           const GridResolution&);

  Point evaluate_cos(double amp_a, double cos_offset) const;

  double power_;
  double gamma_;
  double h_norm_sq_;
  double a_norm_sq_;
  double cross_abs_;
  double cross_arg_;
  double amp_limit_;
};

/// Exhaustive (|a|, phase) grid search over span{h, a_t}, optionally refined
/// by coordinate golden-section steps around the best cell.
/// Throws InfeasibleRadarRequirement when γ > P‖a_t‖², DomainError when a
/// grid axis has fewer than 64 steps, ResolutionError when no grid point is
/// feasible.
OracleSolution grid_search_oracle(const Scenario& scenario, double gamma,
                                  const GridResolution& resolution = {});

/// |oracle - closed| / max(closed, 1e-5 P‖h‖²). The floor keeps the measure
/// meaningful when the optimum is (near) zero.
double oracle_relative_gap(double oracle_objective, double closed_objective,
                           const Scenario& scenario);

/// Residuals of the first-order optimality system of
///   max |c^H h|²  s.t.  |c^H a_t|² >= γ,  c^H c = P
/// with Lagrangian -|h^H c|² + λ(γ - |a_t^H c|²) + μ(‖c‖² - P).
struct KktCertificate {
  double stationarity_residual = 0.0;  // ‖-(h^H c) h - λ (a_t^H c) a_t + μ c‖
  double power_residual = 0.0;         // ‖c‖² - P
  double snr_slack = 0.0;              // γ - |a_t^H c|²
  double dual_lambda = 0.0;
  double dual_mu = 0.0;
  double comp_slackness_residual = 0.0;  // λ (γ - |a_t^H c|²)
  // False when the radar constraint is strictly slack and λ was fixed to 0.
  bool constraint_active = false;

  /// Names of the violated bounds; empty for a valid certificate.
  std::vector<std::string> failures(double power, double gamma) const;
  bool passes(double power, double gamma) const {
    return failures(power, gamma).empty();
  }
};

KktCertificate kkt_check(const ComplexVector& c, const Scenario& scenario,
                         double gamma);
KktCertificate kkt_check(const BeamformerSolution& solution,
                         const Scenario& scenario, double gamma);

struct FalsifierResult {
  // -inf when no draw satisfied the radar constraint.
  double best_objective = 0.0;
  std::uint64_t feasible_draws = 0;
  std::uint64_t trials = 0;
};

/// Random search over all of C^M: each trial draws a complex Gaussian vector
/// from a generator keyed by (seed, trial), scales it to ‖c‖² = P and keeps it
/// when |c^H a_t|² >= γ. Reproducible for a fixed seed.
FalsifierResult random_falsifier(const Scenario& scenario, double gamma,
                                 std::uint64_t trials, std::uint64_t seed);

}  // namespace dfrc
