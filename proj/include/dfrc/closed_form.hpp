#pragma once

#include <string_view>

#include "dfrc/core_model.hpp"

namespace dfrc {

/// Regime of the radar constraint for a given threshold γ.
enum class CaseTag {
  BelowThreshold,  // γ < γ₁*: the matched beam already satisfies the radar
  Active,          // γ₁* <= γ <= γ₂*: radar constraint binds
  Infeasible,      // γ > γ₂*: no covariance reaches the target power
};

std::string_view to_string(CaseTag tag);

// Relative tolerance on γ comparisons against γ₁* and γ₂*.
inline constexpr double kCaseTolerance = 1e-12;

/// Optimal rank-one transmit design c = a h + b a_t and its covariance.
struct BeamformerSolution {
  CaseTag case_tag = CaseTag::BelowThreshold;
  Complex coeff_a;
  Complex coeff_b;
  ComplexVector vector_c;
  ComplexMatrix covariance;
  double capacity_bits = 0.0;
  // η and β of the active regime; zero in the below-threshold regime.
  double eta = 0.0;
  double beta = 0.0;

  double capacity_nats() const;
};

CaseTag classify_case(const Scenario& scenario, double gamma);

/// Throws InfeasibleRadarRequirement when γ > γ₂*.
BeamformerSolution solve_closed_form(const Scenario& scenario, double gamma);

/// Capacity in bits per channel use at threshold γ.
/// Throws InfeasibleRadarRequirement when γ > γ₂*.
double capacity_closed_form(const Scenario& scenario, double gamma);

// The two per-regime capacity expressions, evaluated without classifying γ.
// Exposed so continuity at γ₁* can be checked directly.
double capacity_unconstrained(const Scenario& scenario);
double capacity_constraint_active(const Scenario& scenario, double gamma);

ComplexMatrix assemble_covariance(const ComplexVector& c);

}  // namespace dfrc
