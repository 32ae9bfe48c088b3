#include "dfrc/closed_form.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace dfrc {

namespace {

void check_gamma(double gamma) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw DomainError("gamma must be a finite value >= 0");
  }
}

// ‖h‖²‖a_t‖² − |h^H a_t|², the Gram determinant of {h, a_t}.
double gram_determinant(const Scenario& s) {
  return s.channel_norm_sq() * s.steering_norm_sq() - std::norm(s.cross_term());
}

bool numerically_collinear(const Scenario& s) {
  return gram_determinant(s) <=
         kCaseTolerance * s.channel_norm_sq() * s.steering_norm_sq();
}

double active_beta(const Scenario& s, double gamma) {
  return std::max(0.0, s.gamma_max() - gamma) *
         std::max(0.0, gram_determinant(s));
}

}  // namespace

std::string_view to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::BelowThreshold:
      return "below_threshold";
    case CaseTag::Active:
      return "active";
    case CaseTag::Infeasible:
      return "infeasible";
  }
  return "unknown";
}

double BeamformerSolution::capacity_nats() const {
  return capacity_bits * std::numbers::ln2;
}

CaseTag classify_case(const Scenario& scenario, double gamma) {
  check_gamma(gamma);
  const double gamma_max = scenario.gamma_max();
  if (gamma > gamma_max * (1.0 + kCaseTolerance)) {
    return CaseTag::Infeasible;
  }
  if (gamma < scenario.gamma_threshold() * (1.0 - kCaseTolerance)) {
    return CaseTag::BelowThreshold;
  }
  return CaseTag::Active;
}

double capacity_unconstrained(const Scenario& scenario) {
  return std::log2(1.0 + scenario.power_budget() * scenario.channel_norm_sq());
}

double capacity_constraint_active(const Scenario& scenario, double gamma) {
  const double n = scenario.steering_norm_sq();
  const double amplitude = std::sqrt(gamma) * std::abs(scenario.cross_term()) +
                           std::sqrt(active_beta(scenario, gamma));
  return std::log2(1.0 + amplitude * amplitude / (n * n));
}

double capacity_closed_form(const Scenario& scenario, double gamma) {
  switch (classify_case(scenario, gamma)) {
    case CaseTag::BelowThreshold:
      return capacity_unconstrained(scenario);
    case CaseTag::Active:
      return capacity_constraint_active(scenario, gamma);
    case CaseTag::Infeasible:
      break;
  }
  throw InfeasibleRadarRequirement(gamma, scenario.gamma_max());
}

ComplexMatrix assemble_covariance(const ComplexVector& c) {
  return c * c.adjoint();
}

BeamformerSolution solve_closed_form(const Scenario& scenario, double gamma) {
  const CaseTag tag = classify_case(scenario, gamma);
  if (tag == CaseTag::Infeasible) {
    throw InfeasibleRadarRequirement(gamma, scenario.gamma_max());
  }

  const double power = scenario.power_budget();
  const double h_norm_sq = scenario.channel_norm_sq();
  const double a_norm_sq = scenario.steering_norm_sq();
  const Complex cross = scenario.cross_term();
  const double cross_abs = std::abs(cross);

  BeamformerSolution sol;
  sol.case_tag = tag;

  if (tag == CaseTag::BelowThreshold || numerically_collinear(scenario)) {
    // Matched beam c = √P h/‖h‖. When h ∥ a_t it also puts P‖a_t‖² = γ₂* on
    // the target, so it is optimal for every feasible γ.
    sol.coeff_a = Complex(std::sqrt(power / h_norm_sq), 0.0);
    sol.coeff_b = Complex(0.0, 0.0);
    if (tag == CaseTag::Active) {
      sol.eta = std::abs(sol.coeff_a);
      sol.beta = active_beta(scenario, gamma);
    }
  } else {
    const double det = gram_determinant(scenario);
    const double eta = std::sqrt(std::max(0.0, power * a_norm_sq - gamma) / det);
    const double lead = std::sqrt(gamma) / a_norm_sq;
    const double trail = cross_abs * eta / a_norm_sq;
    double b_abs = lead - trail;
    if (b_abs < 0.0) {
      // Only rounding at γ ≈ γ₁* can make this negative.
      if (b_abs < -kCaseTolerance * std::max(lead + trail, 1.0)) {
        std::ostringstream msg;
        msg << "negative radar amplitude " << b_abs << " at gamma " << gamma;
        throw std::logic_error(msg.str());
      }
      b_abs = 0.0;
    }
    // arg(b) = 0, arg(a) = arg(h^H a_t); both phases are free when h ⟂ a_t.
    const bool orthogonal =
        cross_abs <= kCaseTolerance * std::sqrt(h_norm_sq * a_norm_sq);
    const double a_phase = orthogonal ? 0.0 : std::arg(cross);
    sol.coeff_a = std::polar(eta, a_phase);
    sol.coeff_b = Complex(b_abs, 0.0);
    sol.eta = eta;
    sol.beta = active_beta(scenario, gamma);
  }

  sol.vector_c = sol.coeff_a * scenario.h() + sol.coeff_b * scenario.steering();
  sol.covariance = assemble_covariance(sol.vector_c);
  sol.capacity_bits = tag == CaseTag::BelowThreshold
                          ? capacity_unconstrained(scenario)
                          : capacity_constraint_active(scenario, gamma);
  return sol;
}

}  // namespace dfrc
