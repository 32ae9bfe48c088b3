#include "dfrc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

namespace dfrc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMinGridSteps = 64;

struct Probe {
  double x = 0.0;
  double value = -std::numeric_limits<double>::infinity();
};

// Golden-section maximization on [lo, hi]. Returns the best point evaluated,
// which matters when part of the bracket is infeasible (-inf).
template <typename F>
Probe golden_max(F&& f, double lo, double hi, int iterations = 64) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  Probe best{lo, f(lo)};
  const auto consider = [&best](double x, double v) {
    if (v > best.value) best = {x, v};
  };
  consider(hi, f(hi));
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  consider(c, fc);
  consider(d, fd);
  for (int i = 0; i < iterations && hi - lo > 0.0; ++i) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
      consider(c, fc);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
      consider(d, fd);
    }
  }
  return best;
}

}  // namespace

ComplexVector OracleSolution::reconstruct(const Scenario& scenario) const {
  return std::polar(amp_a, phase_diff) * scenario.h() +
         Complex(amp_b, 0.0) * scenario.steering();
}

SubspaceSearch::SubspaceSearch(const Scenario& scenario, double gamma)
    : power_(scenario.power_budget()), gamma_(gamma) {
  const ComplexVector& h = scenario.h();
  const ComplexVector& a = scenario.steering();
  // Gram quantities by direct summation rather than the scenario's cache.
  h_norm_sq_ = 0.0;
  a_norm_sq_ = 0.0;
  Complex cross(0.0, 0.0);
  for (Eigen::Index m = 0; m < h.size(); ++m) {
    h_norm_sq_ += std::norm(h[m]);
    a_norm_sq_ += std::norm(a[m]);
    cross += std::conj(h[m]) * a[m];
  }
  cross_abs_ = std::abs(cross);
  cross_arg_ = std::arg(cross);

  const ComplexVector h_perp = h - a * (a.dot(h) / a_norm_sq_);
  const double perp_sq = h_perp.squaredNorm();
  amp_limit_ = perp_sq > 1e-12 * h_norm_sq_ ? std::sqrt(power_ / perp_sq)
                                            : std::sqrt(power_ / h_norm_sq_);
}

SubspaceSearch::Point SubspaceSearch::evaluate(double amp_a,
                                               double phase_diff) const {
  return evaluate_cos(amp_a, std::cos(phase_diff - cross_arg_));
}

SubspaceSearch::Point SubspaceSearch::evaluate_cos(double amp_a,
                                                   double cos_offset) const {
  // With a = A e^{jφ}, b = B >= 0 and h^H a_t = |g| e^{jψ}, every quantity
  // depends on the phase only through k = |g| cos(φ - ψ):
  //   ‖c‖²        = A² ‖h‖² + 2 A B k + B² ‖a_t‖²
  //   |a_t^H c|²  = A² |g|² + 2 A B ‖a_t‖² k + B² ‖a_t‖⁴
  //   |h^H c|²    = A² ‖h‖⁴ + 2 A B ‖h‖² k + B² |g|²
  const double k = cross_abs_ * cos_offset;
  const double n = a_norm_sq_;
  const double disc = (amp_a * k) * (amp_a * k) - n * (amp_a * amp_a * h_norm_sq_ - power_);
  Point best;
  if (disc < 0.0) {
    return best;
  }
  const double root = std::sqrt(disc);
  const double roots[2] = {(-amp_a * k + root) / n, (-amp_a * k - root) / n};
  const double snr_floor = gamma_ * (1.0 - kOracleFeasibilityTolerance);
  for (const double b : roots) {
    if (b < 0.0) continue;
    const double snr = amp_a * amp_a * cross_abs_ * cross_abs_ +
                       2.0 * amp_a * b * n * k + b * b * n * n;
    if (snr < snr_floor) continue;
    const double objective = amp_a * amp_a * h_norm_sq_ * h_norm_sq_ +
                             2.0 * amp_a * b * h_norm_sq_ * k +
                             b * b * cross_abs_ * cross_abs_;
    if (!best.feasible || objective > best.objective) {
      best = {true, std::max(0.0, objective), b};
    }
  }
  return best;
}

std::uint64_t SubspaceSearch::count_feasible(int amplitude_steps,
                                             int phase_steps) const {
  std::uint64_t count = 0;
  for (int p = 0; p < phase_steps; ++p) {
    const double phase = kTwoPi * p / phase_steps;
    const double cos_offset = std::cos(phase - cross_arg_);
    for (int i = 0; i < amplitude_steps; ++i) {
      const double amp = amp_limit_ * i / (amplitude_steps - 1);
      if (evaluate_cos(amp, cos_offset).feasible) ++count;
    }
  }
  return count;
}

OracleSolution grid_search_oracle(const Scenario& scenario, double gamma,
                                  const GridResolution& resolution) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw DomainError("gamma must be a finite value >= 0");
  }
  if (resolution.amplitude_steps < kMinGridSteps ||
      resolution.phase_steps < kMinGridSteps) {
    throw DomainError("oracle grid needs at least 64 steps per axis");
  }
  if (gamma > scenario.gamma_max() * (1.0 + 1e-12)) {
    throw InfeasibleRadarRequirement(gamma, scenario.gamma_max());
  }

  const SubspaceSearch search(scenario, gamma);
  const double amp_limit = search.amplitude_limit();
  const int n_amp = resolution.amplitude_steps;
  const int n_phase = resolution.phase_steps;

  OracleSolution out;
  out.resolution = resolution;
  bool found = false;
  for (int p = 0; p < n_phase; ++p) {
    const double phase = kTwoPi * p / n_phase;
    const double cos_offset = std::cos(phase - search.cross_arg_);
    for (int i = 0; i < n_amp; ++i) {
      const double amp = amp_limit * i / (n_amp - 1);
      const SubspaceSearch::Point pt = search.evaluate_cos(amp, cos_offset);
      if (pt.feasible && (!found || pt.objective > out.objective)) {
        found = true;
        out.objective = pt.objective;
        out.amp_a = amp;
        out.phase_diff = phase;
        out.amp_b = pt.amp_b;
      }
    }
  }
  if (!found) {
    std::ostringstream msg;
    msg << "no feasible point on a " << n_amp << "x" << n_phase
        << " grid at gamma = " << gamma << "; increase the resolution";
    throw ResolutionError(msg.str());
  }

  if (resolution.refine_iterations > 0) {
    double amp_step = amp_limit / (n_amp - 1);
    double phase_step = kTwoPi / n_phase;
    const auto objective_at = [&search](double amp, double phase) {
      const SubspaceSearch::Point pt = search.evaluate(amp, phase);
      return pt.feasible ? pt.objective
                         : -std::numeric_limits<double>::infinity();
    };
    for (int it = 0; it < resolution.refine_iterations; ++it) {
      bool improved = false;

      const double phase = out.phase_diff;
      const Probe by_amp = golden_max(
          [&](double amp) { return objective_at(amp, phase); },
          std::max(0.0, out.amp_a - amp_step),
          std::min(amp_limit, out.amp_a + amp_step));
      if (by_amp.value > out.objective) {
        out.objective = by_amp.value;
        out.amp_a = by_amp.x;
        improved = true;
      }

      const double amp = out.amp_a;
      const Probe by_phase = golden_max(
          [&](double ph) { return objective_at(amp, ph); },
          out.phase_diff - phase_step, out.phase_diff + phase_step);
      if (by_phase.value > out.objective) {
        out.objective = by_phase.value;
        out.phase_diff = by_phase.x;
        improved = true;
      }

      if (!improved) {
        amp_step *= 0.5;
        phase_step *= 0.5;
      }
    }
    out.phase_diff = std::fmod(out.phase_diff, kTwoPi);
    if (out.phase_diff < 0.0) out.phase_diff += kTwoPi;
    out.amp_b = search.evaluate(out.amp_a, out.phase_diff).amp_b;
    out.refined = true;
  }
  return out;
}

double oracle_relative_gap(double oracle_objective, double closed_objective,
                           const Scenario& scenario) {
  const double floor =
      1e-5 * scenario.power_budget() * scenario.channel_norm_sq();
  return std::abs(oracle_objective - closed_objective) /
         std::max(std::abs(closed_objective), floor);
}

std::vector<std::string> KktCertificate::failures(double power,
                                                  double gamma) const {
  std::vector<std::string> failed;
  if (!(stationarity_residual <= 1e-8 * std::sqrt(power))) {
    failed.emplace_back("stationarity_residual");
  }
  if (!(std::abs(power_residual) <= 1e-9 * power)) {
    failed.emplace_back("power_residual");
  }
  if (!(snr_slack <= 1e-9 * gamma + 1e-12)) {
    failed.emplace_back("snr_slack");
  }
  if (!(dual_lambda >= -1e-12)) {
    failed.emplace_back("dual_lambda");
  }
  if (!(std::abs(comp_slackness_residual) <= 1e-8)) {
    failed.emplace_back("comp_slackness_residual");
  }
  return failed;
}

KktCertificate kkt_check(const ComplexVector& c, const Scenario& scenario,
                         double gamma) {
  const ComplexVector& h = scenario.h();
  const ComplexVector& a = scenario.steering();
  if (c.size() != h.size()) {
    throw DimensionMismatch("beamformer length does not match the array");
  }

  const Complex hc = h.dot(c);  // h^H c
  const Complex ac = a.dot(c);  // a_t^H c
  const auto residual_vector = [&](double lambda, double mu) -> ComplexVector {
    return -hc * h - lambda * ac * a + mu * c;
  };

  KktCertificate cert;
  cert.power_residual = c.squaredNorm() - scenario.power_budget();
  cert.snr_slack = gamma - std::norm(ac);

  // Inner products of the stationarity equation with h and a_t give two
  // complex (four real) equations, linear in the real duals (λ, μ):
  //   λ [-(a_t^H c) h^H a_t]  + μ [h^H c]   = (h^H c) ‖h‖²
  //   λ [-(a_t^H c) ‖a_t‖²]   + μ [a_t^H c] = (h^H c) a_t^H h
  const Complex g = h.dot(a);
  const Complex col_lambda[2] = {-ac * g, -ac * a.squaredNorm()};
  const Complex col_mu[2] = {hc, ac};
  const Complex rhs[2] = {hc * h.squaredNorm(), hc * std::conj(g)};
  Eigen::Matrix<double, 4, 2> system;
  Eigen::Vector4d target;
  for (int r = 0; r < 2; ++r) {
    system(2 * r, 0) = col_lambda[r].real();
    system(2 * r + 1, 0) = col_lambda[r].imag();
    system(2 * r, 1) = col_mu[r].real();
    system(2 * r + 1, 1) = col_mu[r].imag();
    target(2 * r) = rhs[r].real();
    target(2 * r + 1) = rhs[r].imag();
  }

  // λ = 0 branch: only μ is fitted.
  const double mu_col_sq = system.col(1).squaredNorm();
  const double mu_only = mu_col_sq > 0.0 ? system.col(1).dot(target) / mu_col_sq : 0.0;
  const double res_mu_only = residual_vector(0.0, mu_only).norm();

  const bool slack = cert.snr_slack < -(1e-9 * gamma + 1e-12);
  double lambda = 0.0;
  double mu = mu_only;
  if (!slack) {
    const Eigen::Vector2d duals =
        system.completeOrthogonalDecomposition().solve(target);
    const double res_full = residual_vector(duals(0), duals(1)).norm();
    const double scale =
        scenario.channel_norm_sq() * std::sqrt(scenario.power_budget());
    // A rank-deficient system (h ∥ a_t, or c ∝ a_t ⟂ h) admits a family of
    // duals; prefer the λ = 0 member when it fits equally well.
    const bool prefer_zero =
        duals(0) < 0.0 && res_mu_only <= std::max(res_full, 1e-12 * scale);
    if (!prefer_zero) {
      lambda = duals(0);
      mu = duals(1);
    }
  }

  cert.constraint_active = !slack;
  cert.dual_lambda = lambda;
  cert.dual_mu = mu;
  cert.stationarity_residual = residual_vector(lambda, mu).norm();
  cert.comp_slackness_residual = lambda * cert.snr_slack;
  return cert;
}

KktCertificate kkt_check(const BeamformerSolution& solution,
                         const Scenario& scenario, double gamma) {
  return kkt_check(solution.vector_c, scenario, gamma);
}

namespace {

// SplitMix64 finalizer; a bijective mix of a 64-bit counter.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Stream of uniforms for one (seed, trial) key.
class TrialStream {
 public:
  TrialStream(std::uint64_t seed, std::uint64_t trial)
      : state_(mix64(seed ^ mix64(trial))) {}

  // Uniform in (0, 1].
  double next_uniform() {
    state_ += 0x9e3779b97f4a7c15ULL;
    const std::uint64_t bits = mix64(state_);
    return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
  }

  // Two independent standard normals via Box–Muller.
  std::pair<double, double> next_normal_pair() {
    const double radius = std::sqrt(-2.0 * std::log(next_uniform()));
    const double angle = kTwoPi * next_uniform();
    return {radius * std::cos(angle), radius * std::sin(angle)};
  }

 private:
  std::uint64_t state_;
};

}  // namespace

FalsifierResult random_falsifier(const Scenario& scenario, double gamma,
                                 std::uint64_t trials, std::uint64_t seed) {
  if (trials < 1) {
    throw DomainError("falsifier needs at least one trial");
  }
  const ComplexVector& h = scenario.h();
  const ComplexVector& a = scenario.steering();
  const Eigen::Index m = h.size();
  const double sqrt_power = std::sqrt(scenario.power_budget());

  FalsifierResult result;
  result.trials = trials;
  result.best_objective = -std::numeric_limits<double>::infinity();
  ComplexVector c(m);
  for (std::uint64_t t = 0; t < trials; ++t) {
    TrialStream stream(seed, t);
    for (Eigen::Index i = 0; i < m; ++i) {
      const auto [re, im] = stream.next_normal_pair();
      c[i] = Complex(re, im);
    }
    const double norm = c.norm();
    if (!(norm > 0.0)) continue;
    c *= sqrt_power / norm;
    if (std::norm(a.dot(c)) < gamma) continue;
    ++result.feasible_draws;
    result.best_objective = std::max(result.best_objective, std::norm(h.dot(c)));
  }
  return result;
}

}  // namespace dfrc
