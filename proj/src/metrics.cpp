#include "dfrc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace dfrc {

namespace {

void check_square(const ComplexMatrix& covariance, Eigen::Index dim) {
  if (covariance.rows() != dim || covariance.cols() != dim) {
    throw DimensionMismatch("covariance is " + std::to_string(covariance.rows()) +
                            "x" + std::to_string(covariance.cols()) +
                            ", expected " + std::to_string(dim) + "x" +
                            std::to_string(dim));
  }
}

// v^H R v for Hermitian PSD R. The imaginary part is rounding noise.
double quadratic_form(const ComplexMatrix& covariance, const ComplexVector& v) {
  return std::max(0.0, v.dot(covariance * v).real());
}

}  // namespace

double channel_power(const ComplexMatrix& covariance,
                     const ChannelVector& channel) {
  check_square(covariance, channel.size());
  return quadratic_form(covariance, channel.entries());
}

double capacity_from_covariance(const ComplexMatrix& covariance,
                                const ChannelVector& channel) {
  return std::log2(1.0 + channel_power(covariance, channel) / kNoisePower);
}

double target_power(const ComplexMatrix& covariance, const Scenario& scenario) {
  check_square(covariance, scenario.geometry().num_antennas());
  return quadratic_form(covariance, scenario.steering());
}

ComplexVector receive_beamformer(const Scenario& scenario) {
  return scenario.steering() / std::sqrt(scenario.steering_norm_sq());
}

double radar_snr(const ComplexMatrix& covariance, const Scenario& scenario,
                 const std::optional<ComplexVector>& weights) {
  const double alpha_sq =
      scenario.target_amplitude() * scenario.target_amplitude();
  const double impinging = target_power(covariance, scenario);
  if (!weights) {
    return alpha_sq * scenario.steering_norm_sq() * impinging / kNoisePower;
  }
  const ComplexVector& w = *weights;
  if (w.size() != scenario.geometry().num_antennas()) {
    throw DimensionMismatch("receive weights have wrong length");
  }
  const double w_norm_sq = w.squaredNorm();
  if (std::abs(w_norm_sq - 1.0) > 1e-9) {
    throw DomainError("receive weights must have unit norm");
  }
  const double gain = std::norm(w.dot(scenario.steering()));
  return alpha_sq * gain * impinging / (w_norm_sq * kNoisePower);
}

std::vector<double> angle_grid_deg(double start_deg, double stop_deg,
                                   double step_deg) {
  if (!(step_deg > 0.0) || !(stop_deg >= start_deg)) {
    throw DomainError("angle grid needs start <= stop and a positive step");
  }
  const auto count =
      static_cast<std::size_t>(std::floor((stop_deg - start_deg) / step_deg + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    grid.push_back(deg_to_rad(start_deg + static_cast<double>(k) * step_deg));
  }
  return grid;
}

std::vector<double> default_angle_grid() {
  return angle_grid_deg(-90.0, 90.0, 0.25);
}

BeamPattern beam_pattern(const ComplexMatrix& covariance,
                         const ArrayGeometry& geometry,
                         std::span<const double> angle_grid) {
  if (angle_grid.empty()) {
    throw DomainError("beam pattern needs a non-empty angle grid");
  }
  check_square(covariance, geometry.num_antennas());
  BeamPattern pattern;
  pattern.angles.assign(angle_grid.begin(), angle_grid.end());
  pattern.power.reserve(angle_grid.size());
  for (const double angle : angle_grid) {
    const SteeringVector a = build_steering_vector(geometry, angle);
    pattern.power.push_back(quadratic_form(covariance, a.entries()));
  }
  return pattern;
}

double lobe_mass(const BeamPattern& pattern, double center, double half_width) {
  double mass = 0.0;
  for (std::size_t k = 1; k < pattern.angles.size(); ++k) {
    const double left = pattern.angles[k - 1];
    const double right = pattern.angles[k];
    if (std::abs(left - center) <= half_width &&
        std::abs(right - center) <= half_width) {
      mass += 0.5 * (pattern.power[k - 1] + pattern.power[k]) * (right - left);
    }
  }
  return mass;
}

double mainlobe_half_width(const ArrayGeometry& geometry, double angle) {
  const double du = 1.0 / (geometry.num_antennas() * geometry.spacing_over_wavelength());
  const double s = std::sin(angle);
  const double upper = std::asin(std::min(1.0, s + du)) - angle;
  const double lower = angle - std::asin(std::max(-1.0, s - du));
  return std::min(upper, lower);
}

double target_beam_fraction(const ComplexMatrix& covariance,
                            const Scenario& scenario) {
  const double trace = covariance.trace().real();
  if (!(trace > 0.0)) {
    return 0.0;
  }
  return target_power(covariance, scenario) /
         (scenario.steering_norm_sq() * trace);
}

}  // namespace dfrc
