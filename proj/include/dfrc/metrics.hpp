#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dfrc/core_model.hpp"

namespace dfrc {

/// Transmit beam pattern a(φ)^H R a(φ) sampled on an angle grid (radians).
struct BeamPattern {
  std::vector<double> angles;
  std::vector<double> power;
};

/// h^H R h, the signal power delivered to the user.
double channel_power(const ComplexMatrix& covariance, const ChannelVector& channel);

/// log₂(1 + h^H R h / σ²) in bits per channel use.
double capacity_from_covariance(const ComplexMatrix& covariance,
                                const ChannelVector& channel);

/// a_t^H R a_t, the power impinging on the target.
double target_power(const ComplexMatrix& covariance, const Scenario& scenario);

/// SNR-maximizing receive weights w = a_r/‖a_r‖.
ComplexVector receive_beamformer(const Scenario& scenario);

/// Radar SNR α₀² |w^H a_r|² a_t^H R a_t / ‖w‖² after receive beamforming.
/// With the default w this is α₀² ‖a_r‖² a_t^H R a_t. A supplied w must have
/// unit norm.
double radar_snr(const ComplexMatrix& covariance, const Scenario& scenario,
                 const std::optional<ComplexVector>& weights = std::nullopt);

/// 721 angles from -90° to 90° in 0.25° steps, in radians.
std::vector<double> default_angle_grid();

/// Uniform grid in degrees [start, stop] with the given step, converted to
/// radians. Each point is start + k*step so grid values hit integers exactly.
std::vector<double> angle_grid_deg(double start_deg, double stop_deg,
                                   double step_deg);

BeamPattern beam_pattern(const ComplexMatrix& covariance,
                         const ArrayGeometry& geometry,
                         std::span<const double> angle_grid);

/// Trapezoidal integral of the pattern over |φ - center| <= half_width.
double lobe_mass(const BeamPattern& pattern, double center, double half_width);

/// Angular distance from the steering direction θ to the first null of
/// an M-element ULA's main lobe, arcsin(sin θ ± 1/(M d/λ)) - θ, taking the
/// narrower side and clamping at ±90°.
double mainlobe_half_width(const ArrayGeometry& geometry, double angle);

/// a_t^H R a_t / (‖a_t‖² tr R): share of the transmit power carried by the
/// target beam. Equals 1 exactly for the phased-array beam c ∝ a_t.
double target_beam_fraction(const ComplexMatrix& covariance,
                            const Scenario& scenario);

}  // namespace dfrc
