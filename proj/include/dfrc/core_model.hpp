#pragma once

#include <complex>
#include <optional>

#include <Eigen/Core>

#include "dfrc/errors.hpp"

namespace dfrc {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

// Receiver noise power. Both the communication and the radar receivers are
// normalized to unit-power noise; every power quantity is relative to it.
inline constexpr double kNoisePower = 1.0;

double deg_to_rad(double degrees);
double rad_to_deg(double radians);

/// Uniform linear array: M elements spaced d/λ wavelengths apart.
class ArrayGeometry {
 public:
  ArrayGeometry(int num_antennas, double spacing_over_wavelength);

  int num_antennas() const noexcept { return num_antennas_; }
  double spacing_over_wavelength() const noexcept { return spacing_; }

  friend bool operator==(const ArrayGeometry&, const ArrayGeometry&) = default;

 private:
  int num_antennas_;
  double spacing_;
};

/// Array response toward one direction. Entry m is
/// exp(-j 2π m (d/λ) sin θ), so entry 0 is 1 and every entry has unit modulus.
class SteeringVector {
 public:
  const ComplexVector& entries() const noexcept { return entries_; }
  double angle() const noexcept { return angle_; }
  Eigen::Index size() const noexcept { return entries_.size(); }

 private:
  friend SteeringVector build_steering_vector(const ArrayGeometry&, double);
  SteeringVector(ComplexVector entries, double angle)
      : entries_(std::move(entries)), angle_(angle) {}

  ComplexVector entries_;
  double angle_;
};

/// Downlink channel h to the single-antenna user. Any nonzero vector is a
/// valid channel; build_los_channel covers the line-of-sight special case.
class ChannelVector {
 public:
  explicit ChannelVector(ComplexVector entries);

  const ComplexVector& entries() const noexcept { return entries_; }
  Eigen::Index size() const noexcept { return entries_.size(); }

 private:
  ComplexVector entries_;
};

/// Angle in radians, must lie in [-π/2, π/2].
SteeringVector build_steering_vector(const ArrayGeometry& geometry,
                                     double angle);

/// Line-of-sight channel toward a user at `user_angle`: same construction and
/// phase convention as the steering vector.
ChannelVector build_los_channel(const ArrayGeometry& geometry,
                                double user_angle);

/// One immutable problem instance: array, target direction, user channel,
/// power budget P and target amplitude α₀. Gram quantities that every solver
/// needs are computed once at construction.
class Scenario {
 public:
  Scenario(ArrayGeometry geometry, double target_angle, ChannelVector channel,
           double power_budget, double target_amplitude);

  const ArrayGeometry& geometry() const noexcept { return geometry_; }
  double target_angle() const noexcept { return target_angle_; }
  const ChannelVector& channel() const noexcept { return channel_; }
  double power_budget() const noexcept { return power_; }
  double target_amplitude() const noexcept { return amplitude_; }
  double noise_power() const noexcept { return kNoisePower; }

  // a_t, also used as the receive steering vector a_r (shared array).
  const ComplexVector& steering() const noexcept { return steering_.entries(); }
  const ComplexVector& h() const noexcept { return channel_.entries(); }

  double channel_norm_sq() const noexcept { return channel_norm_sq_; }    // ‖h‖²
  double steering_norm_sq() const noexcept { return steering_norm_sq_; }  // ‖a_t‖²
  Complex cross_term() const noexcept { return cross_; }                  // h^H a_t

  // γ₁* = P |h^H a_t|² / ‖h‖²: target power delivered by the matched beam.
  double gamma_threshold() const noexcept;
  // γ₂* = P ‖a_t‖²: largest achievable target power.
  double gamma_max() const noexcept;
  // SNR_MAX = α₀² ‖a_r‖² P ‖a_t‖².
  double snr_max() const noexcept;

 private:
  ArrayGeometry geometry_;
  double target_angle_;
  ChannelVector channel_;
  double power_;
  double amplitude_;
  SteeringVector steering_;
  double channel_norm_sq_;
  double steering_norm_sq_;
  Complex cross_;
};

/// Radar requirement in any of its three equivalent forms: the SNR threshold
/// SNR₀ (linear), the SNR loss in dB relative to SNR_MAX, or the target power
/// threshold γ. A partial spec carries exactly one; a resolved spec all three.
struct RadarSnrSpec {
  std::optional<double> snr_threshold;
  std::optional<double> snr_loss_db;
  std::optional<double> gamma;

  static RadarSnrSpec from_snr_threshold(double snr0);
  static RadarSnrSpec from_loss_db(double loss_db);
  static RadarSnrSpec from_gamma(double gamma);

  bool resolved() const noexcept {
    return snr_threshold && snr_loss_db && gamma;
  }
};

RadarSnrSpec snr_spec_resolve(const RadarSnrSpec& partial,
                              const Scenario& scenario);

}  // namespace dfrc
