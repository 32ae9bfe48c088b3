#include "dfrc/core_model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace dfrc {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
// Slack on the ±90° range so that a degree value converted at the CLI edge
// is not rejected for a last-bit rounding difference.
constexpr double kAngleSlack = 1e-12;

void check_angle(double angle) {
  if (!std::isfinite(angle) || std::abs(angle) > kHalfPi + kAngleSlack) {
    std::ostringstream msg;
    msg << "angle " << angle << " rad is outside [-pi/2, pi/2]";
    throw DomainError(msg.str());
  }
}

}  // namespace

InfeasibleRadarRequirement::InfeasibleRadarRequirement(double gamma,
                                                       double gamma_max)
    : std::runtime_error([&] {
        std::ostringstream msg;
        msg.precision(17);
        msg << "radar power threshold gamma = " << gamma
            << " exceeds the achievable maximum P*|a_t|^2 = " << gamma_max;
        return msg.str();
      }()),
      gamma_(gamma),
      gamma_max_(gamma_max) {}

double deg_to_rad(double degrees) { return degrees * (std::numbers::pi / 180.0); }
double rad_to_deg(double radians) { return radians * (180.0 / std::numbers::pi); }

ArrayGeometry::ArrayGeometry(int num_antennas, double spacing_over_wavelength)
    : num_antennas_(num_antennas), spacing_(spacing_over_wavelength) {
  if (num_antennas < 1) {
    throw DomainError("array needs at least one antenna, got " +
                      std::to_string(num_antennas));
  }
  if (!(spacing_over_wavelength > 0.0) || !std::isfinite(spacing_over_wavelength)) {
    throw DomainError("antenna spacing over wavelength must be positive");
  }
}

SteeringVector build_steering_vector(const ArrayGeometry& geometry,
                                     double angle) {
  check_angle(angle);
  const int m_count = geometry.num_antennas();
  const double phase_step = 2.0 * std::numbers::pi *
                            geometry.spacing_over_wavelength() * std::sin(angle);
  ComplexVector entries(m_count);
  for (int m = 0; m < m_count; ++m) {
    entries[m] = std::polar(1.0, -phase_step * m);
  }
  return SteeringVector(std::move(entries), angle);
}

ChannelVector::ChannelVector(ComplexVector entries)
    : entries_(std::move(entries)) {
  if (entries_.size() == 0 || !(entries_.squaredNorm() > 0.0)) {
    throw DomainError("channel vector must be nonzero");
  }
  if (!entries_.allFinite()) {
    throw DomainError("channel vector has non-finite entries");
  }
}

ChannelVector build_los_channel(const ArrayGeometry& geometry,
                                double user_angle) {
  return ChannelVector(build_steering_vector(geometry, user_angle).entries());
}

Scenario::Scenario(ArrayGeometry geometry, double target_angle,
                   ChannelVector channel, double power_budget,
                   double target_amplitude)
    : geometry_(geometry),
      target_angle_(target_angle),
      channel_(std::move(channel)),
      power_(power_budget),
      amplitude_(target_amplitude),
      steering_(build_steering_vector(geometry, target_angle)) {
  if (!(power_budget > 0.0) || !std::isfinite(power_budget)) {
    throw DomainError("power budget must be positive");
  }
  if (!(target_amplitude > 0.0) || !std::isfinite(target_amplitude)) {
    throw DomainError("target amplitude must be positive");
  }
  if (channel_.size() != geometry_.num_antennas()) {
    throw DimensionMismatch("channel has " + std::to_string(channel_.size()) +
                            " entries but the array has " +
                            std::to_string(geometry_.num_antennas()) +
                            " antennas");
  }
  channel_norm_sq_ = channel_.entries().squaredNorm();
  steering_norm_sq_ = steering_.entries().squaredNorm();
  // Eigen's dot conjugates its left operand: h.dot(a) = h^H a.
  cross_ = channel_.entries().dot(steering_.entries());
}

double Scenario::gamma_threshold() const noexcept {
  return power_ * std::norm(cross_) / channel_norm_sq_;
}

double Scenario::gamma_max() const noexcept {
  return power_ * steering_norm_sq_;
}

double Scenario::snr_max() const noexcept {
  return amplitude_ * amplitude_ * steering_norm_sq_ * power_ *
         steering_norm_sq_;
}

RadarSnrSpec RadarSnrSpec::from_snr_threshold(double snr0) {
  RadarSnrSpec spec;
  spec.snr_threshold = snr0;
  return spec;
}

RadarSnrSpec RadarSnrSpec::from_loss_db(double loss_db) {
  RadarSnrSpec spec;
  spec.snr_loss_db = loss_db;
  return spec;
}

RadarSnrSpec RadarSnrSpec::from_gamma(double gamma) {
  RadarSnrSpec spec;
  spec.gamma = gamma;
  return spec;
}

RadarSnrSpec snr_spec_resolve(const RadarSnrSpec& partial,
                              const Scenario& scenario) {
  const int supplied = static_cast<int>(partial.snr_threshold.has_value()) +
                       static_cast<int>(partial.snr_loss_db.has_value()) +
                       static_cast<int>(partial.gamma.has_value());
  if (supplied != 1) {
    throw DomainError(
        "radar requirement needs exactly one of snr0, snr_loss_db, gamma");
  }

  // SNR₀ = α₀² ‖a_r‖² γ, with a_r = a_t.
  const double snr_per_gamma = scenario.target_amplitude() *
                               scenario.target_amplitude() *
                               scenario.steering_norm_sq();
  const double snr_max = scenario.snr_max();

  RadarSnrSpec out;
  if (partial.snr_loss_db) {
    const double loss = *partial.snr_loss_db;
    if (std::isnan(loss) || loss > 0.0) {
      throw DomainError("SNR loss must be <= 0 dB (SNR0 cannot exceed SNR_MAX)");
    }
    const double ratio = std::pow(10.0, loss / 10.0);
    out.snr_loss_db = loss;
    out.gamma = scenario.gamma_max() * ratio;
    out.snr_threshold = snr_max * ratio;
  } else if (partial.snr_threshold) {
    const double snr0 = *partial.snr_threshold;
    if (!(snr0 >= 0.0) || !std::isfinite(snr0)) {
      throw DomainError("SNR threshold must be a finite value >= 0");
    }
    out.snr_threshold = snr0;
    out.gamma = snr0 / snr_per_gamma;
    out.snr_loss_db = 10.0 * std::log10(snr0 / snr_max);
  } else {
    const double gamma = *partial.gamma;
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
      throw DomainError("gamma must be a finite value >= 0");
    }
    out.gamma = gamma;
    out.snr_threshold = gamma * snr_per_gamma;
    out.snr_loss_db = 10.0 * std::log10(gamma / scenario.gamma_max());
  }
  return out;
}

}  // namespace dfrc
