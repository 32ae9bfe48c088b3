#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dfrc/core_model.hpp"
#include "test_support.hpp"

using namespace dfrc;
using dfrc::testing::reference_scenario;

namespace {

// h^H a by an explicit loop, independent of Eigen's dot convention.
Complex inner_by_summation(const ComplexVector& h, const ComplexVector& a) {
  Complex sum(0.0, 0.0);
  for (Eigen::Index m = 0; m < h.size(); ++m) sum += std::conj(h[m]) * a[m];
  return sum;
}

}  // namespace

TEST_CASE("array geometry validation") {
  CHECK_NOTHROW(ArrayGeometry(1, 0.5));
  CHECK_THROWS_AS(ArrayGeometry(0, 0.5), DomainError);
  CHECK_THROWS_AS(ArrayGeometry(4, 0.0), DomainError);
  CHECK_THROWS_AS(ArrayGeometry(4, -0.5), DomainError);
}

TEST_CASE("steering vector examples") {
  SUBCASE("broadside is all ones") {
    const SteeringVector a = build_steering_vector(ArrayGeometry(4, 0.5), 0.0);
    for (Eigen::Index m = 0; m < 4; ++m) {
      CHECK(a.entries()[m].real() == doctest::Approx(1.0));
      CHECK(a.entries()[m].imag() == doctest::Approx(0.0));
    }
  }
  SUBCASE("two elements at 30 degrees") {
    const SteeringVector a =
        build_steering_vector(ArrayGeometry(2, 0.5), deg_to_rad(30.0));
    CHECK(a.entries()[0] == Complex(1.0, 0.0));
    CHECK(std::abs(a.entries()[1] - Complex(0.0, -1.0)) < 1e-15);
  }
  SUBCASE("M=10 target at -30 against user at broadside") {
    const ArrayGeometry g(10, 0.5);
    const Complex cross = inner_by_summation(
        build_los_channel(g, 0.0).entries(),
        build_steering_vector(g, deg_to_rad(-30.0)).entries());
    // Σ j^m for m = 0..9 = 1 + j.
    CHECK(std::abs(cross - Complex(1.0, 1.0)) < 1e-13);
    CHECK(std::abs(cross) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  }
}

TEST_CASE("steering vector rejects angles outside [-90, 90] degrees") {
  const ArrayGeometry g(4, 0.5);
  CHECK_NOTHROW(build_steering_vector(g, deg_to_rad(90.0)));
  CHECK_NOTHROW(build_steering_vector(g, deg_to_rad(-90.0)));
  CHECK_THROWS_AS(build_steering_vector(g, deg_to_rad(90.5)), DomainError);
  CHECK_THROWS_AS(build_steering_vector(g, -2.0), DomainError);
  CHECK_THROWS_AS(build_los_channel(g, 3.0), DomainError);
  CHECK_THROWS_AS(build_steering_vector(g, std::nan("")), DomainError);
}

TEST_CASE("LoS channel examples") {
  const ArrayGeometry g(10, 0.5);
  const ComplexVector target = build_steering_vector(g, deg_to_rad(-30.0)).entries();

  const ChannelVector broadside = build_los_channel(g, 0.0);
  for (Eigen::Index m = 0; m < 10; ++m) {
    CHECK(std::abs(broadside.entries()[m] - Complex(1.0, 0.0)) < 1e-15);
  }

  // Σ (-1)^m over ten terms vanishes: the orthogonal geometry.
  const Complex orth = inner_by_summation(
      build_los_channel(g, deg_to_rad(30.0)).entries(), target);
  CHECK(std::abs(orth) < 1e-13);

  const Complex parallel = inner_by_summation(
      build_los_channel(g, deg_to_rad(-30.0)).entries(), target);
  CHECK(std::abs(parallel) == doctest::Approx(10.0).epsilon(1e-14));
}

TEST_CASE("steering vectors have unit-modulus entries and squared norm M") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(-std::numbers::pi / 2, std::numbers::pi / 2);
  std::uniform_real_distribution<double> spacing(0.1, 2.0);
  for (int trial = 0; trial < 500; ++trial) {
    const int m_count = 1 + trial % 24;
    const ArrayGeometry g(m_count, spacing(rng));
    const SteeringVector a = build_steering_vector(g, angle(rng));
    CHECK(a.entries()[0] == Complex(1.0, 0.0));
    for (Eigen::Index m = 0; m < a.size(); ++m) {
      CHECK(std::abs(std::abs(a.entries()[m]) - 1.0) <= 4e-16);
    }
    CHECK(std::abs(a.entries().squaredNorm() - m_count) <= 8 * m_count * 1.2e-16);
  }
}

TEST_CASE("LoS cross term follows the Dirichlet kernel") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(-90.0, 90.0);
  for (int trial = 0; trial < 500; ++trial) {
    const int m_count = 2 + trial % 15;
    const ArrayGeometry g(m_count, 0.5);
    const double target = deg_to_rad(angle(rng));
    const double user = deg_to_rad(angle(rng));
    const Scenario s(g, target, build_los_channel(g, user), 1.0, 1.0);
    const double u = std::sin(user) - std::sin(target);
    const double denom = std::sin(std::numbers::pi * u / 2.0);
    const double kernel =
        std::abs(denom) > 1e-6
            ? std::abs(std::sin(m_count * std::numbers::pi * u / 2.0) / denom)
            : static_cast<double>(m_count);
    CHECK(std::abs(s.cross_term()) == doctest::Approx(kernel).epsilon(1e-9).scale(1.0));
    // Cauchy–Schwarz.
    CHECK(std::abs(s.cross_term()) <=
          std::sqrt(s.channel_norm_sq() * s.steering_norm_sq()) * (1 + 1e-15));
  }
}

TEST_CASE("scenario validation and cached Gram quantities") {
  const ArrayGeometry g(4, 0.5);
  const ChannelVector h = build_los_channel(g, 0.3);
  CHECK_THROWS_AS(Scenario(g, 0.1, h, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(Scenario(g, 0.1, h, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(Scenario(g, 0.1, h, -1.0, 1.0), DomainError);
  CHECK_THROWS_AS(Scenario(ArrayGeometry(5, 0.5), 0.1, h, 1.0, 1.0), DimensionMismatch);
  CHECK_THROWS_AS(ChannelVector(ComplexVector::Zero(4)), DomainError);
  CHECK_THROWS_AS(ChannelVector{ComplexVector{}}, DomainError);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const Scenario s = trial % 2 ? dfrc::testing::random_los_scenario(rng)
                                 : dfrc::testing::random_generic_scenario(rng);
    const Complex direct = inner_by_summation(s.h(), s.steering());
    CHECK(std::abs(s.cross_term() - direct) <= 1e-12 * std::max(1.0, std::abs(direct)));
    CHECK(s.steering_norm_sq() ==
          doctest::Approx(s.geometry().num_antennas()).epsilon(1e-14));
    CHECK(s.noise_power() == 1.0);
  }
}

TEST_CASE("reference scenario thresholds") {
  const Scenario s = reference_scenario();
  CHECK(s.gamma_threshold() == doctest::Approx(0.2).epsilon(1e-13));
  CHECK(s.gamma_max() == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(s.snr_max() == doctest::Approx(100.0).epsilon(1e-14));
}

TEST_CASE("radar SNR spec resolution examples") {
  const Scenario s = reference_scenario();

  const RadarSnrSpec zero_loss = snr_spec_resolve(RadarSnrSpec::from_loss_db(0.0), s);
  CHECK(*zero_loss.gamma == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(*zero_loss.snr_threshold == doctest::Approx(100.0).epsilon(1e-14));

  const RadarSnrSpec half = snr_spec_resolve(RadarSnrSpec::from_gamma(5.0), s);
  CHECK(*half.snr_loss_db == doctest::Approx(-3.010299956639812).epsilon(1e-13));
  CHECK(*half.snr_threshold == doctest::Approx(50.0).epsilon(1e-14));

  // SNR0 = α0² M γ with α0 = 1, M = 10, γ = 2.
  const RadarSnrSpec from_snr = snr_spec_resolve(RadarSnrSpec::from_snr_threshold(20.0), s);
  CHECK(*from_snr.gamma == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(from_snr.resolved());
}

TEST_CASE("radar SNR spec errors") {
  const Scenario s = reference_scenario();
  CHECK_THROWS_AS(snr_spec_resolve(RadarSnrSpec::from_loss_db(0.5), s), DomainError);
  CHECK_THROWS_AS(snr_spec_resolve(RadarSnrSpec::from_gamma(-1.0), s), DomainError);
  CHECK_THROWS_AS(snr_spec_resolve(RadarSnrSpec::from_snr_threshold(-1.0), s), DomainError);
  CHECK_THROWS_AS(snr_spec_resolve(RadarSnrSpec{}, s), DomainError);
  RadarSnrSpec two = RadarSnrSpec::from_gamma(1.0);
  two.snr_loss_db = -3.0;
  CHECK_THROWS_AS(snr_spec_resolve(two, s), DomainError);
}

TEST_CASE("radar SNR spec round trips") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const Scenario s = dfrc::testing::random_generic_scenario(rng);
    const double gamma = s.gamma_max() * (0.001 + unit(rng));
    const RadarSnrSpec a = snr_spec_resolve(RadarSnrSpec::from_gamma(gamma), s);
    const RadarSnrSpec b = snr_spec_resolve(RadarSnrSpec::from_snr_threshold(*a.snr_threshold), s);
    CHECK(*b.snr_loss_db == doctest::Approx(*a.snr_loss_db).epsilon(1e-12));
    if (*b.snr_loss_db <= 0.0) {
      const RadarSnrSpec c = snr_spec_resolve(RadarSnrSpec::from_loss_db(*b.snr_loss_db), s);
      CHECK(std::abs(*c.gamma - gamma) <= 1e-12 * gamma);
    }
  }
}
