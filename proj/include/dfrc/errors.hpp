#pragma once

#include <stdexcept>
#include <string>

namespace dfrc {

// Argument outside the mathematical domain of an operation (angle out of
// range, positive SNR loss, negative threshold, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The radar power threshold exceeds what the power budget can deliver to the
// target even with every watt steered onto it.
class InfeasibleRadarRequirement : public std::runtime_error {
 public:
  InfeasibleRadarRequirement(double gamma, double gamma_max);

  double gamma() const noexcept { return gamma_; }
  double gamma_max() const noexcept { return gamma_max_; }

 private:
  double gamma_;
  double gamma_max_;
};

// A numerical search found no feasible point at the requested resolution.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dfrc
