#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dfrc/closed_form.hpp"
#include "dfrc/metrics.hpp"

namespace dfrc {

struct TradeoffPoint {
  double snr_loss_db = 0.0;
  double gamma = 0.0;
  double capacity_bits = 0.0;
  CaseTag case_tag = CaseTag::BelowThreshold;
};

/// Closed-form capacity at each SNR loss, γ = P‖a_t‖² 10^(loss/10).
/// The grid must be sorted ascending with every entry <= 0 dB.
std::vector<TradeoffPoint> tradeoff_sweep(const Scenario& scenario,
                                          std::span<const double> loss_grid_db);

struct LossPattern {
  double snr_loss_db = 0.0;
  double gamma = 0.0;
  CaseTag case_tag = CaseTag::BelowThreshold;
  BeamPattern pattern;
};

/// Transmit beam pattern of the closed-form covariance at each SNR loss.
/// Losses may come in any order but must be non-empty and <= 0 dB.
std::vector<LossPattern> beampattern_sweep(const Scenario& scenario,
                                           std::span<const double> losses_db,
                                           std::span<const double> angle_grid);

/// -40 dB to 0 dB in 0.25 dB steps.
std::vector<double> default_loss_grid();
/// {0, -5, -10, -20} dB.
std::vector<double> default_pattern_losses();

/// Inclusive arithmetic grid start + k*step up to stop.
std::vector<double> linear_grid(double start, double stop, double step);

// CSV tables are kept as text cells so that formatting is decided once, in
// format_number.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// 17 significant digits, '.' decimal separator, independent of locale.
std::string format_number(double value);

CsvTable tradeoff_table(std::span<const TradeoffPoint> points);
CsvTable beampattern_table(std::span<const LossPattern> patterns);

/// Writes header and rows with LF line endings; cells containing a comma,
/// quote, or newline are quoted RFC 4180 style.
void emit_csv(const CsvTable& table, std::ostream& out);
/// Throws std::runtime_error naming the path on I/O failure.
void emit_csv(const CsvTable& table, const std::filesystem::path& destination);

CsvTable parse_csv(std::istream& in);

}  // namespace dfrc
