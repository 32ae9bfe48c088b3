#include "dfrc/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <locale>
#include <sstream>
#include <stdexcept>

namespace dfrc {

namespace {

void check_losses(std::span<const double> losses_db) {
  for (const double loss : losses_db) {
    if (std::isnan(loss) || loss > 0.0) {
      std::ostringstream msg;
      msg << "SNR loss " << loss << " dB is positive; losses must be <= 0 dB";
      throw DomainError(msg.str());
    }
  }
}

double loss_to_gamma(const Scenario& scenario, double loss_db) {
  return *snr_spec_resolve(RadarSnrSpec::from_loss_db(loss_db), scenario).gamma;
}

std::string escape_cell(const std::string& cell) {
  if (cell.find_first_of(",\"\n\r") == std::string::npos) {
    return cell;
  }
  std::string quoted = "\"";
  for (const char ch : cell) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  quoted += '"';
  return quoted;
}

// Reads one record; quoted cells may span lines. Returns false at end of input.
bool read_record(std::istream& in, std::vector<std::string>& cells) {
  cells.assign(1, std::string());
  bool quoted = false;
  bool any = false;
  for (int next = in.get(); next != std::char_traits<char>::eof(); next = in.get()) {
    any = true;
    const char ch = static_cast<char>(next);
    if (quoted) {
      if (ch == '"' && in.peek() == '"') {
        cells.back() += '"';
        in.get();
      } else if (ch == '"') {
        quoted = false;
      } else {
        cells.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      cells.emplace_back();
    } else if (ch == '\n') {
      return true;
    } else if (ch == '\r' && in.peek() == '\n') {
      continue;
    } else {
      cells.back() += ch;
    }
  }
  return any;
}

}  // namespace

std::vector<TradeoffPoint> tradeoff_sweep(const Scenario& scenario,
                                          std::span<const double> loss_grid_db) {
  check_losses(loss_grid_db);
  if (!std::is_sorted(loss_grid_db.begin(), loss_grid_db.end())) {
    throw DomainError("SNR loss grid must be sorted ascending");
  }
  std::vector<TradeoffPoint> points;
  points.reserve(loss_grid_db.size());
  for (const double loss : loss_grid_db) {
    const double gamma = loss_to_gamma(scenario, loss);
    points.push_back({loss, gamma, capacity_closed_form(scenario, gamma),
                      classify_case(scenario, gamma)});
  }
  return points;
}

std::vector<LossPattern> beampattern_sweep(const Scenario& scenario,
                                           std::span<const double> losses_db,
                                           std::span<const double> angle_grid) {
  if (losses_db.empty()) {
    throw DomainError("beam pattern sweep needs at least one SNR loss");
  }
  check_losses(losses_db);
  std::vector<LossPattern> out;
  out.reserve(losses_db.size());
  for (const double loss : losses_db) {
    const double gamma = loss_to_gamma(scenario, loss);
    const BeamformerSolution sol = solve_closed_form(scenario, gamma);
    out.push_back({loss, gamma, sol.case_tag,
                   beam_pattern(sol.covariance, scenario.geometry(), angle_grid)});
  }
  return out;
}

std::vector<double> linear_grid(double start, double stop, double step) {
  if (!(step > 0.0) || !(stop >= start) || !std::isfinite(start) ||
      !std::isfinite(stop)) {
    throw DomainError("grid needs start <= stop and a positive step");
  }
  const auto count =
      static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t k = 0; k < count; ++k) {
    grid[k] = start + static_cast<double>(k) * step;
  }
  return grid;
}

std::vector<double> default_loss_grid() { return linear_grid(-40.0, 0.0, 0.25); }

std::vector<double> default_pattern_losses() { return {0.0, -5.0, -10.0, -20.0}; }

std::string format_number(double value) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out.precision(17);
  out << value;
  return out.str();
}

CsvTable tradeoff_table(std::span<const TradeoffPoint> points) {
  CsvTable table;
  table.header = {"snr_loss_db", "gamma", "capacity_bits", "case"};
  for (const TradeoffPoint& p : points) {
    table.rows.push_back({format_number(p.snr_loss_db), format_number(p.gamma),
                          format_number(p.capacity_bits),
                          std::string(to_string(p.case_tag))});
  }
  return table;
}

CsvTable beampattern_table(std::span<const LossPattern> patterns) {
  CsvTable table;
  table.header = {"snr_loss_db", "angle_deg", "power"};
  for (const LossPattern& lp : patterns) {
    for (std::size_t k = 0; k < lp.pattern.angles.size(); ++k) {
      table.rows.push_back({format_number(lp.snr_loss_db),
                            format_number(rad_to_deg(lp.pattern.angles[k])),
                            format_number(lp.pattern.power[k])});
    }
  }
  return table;
}

void emit_csv(const CsvTable& table, std::ostream& out) {
  const auto write_record = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out << ',';
      out << escape_cell(cells[i]);
    }
    out << '\n';
  };
  write_record(table.header);
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) {
      throw std::invalid_argument("CSV row width does not match the header");
    }
    write_record(row);
  }
}

void emit_csv(const CsvTable& table, const std::filesystem::path& destination) {
  std::ofstream file(destination, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw std::runtime_error("cannot open '" + destination.string() +
                             "' for writing");
  }
  emit_csv(table, file);
  file.flush();
  if (!file) {
    throw std::runtime_error("failed writing '" + destination.string() + "'");
  }
}

CsvTable parse_csv(std::istream& in) {
  CsvTable table;
  std::vector<std::string> cells;
  if (!read_record(in, table.header)) return table;
  while (read_record(in, cells)) {
    if (cells.size() == 1 && cells.front().empty()) continue;
    table.rows.push_back(cells);
  }
  return table;
}

}  // namespace dfrc
