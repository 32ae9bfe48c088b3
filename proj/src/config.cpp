#include "dfrc/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "dfrc/sweep.hpp"

namespace dfrc {

namespace {

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& field,
                         const std::string& what) const {
    std::ostringstream msg;
    msg << source_;
    if (node.IsDefined() && node.Mark().line >= 0) {
      msg << ':' << node.Mark().line + 1 << ':' << node.Mark().column + 1;
    }
    msg << ": " << field << ": " << what;
    throw ConfigError(msg.str());
  }

  void expect_map(const YAML::Node& node, const std::string& field,
                  const std::set<std::string>& allowed) const {
    if (!node.IsMap()) fail(node, field, "expected a mapping");
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      if (!allowed.contains(key)) {
        fail(kv.first, field.empty() ? key : field + "." + key, "unknown key");
      }
    }
  }

  template <typename T>
  T scalar(const YAML::Node& node, const std::string& field) const {
    if (!node.IsScalar()) fail(node, field, "expected a scalar value");
    try {
      return node.as<T>();
    } catch (const YAML::Exception&) {
      fail(node, field, std::is_integral_v<T> ? "expected an integer"
                                               : "expected a number");
    }
  }

  template <typename T>
  void optional(const YAML::Node& parent, const std::string& key,
                const std::string& prefix, T& target) const {
    if (const YAML::Node node = parent[key]) {
      target = scalar<T>(node, prefix + "." + key);
    }
  }

  std::vector<double> number_list(const YAML::Node& node,
                                  const std::string& field) const {
    if (!node.IsSequence()) fail(node, field, "expected a list of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < node.size(); ++i) {
      out.push_back(scalar<double>(node[i], field + "[" + std::to_string(i) + "]"));
    }
    return out;
  }

  // Either an explicit list or {start, stop, step}.
  std::vector<double> grid(const YAML::Node& node, const std::string& field) const {
    if (node.IsSequence()) return number_list(node, field);
    expect_map(node, field, {"start", "stop", "step"});
    for (const char* key : {"start", "stop", "step"}) {
      if (!node[key]) fail(node, field, std::string("missing '") + key + "'");
    }
    try {
      return linear_grid(scalar<double>(node["start"], field + ".start"),
                         scalar<double>(node["stop"], field + ".stop"),
                         scalar<double>(node["step"], field + ".step"));
    } catch (const DomainError& e) {
      fail(node, field, e.what());
    }
  }

 private:
  std::string source_;
};

void read_scenario(const Reader& r, const YAML::Node& node, ScenarioConfig& sc) {
  r.expect_map(node, "scenario",
               {"num_antennas", "spacing_over_wavelength", "target_angle_deg",
                "user_angle_deg", "channel", "power", "target_amplitude"});
  r.optional(node, "num_antennas", "scenario", sc.num_antennas);
  r.optional(node, "spacing_over_wavelength", "scenario", sc.spacing_over_wavelength);
  r.optional(node, "target_angle_deg", "scenario", sc.target_angle_deg);
  r.optional(node, "power", "scenario", sc.power);
  r.optional(node, "target_amplitude", "scenario", sc.target_amplitude);

  const YAML::Node angle = node["user_angle_deg"];
  const YAML::Node channel = node["channel"];
  if (angle && channel) {
    r.fail(channel, "scenario.channel",
           "give either user_angle_deg or channel, not both");
  }
  if (angle) {
    sc.user_angle_deg = r.scalar<double>(angle, "scenario.user_angle_deg");
  } else if (channel) {
    if (!channel.IsSequence()) {
      r.fail(channel, "scenario.channel", "expected a list of [re, im] pairs");
    }
    sc.user_angle_deg.reset();
    sc.channel.clear();
    for (std::size_t i = 0; i < channel.size(); ++i) {
      const std::string field = "scenario.channel[" + std::to_string(i) + "]";
      const YAML::Node entry = channel[i];
      if (!entry.IsSequence() || entry.size() != 2) {
        r.fail(entry, field, "expected [re, im]");
      }
      sc.channel.emplace_back(r.scalar<double>(entry[0], field + "[0]"),
                              r.scalar<double>(entry[1], field + "[1]"));
    }
  }
}

RadarSnrSpec read_radar(const Reader& r, const YAML::Node& node) {
  r.expect_map(node, "radar", {"snr_loss_db", "gamma", "snr0"});
  if (node.size() != 1) {
    r.fail(node, "radar", "exactly one of snr_loss_db, gamma, snr0 is required");
  }
  RadarSnrSpec spec;
  if (node["snr_loss_db"]) {
    spec.snr_loss_db = r.scalar<double>(node["snr_loss_db"], "radar.snr_loss_db");
  } else if (node["gamma"]) {
    spec.gamma = r.scalar<double>(node["gamma"], "radar.gamma");
  } else {
    spec.snr_threshold = r.scalar<double>(node["snr0"], "radar.snr0");
  }
  return spec;
}

void read_sweep(const Reader& r, const YAML::Node& node, SweepConfig& sw) {
  r.expect_map(node, "sweep",
               {"loss_grid_db", "user_angles_deg", "pattern_losses_db", "angle_grid_deg"});
  if (node["loss_grid_db"]) sw.loss_grid_db = r.grid(node["loss_grid_db"], "sweep.loss_grid_db");
  if (node["user_angles_deg"]) {
    sw.user_angles_deg = r.number_list(node["user_angles_deg"], "sweep.user_angles_deg");
  }
  if (node["pattern_losses_db"]) {
    sw.pattern_losses_db = r.number_list(node["pattern_losses_db"], "sweep.pattern_losses_db");
  }
  if (const YAML::Node grid = node["angle_grid_deg"]) {
    r.expect_map(grid, "sweep.angle_grid_deg", {"start", "stop", "step"});
    r.optional(grid, "start", "sweep.angle_grid_deg", sw.angle_start_deg);
    r.optional(grid, "stop", "sweep.angle_grid_deg", sw.angle_stop_deg);
    r.optional(grid, "step", "sweep.angle_grid_deg", sw.angle_step_deg);
  }
}

void read_verify(const Reader& r, const YAML::Node& node, VerifyConfig& vc) {
  r.expect_map(node, "verify", {"seed", "trials", "resolution", "refine_iterations"});
  r.optional(node, "seed", "verify", vc.seed);
  r.optional(node, "trials", "verify", vc.trials);
  r.optional(node, "resolution", "verify", vc.resolution);
  r.optional(node, "refine_iterations", "verify", vc.refine_iterations);
}

}  // namespace

RunConfig::RunConfig() {
  sweep.loss_grid_db = default_loss_grid();
  sweep.pattern_losses_db = default_pattern_losses();
}

RunConfig parse_config(const std::string& text, const std::string& source_name) {
  const Reader r(source_name);
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    std::ostringstream msg;
    msg << source_name << ':' << e.mark.line + 1 << ':' << e.mark.column + 1
        << ": " << e.msg;
    throw ConfigError(msg.str());
  }

  RunConfig config;
  if (root.IsNull()) return config;
  r.expect_map(root, "", {"scenario", "radar", "sweep", "verify", "output"});
  if (root["scenario"]) read_scenario(r, root["scenario"], config.scenario);
  if (root["radar"]) config.radar = read_radar(r, root["radar"]);
  if (root["sweep"]) read_sweep(r, root["sweep"], config.sweep);
  if (root["verify"]) read_verify(r, root["verify"], config.verify);
  if (root["output"]) config.output = r.scalar<std::string>(root["output"], "output");

  // Surface invalid scenarios at load time with file context.
  try {
    (void)build_scenario(config.scenario);
  } catch (const std::exception& e) {
    r.fail(root["scenario"], "scenario", e.what());
  }
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) {
    throw ConfigError("cannot read config file '" + path.string() + "'");
  }
  std::ostringstream text;
  text << file.rdbuf();
  return parse_config(text.str(), path.string());
}

std::string serialize_config(const RunConfig& config) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;

  const ScenarioConfig& sc = config.scenario;
  out << YAML::Key << "scenario" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "num_antennas" << YAML::Value << sc.num_antennas;
  out << YAML::Key << "spacing_over_wavelength" << YAML::Value << sc.spacing_over_wavelength;
  out << YAML::Key << "target_angle_deg" << YAML::Value << sc.target_angle_deg;
  if (sc.user_angle_deg) {
    out << YAML::Key << "user_angle_deg" << YAML::Value << *sc.user_angle_deg;
  } else {
    out << YAML::Key << "channel" << YAML::Value << YAML::BeginSeq;
    for (const Complex& z : sc.channel) {
      out << YAML::Flow << YAML::BeginSeq << z.real() << z.imag() << YAML::EndSeq;
    }
    out << YAML::EndSeq;
  }
  out << YAML::Key << "power" << YAML::Value << sc.power;
  out << YAML::Key << "target_amplitude" << YAML::Value << sc.target_amplitude;
  out << YAML::EndMap;

  if (config.radar) {
    out << YAML::Key << "radar" << YAML::Value << YAML::BeginMap;
    if (config.radar->snr_loss_db) {
      out << YAML::Key << "snr_loss_db" << YAML::Value << *config.radar->snr_loss_db;
    } else if (config.radar->gamma) {
      out << YAML::Key << "gamma" << YAML::Value << *config.radar->gamma;
    } else if (config.radar->snr_threshold) {
      out << YAML::Key << "snr0" << YAML::Value << *config.radar->snr_threshold;
    }
    out << YAML::EndMap;
  }

  const SweepConfig& sw = config.sweep;
  out << YAML::Key << "sweep" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "loss_grid_db" << YAML::Value << YAML::Flow << sw.loss_grid_db;
  if (!sw.user_angles_deg.empty()) {
    out << YAML::Key << "user_angles_deg" << YAML::Value << YAML::Flow << sw.user_angles_deg;
  }
  out << YAML::Key << "pattern_losses_db" << YAML::Value << YAML::Flow << sw.pattern_losses_db;
  out << YAML::Key << "angle_grid_deg" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "start" << YAML::Value << sw.angle_start_deg;
  out << YAML::Key << "stop" << YAML::Value << sw.angle_stop_deg;
  out << YAML::Key << "step" << YAML::Value << sw.angle_step_deg;
  out << YAML::EndMap << YAML::EndMap;

  const VerifyConfig& vc = config.verify;
  out << YAML::Key << "verify" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "seed" << YAML::Value << vc.seed;
  out << YAML::Key << "trials" << YAML::Value << vc.trials;
  out << YAML::Key << "resolution" << YAML::Value << vc.resolution;
  out << YAML::Key << "refine_iterations" << YAML::Value << vc.refine_iterations;
  out << YAML::EndMap;

  if (config.output) {
    out << YAML::Key << "output" << YAML::Value << *config.output;
  }
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

Scenario build_scenario(const ScenarioConfig& config,
                        std::optional<double> user_angle_deg_override) {
  const ArrayGeometry geometry(config.num_antennas, config.spacing_over_wavelength);
  const std::optional<double> user_angle =
      user_angle_deg_override ? user_angle_deg_override : config.user_angle_deg;
  if (user_angle) {
    return Scenario(geometry, deg_to_rad(config.target_angle_deg),
                    build_los_channel(geometry, deg_to_rad(*user_angle)),
                    config.power, config.target_amplitude);
  }
  if (config.channel.empty()) {
    throw DomainError("scenario needs either user_angle_deg or channel entries");
  }
  ComplexVector h(static_cast<Eigen::Index>(config.channel.size()));
  for (std::size_t i = 0; i < config.channel.size(); ++i) {
    h[static_cast<Eigen::Index>(i)] = config.channel[i];
  }
  return Scenario(geometry, deg_to_rad(config.target_angle_deg),
                  ChannelVector(std::move(h)), config.power,
                  config.target_amplitude);
}

}  // namespace dfrc
