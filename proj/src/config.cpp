#include "pivotwalk/config.hpp"

#include <algorithm>
#include <filesystem>
#include <set>

#include <nlohmann/json.hpp>

#include "pivotwalk/io.hpp"
#include "pivotwalk/units.hpp"

namespace pivotwalk::config {

namespace {

using nlohmann::json;
namespace units = pivotwalk::units;

/// Strict view over one JSON object: every key must be consumed, quantities
/// must carry unit suffixes.
class Section {
 public:
  Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) {
      throw ConfigError(path_, "must be an object");
    }
  }

  ~Section() = default;

  bool has(const std::string& key) const { return node_.contains(key); }

  const json& raw(const std::string& key) {
    if (!node_.contains(key)) {
      throw ConfigError(key_path(key), "missing required key");
    }
    consumed_.insert(key);
    return node_.at(key);
  }

  std::string key_path(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  double quantity(const std::string& key, units::Dimension dim) {
    const json& v = raw(key);
    if (!v.is_string()) {
      throw ConfigError(key_path(key), std::string("must be a string with a ") +
                                           units::dimension_name(dim) +
                                           " unit suffix (e.g. \"10 mm\", \"30 deg\", \"0.1 s\")");
    }
    try {
      return units::parse(v.get<std::string>(), dim);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(key_path(key), e.what());
    }
  }

  double quantity_or(const std::string& key, units::Dimension dim, double fallback) {
    return has(key) ? quantity(key, dim) : fallback;
  }

  double number(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_number()) throw ConfigError(key_path(key), "must be a number");
    return v.get<double>();
  }

  double number_or(const std::string& key, double fallback) {
    return has(key) ? number(key) : fallback;
  }

  std::uint64_t unsigned_or(const std::string& key, std::uint64_t fallback) {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (!v.is_number_unsigned()) throw ConfigError(key_path(key), "must be a non-negative integer");
    return v.get<std::uint64_t>();
  }

  bool boolean_or(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (!v.is_boolean()) throw ConfigError(key_path(key), "must be a boolean");
    return v.get<bool>();
  }

  std::string text(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_string()) throw ConfigError(key_path(key), "must be a string");
    return v.get<std::string>();
  }

  std::string text_or(const std::string& key, const std::string& fallback) {
    return has(key) ? text(key) : fallback;
  }

  Section object(const std::string& key) { return Section(raw(key), key_path(key)); }

  std::vector<double> quantity_list(const std::string& key, units::Dimension dim) {
    const json& v = raw(key);
    if (!v.is_array()) throw ConfigError(key_path(key), "must be an array");
    std::vector<double> out;
    for (const json& item : v) {
      if (!item.is_string()) {
        throw ConfigError(key_path(key), "entries must be unit-suffixed strings");
      }
      try {
        out.push_back(units::parse(item.get<std::string>(), dim));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(key_path(key), e.what());
      }
    }
    return out;
  }

  void finish() const {
    for (const auto& [key, value] : node_.items()) {
      (void)value;
      if (!consumed_.count(key)) {
        throw ConfigError(key_path(key), "unknown key");
      }
    }
  }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> consumed_;
};

PathSpec parse_path(Section sec, const std::filesystem::path& base_dir) {
  const std::string type = sec.text("type");
  if (type == "eight") {
    EightShape p;
    p.amp_x = sec.quantity("amp_x", units::Dimension::Length);
    p.amp_y = sec.quantity("amp_y", units::Dimension::Length);
    p.freq_x = sec.quantity("freq_x", units::Dimension::AngularRate);
    p.freq_y = sec.quantity("freq_y", units::Dimension::AngularRate);
    sec.finish();
    return p;
  }
  if (type == "line") {
    StraightLine p;
    p.origin.x() = sec.quantity_or("origin_x", units::Dimension::Length, 0.0);
    p.origin.y() = sec.quantity_or("origin_y", units::Dimension::Length, 0.0);
    p.heading = sec.quantity("heading", units::Dimension::Angle);
    p.length = sec.quantity_or("length", units::Dimension::Length, 0.0);
    p.speed = sec.quantity_or("speed", units::Dimension::Speed, 0.0);
    sec.finish();
    return p;
  }
  if (type == "waypoints") {
    const std::string file = sec.text("file");
    sec.finish();
    std::filesystem::path resolved(file);
    if (!resolved.is_absolute()) resolved = base_dir / resolved;
    return load_waypoints_csv(resolved.string());
  }
  throw ConfigError("path.type", "must be one of \"eight\", \"line\", \"waypoints\"");
}

ControllerSpec parse_controller(Section sec) {
  const std::string type = sec.text("type");
  if (type == "geometric") {
    GeometricController c;
    c.gains.k = sec.number("k");
    c.gains.omega_max =
        sec.quantity_or("omega_max", units::Dimension::AngularRate, c.gains.omega_max);
    sec.finish();
    return c;
  }
  if (type == "optimization") {
    OptimizationController c;
    c.gains.eta = sec.number("eta");
    c.gains.omega_max =
        sec.quantity_or("omega_max", units::Dimension::AngularRate, c.gains.omega_max);
    c.gains.theta_weight = sec.number_or("theta_weight", 0.0);
    c.gains.ascent_sign = sec.boolean_or("ascent_sign", false);
    sec.finish();
    return c;
  }
  if (type == "straight_line_gait") {
    StraightLineGaitController c;
    c.goal_distance = sec.quantity("goal_distance", units::Dimension::Length);
    c.omega_nominal = sec.quantity("omega_nominal", units::Dimension::AngularRate);
    sec.finish();
    return c;
  }
  throw ConfigError("controller.type",
                    "must be one of \"geometric\", \"optimization\", \"straight_line_gait\"");
}

SimConfig parse_sim(Section sec, const std::filesystem::path& base_dir) {
  SimConfig config;
  config.path = parse_path(sec.object("path"), base_dir);

  {
    Section s = sec.object("sampling");
    config.sampling.t0 = s.quantity_or("t0", units::Dimension::Duration, 0.0);
    config.sampling.dt = s.quantity("dt_path", units::Dimension::Duration);
    if (s.has("tf")) {
      config.sampling.tf = s.quantity("tf", units::Dimension::Duration);
    } else if (const auto* e = std::get_if<EightShape>(&config.path)) {
      config.sampling.tf = config.sampling.t0 + eight_shape_period(*e);
    } else {
      config.sampling.tf = 0.0;  // gait runs ignore the reference window
    }
    s.finish();
  }

  {
    Section s = sec.object("initial_state");
    config.initial_state.x = s.quantity("x", units::Dimension::Length);
    config.initial_state.y = s.quantity("y", units::Dimension::Length);
    config.initial_state.theta = s.quantity("theta", units::Dimension::Angle);
    s.finish();
  }

  {
    Section s = sec.object("geometry");
    config.geometry.length = s.quantity("length", units::Dimension::Length);
    s.finish();
  }

  config.controller = parse_controller(sec.object("controller"));

  if (sec.has("gait")) {
    Section s = sec.object("gait");
    config.gait.sweep_angle =
        s.quantity_or("sweep_angle", units::Dimension::Angle, config.gait.sweep_angle);
    config.gait.tilt_angle = s.quantity_or("tilt_angle", units::Dimension::Angle, 0.0);
    config.gait.desired_sweep = s.quantity_or("desired_sweep", units::Dimension::Angle, 0.0);
    s.finish();
  }

  if (sec.has("integrator")) {
    const std::string name = sec.text("integrator");
    if (name == "arc") config.integrator = Integrator::ExactArc;
    else if (name == "euler") config.integrator = Integrator::Euler;
    else throw ConfigError("integrator", "must be \"arc\" or \"euler\"");
  }

  const bool gait_run = std::holds_alternative<StraightLineGaitController>(config.controller);
  if (sec.has("t_f")) {
    config.t_f = sec.quantity("t_f", units::Dimension::Duration);
  } else if (!gait_run && config.sampling.tf > config.sampling.t0) {
    config.t_f = config.sampling.tf;
  } else if (gait_run) {
    config.t_f = 1e4;  // safety horizon; gait runs normally stop on goal completion
  }

  config.dt_control = sec.quantity_or("dt_control", units::Dimension::Duration,
                                      config.sampling.dt);
  config.dt_integration =
      sec.quantity_or("dt_integration", units::Dimension::Duration, config.dt_control);
  config.seed = sec.unsigned_or("seed", 0);

  if (sec.has("noise")) {
    Section s = sec.object("noise");
    config.noise.omega_jitter_std =
        s.quantity_or("omega_jitter_std", units::Dimension::AngularRate, 0.0);
    config.noise.pivot_slip_std = s.quantity_or("pivot_slip_std", units::Dimension::Length, 0.0);
    s.finish();
  }

  sec.finish();
  validate(config);
  return config;
}

SweepSpec parse_sweep(Section sec, const std::filesystem::path& base_dir) {
  SweepSpec spec;
  spec.base = parse_sim(sec.object("base"), base_dir);
  spec.sweep_angles = sec.quantity_list("sweep_angles", units::Dimension::Angle);
  if (sec.has("tilt_angles")) {
    spec.tilt_angles = sec.quantity_list("tilt_angles", units::Dimension::Angle);
  } else {
    spec.tilt_angles = {spec.base.gait.tilt_angle};
  }
  if (sec.has("dt_paths")) {
    spec.dt_paths = sec.quantity_list("dt_paths", units::Dimension::Duration);
  } else {
    spec.dt_paths = {spec.base.sampling.dt};
  }
  if (sec.has("controllers")) {
    const json& list = sec.raw("controllers");
    if (!list.is_array() || list.empty()) {
      throw ConfigError("sweep.controllers", "must be a non-empty array");
    }
    for (std::size_t i = 0; i < list.size(); ++i) {
      ControllerSpec c = parse_controller(
          Section(list[i], "sweep.controllers[" + std::to_string(i) + "]"));
      spec.controller_names.push_back(controller_name(c));
      spec.controllers.push_back(std::move(c));
    }
  } else {
    spec.controllers = {spec.base.controller};
    spec.controller_names = {controller_name(spec.base.controller)};
  }
  {
    const double reps = sec.number_or("repetitions", 1.0);
    if (reps < 1.0 || reps != std::floor(reps)) {
      throw ConfigError("sweep.repetitions", "must be a positive integer");
    }
    spec.repetitions = static_cast<int>(reps);
  }
  sec.finish();

  std::sort(spec.sweep_angles.begin(), spec.sweep_angles.end());
  std::sort(spec.tilt_angles.begin(), spec.tilt_angles.end());
  std::sort(spec.dt_paths.begin(), spec.dt_paths.end());
  if (spec.sweep_angles.empty()) {
    throw ConfigError("sweep.sweep_angles", "grid must not be empty");
  }
  return spec;
}

}  // namespace

LoadedConfig parse_config_text(const std::string& text) {
  return parse_config_text_at(text, ".");
}

LoadedConfig parse_config_text_at(const std::string& text, const std::string& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("document", std::string("not valid JSON: ") + e.what());
  }
  Section root(doc, "");
  if (root.has("sweep")) {
    SweepSpec spec = parse_sweep(root.object("sweep"), base_dir);
    root.finish();
    return spec;
  }
  SimConfig config = parse_sim(std::move(root), base_dir);
  return config;
}

LoadedConfig load_config_file(const std::string& path) {
  const std::string text = io::read_text_file(path);
  const std::filesystem::path dir = std::filesystem::path(path).parent_path();
  return parse_config_text_at(text, dir.empty() ? "." : dir.string());
}

SimConfig load_sim_config_file(const std::string& path) {
  LoadedConfig loaded = load_config_file(path);
  if (auto* sim = std::get_if<SimConfig>(&loaded)) return std::move(*sim);
  throw ConfigError("document", "expected a simulation config, found a sweep config");
}

SweepSpec load_sweep_spec_file(const std::string& path) {
  LoadedConfig loaded = load_config_file(path);
  if (auto* sweep = std::get_if<SweepSpec>(&loaded)) return std::move(*sweep);
  throw ConfigError("document", "expected a sweep config (top-level \"sweep\" object)");
}

void apply_overrides(SimConfig& config, const Overrides& o) {
  if (o.seed) config.seed = *o.seed;
  if (o.integrator) config.integrator = *o.integrator;
  if (o.ascent_sign) {
    if (auto* opt = std::get_if<OptimizationController>(&config.controller)) {
      opt->gains.ascent_sign = true;
    }
  }
}

void apply_overrides(SweepSpec& spec, const Overrides& o) {
  apply_overrides(spec.base, o);
  for (ControllerSpec& c : spec.controllers) {
    if (o.ascent_sign) {
      if (auto* opt = std::get_if<OptimizationController>(&c)) {
        opt->gains.ascent_sign = true;
      }
    }
  }
}

std::string controller_name(const ControllerSpec& spec) {
  if (std::holds_alternative<GeometricController>(spec)) return "geometric";
  if (std::holds_alternative<OptimizationController>(spec)) return "optimization";
  return "straight_line_gait";
}

}  // namespace pivotwalk::config
