#pragma once

#include <string>
#include <variant>

#include "pivotwalk/sim.hpp"
#include "pivotwalk/sweep.hpp"

namespace pivotwalk::config {

/// A run configuration document holds either a single simulation or a sweep.
using LoadedConfig = std::variant<SimConfig, SweepSpec>;

/// Parses a JSON run configuration. Every dimensioned value must carry a unit
/// suffix ("10 mm", "30 deg", "0.1 s"); unknown keys are rejected. Throws
/// ConfigError naming the offending key.
LoadedConfig parse_config_text(const std::string& text);

/// Same, resolving relative waypoint file references against `base_dir`.
LoadedConfig parse_config_text_at(const std::string& text, const std::string& base_dir);

LoadedConfig load_config_file(const std::string& path);

SimConfig load_sim_config_file(const std::string& path);
SweepSpec load_sweep_spec_file(const std::string& path);

/// Optional command-line overrides applied on top of a loaded config.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<Integrator> integrator;
  bool ascent_sign{false};
};

void apply_overrides(SimConfig& config, const Overrides& o);
void apply_overrides(SweepSpec& spec, const Overrides& o);

std::string controller_name(const ControllerSpec& spec);

}  // namespace pivotwalk::config
