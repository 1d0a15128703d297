#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "pivotwalk/controllers.hpp"
#include "pivotwalk/kinematics.hpp"
#include "pivotwalk/trajectory.hpp"

namespace pivotwalk {

enum class Integrator { ExactArc, Euler };

/// Synthetic disturbances for repeatability studies; both default off. Not a
/// physical slip model: omega jitter perturbs the commanded rate per control
/// tick, pivot slip displaces the center at each pivot switch.
struct NoiseSpec {
  double omega_jitter_std{0.0};  // rad/s
  double pivot_slip_std{0.0};    // m per switch, per axis
};

struct GeometricController {
  GeometricGains gains;
};

struct OptimizationController {
  OptimGains gains;
};

struct StraightLineGaitController {
  double goal_distance{0.06};
  double omega_nominal{1.0};
};

using ControllerSpec =
    std::variant<GeometricController, OptimizationController, StraightLineGaitController>;

/// Raised when a configuration value violates its contract; `field` names the
/// offending key.
struct ConfigError : std::runtime_error {
  std::string field;
  ConfigError(std::string field_, const std::string& message)
      : std::runtime_error(field_ + ": " + message), field(std::move(field_)) {}
};

/// Raised when a run aborts mid-flight (e.g. the cost needs a reference
/// heading the path does not define).
struct SimulationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SimConfig {
  PathSpec path{EightShape{}};
  PathSampling sampling{};
  RobotState initial_state{};
  RobotGeometry geometry{};
  ControllerSpec controller{GeometricController{}};
  GaitParams gait{};
  Integrator integrator{Integrator::ExactArc};
  double dt_control{0.1};
  double dt_integration{0.1};
  double t_f{0.0};
  NoiseSpec noise{};
  std::uint64_t seed{0};
};

/// One simulation tick. control_tick marks records on the control grid (the
/// error metrics are accumulated over those; sub-stepped integration adds
/// refinement rows in between).
struct LogRecord {
  double t{0.0};
  RobotState state{};
  ControlInput input{};
  DesiredState desired{};
  double e_n{0.0};
  Eigen::Vector2d pivot{0.0, 0.0};
  bool switch_event{false};
  bool control_tick{true};
};

struct RunLog {
  std::vector<LogRecord> records;
};

struct RunMetrics {
  int n_steps{0};               // pivot switches (sigma sign changes)
  double travel_distance{0.0};  // polyline arc length of the center
  double normalized_error{0.0};  // sum of e_n over control samples divided by L
  double mean_error{0.0};
  double final_error{0.0};
  double wall_time{0.0};
};

struct RunResult {
  RunLog log;
  RunMetrics metrics;
};

/// Validates the cross-field contracts (dt ordering, positive horizon, gait
/// angle ranges, ...). Throws ConfigError naming the offending field.
void validate(const SimConfig& config);

/// Closed-loop run: the controller is queried on the control grid against a
/// zero-order-hold reference sampled at sampling.dt, the state integrates at
/// dt_integration, every tick is logged, and metrics are derived from the
/// log. Deterministic for a fixed config (including seed).
RunResult run_simulation(const SimConfig& config);

RunMetrics compute_metrics(const RunLog& log, const RobotGeometry& geom);

}  // namespace pivotwalk
