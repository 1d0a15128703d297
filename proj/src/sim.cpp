#include "pivotwalk/sim.hpp"

#include <chrono>
#include <cmath>
#include <random>

namespace pivotwalk {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kGridEps = 1e-9;

void check(bool ok, const char* field, const std::string& message) {
  if (!ok) throw ConfigError(field, message);
}

void validate_path(const PathSpec& path, bool needs_time_parameterization) {
  if (const auto* e = std::get_if<EightShape>(&path)) {
    check(e->amp_x > 0.0 && std::isfinite(e->amp_x), "path.amp_x", "must be > 0");
    check(e->amp_y > 0.0 && std::isfinite(e->amp_y), "path.amp_y", "must be > 0");
    check(e->freq_x > 0.0 && std::isfinite(e->freq_x), "path.freq_x", "must be > 0");
    check(e->freq_y > 0.0 && std::isfinite(e->freq_y), "path.freq_y", "must be > 0");
  } else if (const auto* l = std::get_if<StraightLine>(&path)) {
    check(std::isfinite(l->heading), "path.heading", "must be finite");
    check(l->length >= 0.0, "path.length", "must be >= 0");
    if (needs_time_parameterization) {
      check(l->speed > 0.0, "path.speed", "must be > 0 for tracking references");
    }
  } else if (const auto* w = std::get_if<Waypoints>(&path)) {
    check(!w->points.empty(), "path.waypoints", "must not be empty");
    for (std::size_t i = 1; i < w->points.size(); ++i) {
      check(w->points[i].t > w->points[i - 1].t, "path.waypoints",
            "times must be strictly increasing");
    }
  }
}

int substeps_per_control_tick(const SimConfig& c) {
  const int m = static_cast<int>(std::round(c.dt_control / c.dt_integration));
  check(m >= 1 && std::abs(m * c.dt_integration - c.dt_control) <= 1e-9 * c.dt_control,
        "dt_integration", "must divide dt_control evenly");
  return m;
}

RobotState integrate(const RobotState& state, const ControlInput& input,
                     const RobotGeometry& geom, double dt, Integrator integrator) {
  return integrator == Integrator::ExactArc ? step_exact_arc(state, input, geom, dt)
                                            : step_euler(state, input, geom, dt);
}

LogRecord make_record(double t, const RobotState& state, const ControlInput& input,
                      const DesiredState& desired, const RobotGeometry& geom, bool switch_event,
                      bool control_tick) {
  LogRecord rec;
  rec.t = t;
  rec.state = state;
  rec.input = input;
  rec.desired = desired;
  rec.e_n = tracking_error(state, desired);
  rec.pivot = active_pivot(state, input.sigma, geom);
  rec.switch_event = switch_event;
  rec.control_tick = control_tick;
  return rec;
}

class NoiseStream {
 public:
  explicit NoiseStream(std::uint64_t seed) : rng_(seed) {}

  double gauss(double std) {
    if (std <= 0.0) return 0.0;
    return std::normal_distribution<double>(0.0, std)(rng_);
  }

 private:
  std::mt19937_64 rng_;
};

RunLog run_tracking(const SimConfig& config) {
  const double t0 = config.sampling.t0;
  const auto n_ctrl =
      static_cast<std::size_t>(std::floor((config.t_f - t0) / config.dt_control + kGridEps));
  const int m_sub = substeps_per_control_tick(config);

  PathSampling sampling = config.sampling;
  const std::vector<DesiredState> refs = sample_path(config.path, sampling);

  const bool optimization = std::holds_alternative<OptimizationController>(config.controller);
  if (optimization) {
    const auto& gains = std::get<OptimizationController>(config.controller).gains;
    if (gains.theta_weight > 0.0) {
      for (const DesiredState& d : refs) {
        if (!d.theta) {
          throw SimulationError(
              "theta_weight > 0 but the reference heading is undefined along the path");
        }
      }
    }
  }

  const auto ref_at = [&](double t) -> const DesiredState& {
    auto idx = static_cast<std::size_t>(std::floor((t - t0) / sampling.dt + kGridEps));
    if (idx >= refs.size()) idx = refs.size() - 1;
    return refs[idx];
  };

  NoiseStream noise(config.seed);
  RobotState state = config.initial_state;
  ControllerState cstate = make_tracking_controller_state(state, ref_at(t0), config.geometry);
  ControlInput last_input{cstate.sigma_current, 0.0};

  RunLog log;
  log.records.reserve((n_ctrl + 1) * static_cast<std::size_t>(m_sub));

  for (std::size_t k = 0; k < n_ctrl; ++k) {
    const double t_k = t0 + static_cast<double>(k) * config.dt_control;
    const DesiredState& desired = ref_at(t_k);

    ControlDecision decision =
        std::visit([&](const auto& ctrl) -> ControlDecision {
          using T = std::decay_t<decltype(ctrl)>;
          if constexpr (std::is_same_v<T, GeometricController>) {
            return geometric_control_step(state, cstate, desired, ctrl.gains, config.gait,
                                          config.geometry);
          } else if constexpr (std::is_same_v<T, OptimizationController>) {
            return optim_control_step(state, cstate, desired, ctrl.gains, config.gait,
                                      config.dt_control, config.geometry);
          } else {
            throw SimulationError("straight-line gait runs use the gait loop");
          }
        }, config.controller);

    const bool switched = decision.state.switch_count > cstate.switch_count;
    cstate = decision.state;
    ControlInput input = decision.input;
    input.omega += noise.gauss(config.noise.omega_jitter_std);
    if (switched) {
      state.x += noise.gauss(config.noise.pivot_slip_std);
      state.y += noise.gauss(config.noise.pivot_slip_std);
    }
    last_input = input;

    for (int j = 0; j < m_sub; ++j) {
      const double t_j = t_k + static_cast<double>(j) * config.dt_integration;
      log.records.push_back(make_record(t_j, state, input, desired, config.geometry,
                                        switched && j == 0, j == 0));
      state = integrate(state, input, config.geometry, config.dt_integration, config.integrator);
    }
  }

  const double t_end = t0 + static_cast<double>(n_ctrl) * config.dt_control;
  log.records.push_back(
      make_record(t_end, state, last_input, ref_at(t_end), config.geometry, false, true));
  return log;
}

RunLog run_gait(const SimConfig& config) {
  const auto& gait_ctrl = std::get<StraightLineGaitController>(config.controller);
  const RobotState start = config.initial_state;
  const double axis_c = std::cos(start.theta);
  const double axis_s = std::sin(start.theta);

  NoiseStream noise(config.seed);
  RobotState state = start;
  ControllerState cstate = make_gait_controller_state(state, gait_ctrl.omega_nominal);

  RunLog log;
  double t = 0.0;
  while (t < config.t_f) {
    const GaitDecision decision = straight_line_gait_step(
        state, cstate, config.gait, start, gait_ctrl.goal_distance, gait_ctrl.omega_nominal);

    // perpendicular foot of the center on the goal line
    const double progress = (state.x - start.x) * axis_c + (state.y - start.y) * axis_s;
    DesiredState desired;
    desired.x = start.x + progress * axis_c;
    desired.y = start.y + progress * axis_s;
    desired.theta = start.theta;

    if (decision.done) {
      log.records.push_back(
          make_record(t, state, decision.input, desired, config.geometry, false, true));
      return log;
    }

    const bool switched = decision.state.switch_count > cstate.switch_count;
    cstate = decision.state;
    ControlInput input = decision.input;
    input.omega += noise.gauss(config.noise.omega_jitter_std);
    if (switched) {
      state.x += noise.gauss(config.noise.pivot_slip_std);
      state.y += noise.gauss(config.noise.pivot_slip_std);
    }

    // clip the step so the sweep gate is hit exactly
    double h = config.dt_integration;
    const double remaining = gait_target_sweep(cstate, config.gait) -
                             std::abs(state.theta - cstate.theta_at_last_switch);
    if (input.omega != 0.0) {
      h = std::min(h, std::max(remaining, 0.0) / std::abs(input.omega));
    }
    h = std::min(h, config.t_f - t);
    if (!(h > 0.0)) break;

    log.records.push_back(
        make_record(t, state, input, desired, config.geometry, switched, true));
    state = integrate(state, input, config.geometry, h, config.integrator);
    t += h;
  }

  const double progress = (state.x - start.x) * axis_c + (state.y - start.y) * axis_s;
  DesiredState desired;
  desired.x = start.x + progress * axis_c;
  desired.y = start.y + progress * axis_s;
  desired.theta = start.theta;
  log.records.push_back(make_record(t, state, {cstate.sigma_current, 0.0}, desired,
                                    config.geometry, false, true));
  return log;
}

}  // namespace

void validate(const SimConfig& config) {
  check(std::isfinite(config.geometry.length) && config.geometry.length > 0.0, "geometry.length",
        "must be > 0 (a point robot has no pivot geometry)");
  check(std::isfinite(config.initial_state.x) && std::isfinite(config.initial_state.y) &&
            std::isfinite(config.initial_state.theta),
        "initial_state", "must be finite");
  check(config.dt_integration > 0.0, "dt_integration", "must be > 0");
  check(config.dt_control > 0.0, "dt_control", "must be > 0");
  check(config.sampling.dt > 0.0, "sampling.dt_path", "must be > 0");
  check(config.dt_integration <= config.dt_control + 1e-15, "dt_integration",
        "must not exceed dt_control");
  check(config.dt_control <= config.sampling.dt + 1e-15, "dt_control",
        "must not exceed dt_path");
  substeps_per_control_tick(config);
  check(config.t_f > 0.0, "t_f", "must be > 0");

  const bool gait_run = std::holds_alternative<StraightLineGaitController>(config.controller);
  validate_path(config.path, !gait_run);

  if (gait_run) {
    const auto& g = std::get<StraightLineGaitController>(config.controller);
    check(g.goal_distance > 0.0, "controller.goal_distance", "must be > 0");
    check(g.omega_nominal > 0.0, "controller.omega_nominal", "must be > 0");
    check(config.gait.desired_sweep > 0.0 && config.gait.desired_sweep < kTwoPi,
          "gait.desired_sweep", "must lie strictly inside (0 deg, 360 deg)");
  } else {
    check(config.gait.sweep_angle > 0.0 && config.gait.sweep_angle < kTwoPi, "gait.sweep_angle",
          "must lie strictly inside (0 deg, 360 deg)");
    check(config.sampling.t0 < config.t_f, "t_f", "must exceed sampling.t0");
    check(config.t_f <= config.sampling.tf + 1e-9, "sampling.tf",
          "reference window must cover t_f");
    if (const auto* g = std::get_if<GeometricController>(&config.controller)) {
      check(g->gains.k > 0.0 && std::isfinite(g->gains.k), "controller.k", "must be > 0");
      check(g->gains.omega_max > 0.0, "controller.omega_max", "must be > 0");
    } else {
      const auto& o = std::get<OptimizationController>(config.controller);
      check(o.gains.eta > 0.0 && std::isfinite(o.gains.eta), "controller.eta", "must be > 0");
      check(o.gains.omega_max > 0.0, "controller.omega_max", "must be > 0");
      check(o.gains.theta_weight >= 0.0, "controller.theta_weight", "must be >= 0");
    }
  }
  check(config.gait.tilt_angle >= 0.0 && config.gait.tilt_angle < 0.25 * kTwoPi,
        "gait.tilt_angle", "must lie in [0 deg, 90 deg)");
  check(config.noise.omega_jitter_std >= 0.0, "noise.omega_jitter_std", "must be >= 0");
  check(config.noise.pivot_slip_std >= 0.0, "noise.pivot_slip_std", "must be >= 0");
}

RunMetrics compute_metrics(const RunLog& log, const RobotGeometry& geom) {
  if (log.records.empty()) {
    throw std::invalid_argument("cannot compute metrics of an empty run log");
  }
  RunMetrics m;
  double err_sum = 0.0;
  std::size_t err_count = 0;
  for (std::size_t i = 0; i < log.records.size(); ++i) {
    const LogRecord& rec = log.records[i];
    if (rec.switch_event) ++m.n_steps;
    if (rec.control_tick) {
      err_sum += rec.e_n;
      ++err_count;
    }
    if (i > 0) {
      m.travel_distance += std::hypot(rec.state.x - log.records[i - 1].state.x,
                                      rec.state.y - log.records[i - 1].state.y);
    }
  }
  m.normalized_error = err_sum / geom.length;
  m.mean_error = err_count > 0 ? err_sum / static_cast<double>(err_count) : 0.0;
  m.final_error = log.records.back().e_n;
  return m;
}

RunResult run_simulation(const SimConfig& config) {
  validate(config);
  const auto clock_start = std::chrono::steady_clock::now();
  RunResult result;
  result.log = std::holds_alternative<StraightLineGaitController>(config.controller)
                   ? run_gait(config)
                   : run_tracking(config);
  result.metrics = compute_metrics(result.log, config.geometry);
  result.metrics.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();
  return result;
}

}  // namespace pivotwalk
