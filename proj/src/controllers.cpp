#include "pivotwalk/controllers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pivotwalk {

namespace {

constexpr double kGateSlack = 1e-12;

double clamp_omega(double omega, double omega_max) {
  return std::clamp(omega, -omega_max, omega_max);
}

int sign_keep(double v, int current) {
  if (v > 0.0) return 1;
  if (v < 0.0) return -1;
  return current;
}

void require_gait(const GaitParams& gait, double angle, const char* name) {
  if (!(angle > 0.0) || !(angle < 2.0 * 3.141592653589793238462643383279502884)) {
    throw std::invalid_argument(std::string(name) +
                                " must lie strictly inside (0, 2*pi) radians");
  }
  (void)gait;
}

}  // namespace

bool gate_complete(double theta, double theta0, double target) {
  return std::abs(theta - theta0) >= target - kGateSlack;
}

int pivot_selection(const PivotPair& pivots, const DesiredState& desired, int sigma_current) {
  detail::require_sigma(sigma_current);
  const Eigen::Vector2d target(desired.x, desired.y);
  const double d_ad = (pivots.a - target).norm();
  const double d_bd = (pivots.b - target).norm();
  return sign_keep(d_bd - d_ad, sigma_current);
}

double tracking_error(const RobotState& state, const DesiredState& desired) {
  return std::hypot(state.x - desired.x, state.y - desired.y);
}

ControlDecision geometric_control_step(const RobotState& state, const ControllerState& cstate,
                                       const DesiredState& desired, const GeometricGains& gains,
                                       const GaitParams& gait, const RobotGeometry& geom) {
  if (!(gains.k > 0.0)) {
    throw std::invalid_argument("geometric gain k must be > 0");
  }
  require_gait(gait, gait.sweep_angle, "sweep_angle");
  ControllerState next = cstate;
  if (gate_complete(state.theta, cstate.theta_at_last_switch, gait.sweep_angle)) {
    const int selected =
        pivot_selection(pivot_positions(state, geom), desired, cstate.sigma_current);
    next.theta_at_last_switch = state.theta;
    if (selected != cstate.sigma_current) {
      next.sigma_current = selected;
      ++next.switch_count;
    }
  }
  const double e_n = tracking_error(state, desired);
  const double omega = clamp_omega(gains.k * next.sigma_current * e_n, gains.omega_max);
  return {{next.sigma_current, omega}, next};
}

double cost(const RobotState& state, const DesiredState& desired, double theta_weight) {
  if (theta_weight < 0.0) {
    throw std::invalid_argument("theta_weight must be >= 0");
  }
  const double ex = state.x - desired.x;
  const double ey = state.y - desired.y;
  double j = ex * ex + ey * ey;
  if (theta_weight > 0.0) {
    if (!desired.theta) {
      throw std::invalid_argument("cost with theta_weight > 0 needs a reference heading");
    }
    const double et = state.theta - *desired.theta;
    j += theta_weight * et * et;
  }
  return 0.5 * j;
}

double grad_omega(const RobotState& state, const DesiredState& desired, const ControlInput& input,
                  double dt, const RobotGeometry& geom, double theta_weight) {
  detail::require_sigma(input.sigma);
  const double half = 0.5 * geom.length;
  const double c = std::cos(state.theta);
  const double s = std::sin(state.theta);
  const double dx_domega = dt * half * input.sigma * c;
  const double dy_domega = dt * half * input.sigma * s;
  const double dx_dtheta = -dt * half * input.sigma * input.omega * s;
  const double dy_dtheta = dt * half * input.sigma * input.omega * c;
  const double dtheta_domega = dt;
  double g = (state.x - desired.x) * (dx_domega + dx_dtheta * dtheta_domega) +
             (state.y - desired.y) * (dy_domega + dy_dtheta * dtheta_domega);
  if (theta_weight > 0.0) {
    if (!desired.theta) {
      throw std::invalid_argument("grad_omega with theta_weight > 0 needs a reference heading");
    }
    g += theta_weight * (state.theta - *desired.theta) * dtheta_domega;
  }
  return g;
}

double grad_sigma(const RobotState& state, const DesiredState& desired, const ControlInput& input,
                  double dt, const RobotGeometry& geom) {
  const double half = 0.5 * geom.length;
  return (state.x - desired.x) * dt * half * input.omega * std::cos(state.theta) +
         (state.y - desired.y) * dt * half * input.omega * std::sin(state.theta);
}

ControlDecision optim_control_step(const RobotState& state, const ControllerState& cstate,
                                   const DesiredState& desired, const OptimGains& gains,
                                   const GaitParams& gait, double dt, const RobotGeometry& geom) {
  if (!(gains.eta > 0.0)) {
    throw std::invalid_argument("learning rate eta must be > 0");
  }
  if (!(gains.omega_max > 0.0)) {
    throw std::invalid_argument("omega_max must be > 0");
  }
  require_gait(gait, gait.sweep_angle, "sweep_angle");

  ControllerState next = cstate;
  // gradients at the current state, with respect to the inputs that produced it
  const ControlInput previous{cstate.sigma_current, clamp_omega(cstate.omega0, gains.omega_max)};
  const double gw = grad_omega(state, desired, previous, dt, geom, gains.theta_weight);
  const double gs = grad_sigma(state, desired, previous, dt, geom);
  const double direction = gains.ascent_sign ? 1.0 : -1.0;
  next.omega0 += direction * gains.eta * gw;
  // projected update: sigma0 only matters through its sign, so it lives in
  // [-1, 1]; without the projection stale accumulation outvotes fresh
  // evidence and the selector stops alternating
  next.sigma0 = std::clamp(next.sigma0 + direction * gains.eta * gs, -1.0, 1.0);

  if (gate_complete(state.theta, cstate.theta_at_last_switch, gait.sweep_angle)) {
    const int selected = sign_keep(next.sigma0, cstate.sigma_current);
    next.theta_at_last_switch = state.theta;
    if (selected != cstate.sigma_current) {
      next.sigma_current = selected;
      ++next.switch_count;
    }
  }
  return {{next.sigma_current, clamp_omega(next.omega0, gains.omega_max)}, next};
}

double gait_target_sweep(const ControllerState& cstate, const GaitParams& gait) {
  return cstate.switch_count == 0 ? 0.5 * gait.desired_sweep : gait.desired_sweep;
}

GaitDecision straight_line_gait_step(const RobotState& state, const ControllerState& cstate,
                                     const GaitParams& gait, const RobotState& start,
                                     double goal_distance, double omega_nominal) {
  if (!(goal_distance > 0.0)) {
    throw std::invalid_argument("goal_distance must be > 0");
  }
  require_gait(gait, gait.desired_sweep, "desired_sweep");
  (void)omega_nominal;  // carried in cstate.omega0 so the sign survives switches

  const double progress = (state.x - start.x) * std::cos(start.theta) +
                          (state.y - start.y) * std::sin(start.theta);
  ControllerState next = cstate;
  if (progress >= goal_distance) {
    return {{next.sigma_current, 0.0}, next, true};
  }
  if (gate_complete(state.theta, cstate.theta_at_last_switch, gait_target_sweep(cstate, gait))) {
    next.sigma_current = -cstate.sigma_current;
    next.omega0 = -cstate.omega0;
    next.theta_at_last_switch = state.theta;
    ++next.switch_count;
  }
  return {{next.sigma_current, next.omega0}, next, false};
}

Eigen::Vector3d field_command(const RobotState& state, int sigma, double alpha) {
  detail::require_sigma(sigma);
  if (!(alpha >= 0.0) || alpha >= 0.5 * 3.141592653589793238462643383279502884) {
    throw std::invalid_argument("tilt angle must lie in [0, pi/2)");
  }
  // body axis points from pivot B to pivot A; tilting the field below the
  // plane on the active side presses that pivot down
  const double ca = std::cos(alpha);
  return {-ca * std::sin(state.theta), ca * std::cos(state.theta),
          -static_cast<double>(sigma) * std::sin(alpha)};
}

ControllerState make_tracking_controller_state(const RobotState& state,
                                               const DesiredState& desired,
                                               const RobotGeometry& geom) {
  ControllerState cs;
  cs.sigma_current = pivot_selection(pivot_positions(state, geom), desired, 1);
  cs.theta_at_last_switch = state.theta;
  cs.omega0 = 0.0;
  cs.sigma0 = static_cast<double>(cs.sigma_current);
  cs.switch_count = 0;
  return cs;
}

ControllerState make_gait_controller_state(const RobotState& state, double omega_nominal) {
  if (!(omega_nominal > 0.0)) {
    throw std::invalid_argument("omega_nominal must be > 0");
  }
  ControllerState cs;
  cs.sigma_current = 1;
  cs.theta_at_last_switch = state.theta;
  cs.omega0 = omega_nominal;
  cs.sigma0 = 1.0;
  cs.switch_count = 0;
  return cs;
}

}  // namespace pivotwalk
