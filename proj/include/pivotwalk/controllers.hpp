#pragma once

#include <Eigen/Dense>

#include "pivotwalk/kinematics.hpp"
#include "pivotwalk/trajectory.hpp"

namespace pivotwalk {

/// Gait parameters shared by the controllers. sweep_angle gates pivot
/// re-selection for the tracking controllers; desired_sweep is the per-step
/// target of the open-loop straight-line gait. tilt_angle is carried as
/// metadata (it never enters the planar kinematics) and feeds field_command.
struct GaitParams {
  double sweep_angle{0.17453292519943295};  // 10 deg
  double tilt_angle{0.0};
  double desired_sweep{0.0};
};

struct GeometricGains {
  double k{40.0};                       // maps tracking error (m) to rad/s
  double omega_max{6.283185307179586};  // output saturation
};

struct OptimGains {
  double eta{0.0};
  double omega_max{6.283185307179586};
  double theta_weight{0.0};
  bool ascent_sign{false};  // use the additive update omega0 + eta*grad
};

/// Per-episode controller bookkeeping. omega0/sigma0 are the pre-saturation
/// and pre-sign images of the outputs; the straight-line gait reuses omega0
/// as its signed nominal rate.
struct ControllerState {
  int sigma_current{1};
  double theta_at_last_switch{0.0};
  double omega0{0.0};
  double sigma0{1.0};
  int switch_count{0};
};

struct ControlDecision {
  ControlInput input;
  ControllerState state;
};

struct GaitDecision {
  ControlInput input;
  ControllerState state;
  bool done{false};
};

/// Nearest-pivot rule: sigma = sign(d_Bd - d_Ad). An exact tie keeps
/// sigma_current to avoid chatter.
int pivot_selection(const PivotPair& pivots, const DesiredState& desired, int sigma_current);

/// Euclidean distance between the robot center and the reference point.
double tracking_error(const RobotState& state, const DesiredState& desired);

/// Proportional controller: once the accumulated sweep since the last gate
/// reaches sweep_angle, the active pivot is re-selected; the angular velocity
/// is always k * sigma * e_n (clamped to omega_max).
ControlDecision geometric_control_step(const RobotState& state, const ControllerState& cstate,
                                       const DesiredState& desired, const GeometricGains& gains,
                                       const GaitParams& gait, const RobotGeometry& geom);

/// Quadratic tracking cost 0.5*((x-xd)^2 + (y-yd)^2 + w*(theta-thetad)^2).
/// theta_weight > 0 requires a defined reference heading.
double cost(const RobotState& state, const DesiredState& desired, double theta_weight);

/// Sensitivity of the tracking cost at `state` with respect to the angular
/// velocity of the discrete step that produced it (backpropagation through
/// the one-step kinematic update, heading updated first):
///   dJ/domega = (x-xd)(dx/domega + dx/dtheta * dtheta/domega) + ... + w(theta-thetad) dt
/// with dx/domega = dt*(L/2)*sigma*cos(theta), dx/dtheta = -dt*(L/2)*sigma*omega*sin(theta),
/// dtheta/domega = dt (and the symmetric y terms).
double grad_omega(const RobotState& state, const DesiredState& desired, const ControlInput& input,
                  double dt, const RobotGeometry& geom, double theta_weight);

/// Sensitivity of the tracking cost with respect to the pivot selector,
/// treated as continuous: (x-xd)*dt*(L/2)*omega*cos(theta) + (y-yd)*dt*(L/2)*omega*sin(theta).
double grad_sigma(const RobotState& state, const DesiredState& desired, const ControlInput& input,
                  double dt, const RobotGeometry& geom);

/// Gradient-descent controller: omega0/sigma0 accumulate -eta * grad each
/// tick; the emitted omega is the saturated omega0 and the emitted sigma is
/// sign(sigma0), refreshed only when the sweep gate completes.
ControlDecision optim_control_step(const RobotState& state, const ControllerState& cstate,
                                   const DesiredState& desired, const OptimGains& gains,
                                   const GaitParams& gait, double dt, const RobotGeometry& geom);

/// Open-loop alternating gait: the first step sweeps desired_sweep/2, later
/// steps desired_sweep; at each completed sweep both sigma and the sign of
/// omega flip. done rises once the center has advanced goal_distance along
/// the body axis of `start`.
GaitDecision straight_line_gait_step(const RobotState& state, const ControllerState& cstate,
                                     const GaitParams& gait, const RobotState& start,
                                     double goal_distance, double omega_nominal);

/// Sweep target of the upcoming gait step (half sweep before the first
/// switch, full sweep afterwards).
double gait_target_sweep(const ControllerState& cstate, const GaitParams& gait);

/// Unit field direction realizing (sigma, alpha): in-plane component along
/// the body axis, out-of-plane component sin(alpha) pressing the active pivot
/// down (sigma = +1 presses A, sigma = -1 presses B).
Eigen::Vector3d field_command(const RobotState& state, int sigma, double alpha);

/// Controller bookkeeping at episode start: sigma from the nearest-pivot rule
/// (ties default to +1), gate anchored at the initial heading.
ControllerState make_tracking_controller_state(const RobotState& state,
                                               const DesiredState& desired,
                                               const RobotGeometry& geom);

/// Gait bookkeeping at episode start: pivot A active, omega at +omega_nominal.
ControllerState make_gait_controller_state(const RobotState& state, double omega_nominal);

/// Gate predicate |theta - theta0| >= target (with a 1e-12 slack so arc steps
/// that land exactly on the gate register as complete).
bool gate_complete(double theta, double theta0, double target);

}  // namespace pivotwalk
