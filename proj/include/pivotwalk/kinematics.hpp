#pragma once

#include <Eigen/Dense>

namespace pivotwalk {

/// Planar pose of the robot center in the inertial frame. theta is the
/// accumulated (unwrapped) body angle; sweep gating relies on |theta - theta0|
/// staying well-defined across full turns, so it is never reduced mod 2*pi.
struct RobotState {
  double x{0.0};
  double y{0.0};
  double theta{0.0};
};

struct RobotGeometry {
  double length{0.01};  // distance between the two pivot points, > 0
};

/// The two control inputs: sigma picks the active pivot (+1 = A, -1 = B),
/// omega is the body angular velocity about it.
struct ControlInput {
  int sigma{1};
  double omega{0.0};
};

struct PivotPair {
  Eigen::Vector2d a;
  Eigen::Vector2d b;
};

struct StateDerivative {
  double dx{0.0};
  double dy{0.0};
  double dtheta{0.0};
};

/// Inertial-to-body rotation transform for the planar pose vector.
/// Orthonormal with determinant +1.
Eigen::Matrix3d rotation_matrix(double theta);

/// Sigma-switched velocity model:
///   dx = (L/2) sigma omega cos(theta)
///   dy = (L/2) sigma omega sin(theta)
///   dtheta = omega
StateDerivative state_derivative(const RobotState& state, const ControlInput& input,
                                 const RobotGeometry& geom);

/// Pivot A sits at (x - (L/2) sin theta, y + (L/2) cos theta), pivot B mirrored.
PivotPair pivot_positions(const RobotState& state, const RobotGeometry& geom);

/// Position of the pivot selected by sigma.
Eigen::Vector2d active_pivot(const RobotState& state, int sigma, const RobotGeometry& geom);

/// Closed-form update over a constant-input interval: the center rotates about
/// the active pivot by omega*dt. The active pivot is exactly stationary and the
/// inter-pivot distance is preserved to machine precision.
RobotState step_exact_arc(const RobotState& state, const ControlInput& input,
                          const RobotGeometry& geom, double dt);

/// One explicit-Euler step of the velocity model.
RobotState step_euler(const RobotState& state, const ControlInput& input,
                      const RobotGeometry& geom, double dt);

namespace detail {
void require_finite(double v, const char* what);
void require_sigma(int sigma);
}  // namespace detail

}  // namespace pivotwalk
