#include "pivotwalk/kinematics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pivotwalk {

namespace detail {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

void require_sigma(int sigma) {
  if (sigma != 1 && sigma != -1) {
    throw std::invalid_argument("sigma must be +1 or -1, got " + std::to_string(sigma));
  }
}

}  // namespace detail

namespace {

void require_state(const RobotState& s) {
  detail::require_finite(s.x, "state.x");
  detail::require_finite(s.y, "state.y");
  detail::require_finite(s.theta, "state.theta");
}

void require_geometry(const RobotGeometry& g) {
  detail::require_finite(g.length, "geometry.length");
  if (g.length <= 0.0) {
    throw std::invalid_argument("geometry.length must be > 0");
  }
}

void require_dt(double dt) {
  detail::require_finite(dt, "dt");
  if (dt <= 0.0) {
    throw std::invalid_argument("dt must be > 0");
  }
}

}  // namespace

Eigen::Matrix3d rotation_matrix(double theta) {
  detail::require_finite(theta, "theta");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Eigen::Matrix3d r;
  r << c, s, 0.0,
      -s, c, 0.0,
      0.0, 0.0, 1.0;
  return r;
}

StateDerivative state_derivative(const RobotState& state, const ControlInput& input,
                                 const RobotGeometry& geom) {
  require_state(state);
  require_geometry(geom);
  detail::require_sigma(input.sigma);
  detail::require_finite(input.omega, "omega");
  const double half = 0.5 * geom.length;
  return {half * input.sigma * input.omega * std::cos(state.theta),
          half * input.sigma * input.omega * std::sin(state.theta), input.omega};
}

PivotPair pivot_positions(const RobotState& state, const RobotGeometry& geom) {
  require_state(state);
  require_geometry(geom);
  const double half = 0.5 * geom.length;
  const double s = std::sin(state.theta);
  const double c = std::cos(state.theta);
  return {{state.x - half * s, state.y + half * c}, {state.x + half * s, state.y - half * c}};
}

Eigen::Vector2d active_pivot(const RobotState& state, int sigma, const RobotGeometry& geom) {
  detail::require_sigma(sigma);
  const PivotPair p = pivot_positions(state, geom);
  return sigma > 0 ? p.a : p.b;
}

RobotState step_exact_arc(const RobotState& state, const ControlInput& input,
                          const RobotGeometry& geom, double dt) {
  require_dt(dt);
  detail::require_finite(input.omega, "omega");
  const Eigen::Vector2d pivot = active_pivot(state, input.sigma, geom);
  const double dtheta = input.omega * dt;
  const double c = std::cos(dtheta);
  const double s = std::sin(dtheta);
  const double rx = state.x - pivot.x();
  const double ry = state.y - pivot.y();
  return {pivot.x() + c * rx - s * ry, pivot.y() + s * rx + c * ry, state.theta + dtheta};
}

RobotState step_euler(const RobotState& state, const ControlInput& input,
                      const RobotGeometry& geom, double dt) {
  require_dt(dt);
  const StateDerivative d = state_derivative(state, input, geom);
  return {state.x + dt * d.dx, state.y + dt * d.dy, state.theta + dt * d.dtheta};
}

}  // namespace pivotwalk
