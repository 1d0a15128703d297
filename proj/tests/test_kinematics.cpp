#include <doctest.h>

#include <cmath>
#include <random>

#include "pivotwalk/kinematics.hpp"

using namespace pivotwalk;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

std::mt19937_64 rng(42);

RobotState random_state() {
  std::uniform_real_distribution<double> pos(-0.2, 0.2);
  std::uniform_real_distribution<double> ang(-12.0, 12.0);
  return {pos(rng), pos(rng), ang(rng)};
}
}  // namespace

TEST_CASE("rotation matrix identity and quarter turn") {
  const Eigen::Matrix3d r0 = rotation_matrix(0.0);
  CHECK(r0.isApprox(Eigen::Matrix3d::Identity(), 1e-15));

  const Eigen::Matrix3d rq = rotation_matrix(kPi / 2.0);
  Eigen::Matrix3d expected;
  expected << 0, 1, 0, -1, 0, 0, 0, 0, 1;
  CHECK((rq - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("rotation matrix is orthonormal with unit determinant") {
  const Eigen::Matrix3d r = rotation_matrix(0.37);
  CHECK((r * r.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(r.determinant() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(rotation_matrix(std::nan("")), std::invalid_argument);
}

TEST_CASE("state derivative matches the switched velocity model") {
  const RobotGeometry geom{0.01};
  const StateDerivative a = state_derivative({0, 0, 0}, {1, 1.0}, geom);
  CHECK(a.dx == doctest::Approx(0.005).epsilon(1e-15));
  CHECK(a.dy == doctest::Approx(0.0));
  CHECK(a.dtheta == doctest::Approx(1.0));

  const StateDerivative b = state_derivative({0, 0, 0}, {-1, 1.0}, geom);
  CHECK(b.dx == doctest::Approx(-0.005).epsilon(1e-15));

  const StateDerivative c = state_derivative({0, 0, kPi / 2.0}, {1, 2.0}, geom);
  CHECK(std::abs(c.dx) < 1e-17);
  CHECK(c.dy == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(c.dtheta == doctest::Approx(2.0));

  CHECK_THROWS_AS(state_derivative({0, 0, 0}, {0, 1.0}, geom), std::invalid_argument);
  CHECK_THROWS_AS(state_derivative({0, 0, 0}, {2, 1.0}, geom), std::invalid_argument);
}

TEST_CASE("state derivative is odd in sigma in the planar components") {
  const RobotGeometry geom{0.017};
  std::uniform_real_distribution<double> om(-7.0, 7.0);
  for (int i = 0; i < 50; ++i) {
    const RobotState s = random_state();
    const double omega = om(rng);
    const StateDerivative p = state_derivative(s, {1, omega}, geom);
    const StateDerivative n = state_derivative(s, {-1, omega}, geom);
    CHECK(p.dx == doctest::Approx(-n.dx).epsilon(1e-14));
    CHECK(p.dy == doctest::Approx(-n.dy).epsilon(1e-14));
    CHECK(p.dtheta == n.dtheta);
  }
}

TEST_CASE("pivot positions and their invariants") {
  const RobotGeometry geom{0.01};
  const PivotPair p0 = pivot_positions({0, 0, 0}, geom);
  CHECK(p0.a.x() == doctest::Approx(0.0));
  CHECK(p0.a.y() == doctest::Approx(0.005).epsilon(1e-15));
  CHECK(p0.b.y() == doctest::Approx(-0.005).epsilon(1e-15));

  const PivotPair p1 = pivot_positions({1, 1, kPi}, geom);
  CHECK(p1.a.x() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p1.a.y() == doctest::Approx(0.995).epsilon(1e-15));
  CHECK(p1.b.y() == doctest::Approx(1.005).epsilon(1e-15));

  for (int i = 0; i < 200; ++i) {
    const RobotState s = random_state();
    const PivotPair p = pivot_positions(s, geom);
    // midpoint recovers the center; separation is exactly the body length
    CHECK(0.5 * (p.a.x() + p.b.x()) == doctest::Approx(s.x).epsilon(1e-12));
    CHECK(0.5 * (p.a.y() + p.b.y()) == doctest::Approx(s.y).epsilon(1e-12));
    CHECK((p.a - p.b).norm() == doctest::Approx(geom.length).epsilon(1e-12));
  }
}

TEST_CASE("exact arc step rotates the center about the active pivot") {
  const RobotGeometry geom{0.01};
  // half-turn about pivot A lifts the center by one body length
  const RobotState next = step_exact_arc({0, 0, 0}, {1, kPi}, geom, 1.0);
  CHECK(std::abs(next.x) < 1e-15);
  CHECK(next.y == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(next.theta == doctest::Approx(kPi));

  const RobotState same = step_exact_arc({0.3, -0.2, 1.1}, {-1, 0.0}, geom, 0.5);
  CHECK(same.x == 0.3);
  CHECK(same.y == -0.2);
  CHECK(same.theta == 1.1);

  CHECK_THROWS_AS(step_exact_arc({0, 0, 0}, {1, 1.0}, geom, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(step_exact_arc({0, 0, 0}, {1, 1.0}, geom, -0.1), std::invalid_argument);
}

TEST_CASE("exact arc step leaves the active pivot stationary") {
  const RobotGeometry geom{0.013};
  std::uniform_real_distribution<double> om(-8.0, 8.0);
  std::uniform_real_distribution<double> dts(1e-4, 0.8);
  for (int i = 0; i < 500; ++i) {
    const RobotState s = random_state();
    const int sigma = (i % 2 == 0) ? 1 : -1;
    const ControlInput input{sigma, om(rng)};
    const double dt = dts(rng);
    const Eigen::Vector2d before = active_pivot(s, sigma, geom);
    const Eigen::Vector2d after = active_pivot(step_exact_arc(s, input, geom, dt), sigma, geom);
    CHECK((after - before).norm() < 1e-12);
  }
}

TEST_CASE("exact arc steps compose") {
  const RobotGeometry geom{0.01};
  std::uniform_real_distribution<double> om(-6.0, 6.0);
  std::uniform_real_distribution<double> dts(1e-3, 0.5);
  for (int i = 0; i < 200; ++i) {
    const RobotState s = random_state();
    const ControlInput input{(i % 2 == 0) ? 1 : -1, om(rng)};
    const double dt1 = dts(rng);
    const double dt2 = dts(rng);
    const RobotState two = step_exact_arc(step_exact_arc(s, input, geom, dt1), input, geom, dt2);
    const RobotState one = step_exact_arc(s, input, geom, dt1 + dt2);
    CHECK(std::abs(two.x - one.x) < 1e-12);
    CHECK(std::abs(two.y - one.y) < 1e-12);
    CHECK(std::abs(two.theta - one.theta) < 1e-12);
  }
}

TEST_CASE("euler step examples") {
  const RobotGeometry geom{0.01};
  const RobotState next = step_euler({0, 0, 0}, {1, 1.0}, geom, 0.1);
  CHECK(next.x == doctest::Approx(0.0005).epsilon(1e-15));
  CHECK(next.y == doctest::Approx(0.0));
  CHECK(next.theta == doctest::Approx(0.1));

  const RobotState same = step_euler({0.1, 0.2, 0.3}, {1, 0.0}, geom, 0.1);
  CHECK(same.x == 0.1);
  CHECK(same.y == 0.2);
  CHECK(same.theta == 0.3);

  CHECK_THROWS_AS(step_euler({0, 0, 0}, {1, 1.0}, geom, 0.0), std::invalid_argument);
}

TEST_CASE("euler converges to the exact arc at second order") {
  const RobotGeometry geom{0.01};
  const RobotState s{0.02, -0.01, 0.6};
  const ControlInput input{1, 2.0};
  double errors[3];
  const double dts[3] = {1e-2, 1e-3, 1e-4};
  for (int i = 0; i < 3; ++i) {
    const RobotState e = step_euler(s, input, geom, dts[i]);
    const RobotState a = step_exact_arc(s, input, geom, dts[i]);
    errors[i] = std::hypot(e.x - a.x, e.y - a.y);
  }
  const double order1 = std::log10(errors[0] / errors[1]);
  const double order2 = std::log10(errors[1] / errors[2]);
  CHECK(order1 >= 1.9);
  CHECK(order2 >= 1.9);
}
