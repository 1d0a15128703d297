#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "pivotwalk/trajectory.hpp"

using namespace pivotwalk;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

const EightShape kFigure{0.04, 0.04, 0.1, 0.05};
}  // namespace

TEST_CASE("eight shape positions at landmark times") {
  DesiredState d0 = eval_path(kFigure, 0.0);
  CHECK(d0.x == doctest::Approx(0.0));
  CHECK(d0.y == doctest::Approx(-0.04).epsilon(1e-15));

  DesiredState dp = eval_path(kFigure, 10.0 * kPi);
  CHECK(std::abs(dp.x) < 1e-12);
  CHECK(std::abs(dp.y) < 1e-12);
}

TEST_CASE("straight line is a constant-speed ray") {
  StraightLine line;
  line.heading = kPi / 2.0;
  line.speed = 0.003;
  for (double t : {0.0, 1.5, 12.0}) {
    const DesiredState d = eval_path(line, t);
    CHECK(std::abs(d.x) < 1e-15);
    CHECK(d.y == doctest::Approx(0.003 * t));
    CHECK(desired_heading(line, t) == doctest::Approx(kPi / 2.0));
  }
  // heading does not depend on the speed parameterization
  StraightLine faster = line;
  faster.speed = 0.03;
  CHECK(desired_heading(line, 3.0) == doctest::Approx(desired_heading(faster, 0.3)));
}

TEST_CASE("eight shape heading starts at pi and stays continuous") {
  // velocity at t=0 is (-amp_x*freq_x, 0): pointing along -x
  CHECK(desired_heading(kFigure, 0.0) == doctest::Approx(kPi));

  const double period = eight_shape_period(kFigure);
  double prev = desired_heading(kFigure, 0.0);
  for (double t = 0.1; t <= period; t += 0.1) {
    const double h = desired_heading(kFigure, t);
    CHECK(std::abs(h - prev) < kPi);
    prev = h;
  }
}

TEST_CASE("sample counts and collinearity") {
  StraightLine line;
  line.heading = 0.3;
  line.speed = 0.01;
  const auto samples = sample_path(line, {0.0, 1.0, 0.1});
  CHECK(samples.size() == 11);

  // all samples lie on the ray through the origin
  for (const DesiredState& d : samples) {
    CHECK(std::abs(d.x * std::sin(0.3) - d.y * std::cos(0.3)) < 1e-12);
  }
}

TEST_CASE("eight shape closes after one period") {
  const double period = eight_shape_period(kFigure);
  CHECK(period == doctest::Approx(40.0 * kPi).epsilon(1e-14));

  // choose a sampling step that lands exactly on the period
  const std::size_t n = 1257;
  const auto samples = sample_path(kFigure, {0.0, period, period / static_cast<double>(n)});
  CHECK(samples.size() == n + 1);
  CHECK(std::abs(samples.front().x - samples.back().x) < 1e-9);
  CHECK(std::abs(samples.front().y - samples.back().y) < 1e-9);
}

TEST_CASE("eight shape stays inside its amplitude box") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ts(-500.0, 500.0);
  for (int i = 0; i < 2000; ++i) {
    const DesiredState d = eval_path(kFigure, ts(rng));
    CHECK(std::abs(d.x) <= kFigure.amp_x + 1e-15);
    CHECK(std::abs(d.y) <= kFigure.amp_y + 1e-15);
  }
}

TEST_CASE("analytic velocity matches central differences") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ts(0.0, 200.0);
  const double h = 1e-5;
  for (int i = 0; i < 300; ++i) {
    const double t = ts(rng);
    const DesiredState d = eval_path(kFigure, t);
    const DesiredState dp = eval_path(kFigure, t + h);
    const DesiredState dm = eval_path(kFigure, t - h);
    const double vx_fd = (dp.x - dm.x) / (2.0 * h);
    const double vy_fd = (dp.y - dm.y) / (2.0 * h);
    CHECK(d.vx == doctest::Approx(vx_fd).epsilon(1e-6));
    CHECK(d.vy == doctest::Approx(vy_fd).epsilon(1e-6));
  }
}

TEST_CASE("waypoints interpolate linearly and reject out-of-span times") {
  Waypoints wp;
  wp.points = {{0.0, 0.0, 0.0}, {2.0, 0.02, 0.0}, {4.0, 0.02, 0.04}};
  const DesiredState mid = eval_path(PathSpec{wp}, 1.0);
  CHECK(mid.x == doctest::Approx(0.01));
  CHECK(mid.y == doctest::Approx(0.0));
  CHECK(mid.vx == doctest::Approx(0.01));
  CHECK(mid.vy == doctest::Approx(0.0));

  const DesiredState later = eval_path(PathSpec{wp}, 3.0);
  CHECK(later.x == doctest::Approx(0.02));
  CHECK(later.y == doctest::Approx(0.02));
  CHECK(later.vy == doctest::Approx(0.02));

  CHECK_THROWS_AS(eval_path(PathSpec{wp}, -0.5), std::out_of_range);
  CHECK_THROWS_AS(eval_path(PathSpec{wp}, 4.5), std::out_of_range);
}

TEST_CASE("waypoint csv loader enforces the header and ordering") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "pivotwalk_wp_test";
  fs::create_directories(dir);

  const fs::path good = dir / "good.csv";
  {
    std::ofstream out(good);
    out << "t,x,y\n0,0,0\n1,0.01,0\n2.5,0.01,0.02\n";
  }
  const Waypoints wp = load_waypoints_csv(good.string());
  REQUIRE(wp.points.size() == 3);
  CHECK(wp.points[2].t == 2.5);
  CHECK(wp.points[2].y == 0.02);

  const fs::path bad_header = dir / "bad_header.csv";
  {
    std::ofstream out(bad_header);
    out << "time,x,y\n0,0,0\n";
  }
  CHECK_THROWS_AS(load_waypoints_csv(bad_header.string()), std::invalid_argument);

  const fs::path bad_order = dir / "bad_order.csv";
  {
    std::ofstream out(bad_order);
    out << "t,x,y\n0,0,0\n0,1,1\n";
  }
  CHECK_THROWS_AS(load_waypoints_csv(bad_order.string()), std::invalid_argument);

  fs::remove_all(dir);
}

TEST_CASE("undefined heading raises") {
  StraightLine stopped;
  stopped.heading = 0.0;
  stopped.speed = 0.0;
  CHECK_THROWS_AS(eval_path(stopped, 1.0), std::invalid_argument);

  Waypoints parked;
  parked.points = {{0.0, 0.01, 0.01}, {1.0, 0.01, 0.01}};
  CHECK_THROWS_AS(desired_heading(PathSpec{parked}, 0.5), UndefinedHeadingError);
}

TEST_CASE("eight period requires a rational frequency ratio") {
  EightShape odd = kFigure;
  odd.freq_x = 1.0;
  odd.freq_y = std::sqrt(2.0);
  CHECK_THROWS_AS(eight_shape_period(odd), std::invalid_argument);
}
