#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace pivotwalk {

/// Reference state sampled from a desired trajectory. theta is present only
/// when the path defines a heading (nonzero tangent velocity).
struct DesiredState {
  double x{0.0};
  double y{0.0};
  std::optional<double> theta;
  double vx{0.0};
  double vy{0.0};
};

/// Lissajous-style figure: x = -amp_x sin(freq_x t), y = -amp_y cos(freq_y t).
struct EightShape {
  double amp_x{0.04};
  double amp_y{0.04};
  double freq_x{0.1};
  double freq_y{0.05};

  bool operator==(const EightShape&) const = default;
};

/// Constant-speed ray from origin along `heading`; `length` is the nominal
/// span used by gait analyses, `speed` the time parameterization used by
/// tracking references (must be > 0 before eval_path is called).
struct StraightLine {
  Eigen::Vector2d origin{0.0, 0.0};
  double heading{0.0};
  double length{0.0};
  double speed{0.0};

  bool operator==(const StraightLine& o) const {
    return origin == o.origin && heading == o.heading && length == o.length && speed == o.speed;
  }
};

struct Waypoint {
  double t{0.0};
  double x{0.0};
  double y{0.0};

  bool operator==(const Waypoint&) const = default;
};

/// Piecewise-linear trajectory through timestamped points; times strictly
/// increasing.
struct Waypoints {
  std::vector<Waypoint> points;

  bool operator==(const Waypoints&) const = default;
};

using PathSpec = std::variant<EightShape, StraightLine, Waypoints>;

struct PathSampling {
  double t0{0.0};
  double tf{0.0};
  double dt{0.1};  // reference generation step
};

/// Analytic position/velocity at time t. Waypoint paths interpolate linearly
/// and use the segment slope as velocity; t outside the waypoint span throws
/// std::out_of_range.
DesiredState eval_path(const PathSpec& spec, double t);

/// Path tangent angle atan2(vy, vx), unwrapped continuously from the path
/// start so successive values never jump by 2*pi. Throws
/// UndefinedHeadingError when the velocity vanishes.
double desired_heading(const PathSpec& spec, double t);

struct UndefinedHeadingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// eval_path at t0, t0+dt, ..., <= tf (floor((tf-t0)/dt)+1 samples), with
/// headings unwrapped across the series.
std::vector<DesiredState> sample_path(const PathSpec& spec, const PathSampling& sampling);

/// Loads a waypoint path from CSV with header `t,x,y` (SI units).
Waypoints load_waypoints_csv(const std::string& path);

/// Smallest closed period of the figure (least common multiple of the two
/// axis periods). Throws std::invalid_argument when the frequency ratio is
/// not close to rational.
double eight_shape_period(const EightShape& spec);

/// Wraps `raw` to the representative nearest `reference` (unwrap step).
double unwrap_near(double reference, double raw);

}  // namespace pivotwalk
