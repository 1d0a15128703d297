#include "pivotwalk/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pivotwalk {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;

double wrap_pi(double x) {
  double w = std::remainder(x, kTwoPi);
  return w;
}

double path_start_time(const PathSpec& spec) {
  if (const auto* wp = std::get_if<Waypoints>(&spec)) {
    if (wp->points.empty()) {
      throw std::invalid_argument("waypoint path is empty");
    }
    return wp->points.front().t;
  }
  return 0.0;
}

/// Principal tangent angle; throws when the velocity vanishes.
double raw_heading(const PathSpec& spec, double t) {
  const DesiredState d = eval_path(spec, t);
  if (d.vx == 0.0 && d.vy == 0.0) {
    throw UndefinedHeadingError("path velocity is zero at t=" + std::to_string(t) +
                                "; heading undefined");
  }
  return std::atan2(d.vy, d.vx);
}

/// Longest probe interval over which the tangent cannot alias a full turn.
/// Oscillating paths are probed well inside their fastest period; waypoint
/// headings are piecewise constant so only the nodes matter.
double max_probe_interval(const PathSpec& spec) {
  if (const auto* e = std::get_if<EightShape>(&spec)) {
    const double f = std::max(e->freq_x, e->freq_y);
    return f > 0.0 ? (kTwoPi / f) / 64.0 : 1e9;
  }
  return 1e9;
}

/// Carries an unwrapped heading forward in time. Probes on a fixed grid finer
/// than the path's fastest oscillation (so revolutions cannot alias), then
/// bisects whenever the principal value still moves more than pi/2 between
/// probes. Intervals below 1e-9 s are treated as genuine corners and take the
/// principal jump.
class HeadingTracker {
 public:
  HeadingTracker(const PathSpec& spec, double t_start)
      : spec_(spec),
        t_(t_start),
        value_(raw_heading(spec, t_start)),
        probe_(max_probe_interval(spec)) {
    if (const auto* wp = std::get_if<Waypoints>(&spec)) {
      for (const Waypoint& w : wp->points) node_times_.push_back(w.t);
    }
  }

  double advance_to(double t) {
    // mandatory probes: the fixed grid anchored at the walk start, plus any
    // waypoint nodes, keep unwrapping consistent across different targets
    while (t_ < t) {
      double next = t_ + probe_;
      for (double node : node_times_) {
        if (node > t_ + 1e-12 && node < next) {
          next = node;
          break;
        }
      }
      if (next >= t) break;
      step(next, 0);
    }
    step(t, 0);
    return value_;
  }

  double value() const { return value_; }

 private:
  void step(double t, int depth) {
    const double delta = wrap_pi(raw_heading(spec_, t) - value_);
    if (std::abs(delta) <= kPi / 2.0 || std::abs(t - t_) < 1e-9 || depth > 64) {
      value_ += delta;
      t_ = t;
      return;
    }
    const double mid = 0.5 * (t_ + t);
    step(mid, depth + 1);
    step(t, depth + 1);
  }

  const PathSpec& spec_;
  double t_;
  double value_;
  double probe_;
  std::vector<double> node_times_;
};

DesiredState eval_eight(const EightShape& p, double t) {
  DesiredState d;
  d.x = -p.amp_x * std::sin(p.freq_x * t);
  d.y = -p.amp_y * std::cos(p.freq_y * t);
  d.vx = -p.amp_x * p.freq_x * std::cos(p.freq_x * t);
  d.vy = p.amp_y * p.freq_y * std::sin(p.freq_y * t);
  return d;
}

DesiredState eval_line(const StraightLine& p, double t) {
  if (p.speed <= 0.0) {
    throw std::invalid_argument("straight-line path has no speed; cannot evaluate in time");
  }
  DesiredState d;
  const double c = std::cos(p.heading);
  const double s = std::sin(p.heading);
  d.x = p.origin.x() + p.speed * t * c;
  d.y = p.origin.y() + p.speed * t * s;
  d.vx = p.speed * c;
  d.vy = p.speed * s;
  return d;
}

DesiredState eval_waypoints(const Waypoints& p, double t) {
  const auto& pts = p.points;
  if (pts.empty()) {
    throw std::invalid_argument("waypoint path is empty");
  }
  if (t < pts.front().t || t > pts.back().t) {
    throw std::out_of_range("t=" + std::to_string(t) + " outside waypoint span [" +
                            std::to_string(pts.front().t) + ", " + std::to_string(pts.back().t) +
                            "]");
  }
  DesiredState d;
  if (pts.size() == 1) {
    d.x = pts.front().x;
    d.y = pts.front().y;
    return d;
  }
  // right-continuous segment choice; the last node belongs to the last segment
  auto it = std::upper_bound(pts.begin(), pts.end(), t,
                             [](double v, const Waypoint& w) { return v < w.t; });
  std::size_t hi = static_cast<std::size_t>(it - pts.begin());
  if (hi == 0) hi = 1;
  if (hi == pts.size()) hi = pts.size() - 1;
  const Waypoint& a = pts[hi - 1];
  const Waypoint& b = pts[hi];
  const double span = b.t - a.t;
  const double u = (t - a.t) / span;
  d.x = a.x + u * (b.x - a.x);
  d.y = a.y + u * (b.y - a.y);
  d.vx = (b.x - a.x) / span;
  d.vy = (b.y - a.y) / span;
  return d;
}

}  // namespace

DesiredState eval_path(const PathSpec& spec, double t) {
  if (!std::isfinite(t)) {
    throw std::invalid_argument("path time must be finite");
  }
  return std::visit(
      [&](const auto& p) -> DesiredState {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, EightShape>) return eval_eight(p, t);
        else if constexpr (std::is_same_v<T, StraightLine>) return eval_line(p, t);
        else return eval_waypoints(p, t);
      },
      spec);
}

double desired_heading(const PathSpec& spec, double t) {
  HeadingTracker tracker(spec, path_start_time(spec));
  return tracker.advance_to(t);
}

double unwrap_near(double reference, double raw) {
  return reference + wrap_pi(raw - reference);
}

std::vector<DesiredState> sample_path(const PathSpec& spec, const PathSampling& sampling) {
  if (!(sampling.t0 < sampling.tf)) {
    throw std::invalid_argument("sampling requires t0 < tf");
  }
  if (!(sampling.dt > 0.0)) {
    throw std::invalid_argument("sampling requires dt > 0");
  }
  const auto count =
      static_cast<std::size_t>(std::floor((sampling.tf - sampling.t0) / sampling.dt + 1e-9)) + 1;
  std::vector<DesiredState> out;
  out.reserve(count);

  std::optional<HeadingTracker> tracker;
  try {
    tracker.emplace(spec, path_start_time(spec));
  } catch (const UndefinedHeadingError&) {
    // headingless path (e.g. zero-speed segment at start); samples carry no theta
  }

  for (std::size_t i = 0; i < count; ++i) {
    const double t = sampling.t0 + static_cast<double>(i) * sampling.dt;
    DesiredState d = eval_path(spec, t);
    if (tracker && (d.vx != 0.0 || d.vy != 0.0)) {
      d.theta = tracker->advance_to(t);
    }
    out.push_back(d);
  }
  return out;
}

Waypoints load_waypoints_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open waypoint file: " + path);
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("waypoint file is empty: " + path);
  }
  auto strip = [](std::string s) {
    s.erase(0, s.find_first_not_of(" \t\r"));
    const auto last = s.find_last_not_of(" \t\r");
    if (last != std::string::npos) s.erase(last + 1);
    return s;
  };
  if (strip(line) != "t,x,y") {
    throw std::invalid_argument("waypoint file must start with header `t,x,y`: " + path);
  }
  Waypoints wp;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (strip(line).empty()) continue;
    std::istringstream row(line);
    std::string cell;
    Waypoint w;
    double* fields[3] = {&w.t, &w.x, &w.y};
    for (int i = 0; i < 3; ++i) {
      if (!std::getline(row, cell, ',')) {
        throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected 3 columns");
      }
      *fields[i] = std::stod(cell);
    }
    if (!wp.points.empty() && w.t <= wp.points.back().t) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": waypoint times must be strictly increasing");
    }
    wp.points.push_back(w);
  }
  if (wp.points.empty()) {
    throw std::invalid_argument("waypoint file has no data rows: " + path);
  }
  return wp;
}

double eight_shape_period(const EightShape& spec) {
  if (!(spec.freq_x > 0.0) || !(spec.freq_y > 0.0)) {
    throw std::invalid_argument("eight-shape frequencies must be > 0");
  }
  // T = 2*pi*p/freq_x where freq_x/freq_y = p/q in lowest terms
  const double ratio = spec.freq_x / spec.freq_y;
  for (int q = 1; q <= 1000; ++q) {
    const double pf = ratio * q;
    const double p = std::round(pf);
    if (p >= 1.0 && std::abs(pf - p) <= 1e-9 * std::max(1.0, pf)) {
      return kTwoPi * p / spec.freq_x;
    }
  }
  throw std::invalid_argument(
      "eight-shape frequency ratio is not a small rational; closed period undefined");
}

}  // namespace pivotwalk
