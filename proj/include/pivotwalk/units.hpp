#pragma once

#include <string>

namespace pivotwalk::units {

/// Physical dimension of a configuration quantity.
enum class Dimension {
  Length,       // m, cm, mm
  Angle,        // rad, deg
  Duration,     // s, ms
  Speed,        // m/s, cm/s, mm/s
  AngularRate,  // rad/s, deg/s
};

/// Parses "<number> <unit>" (e.g. "10 mm", "45 deg", "0.1 s") into SI
/// (m, rad, s). Throws std::invalid_argument when the unit is missing,
/// unknown, or of the wrong dimension.
double parse(const std::string& text, Dimension dim);

const char* dimension_name(Dimension dim);

inline double parse_length(const std::string& s) { return parse(s, Dimension::Length); }
inline double parse_angle(const std::string& s) { return parse(s, Dimension::Angle); }
inline double parse_duration(const std::string& s) { return parse(s, Dimension::Duration); }
inline double parse_speed(const std::string& s) { return parse(s, Dimension::Speed); }
inline double parse_angular_rate(const std::string& s) { return parse(s, Dimension::AngularRate); }

double degrees_to_radians(double deg);
double radians_to_degrees(double rad);

}  // namespace pivotwalk::units
