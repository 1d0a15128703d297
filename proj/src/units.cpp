#include "pivotwalk/units.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <stdexcept>

namespace pivotwalk::units {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

struct UnitDef {
  Dimension dim;
  double to_si;
};

const std::map<std::string, UnitDef>& unit_table() {
  static const std::map<std::string, UnitDef> table = {
      {"m", {Dimension::Length, 1.0}},
      {"cm", {Dimension::Length, 1e-2}},
      {"mm", {Dimension::Length, 1e-3}},
      {"rad", {Dimension::Angle, 1.0}},
      {"deg", {Dimension::Angle, kPi / 180.0}},
      {"s", {Dimension::Duration, 1.0}},
      {"ms", {Dimension::Duration, 1e-3}},
      {"m/s", {Dimension::Speed, 1.0}},
      {"cm/s", {Dimension::Speed, 1e-2}},
      {"mm/s", {Dimension::Speed, 1e-3}},
      {"rad/s", {Dimension::AngularRate, 1.0}},
      {"deg/s", {Dimension::AngularRate, kPi / 180.0}},
  };
  return table;
}

}  // namespace

const char* dimension_name(Dimension dim) {
  switch (dim) {
    case Dimension::Length: return "length";
    case Dimension::Angle: return "angle";
    case Dimension::Duration: return "duration";
    case Dimension::Speed: return "speed";
    case Dimension::AngularRate: return "angular rate";
  }
  return "?";
}

double parse(const std::string& text, Dimension dim) {
  const char* begin = text.c_str();
  char* num_end = nullptr;
  const double value = std::strtod(begin, &num_end);
  if (num_end == begin) {
    throw std::invalid_argument("expected \"<number> <unit>\", got \"" + text + "\"");
  }
  std::string unit(num_end);
  const auto strip = [](std::string& s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  };
  strip(unit);
  if (unit.empty()) {
    throw std::invalid_argument("missing unit suffix in \"" + text + "\" (expected a " +
                                dimension_name(dim) + " unit)");
  }
  const auto it = unit_table().find(unit);
  if (it == unit_table().end()) {
    throw std::invalid_argument("unknown unit \"" + unit + "\" in \"" + text + "\"");
  }
  if (it->second.dim != dim) {
    throw std::invalid_argument("unit \"" + unit + "\" is not a " + dimension_name(dim) +
                                " unit in \"" + text + "\"");
  }
  if (!std::isfinite(value)) {
    throw std::invalid_argument("non-finite value in \"" + text + "\"");
  }
  return value * it->second.to_si;
}

double degrees_to_radians(double deg) { return deg * kPi / 180.0; }
double radians_to_degrees(double rad) { return rad * 180.0 / kPi; }

}  // namespace pivotwalk::units
