#include "pivotwalk/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "pivotwalk/units.hpp"

namespace pivotwalk::io {

namespace {

using ordered_json = nlohmann::ordered_json;

double parse_double(const std::string& cell) {
  std::size_t used = 0;
  const double v = std::stod(cell, &used);
  return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    if (!cell.empty() && cell.back() == '\r') cell.pop_back();
    cells.push_back(cell);
  }
  return cells;
}

/// Grid coordinates rendered in their configuration units (degrees, seconds)
/// with a short exact-enough precision for keys.
std::string short_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  // shortest representation that round-trips
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_runlog_csv(std::ostream& out, const RunLog& log) {
  out << "t,x,y,theta,sigma,omega,x_d,y_d,e_n,switch\n";
  for (const LogRecord& r : log.records) {
    out << format_double(r.t) << ',' << format_double(r.state.x) << ','
        << format_double(r.state.y) << ',' << format_double(r.state.theta) << ',' << r.input.sigma
        << ',' << format_double(r.input.omega) << ',' << format_double(r.desired.x) << ','
        << format_double(r.desired.y) << ',' << format_double(r.e_n) << ','
        << (r.switch_event ? 1 : 0) << '\n';
  }
}

void write_runlog_csv_file(const std::string& path, const RunLog& log) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_runlog_csv(out, log);
}

RunLog read_runlog_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || split_csv_line(line) !=
      std::vector<std::string>{"t", "x", "y", "theta", "sigma", "omega", "x_d", "y_d", "e_n",
                               "switch"}) {
    throw std::runtime_error("run log CSV header mismatch");
  }
  RunLog log;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 10) throw std::runtime_error("run log CSV row must have 10 columns");
    LogRecord r;
    r.t = parse_double(cells[0]);
    r.state.x = parse_double(cells[1]);
    r.state.y = parse_double(cells[2]);
    r.state.theta = parse_double(cells[3]);
    r.input.sigma = static_cast<int>(parse_double(cells[4]));
    r.input.omega = parse_double(cells[5]);
    r.desired.x = parse_double(cells[6]);
    r.desired.y = parse_double(cells[7]);
    r.e_n = parse_double(cells[8]);
    r.switch_event = parse_double(cells[9]) != 0.0;
    log.records.push_back(r);
  }
  return log;
}

RunLog read_runlog_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return read_runlog_csv(in);
}

std::string metrics_json(const RunMetrics& m) {
  ordered_json j;
  j["n_steps"] = m.n_steps;
  j["travel_distance"] = m.travel_distance;
  j["normalized_error"] = m.normalized_error;
  j["mean_error"] = m.mean_error;
  j["final_error"] = m.final_error;
  return j.dump(2) + "\n";
}

void write_steps_table_csv(std::ostream& out, const std::vector<GaitTableRow>& rows) {
  out << "theta_s,n_steps\n";
  for (const GaitTableRow& r : rows) {
    out << format_double(r.theta) << ',' << r.n_steps << '\n';
  }
}

void write_distance_table_csv(std::ostream& out, const std::vector<GaitTableRow>& rows) {
  out << "theta_s,travel_distance\n";
  for (const GaitTableRow& r : rows) {
    out << format_double(r.theta) << ',' << format_double(r.travel_distance) << '\n';
  }
}

CsvTable read_csv_table(std::istream& in) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("CSV is empty");
  table.header = split_csv_line(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != table.header.size()) {
      throw std::runtime_error("CSV row width differs from header");
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_double(c));
    table.rows.push_back(std::move(row));
  }
  return table;
}

CsvTable read_csv_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return read_csv_table(in);
}

std::string sweep_json(const std::vector<SweepCell>& cells) {
  ordered_json j = ordered_json::object();
  for (const SweepCell& c : cells) {
    const std::string key = "sweep_angle=" + short_number(units::radians_to_degrees(c.sweep_angle)) +
                            "deg/tilt_angle=" + short_number(units::radians_to_degrees(c.tilt_angle)) +
                            "deg/dt_path=" + short_number(c.dt_path) + "s/controller=" + c.controller;
    ordered_json cell;
    cell["repetitions"] = c.repetitions;
    cell["me"] = c.me;
    cell["variance"] = c.variance;
    cell["sd"] = c.sd;
    cell["mean_steps"] = c.mean_steps;
    j[key] = cell;
  }
  return j.dump(2) + "\n";
}

std::string run_summary_text(const RunMetrics& m) {
  std::ostringstream out;
  out << "steps (pivot switches): " << m.n_steps << "\n"
      << "travel distance:        " << format_double(m.travel_distance) << " m\n"
      << "normalized error (NE):  " << format_double(m.normalized_error) << "\n"
      << "mean error:             " << format_double(m.mean_error) << " m\n"
      << "final error:            " << format_double(m.final_error) << " m\n";
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace pivotwalk::io
