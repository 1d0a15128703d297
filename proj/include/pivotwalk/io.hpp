#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pivotwalk/sim.hpp"
#include "pivotwalk/sweep.hpp"

namespace pivotwalk::io {

/// Shortest decimal string that round-trips the double exactly.
std::string format_double(double v);

/// Run log as CSV with header `t,x,y,theta,sigma,omega,x_d,y_d,e_n,switch`
/// (SI units). Columns round-trip bit-exactly through read_runlog_csv.
void write_runlog_csv(std::ostream& out, const RunLog& log);
void write_runlog_csv_file(const std::string& path, const RunLog& log);
RunLog read_runlog_csv(std::istream& in);
RunLog read_runlog_csv_file(const std::string& path);

/// Metrics as a JSON object. Wall time is excluded so identical runs emit
/// identical bytes.
std::string metrics_json(const RunMetrics& metrics);

/// Gait tables as two-column CSVs (`theta_s,n_steps` / `theta_s,travel_distance`).
void write_steps_table_csv(std::ostream& out, const std::vector<GaitTableRow>& rows);
void write_distance_table_csv(std::ostream& out, const std::vector<GaitTableRow>& rows);

/// Generic numeric table reader for the CSVs written above; returns the
/// header fields and row-major values.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
CsvTable read_csv_table(std::istream& in);
CsvTable read_csv_table_file(const std::string& path);

/// Sweep results as a JSON object keyed by grid coordinates, e.g.
/// "sweep_angle=10deg/tilt_angle=20deg/dt_path=0.1s/controller=geometric".
std::string sweep_json(const std::vector<SweepCell>& cells);

std::string run_summary_text(const RunMetrics& metrics);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace pivotwalk::io
