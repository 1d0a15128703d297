#include "pivotwalk/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "pivotwalk/config.hpp"

namespace pivotwalk {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct CellJob {
  SimConfig config;  // seed overwritten per repetition
  SweepCell cell;
  std::size_t index;
};

SweepCell run_cell(const CellJob& job, std::uint64_t base_seed, int repetitions) {
  SweepCell cell = job.cell;
  std::vector<double> ne;
  std::vector<double> steps;
  ne.reserve(static_cast<std::size_t>(repetitions));
  for (int r = 0; r < repetitions; ++r) {
    SimConfig config = job.config;
    config.seed = derive_seed(base_seed, job.index, static_cast<std::uint64_t>(r));
    const RunResult result = run_simulation(config);
    ne.push_back(result.metrics.normalized_error);
    steps.push_back(static_cast<double>(result.metrics.n_steps));
  }
  const auto n = static_cast<double>(ne.size());
  double mean = 0.0;
  for (double v : ne) mean += v;
  mean /= n;
  // deterministic cells (every repetition identical) report exactly zero
  // spread; the accumulation below would leave last-ulp residue
  bool all_equal = true;
  for (double v : ne) all_equal = all_equal && (v == ne.front());
  if (all_equal) mean = ne.front();
  double var = 0.0;
  if (ne.size() > 1 && !all_equal) {
    for (double v : ne) var += (v - mean) * (v - mean);
    var /= (n - 1.0);
  }
  double mean_steps = 0.0;
  for (double v : steps) mean_steps += v;
  mean_steps /= n;

  cell.repetitions = repetitions;
  cell.me = mean;
  cell.variance = var;
  cell.sd = std::sqrt(var);
  cell.mean_steps = mean_steps;
  return cell;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t cell, std::uint64_t repetition) {
  return splitmix64(splitmix64(base ^ splitmix64(cell + 1)) ^ (repetition + 1));
}

std::vector<SweepCell> run_sweep(const SweepSpec& spec, int jobs) {
  if (spec.sweep_angles.empty()) {
    throw ConfigError("sweep.sweep_angles", "grid must not be empty");
  }
  if (spec.repetitions < 1) {
    throw ConfigError("sweep.repetitions", "must be >= 1");
  }
  const std::vector<double> dt_paths =
      spec.dt_paths.empty() ? std::vector<double>{spec.base.sampling.dt} : spec.dt_paths;
  const std::vector<double> tilt_angles =
      spec.tilt_angles.empty() ? std::vector<double>{spec.base.gait.tilt_angle}
                               : spec.tilt_angles;
  std::vector<ControllerSpec> controllers = spec.controllers;
  std::vector<std::string> names = spec.controller_names;
  if (controllers.empty()) {
    controllers.push_back(spec.base.controller);
    names.push_back(config::controller_name(spec.base.controller));
  }

  std::vector<CellJob> jobs_list;
  std::size_t index = 0;
  for (std::size_t ci = 0; ci < controllers.size(); ++ci) {
    for (double sweep : spec.sweep_angles) {
      for (double tilt : tilt_angles) {
        for (double dt : dt_paths) {
          CellJob job;
          job.config = spec.base;
          job.config.controller = controllers[ci];
          job.config.gait.sweep_angle = sweep;
          job.config.gait.tilt_angle = tilt;
          job.config.sampling.dt = dt;
          job.cell.sweep_angle = sweep;
          job.cell.tilt_angle = tilt;
          job.cell.dt_path = dt;
          job.cell.controller = names[ci];
          job.index = index++;
          validate(job.config);
          jobs_list.push_back(std::move(job));
        }
      }
    }
  }

  std::vector<SweepCell> out(jobs_list.size());
  const auto worker = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < jobs_list.size(); i += stride) {
      out[i] = run_cell(jobs_list[i], spec.base.seed, spec.repetitions);
    }
  };
  if (jobs <= 1) {
    worker(0, 1);
  } else {
    const auto n_threads = static_cast<std::size_t>(
        std::min<std::size_t>(static_cast<std::size_t>(jobs), jobs_list.size()));
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t tid = 0; tid < n_threads; ++tid) {
      pool.emplace_back(worker, tid, n_threads);
    }
    for (auto& th : pool) th.join();
  }
  return out;
}

std::vector<GaitTableRow> gait_angle_table(const SimConfig& base,
                                           const std::vector<double>& angles) {
  if (!std::holds_alternative<StraightLineGaitController>(base.controller)) {
    throw ConfigError("controller.type", "gait analysis requires a straight_line_gait controller");
  }
  if (angles.empty()) {
    throw ConfigError("angles", "grid must not be empty");
  }
  for (double a : angles) {
    if (!(a > 0.0) || !(a < kTwoPi)) {
      throw ConfigError("angles",
                        "sweep angles must lie strictly inside (0 deg, 360 deg); the endpoints "
                        "are singular");
    }
  }
  std::vector<GaitTableRow> rows;
  rows.reserve(angles.size());
  for (double a : angles) {
    SimConfig config = base;
    config.gait.desired_sweep = a;
    const RunResult result = run_simulation(config);
    rows.push_back({a, result.metrics.n_steps, result.metrics.travel_distance});
  }
  return rows;
}

std::vector<std::pair<double, int>> steps_vs_sweep_angle(const SimConfig& base,
                                                         const std::vector<double>& angles) {
  std::vector<std::pair<double, int>> out;
  for (const GaitTableRow& r : gait_angle_table(base, angles)) {
    out.emplace_back(r.theta, r.n_steps);
  }
  return out;
}

std::vector<std::pair<double, double>> distance_vs_sweep_angle(const SimConfig& base,
                                                               const std::vector<double>& angles) {
  std::vector<std::pair<double, double>> out;
  for (const GaitTableRow& r : gait_angle_table(base, angles)) {
    out.emplace_back(r.theta, r.travel_distance);
  }
  return out;
}

}  // namespace pivotwalk
