#pragma once

#include <string>
#include <vector>

#include "pivotwalk/sim.hpp"

namespace pivotwalk {

/// Grid of gait/sampling parameters crossed with controllers, each cell run
/// `repetitions` times with per-repetition noise seeds derived from the base
/// seed so serial and parallel execution agree exactly.
struct SweepSpec {
  SimConfig base{};
  std::vector<double> sweep_angles;                // rad
  std::vector<double> tilt_angles{0.0};            // rad, metadata
  std::vector<double> dt_paths;                    // s
  std::vector<ControllerSpec> controllers;         // defaults to {base.controller}
  std::vector<std::string> controller_names;       // parallel to controllers
  int repetitions{1};
};

struct SweepCell {
  double sweep_angle{0.0};
  double tilt_angle{0.0};
  double dt_path{0.0};
  std::string controller;
  int repetitions{0};
  double me{0.0};        // mean normalized error over repetitions
  double variance{0.0};  // sample variance of the normalized error
  double sd{0.0};
  double mean_steps{0.0};
};

/// Runs every cell (jobs > 1 distributes cells over threads); output is
/// sorted by grid coordinates regardless of execution order.
std::vector<SweepCell> run_sweep(const SweepSpec& spec, int jobs = 1);

struct GaitTableRow {
  double theta{0.0};  // per-step sweep angle, rad
  int n_steps{0};
  double travel_distance{0.0};
};

/// Straight-line gait runs over a grid of sweep angles; base.controller must
/// be StraightLineGaitController and every angle must lie strictly inside
/// (0, 2*pi).
std::vector<GaitTableRow> gait_angle_table(const SimConfig& base, const std::vector<double>& angles);

std::vector<std::pair<double, int>> steps_vs_sweep_angle(const SimConfig& base,
                                                         const std::vector<double>& angles);
std::vector<std::pair<double, double>> distance_vs_sweep_angle(const SimConfig& base,
                                                               const std::vector<double>& angles);

/// Seed for one repetition of one cell (splitmix-style mixing keeps streams
/// independent and order-free).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t cell, std::uint64_t repetition);

}  // namespace pivotwalk
