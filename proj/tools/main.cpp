#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pivotwalk/config.hpp"
#include "pivotwalk/io.hpp"
#include "pivotwalk/sim.hpp"
#include "pivotwalk/sweep.hpp"
#include "pivotwalk/units.hpp"

namespace {

namespace fs = std::filesystem;
using namespace pivotwalk;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string integrator;
  bool ascent_sign = false;
};

void add_common_flags(CLI::App* cmd, CommonOpts& opts, bool with_overrides = true) {
  cmd->add_option("--config", opts.config_path, "run configuration file (JSON)")->required();
  cmd->add_option("--out", opts.out_dir, "output directory")->required();
  if (with_overrides) {
    cmd->add_option("--seed", opts.seed, "override the configured random seed")
        ->each([&](const std::string&) { opts.seed_set = true; });
    cmd->add_option("--integrator", opts.integrator, "override the integrator (arc | euler)")
        ->check(CLI::IsMember({"arc", "euler"}));
    cmd->add_flag("--paper-literal-sign", opts.ascent_sign,
                  "use the additive gradient-update sign convention for the optimization "
                  "controller (ascends the cost)");
  }
}

config::Overrides make_overrides(const CommonOpts& opts) {
  config::Overrides o;
  if (opts.seed_set) o.seed = opts.seed;
  if (opts.integrator == "arc") o.integrator = Integrator::ExactArc;
  if (opts.integrator == "euler") o.integrator = Integrator::Euler;
  o.ascent_sign = opts.ascent_sign;
  return o;
}

void ensure_out_dir(const std::string& dir) {
  fs::create_directories(dir);
}

int run_simulate(const CommonOpts& opts) {
  SimConfig config = config::load_sim_config_file(opts.config_path);
  config::apply_overrides(config, make_overrides(opts));
  validate(config);

  const RunResult result = run_simulation(config);

  ensure_out_dir(opts.out_dir);
  const fs::path out(opts.out_dir);
  io::write_runlog_csv_file((out / "runlog.csv").string(), result.log);
  io::write_text_file((out / "metrics.json").string(), io::metrics_json(result.metrics));
  const std::string summary = io::run_summary_text(result.metrics);
  io::write_text_file((out / "summary.txt").string(), summary);

  std::cout << summary;
  std::printf("completed in %.3f s\n", result.metrics.wall_time);
  return kExitOk;
}

int run_gait_analysis(const CommonOpts& opts, double start_deg, double stop_deg, double step_deg) {
  SimConfig config = config::load_sim_config_file(opts.config_path);
  config::apply_overrides(config, make_overrides(opts));
  validate(config);

  if (!(step_deg > 0.0) || !(start_deg <= stop_deg)) {
    throw ConfigError("angles", "need angle-start <= angle-stop and angle-step > 0");
  }
  std::vector<double> angles;
  for (double a = start_deg; a <= stop_deg + 1e-9; a += step_deg) {
    angles.push_back(units::degrees_to_radians(a));
  }

  const auto rows = gait_angle_table(config, angles);

  ensure_out_dir(opts.out_dir);
  const fs::path out(opts.out_dir);
  {
    std::ostringstream buf;
    io::write_steps_table_csv(buf, rows);
    io::write_text_file((out / "steps_vs_angle.csv").string(), buf.str());
  }
  {
    std::ostringstream buf;
    io::write_distance_table_csv(buf, rows);
    io::write_text_file((out / "distance_vs_angle.csv").string(), buf.str());
  }
  std::cout << "gait analysis over " << rows.size() << " sweep angles written to " << opts.out_dir
            << "\n";
  return kExitOk;
}

int run_sweep_cmd(const CommonOpts& opts, int jobs) {
  SweepSpec spec = config::load_sweep_spec_file(opts.config_path);
  config::apply_overrides(spec, make_overrides(opts));

  const auto cells = run_sweep(spec, jobs);

  ensure_out_dir(opts.out_dir);
  io::write_text_file((fs::path(opts.out_dir) / "sweep.json").string(), io::sweep_json(cells));
  std::cout << "swept " << cells.size() << " cells x " << spec.repetitions << " repetitions\n";
  return kExitOk;
}

int run_compare(const std::string& path_a, const std::string& path_b, const std::string& out_dir) {
  SimConfig a = config::load_sim_config_file(path_a);
  SimConfig b = config::load_sim_config_file(path_b);
  if (!(a.path == b.path)) {
    throw ConfigError("path", "compared configs must share the same reference path");
  }
  if (a.gait.sweep_angle != b.gait.sweep_angle || a.gait.tilt_angle != b.gait.tilt_angle) {
    throw ConfigError("gait", "compared configs must share the same gait parameters");
  }
  if (a.dt_control != b.dt_control) {
    throw ConfigError("dt_control", "compared configs must share the same control period");
  }

  const RunResult ra = run_simulation(a);
  const RunResult rb = run_simulation(b);

  ensure_out_dir(out_dir);
  const fs::path out(out_dir);
  {
    std::ostringstream buf;
    buf << "t,e_n_a,e_n_b\n";
    std::size_t ia = 0;
    std::size_t ib = 0;
    const auto& rec_a = ra.log.records;
    const auto& rec_b = rb.log.records;
    while (ia < rec_a.size() && ib < rec_b.size()) {
      while (ia < rec_a.size() && !rec_a[ia].control_tick) ++ia;
      while (ib < rec_b.size() && !rec_b[ib].control_tick) ++ib;
      if (ia >= rec_a.size() || ib >= rec_b.size()) break;
      buf << io::format_double(rec_a[ia].t) << ',' << io::format_double(rec_a[ia].e_n) << ','
          << io::format_double(rec_b[ib].e_n) << '\n';
      ++ia;
      ++ib;
    }
    io::write_text_file((out / "compare.csv").string(), buf.str());
  }

  const std::string name_a = config::controller_name(a.controller);
  const std::string name_b = config::controller_name(b.controller);
  std::ostringstream summary;
  summary << "A (" << name_a << "): mean e_n " << io::format_double(ra.metrics.mean_error)
          << " m, " << ra.metrics.n_steps << " steps\n";
  summary << "B (" << name_b << "): mean e_n " << io::format_double(rb.metrics.mean_error)
          << " m, " << rb.metrics.n_steps << " steps\n";
  summary << "lower mean e_n: "
          << (ra.metrics.mean_error <= rb.metrics.mean_error ? "A" : "B") << "\n";
  summary << "fewer steps:    "
          << (ra.metrics.n_steps <= rb.metrics.n_steps ? "A" : "B") << "\n";
  io::write_text_file((out / "compare_summary.txt").string(), summary.str());
  std::cout << summary.str();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simulation and control toolkit for magnetically actuated pivot-walking "
               "millirobots"};
  app.require_subcommand(1);

  CommonOpts sim_opts;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "run one closed-loop simulation");
  add_common_flags(sim_cmd, sim_opts);

  CommonOpts gait_opts;
  double angle_start = 1.0;
  double angle_stop = 359.0;
  double angle_step = 1.0;
  CLI::App* gait_cmd = app.add_subcommand(
      "gait-analysis", "straight-line gait step/distance tables over a sweep-angle grid");
  add_common_flags(gait_cmd, gait_opts);
  gait_cmd->add_option("--angle-start", angle_start, "first sweep angle (deg)");
  gait_cmd->add_option("--angle-stop", angle_stop, "last sweep angle (deg)");
  gait_cmd->add_option("--angle-step", angle_step, "grid spacing (deg)");

  CommonOpts sweep_opts;
  int jobs = 1;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "parametric sweep with repetitions");
  add_common_flags(sweep_cmd, sweep_opts);
  sweep_cmd->add_option("--jobs", jobs, "worker threads (results are order-independent)");

  std::string cmp_a;
  std::string cmp_b;
  std::string cmp_out;
  CLI::App* cmp_cmd = app.add_subcommand("compare", "run two configs on one path side by side");
  cmp_cmd->add_option("--config-a", cmp_a, "first run configuration")->required();
  cmp_cmd->add_option("--config-b", cmp_b, "second run configuration")->required();
  cmp_cmd->add_option("--out", cmp_out, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim_cmd->parsed()) return run_simulate(sim_opts);
    if (gait_cmd->parsed()) return run_gait_analysis(gait_opts, angle_start, angle_stop, angle_step);
    if (sweep_cmd->parsed()) return run_sweep_cmd(sweep_opts, jobs);
    if (cmp_cmd->parsed()) return run_compare(cmp_a, cmp_b, cmp_out);
  } catch (const ConfigError& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitConfig;
  } catch (const SimulationError& e) {
    std::cerr << "simulation failed: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
