#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pivotwalk/config.hpp"
#include "pivotwalk/controllers.hpp"
#include "pivotwalk/io.hpp"
#include "pivotwalk/kinematics.hpp"
#include "pivotwalk/sim.hpp"
#include "pivotwalk/sweep.hpp"
#include "pivotwalk/trajectory.hpp"
#include "pivotwalk/units.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace pivotwalk;

namespace {

void define_kinematics(py::module_& m) {
  py::class_<RobotState>(m, "RobotState")
      .def(py::init<>())
      .def(py::init<double, double, double>(), py::arg("x"), py::arg("y"), py::arg("theta"))
      .def_readwrite("x", &RobotState::x)
      .def_readwrite("y", &RobotState::y)
      .def_readwrite("theta", &RobotState::theta)
      .def("__repr__", [](const RobotState& s) {
        return "RobotState(x=" + io::format_double(s.x) + ", y=" + io::format_double(s.y) +
               ", theta=" + io::format_double(s.theta) + ")";
      });

  py::class_<RobotGeometry>(m, "RobotGeometry")
      .def(py::init<>())
      .def(py::init<double>(), py::arg("length"))
      .def_readwrite("length", &RobotGeometry::length);

  py::class_<ControlInput>(m, "ControlInput")
      .def(py::init<>())
      .def(py::init<int, double>(), py::arg("sigma"), py::arg("omega"))
      .def_readwrite("sigma", &ControlInput::sigma)
      .def_readwrite("omega", &ControlInput::omega);

  py::class_<PivotPair>(m, "PivotPair")
      .def_readwrite("a", &PivotPair::a)
      .def_readwrite("b", &PivotPair::b);

  py::class_<StateDerivative>(m, "StateDerivative")
      .def_readwrite("dx", &StateDerivative::dx)
      .def_readwrite("dy", &StateDerivative::dy)
      .def_readwrite("dtheta", &StateDerivative::dtheta);

  m.def("rotation_matrix", &rotation_matrix, py::arg("theta"),
        "Inertial-to-body rotation transform (3x3, orthonormal, det +1).");
  m.def("state_derivative", &state_derivative, py::arg("state"), py::arg("input"), py::arg("geom"),
        "Velocity of the sigma-switched kinematic model.");
  m.def("pivot_positions", &pivot_positions, py::arg("state"), py::arg("geom"));
  m.def("active_pivot", &active_pivot, py::arg("state"), py::arg("sigma"), py::arg("geom"));
  m.def("step_exact_arc", &step_exact_arc, py::arg("state"), py::arg("input"), py::arg("geom"),
        py::arg("dt"), "Rotate the center about the active pivot by omega*dt (exact).");
  m.def("step_euler", &step_euler, py::arg("state"), py::arg("input"), py::arg("geom"),
        py::arg("dt"), "One explicit-Euler step of the velocity model.");
}

void define_trajectory(py::module_& m) {
  py::class_<DesiredState>(m, "DesiredState")
      .def(py::init<>())
      .def_readwrite("x", &DesiredState::x)
      .def_readwrite("y", &DesiredState::y)
      .def_readwrite("theta", &DesiredState::theta)
      .def_readwrite("vx", &DesiredState::vx)
      .def_readwrite("vy", &DesiredState::vy);

  py::class_<EightShape>(m, "EightShape")
      .def(py::init<>())
      .def(py::init<double, double, double, double>(), py::arg("amp_x"), py::arg("amp_y"),
           py::arg("freq_x"), py::arg("freq_y"))
      .def_readwrite("amp_x", &EightShape::amp_x)
      .def_readwrite("amp_y", &EightShape::amp_y)
      .def_readwrite("freq_x", &EightShape::freq_x)
      .def_readwrite("freq_y", &EightShape::freq_y);

  py::class_<StraightLine>(m, "StraightLine")
      .def(py::init<>())
      .def_readwrite("origin", &StraightLine::origin)
      .def_readwrite("heading", &StraightLine::heading)
      .def_readwrite("length", &StraightLine::length)
      .def_readwrite("speed", &StraightLine::speed);

  py::class_<Waypoint>(m, "Waypoint")
      .def(py::init<>())
      .def(py::init<double, double, double>(), py::arg("t"), py::arg("x"), py::arg("y"))
      .def_readwrite("t", &Waypoint::t)
      .def_readwrite("x", &Waypoint::x)
      .def_readwrite("y", &Waypoint::y);

  py::class_<Waypoints>(m, "Waypoints")
      .def(py::init<>())
      .def_readwrite("points", &Waypoints::points);

  py::class_<PathSampling>(m, "PathSampling")
      .def(py::init<>())
      .def(py::init<double, double, double>(), py::arg("t0"), py::arg("tf"), py::arg("dt"))
      .def_readwrite("t0", &PathSampling::t0)
      .def_readwrite("tf", &PathSampling::tf)
      .def_readwrite("dt", &PathSampling::dt);

  m.def("eval_path", &eval_path, py::arg("spec"), py::arg("t"));
  m.def("desired_heading", &desired_heading, py::arg("spec"), py::arg("t"));
  m.def("sample_path", &sample_path, py::arg("spec"), py::arg("sampling"));
  m.def("load_waypoints_csv", &load_waypoints_csv, py::arg("path"));
  m.def("eight_shape_period", &eight_shape_period, py::arg("spec"));
}

void define_controllers(py::module_& m) {
  py::class_<GaitParams>(m, "GaitParams")
      .def(py::init<>())
      .def_readwrite("sweep_angle", &GaitParams::sweep_angle)
      .def_readwrite("tilt_angle", &GaitParams::tilt_angle)
      .def_readwrite("desired_sweep", &GaitParams::desired_sweep);

  py::class_<GeometricGains>(m, "GeometricGains")
      .def(py::init<>())
      .def_readwrite("k", &GeometricGains::k)
      .def_readwrite("omega_max", &GeometricGains::omega_max);

  py::class_<OptimGains>(m, "OptimGains")
      .def(py::init<>())
      .def_readwrite("eta", &OptimGains::eta)
      .def_readwrite("omega_max", &OptimGains::omega_max)
      .def_readwrite("theta_weight", &OptimGains::theta_weight)
      .def_readwrite("ascent_sign", &OptimGains::ascent_sign);

  py::class_<ControllerState>(m, "ControllerState")
      .def(py::init<>())
      .def_readwrite("sigma_current", &ControllerState::sigma_current)
      .def_readwrite("theta_at_last_switch", &ControllerState::theta_at_last_switch)
      .def_readwrite("omega0", &ControllerState::omega0)
      .def_readwrite("sigma0", &ControllerState::sigma0)
      .def_readwrite("switch_count", &ControllerState::switch_count);

  py::class_<ControlDecision>(m, "ControlDecision")
      .def_readwrite("input", &ControlDecision::input)
      .def_readwrite("state", &ControlDecision::state);

  py::class_<GaitDecision>(m, "GaitDecision")
      .def_readwrite("input", &GaitDecision::input)
      .def_readwrite("state", &GaitDecision::state)
      .def_readwrite("done", &GaitDecision::done);

  m.def("pivot_selection", &pivot_selection, py::arg("pivots"), py::arg("desired"),
        py::arg("sigma_current"));
  m.def("tracking_error", &tracking_error, py::arg("state"), py::arg("desired"));
  m.def("geometric_control_step", &geometric_control_step, py::arg("state"), py::arg("cstate"),
        py::arg("desired"), py::arg("gains"), py::arg("gait"), py::arg("geom"));
  m.def("cost", &cost, py::arg("state"), py::arg("desired"), py::arg("theta_weight"));
  m.def("grad_omega", &grad_omega, py::arg("state"), py::arg("desired"), py::arg("input"),
        py::arg("dt"), py::arg("geom"), py::arg("theta_weight"));
  m.def("grad_sigma", &grad_sigma, py::arg("state"), py::arg("desired"), py::arg("input"),
        py::arg("dt"), py::arg("geom"));
  m.def("optim_control_step", &optim_control_step, py::arg("state"), py::arg("cstate"),
        py::arg("desired"), py::arg("gains"), py::arg("gait"), py::arg("dt"), py::arg("geom"));
  m.def("straight_line_gait_step", &straight_line_gait_step, py::arg("state"), py::arg("cstate"),
        py::arg("gait"), py::arg("start"), py::arg("goal_distance"), py::arg("omega_nominal"));
  m.def("field_command", &field_command, py::arg("state"), py::arg("sigma"), py::arg("alpha"));
  m.def("make_tracking_controller_state", &make_tracking_controller_state, py::arg("state"),
        py::arg("desired"), py::arg("geom"));
  m.def("make_gait_controller_state", &make_gait_controller_state, py::arg("state"),
        py::arg("omega_nominal"));
}

void define_sim(py::module_& m) {
  py::enum_<Integrator>(m, "Integrator")
      .value("ExactArc", Integrator::ExactArc)
      .value("Euler", Integrator::Euler);

  py::class_<NoiseSpec>(m, "NoiseSpec")
      .def(py::init<>())
      .def_readwrite("omega_jitter_std", &NoiseSpec::omega_jitter_std)
      .def_readwrite("pivot_slip_std", &NoiseSpec::pivot_slip_std);

  py::class_<GeometricController>(m, "GeometricController")
      .def(py::init<>())
      .def_readwrite("gains", &GeometricController::gains);

  py::class_<OptimizationController>(m, "OptimizationController")
      .def(py::init<>())
      .def_readwrite("gains", &OptimizationController::gains);

  py::class_<StraightLineGaitController>(m, "StraightLineGaitController")
      .def(py::init<>())
      .def_readwrite("goal_distance", &StraightLineGaitController::goal_distance)
      .def_readwrite("omega_nominal", &StraightLineGaitController::omega_nominal);

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_readwrite("path", &SimConfig::path)
      .def_readwrite("sampling", &SimConfig::sampling)
      .def_readwrite("initial_state", &SimConfig::initial_state)
      .def_readwrite("geometry", &SimConfig::geometry)
      .def_readwrite("controller", &SimConfig::controller)
      .def_readwrite("gait", &SimConfig::gait)
      .def_readwrite("integrator", &SimConfig::integrator)
      .def_readwrite("dt_control", &SimConfig::dt_control)
      .def_readwrite("dt_integration", &SimConfig::dt_integration)
      .def_readwrite("t_f", &SimConfig::t_f)
      .def_readwrite("noise", &SimConfig::noise)
      .def_readwrite("seed", &SimConfig::seed);

  py::class_<LogRecord>(m, "LogRecord")
      .def_readwrite("t", &LogRecord::t)
      .def_readwrite("state", &LogRecord::state)
      .def_readwrite("input", &LogRecord::input)
      .def_readwrite("desired", &LogRecord::desired)
      .def_readwrite("e_n", &LogRecord::e_n)
      .def_readwrite("pivot", &LogRecord::pivot)
      .def_readwrite("switch_event", &LogRecord::switch_event)
      .def_readwrite("control_tick", &LogRecord::control_tick);

  py::class_<RunLog>(m, "RunLog").def_readwrite("records", &RunLog::records);

  py::class_<RunMetrics>(m, "RunMetrics")
      .def_readwrite("n_steps", &RunMetrics::n_steps)
      .def_readwrite("travel_distance", &RunMetrics::travel_distance)
      .def_readwrite("normalized_error", &RunMetrics::normalized_error)
      .def_readwrite("mean_error", &RunMetrics::mean_error)
      .def_readwrite("final_error", &RunMetrics::final_error)
      .def_readwrite("wall_time", &RunMetrics::wall_time);

  py::class_<RunResult>(m, "RunResult")
      .def_readwrite("log", &RunResult::log)
      .def_readwrite("metrics", &RunResult::metrics);

  m.def("validate_config", &validate, py::arg("config"));
  m.def("run_simulation", &run_simulation, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("compute_metrics", &compute_metrics, py::arg("log"), py::arg("geom"));
}

void define_sweep(py::module_& m) {
  py::class_<SweepSpec>(m, "SweepSpec")
      .def(py::init<>())
      .def_readwrite("base", &SweepSpec::base)
      .def_readwrite("sweep_angles", &SweepSpec::sweep_angles)
      .def_readwrite("tilt_angles", &SweepSpec::tilt_angles)
      .def_readwrite("dt_paths", &SweepSpec::dt_paths)
      .def_readwrite("controllers", &SweepSpec::controllers)
      .def_readwrite("controller_names", &SweepSpec::controller_names)
      .def_readwrite("repetitions", &SweepSpec::repetitions);

  py::class_<SweepCell>(m, "SweepCell")
      .def_readwrite("sweep_angle", &SweepCell::sweep_angle)
      .def_readwrite("tilt_angle", &SweepCell::tilt_angle)
      .def_readwrite("dt_path", &SweepCell::dt_path)
      .def_readwrite("controller", &SweepCell::controller)
      .def_readwrite("repetitions", &SweepCell::repetitions)
      .def_readwrite("me", &SweepCell::me)
      .def_readwrite("variance", &SweepCell::variance)
      .def_readwrite("sd", &SweepCell::sd)
      .def_readwrite("mean_steps", &SweepCell::mean_steps);

  py::class_<GaitTableRow>(m, "GaitTableRow")
      .def_readwrite("theta", &GaitTableRow::theta)
      .def_readwrite("n_steps", &GaitTableRow::n_steps)
      .def_readwrite("travel_distance", &GaitTableRow::travel_distance);

  m.def("run_sweep", &run_sweep, py::arg("spec"), py::arg("jobs") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def("gait_angle_table", &gait_angle_table, py::arg("base"), py::arg("angles"),
        py::call_guard<py::gil_scoped_release>());
  m.def("steps_vs_sweep_angle", &steps_vs_sweep_angle, py::arg("base"), py::arg("angles"),
        py::call_guard<py::gil_scoped_release>());
  m.def("distance_vs_sweep_angle", &distance_vs_sweep_angle, py::arg("base"), py::arg("angles"),
        py::call_guard<py::gil_scoped_release>());
  m.def("derive_seed", &derive_seed, py::arg("base"), py::arg("cell"), py::arg("repetition"));
}

void define_io(py::module_& m) {
  m.def("load_sim_config", &config::load_sim_config_file, py::arg("path"));
  m.def("load_sweep_spec", &config::load_sweep_spec_file, py::arg("path"));
  m.def("write_runlog_csv", &io::write_runlog_csv_file, py::arg("path"), py::arg("log"));
  m.def("read_runlog_csv", &io::read_runlog_csv_file, py::arg("path"));
  m.def("metrics_json", &io::metrics_json, py::arg("metrics"));
  m.def("sweep_json", &io::sweep_json, py::arg("cells"));
  m.def("parse_quantity", [](const std::string& text, const std::string& dim) {
    using units::Dimension;
    Dimension d;
    if (dim == "length") d = Dimension::Length;
    else if (dim == "angle") d = Dimension::Angle;
    else if (dim == "duration") d = Dimension::Duration;
    else if (dim == "speed") d = Dimension::Speed;
    else if (dim == "angular_rate") d = Dimension::AngularRate;
    else throw std::invalid_argument("unknown dimension: " + dim);
    return units::parse(text, d);
  }, py::arg("text"), py::arg("dimension"),
     "Parse a unit-suffixed quantity (\"10 mm\", \"30 deg\", ...) into SI.");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Kinematics, controllers and simulation for pivot-walking millirobots";

  define_kinematics(m);
  define_trajectory(m);
  define_controllers(m);
  define_sim(m);
  define_sweep(m);
  define_io(m);

  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<SimulationError>(m, "SimulationError");
  py::register_exception<UndefinedHeadingError>(m, "UndefinedHeadingError");

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
