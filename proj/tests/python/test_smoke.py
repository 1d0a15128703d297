"""Smoke tests for the python bindings."""

import math

import pytest

import pivotwalk as pw


def eight_config(controller, sweep_deg):
    cfg = pw.SimConfig()
    figure = pw.EightShape(0.04, 0.04, 0.1, 0.05)
    cfg.path = figure
    period = pw.eight_shape_period(figure)
    cfg.sampling = pw.PathSampling(0.0, period, 0.1)
    cfg.t_f = period
    cfg.initial_state = pw.RobotState(0.0, -0.042, math.pi / 2)
    cfg.geometry = pw.RobotGeometry(0.01)
    cfg.controller = controller
    cfg.gait.sweep_angle = math.radians(sweep_deg)
    return cfg


def test_version_present():
    assert pw.__version__


def test_rotation_matrix_is_orthonormal():
    r = pw.rotation_matrix(0.37)
    rt = r @ r.T
    assert abs(rt[0, 0] - 1) < 1e-14
    assert abs(rt[0, 1]) < 1e-14
    assert abs(r[2, 2] - 1) < 1e-15


def test_kinematics_basics():
    geom = pw.RobotGeometry(0.01)
    state = pw.RobotState(0, 0, 0)
    d = pw.state_derivative(state, pw.ControlInput(1, 1.0), geom)
    assert d.dx == pytest.approx(0.005)
    assert d.dy == pytest.approx(0.0)
    p = pw.pivot_positions(state, geom)
    assert p.a[1] == pytest.approx(0.005)
    assert p.b[1] == pytest.approx(-0.005)
    flipped = pw.step_exact_arc(state, pw.ControlInput(1, math.pi), geom, 1.0)
    assert flipped.y == pytest.approx(0.01)


def test_invalid_sigma_raises():
    geom = pw.RobotGeometry(0.01)
    with pytest.raises(ValueError):
        pw.state_derivative(pw.RobotState(0, 0, 0), pw.ControlInput(0, 1.0), geom)


def test_eight_path_eval():
    figure = pw.EightShape(0.04, 0.04, 0.1, 0.05)
    d = pw.eval_path(figure, 0.0)
    assert d.x == pytest.approx(0.0)
    assert d.y == pytest.approx(-0.04)
    assert pw.eight_shape_period(figure) == pytest.approx(40 * math.pi)
    assert pw.desired_heading(figure, 0.0) == pytest.approx(math.pi)


def test_geometric_tracking_run():
    ctrl = pw.GeometricController()
    ctrl.gains.k = 30.0
    result = pw.run_simulation(eight_config(ctrl, 10))
    m = result.metrics
    assert m.n_steps > 100
    assert m.mean_error < 0.03
    assert m.travel_distance > 0.1
    assert len(result.log.records) == 1257


def test_gait_run_matches_chord_formula():
    cfg = pw.SimConfig()
    line = pw.StraightLine()
    line.heading = math.pi / 2
    cfg.path = line
    cfg.initial_state = pw.RobotState(0, 0, math.pi / 2)
    cfg.geometry = pw.RobotGeometry(0.01)
    cfg.controller = pw.StraightLineGaitController()
    cfg.controller.goal_distance = 0.06
    cfg.controller.omega_nominal = 1.0
    cfg.gait.desired_sweep = math.radians(90)
    cfg.dt_control = 1e-3
    cfg.dt_integration = 1e-3
    cfg.t_f = 1e4
    result = pw.run_simulation(cfg)
    s = math.sin(math.radians(45))
    oracle = math.floor((0.06 - 0.005 * s) / (0.01 * s)) + 1
    assert abs(result.metrics.n_steps - oracle) <= 1


def test_config_validation_raises():
    ctrl = pw.GeometricController()
    ctrl.gains.k = 30.0
    cfg = eight_config(ctrl, 10)
    cfg.gait.sweep_angle = 0.0
    with pytest.raises(pw.ConfigError):
        pw.validate_config(cfg)


def test_sweep_is_deterministic():
    spec = pw.SweepSpec()
    ctrl = pw.GeometricController()
    ctrl.gains.k = 30.0
    spec.base = eight_config(ctrl, 10)
    spec.base.t_f = 10.0
    spec.base.noise.omega_jitter_std = 0.05
    spec.sweep_angles = [math.radians(10), math.radians(20)]
    spec.repetitions = 3
    serial = pw.run_sweep(spec, 1)
    parallel = pw.run_sweep(spec, 2)
    assert [c.me for c in serial] == [c.me for c in parallel]
    assert all(c.repetitions == 3 for c in serial)
