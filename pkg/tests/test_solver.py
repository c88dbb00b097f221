"""Stepper correctness, conservation, regularized family, convergence studies."""
import warnings

import numpy as np
import pytest

from dgzk import (
    DispersionSymbol,
    Grid,
    SimulationConfig,
    Trajectory,
    field_from_modes,
    initial_data,
    l2_norm,
    nonlinear_term,
    project_mean_zero_x,
    propagate,
    simulate,
    solve_regularized_family,
    spatial_convergence_study,
    step_etdrk4,
    step_ifrk4,
    temporal_order_study,
    zero_field,
)
from dgzk.solver import Etdrk4Stepper, Ifrk4Stepper, l2_identity_residual
from dgzk.errors import DivergenceError, InvalidInitialDataError

from fieldgen import band_field, real_field

SYM = DispersionSymbol(1, 1.0)


def test_nonlinear_term_closed_form():
    g = Grid(32, 32)
    u = field_from_modes(g, {(1, 0): 0.5}, hermitian=True)  # cos x
    out = nonlinear_term(u)
    # -0.5 d/dx(cos^2 x) = 0.5 sin 2x
    want = field_from_modes(g, {(2, 0): -0.25j}, hermitian=True)
    assert np.max(np.abs(out.coeffs - want.coeffs)) <= 1e-14


def test_nonlinear_term_zero():
    g = Grid(16, 16)
    out = nonlinear_term(zero_field(g))
    assert np.max(np.abs(out.coeffs)) == 0.0


def test_nonlinear_term_fine_grid_oracle(rng):
    """Dealiased pseudo-spectral quadratic term vs exact doubled-grid product."""
    from dgzk import dealias, derivative, embed_in_grid, forward_transform, inverse_transform, truncate_to_grid

    g = Grid(32, 32)
    u = band_field(g, 10, rng)
    got = nonlinear_term(u)

    big = Grid(64, 64)
    vals = inverse_transform(embed_in_grid(u, big))
    sq = forward_transform(big, vals * vals)
    exact = dealias(truncate_to_grid(
        type(sq)(big, -0.5j * big.kx2d * sq.coeffs), g))
    assert np.max(np.abs(got.coeffs - exact.coeffs)) <= 1e-10


@pytest.mark.parametrize("cls,tol", [(Etdrk4Stepper, 1e-13), (Ifrk4Stepper, 1e-12)])
def test_linear_limit_matches_propagator(rng, cls, tol):
    """With the quadratic term switched off a step is exactly the group."""
    g = Grid(32, 32)
    f = project_mean_zero_x(real_field(g, rng))
    dt = 0.05
    stepper = cls(g, SYM, dt, nonlinear=lambda c: np.zeros_like(c))
    got = stepper.step(f.coeffs)
    want = propagate(f, dt, SYM).coeffs
    assert np.max(np.abs(got - want)) <= tol * max(1.0, np.max(np.abs(want)))


def test_step_functions_on_zero_field():
    g = Grid(16, 16)
    z = zero_field(g)
    assert np.max(np.abs(step_etdrk4(z, 0.01, SYM).coeffs)) == 0.0
    assert np.max(np.abs(step_ifrk4(z, 0.01, SYM).coeffs)) == 0.0


def test_simulate_zero_data_stays_zero():
    g = Grid(16, 16)
    cfg = SimulationConfig(grid=g, symbol=SYM, dt=0.01, t_end=0.05)
    traj = simulate(cfg, zero_field(g))
    assert all(np.max(np.abs(s.coeffs)) == 0.0 for s in traj.states)
    assert all(r.mass == 0.0 for r in traj.diagnostics)


def test_simulate_records_and_final_time():
    g = Grid(16, 16)
    cfg = SimulationConfig(grid=g, symbol=SYM, dt=0.01, t_end=0.1, record_every=4)
    traj = simulate(cfg, initial_data(g, "cos-x", amplitude=0.1))
    assert traj.times[0] == 0.0
    assert np.isclose(traj.times[-1], 0.1)
    assert len(traj.times) == len(traj.states) == len(traj.diagnostics)


def test_simulate_single_step_when_dt_exceeds_t_end():
    g = Grid(16, 16)
    cfg = SimulationConfig(grid=g, symbol=SYM, dt=0.5, t_end=0.2)
    traj = simulate(cfg, initial_data(g, "cos-x", amplitude=0.1))
    assert list(traj.times) == [0.0, 0.2]


def test_mean_zero_gate():
    g = Grid(16, 16)
    cfg = SimulationConfig(grid=g, symbol=SYM, dt=0.01, t_end=0.05)
    bad = field_from_modes(g, {(0, 1): 0.5}, hermitian=True)  # cos y
    with pytest.raises(InvalidInitialDataError):
        simulate(cfg, bad)

    almost = field_from_modes(g, {(1, 0): 0.5, (0, 1): 1e-14}, hermitian=True)
    traj = simulate(cfg, almost)  # below tolerance: projected silently
    assert np.max(np.abs(traj.final_state.coeffs[0, :])) == 0.0


def test_simulate_grid_mismatch():
    cfg = SimulationConfig(grid=Grid(16, 16), symbol=SYM, dt=0.01, t_end=0.05)
    with pytest.raises(ValueError):
        simulate(cfg, zero_field(Grid(32, 32)))


def test_linearization_limit():
    """Tiny data evolves like the linear group."""
    g = Grid(32, 32)
    amp = 1e-10
    phi = initial_data(g, "single-mode", amplitude=amp, m=1, n=1)
    cfg = SimulationConfig(grid=g, symbol=SYM, dt=1e-3, t_end=0.5, record_every=10**9)
    traj = simulate(cfg, phi)
    lin = propagate(phi, 0.5, SYM)
    gap = 2 * np.pi * np.sqrt(np.sum(np.abs(traj.final_state.coeffs - lin.coeffs) ** 2))
    assert gap <= 1e-9 * l2_norm(phi)


def test_divergence_error_carries_location():
    g = Grid(32, 32)
    cfg = SimulationConfig(grid=g, symbol=SYM, dt=0.1, t_end=1.0)
    phi = initial_data(g, "single-mode", amplitude=1e6, m=1, n=1)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        with pytest.raises(DivergenceError) as info:
            simulate(cfg, phi)
    assert info.value.step >= 1
    assert info.value.t > 0.0


def test_cfl_warning():
    g = Grid(32, 32)
    cfg = SimulationConfig(grid=g, symbol=SYM, dt=1e-2, t_end=0.02)
    phi = initial_data(g, "cos-x", amplitude=50.0)
    with pytest.warns(RuntimeWarning, match="CFL"):
        try:
            simulate(cfg, phi)
        except DivergenceError:
            pass


def test_phase_magnitude_warning():
    g = Grid(64, 64)
    sym = DispersionSymbol(3, 1.0)
    cfg = SimulationConfig(grid=g, symbol=sym, dt=0.1, t_end=0.1)
    with pytest.warns(RuntimeWarning, match="phase per step"):
        simulate(cfg, zero_field(g))


def test_quick_conservation():
    g = Grid(32, 32)
    cfg = SimulationConfig(grid=g, symbol=SYM, dt=2e-3, t_end=0.2, record_every=20)
    traj = simulate(cfg, initial_data(g, "cos-x"))
    m = [r.mass for r in traj.diagnostics]
    e = [r.energy for r in traj.diagnostics]
    assert abs(m[-1] - m[0]) <= 1e-10 * abs(m[0])
    assert abs(e[-1] - e[0]) <= 1e-8 * abs(e[0])


def test_temporal_order():
    g = Grid(32, 32)
    phi = initial_data(g, "gaussian-bell")
    rep = temporal_order_study(g, SYM, phi, t_end=0.1,
                               dts=[4e-3, 2e-3, 1e-3], ref_refine=8)
    assert rep.fitted_order >= 3.5
    assert rep.errors[0] > rep.errors[-1]


def test_trajectory_validation():
    g = Grid(16, 16)
    cfg = SimulationConfig(grid=g, symbol=SYM, dt=0.01, t_end=0.05)
    with pytest.raises(ValueError):
        Trajectory(times=np.array([0.1, 0.2]), states=[zero_field(g)] * 2,
                   diagnostics=[None, None], config=cfg)
    with pytest.raises(ValueError):
        Trajectory(times=np.array([0.0]), states=[], diagnostics=[], config=cfg)


def test_config_validation():
    g = Grid(16, 16)
    with pytest.raises(ValueError):
        SimulationConfig(grid=g, symbol=SYM, dt=-0.1, t_end=1.0)
    with pytest.raises(ValueError):
        SimulationConfig(grid=g, symbol=SYM, dt=0.1, t_end=0.0)
    with pytest.raises(ValueError):
        SimulationConfig(grid=g, symbol=SYM, dt=0.1, t_end=1.0, record_every=0)
    with pytest.raises(ValueError):
        SimulationConfig(grid=g, symbol=SYM, dt=0.1, t_end=1.0, integrator="euler")


def test_regularized_family_monotone():
    g = Grid(32, 32)
    cfg = SimulationConfig(grid=g, symbol=SYM, dt=2e-3, t_end=0.25, record_every=5)
    phi = initial_data(g, "gaussian-bell", amplitude=0.5)
    fam = solve_regularized_family(cfg, phi, [1e-2, 1e-3, 1e-4])
    assert fam.mus == [1e-2, 1e-3, 1e-4]
    assert all(a >= b for a, b in zip(fam.l2_gaps, fam.l2_gaps[1:]))
    assert np.all(fam.identity_residuals <= 1e-6)
    assert fam.reference.config.symbol.mu == 0.0


def test_regularized_family_validation():
    g = Grid(16, 16)
    cfg = SimulationConfig(grid=g, symbol=SYM, dt=0.01, t_end=0.05)
    phi = initial_data(g, "cos-x", amplitude=0.1)
    with pytest.raises(ValueError):
        solve_regularized_family(cfg, phi, [1e-3, 1e-2])
    with pytest.raises(ValueError):
        solve_regularized_family(cfg, phi, [1e-2, -1e-3])
    with pytest.raises(ValueError):
        solve_regularized_family(cfg, phi, [])


def test_strong_damping_is_monotone_decay():
    g = Grid(32, 32)
    sym = DispersionSymbol(1, 1.0, mu=10.0)
    cfg = SimulationConfig(grid=g, symbol=sym, dt=1e-3, t_end=0.1, record_every=10)
    traj = simulate(cfg, initial_data(g, "gaussian-bell", amplitude=0.5))
    norms = [l2_norm(s) for s in traj.states]
    assert all(a > b for a, b in zip(norms, norms[1:]))
    # note: the balance identity is only checkable at moderate mu; here the
    # dissipation integrand collapses inside a single step and trapezoid
    # accumulation cannot see it, so we assert the monotone decay alone


def test_identity_residual_requires_damping():
    g = Grid(16, 16)
    cfg = SimulationConfig(grid=g, symbol=SYM, dt=0.01, t_end=0.05)
    traj = simulate(cfg, initial_data(g, "cos-x", amplitude=0.1))
    assert traj.dissipation is None
    with pytest.raises(ValueError):
        l2_identity_residual(traj)


def test_spatial_spectral_convergence():
    def profile(grid):
        return initial_data(grid, "gaussian-bell")

    rep = spatial_convergence_study(SYM, profile, [16, 32, 64], t_end=0.05, dt=5e-3)
    e16, e32, e64 = rep.errors
    # analytic data: each doubling gains orders of magnitude until roundoff
    assert e32 <= max(1e-3 * e16, 10 * rep.floor)
    assert e64 <= max(1e-3 * e32, 10 * rep.floor)
