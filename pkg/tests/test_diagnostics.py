"""Conserved functionals, sup norms, commutator and smoothing-estimate checks."""
import numpy as np
import pytest

from dgzk import (
    DispersionSymbol,
    Grid,
    SimulationConfig,
    Trajectory,
    commutator_check,
    cubic_integral,
    diagnostics_csv,
    energy,
    field_from_modes,
    initial_data,
    l1t_linf_estimate_check,
    mass,
    propagate,
    simulate,
    sup_norm_diagnostics,
    zero_field,
)
from dgzk.diagnostics import build_records, L1tLinfReport
from dgzk.errors import InsufficientDataError

from fieldgen import band_field, real_field

SYM = DispersionSymbol(1, 1.0)


def test_mass_closed_forms():
    g = Grid(16, 16)
    assert mass(zero_field(g)) == 0.0
    c = field_from_modes(g, {(1, 0): 0.5}, hermitian=True)
    assert np.isclose(mass(c), 2 * np.pi**2, rtol=1e-13)


def test_mass_matches_grid_quadrature(rng):
    g = Grid(32, 32)
    samples = rng.standard_normal(g.shape)
    from dgzk import forward_transform

    f = forward_transform(g, samples)
    quad = g.cell_area * np.sum(samples**2)
    assert abs(mass(f) - quad) <= 1e-10 * quad


def test_energy_closed_form():
    g = Grid(16, 16)
    assert energy(zero_field(g), SYM) == 0.0
    c = field_from_modes(g, {(1, 0): 0.5}, hermitian=True)
    assert abs(energy(c, SYM) - np.pi**2) <= 1e-10
    # opposite sign symbol cancels the quadratic weight on the diagonal mode
    diag = field_from_modes(g, {(1, 1): 0.5}, hermitian=True)
    assert energy(diag, DispersionSymbol(1, 1.0, sign=-1), include_cubic=False) == 0.0


def test_cubic_integral_closed_form():
    g = Grid(32, 32)
    u = field_from_modes(g, {(1, 0): 0.5, (2, 0): 0.5}, hermitian=True)
    assert abs(cubic_integral(u) - 3 * np.pi**2) <= 1e-9


def test_cubic_integral_refinement_oracle(rng):
    from dgzk import resample_values

    g = Grid(32, 32)
    u = band_field(g, 10, rng, mean_zero_x=False)
    got = cubic_integral(u)
    vals4 = resample_values(u, 4).real
    finer = (2 * np.pi) ** 2 * float(np.mean(vals4**3))
    assert abs(got - finer) <= 1e-9 * max(1.0, abs(finer))


def test_sup_norm_closed_forms():
    g = Grid(32, 32)
    c = field_from_modes(g, {(1, 0): 0.5}, hermitian=True)
    su, sx, sy = sup_norm_diagnostics(c)
    assert np.isclose(su, 1.0, atol=1e-12)
    assert np.isclose(sx, 1.0, atol=1e-12)
    assert sy <= 1e-12
    assert sup_norm_diagnostics(zero_field(g)) == (0.0, 0.0, 0.0)


def test_sup_norm_refinement_stability():
    g = Grid(32, 32)
    f = field_from_modes(g, {(1, 0): 0.5, (0, 1): 0.5}, hermitian=True)  # cos x + cos y
    base = sup_norm_diagnostics(f, refine=2)
    fine = sup_norm_diagnostics(f, refine=4)
    assert all(abs(a - b) <= 1e-6 for a, b in zip(base, fine))
    assert np.isclose(base[0], 2.0, atol=1e-12)


def test_commutator_two_mode_closed_form():
    g = Grid(16, 16)
    f = field_from_modes(g, {(1, 0): 1.0})  # e^{ix}, complex on purpose
    lhs, rhs = commutator_check(f, f, 2.0)
    assert abs(lhs - 6 * np.pi) <= 1e-10
    assert rhs > 0


def test_commutator_constant_f_is_exactly_zero(rng):
    g = Grid(16, 16)
    const = field_from_modes(g, {(0, 0): 3.0})
    h = band_field(g, 4, rng, mean_zero_x=False)
    lhs, _ = commutator_check(const, h, 1.5)
    assert lhs == 0.0


def test_commutator_validation(rng):
    g = Grid(16, 16)
    f = real_field(g, rng)
    with pytest.raises(ValueError):
        commutator_check(f, f, 0.5)
    with pytest.raises(ValueError):
        commutator_check(f, real_field(Grid(32, 32), rng), 1.0)


def test_commutator_envelope_quick(rng):
    g = Grid(32, 32)
    for s in (1.0, 1.5, 2.0):
        for _ in range(7):
            f = band_field(g, 8, rng, mean_zero_x=False)
            h = band_field(g, 8, rng, mean_zero_x=False)
            lhs, rhs = commutator_check(f, h, s)
            assert lhs <= 100.0 * rhs


def test_g_accum_is_trapezoid_of_sups():
    g = Grid(32, 32)
    cfg = SimulationConfig(grid=g, symbol=SYM, dt=5e-3, t_end=0.1, record_every=4)
    traj = simulate(cfg, initial_data(g, "cos-x", amplitude=0.5))
    sums = np.array([r.sup_u + r.sup_ux + r.sup_uy for r in traj.diagnostics])
    want = np.trapezoid(sums, traj.times)
    assert abs(traj.diagnostics[-1].g_accum - want) <= 1e-12 * max(1.0, want)
    accs = [r.g_accum for r in traj.diagnostics]
    assert all(a <= b + 1e-15 for a, b in zip(accs, accs[1:]))


def test_diagnostics_csv_shape():
    g = Grid(16, 16)
    cfg = SimulationConfig(grid=g, symbol=SYM, dt=0.01, t_end=0.03, h_s=(1.0, 2.0))
    traj = simulate(cfg, initial_data(g, "cos-x", amplitude=0.1))
    header, rows = diagnostics_csv(traj)
    assert header == ["t", "mass", "energy", "h1", "h2",
                      "sup_u", "sup_ux", "sup_uy", "g_accum"]
    assert len(rows) == len(traj.times)
    assert all(len(r) == len(header) for r in rows)


def _manual_trajectory(g, symbol, t_end, n_records):
    phi = field_from_modes(g, {(1, 1): 1.0})
    times = np.linspace(0.0, t_end, n_records)
    states = [propagate(phi, float(t), symbol) for t in times]
    cfg = SimulationConfig(grid=g, symbol=symbol, dt=times[1], t_end=t_end)
    records = build_records(times, states, symbol)
    return Trajectory(times=times, states=states, diagnostics=records, config=cfg)


def test_l1t_linf_linear_single_mode_closed_form():
    """|W(t) e^{i(x+y)}| is identically 1, so the left side is exactly T."""
    g = Grid(16, 16)
    T = 0.75
    traj = _manual_trajectory(g, SYM, T, 6)
    rep = l1t_linf_estimate_check(traj, 1.0, 1.0)
    assert abs(rep.lhs - T) <= 1e-10

    # right side in closed form: the state is a single mode at (1, 1) and
    # the source u^2/2 a single mode at (2, 2) with coefficient 1/2
    mixed = 2.0 * 2 * np.pi  # (1+1)^{1/2} twice, times ||e^{i(x+y)}|| = 2 pi
    src = T * np.sqrt(5.0) * np.pi
    assert abs(rep.rhs - np.sqrt(T) * (mixed + src)) <= 1e-8
    assert rep.ratio == pytest.approx(rep.lhs / rep.rhs)


def test_l1t_linf_zero_trajectory():
    g = Grid(16, 16)
    times = np.linspace(0.0, 0.5, 5)
    states = [zero_field(g) for _ in times]
    cfg = SimulationConfig(grid=g, symbol=SYM, dt=0.125, t_end=0.5)
    traj = Trajectory(times=times, states=states,
                      diagnostics=build_records(times, states, SYM), config=cfg)
    rep = l1t_linf_estimate_check(traj, 1.0, 1.0)
    assert rep.lhs == 0.0 and rep.rhs == 0.0 and rep.ratio == 0.0


def test_l1t_linf_nonlinear_envelope():
    g = Grid(32, 32)
    cfg = SimulationConfig(grid=g, symbol=SYM, dt=1e-2, t_end=0.5, record_every=5)
    traj = simulate(cfg, initial_data(g, "gaussian-bell", amplitude=0.5))
    rep = l1t_linf_estimate_check(traj, 1.0, 1.0)
    assert 0 < rep.ratio <= 100.0


def test_l1t_linf_validation():
    g = Grid(16, 16)
    short = _manual_trajectory(g, SYM, 0.1, 3)
    with pytest.raises(InsufficientDataError):
        l1t_linf_estimate_check(short, 1.0, 1.0)
    traj = _manual_trajectory(g, SYM, 0.1, 6)
    with pytest.raises(ValueError):
        l1t_linf_estimate_check(traj, 0.3, 1.0)  # below 1/2 - 1/2^{alpha+2}
    with pytest.raises(ValueError):
        l1t_linf_estimate_check(traj, 1.0, 0.2)  # below 1/2 - beta/4
