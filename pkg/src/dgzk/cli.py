"""Command-line front end.

    dgzk <command> [--config FILE] [--out DIR] [--set key=value ...]
                   [--workers N] [--seed S]

Commands: simulate, regularized-family, strichartz-scan, weyl-scan,
kernel-scan, vdc-scan, convergence, commutator-scan.

Every run writes resolved-config.txt into the output directory; successful
runs add CSV tables and a report.json (or summary.json); failures write an
error.json and print the same record to stderr.  Reruns with identical
configuration are byte-identical.

Exit codes:
    0  success
    2  configuration problem (parse error, unknown key, domain violation)
    3  invalid initial data
    4  solver divergence
    5  insufficient data for a requested fit or check
    6  I/O failure
    7  internal error
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from .configfile import COMMANDS, parse_config_text, resolve_config
from .diagnostics import commutator_check, diagnostics_csv
from .errors import (
    ConfigError,
    DivergenceError,
    InsufficientDataError,
    InvalidInitialDataError,
)
from .estimates import kernel_decay_scan, strichartz_scan, vandercorput_check, weyl_scan
from .fieldio import save_field
from .grid import Grid
from .presets import initial_data, random_band_field
from .propagator import DispersionSymbol
from .reporting import error_record, write_csv, write_json, write_resolved_config
from .solver import (
    SimulationConfig,
    simulate,
    solve_regularized_family,
    spatial_convergence_study,
    temporal_order_study,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INITIAL_DATA = 3
EXIT_DIVERGENCE = 4
EXIT_INSUFFICIENT = 5
EXIT_IO = 6
EXIT_INTERNAL = 7

_SCAN_PRESETS = {
    "strichartz-scan": {
        "alpha1-small": {"symbol.alpha": 1, "symbol.beta": 1.0,
                         "scan.j_min": 3, "scan.j_max": 5,
                         "scan.k_min": 1, "scan.k_max": 3, "scan.trials": 5},
        "alpha1-full": {"symbol.alpha": 1, "symbol.beta": 1.0,
                        "scan.j_min": 3, "scan.j_max": 7,
                        "scan.k_min": 3, "scan.k_max": 7, "scan.trials": 20},
        "alpha2-full": {"symbol.alpha": 2, "symbol.beta": 1.0,
                        "scan.j_min": 3, "scan.j_max": 7,
                        "scan.k_min": 3, "scan.k_max": 7, "scan.trials": 20},
        "alpha3-full": {"symbol.alpha": 3, "symbol.beta": 1.0,
                        "scan.j_min": 3, "scan.j_max": 7,
                        "scan.k_min": 3, "scan.k_max": 7, "scan.trials": 20},
    },
    "kernel-scan": {
        "alpha1-small": {"symbol.alpha": 1, "symbol.beta": 1.0,
                         "scan.j_min": 4, "scan.j_max": 6,
                         "scan.k_min": 4, "scan.k_max": 6,
                         "scan.samples_per_cell": 4},
        "alpha1-full": {"symbol.alpha": 1, "symbol.beta": 1.0,
                        "scan.j_min": 4, "scan.j_max": 8,
                        "scan.k_min": 4, "scan.k_max": 8,
                        "scan.samples_per_cell": 8},
    },
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dgzk",
        description="pseudo-spectral runs and estimate scans on the bi-periodic torus")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", default=None, help="plain-text key = value file")
        p.add_argument("--out", default=None,
                       help="output directory (default $DGZK_OUT/<command> or runs/<command>)")
        p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                       help="override one config key; repeatable")
        p.add_argument("--workers", type=int, default=None, help="parallel scan workers")
        p.add_argument("--seed", type=int, default=None, help="random seed override")
    return parser


def _resolve(args) -> dict:
    pairs = []
    source = "<defaults>"
    if args.config is not None:
        path = Path(args.config)
        try:
            text = path.read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config file {path}: {exc}")
        source = str(path)
        pairs = parse_config_text(text, source=source)

    overrides = list(args.set)
    if args.seed is not None:
        overrides.append(f"seed={args.seed}")
    if args.workers is not None:
        overrides.append(f"workers={args.workers}")

    # named scan presets sit between schema defaults and the file contents
    extra = None
    presets = _SCAN_PRESETS.get(args.command)
    if presets is not None:
        probe = resolve_config(args.command, pairs, overrides, source=source)
        name = probe.get("scan.preset", "")
        if name:
            if name not in presets:
                raise ConfigError(
                    f"unknown scan.preset {name!r}; choose one of {', '.join(sorted(presets))}")
            extra = presets[name]
    return resolve_config(args.command, pairs, overrides, source=source, extra_defaults=extra)


def _symbol_from(cfg: dict, mu: float = 0.0) -> DispersionSymbol:
    try:
        return DispersionSymbol(alpha=cfg["symbol.alpha"], beta=cfg["symbol.beta"],
                                sign=cfg["symbol.sign"], mu=mu)
    except ValueError as exc:
        raise ConfigError(str(exc))


def _grid_from(cfg: dict) -> Grid:
    try:
        return Grid(nx=cfg["grid.nx"], ny=cfg["grid.ny"])
    except ValueError as exc:
        raise ConfigError(str(exc))


def _initial_from(cfg: dict, grid: Grid):
    band = cfg["initial.band"] or None
    try:
        return initial_data(grid, cfg["initial.preset"], amplitude=cfg["initial.amplitude"],
                            seed=cfg["seed"], m=cfg["initial.m"], n=cfg["initial.n"],
                            width=cfg["initial.width"], band=band)
    except ValueError as exc:
        raise ConfigError(str(exc))


def _sim_config_from(cfg: dict, grid: Grid, symbol: DispersionSymbol) -> SimulationConfig:
    try:
        return SimulationConfig(grid=grid, symbol=symbol, dt=cfg["solver.dt"],
                                t_end=cfg["solver.t_end"],
                                integrator=cfg["solver.integrator"],
                                dealias=cfg["solver.dealias"],
                                record_every=cfg["solver.record_every"],
                                h_s=tuple(cfg["solver.h_s"]))
    except ValueError as exc:
        raise ConfigError(str(exc))


def _rel_drift(series) -> float:
    base = max(abs(series[0]), 1e-300)
    return max(abs(v - series[0]) for v in series) / base


def _run_simulate(cfg: dict, out: Path) -> None:
    grid = _grid_from(cfg)
    symbol = _symbol_from(cfg, mu=cfg["symbol.mu"])
    sim = _sim_config_from(cfg, grid, symbol)
    phi = _initial_from(cfg, grid)
    traj = simulate(sim, phi)
    header, rows = diagnostics_csv(traj)
    write_csv(out / "diagnostics.csv", header, rows)
    masses = [d.mass for d in traj.diagnostics]
    energies = [d.energy for d in traj.diagnostics]
    summary = {
        "t_end": traj.times[-1],
        "records": len(traj.times),
        "mass_initial": masses[0],
        "mass_final": masses[-1],
        "mass_drift_rel": _rel_drift(masses),
        "energy_initial": energies[0],
        "energy_final": energies[-1],
        "energy_drift_rel": _rel_drift(energies),
        "sup_u_final": traj.diagnostics[-1].sup_u,
        "g_accum_final": traj.diagnostics[-1].g_accum,
    }
    if traj.dissipation is not None:
        summary["dissipation_final"] = traj.dissipation[-1]
    write_json(out / "summary.json", summary)
    snap = cfg["output.snapshots"]
    if snap != "none":
        suffix = ".json" if snap == "json" else ".fld"
        save_field(traj.states[0], out / f"initial{suffix}", fmt=snap)
        save_field(traj.final_state, out / f"final{suffix}", fmt=snap)


def _run_regularized_family(cfg: dict, out: Path) -> None:
    grid = _grid_from(cfg)
    symbol = _symbol_from(cfg, mu=0.0)
    sim = _sim_config_from(cfg, grid, symbol)
    phi = _initial_from(cfg, grid)
    mu_list = list(cfg["family.mu_list"])
    if any(mu <= 0 for mu in mu_list) or any(
            mu_list[i] <= mu_list[i + 1] for i in range(len(mu_list) - 1)):
        raise ConfigError("family.mu_list must be strictly decreasing positive values")
    family = solve_regularized_family(sim, phi, mu_list)
    rows = [(mu, gap, res) for mu, gap, res in
            zip(family.mus, family.l2_gaps, family.identity_residuals)]
    write_csv(out / "family.csv", ["mu", "l2_gap_vs_mu0", "identity_residual"], rows)
    write_json(out / "report.json", {
        "mu_list": list(family.mus),
        "l2_gaps": list(family.l2_gaps),
        "identity_residuals": list(family.identity_residuals),
        "gaps_nonincreasing": all(
            family.l2_gaps[i] + 1e-12 >= family.l2_gaps[i + 1]
            for i in range(len(family.l2_gaps) - 1)),
        "t_end": sim.t_end,
    })


def _run_strichartz_scan(cfg: dict, out: Path) -> None:
    symbol = _symbol_from(cfg)
    try:
        report = strichartz_scan(
            symbol,
            range(cfg["scan.j_min"], cfg["scan.j_max"] + 1),
            range(cfg["scan.k_min"], cfg["scan.k_max"] + 1),
            trials=cfg["scan.trials"], seed=cfg["seed"],
            n_times=cfg["scan.n_times"], refine=cfg["scan.refine"],
            eps=cfg["scan.eps"], workers=cfg["workers"])
    except InsufficientDataError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc))
    write_csv(out / "cells.csv", ["j", "k", "measured", "bound", "ratio"], report.cells)
    write_json(out / "report.json", {
        "alpha": report.alpha, "beta": report.beta, "sign": report.sign,
        "eps": report.eps, "seed": report.seed, "trials": report.trials,
        "n_times": report.n_times, "refine": report.refine,
        "slope_j": report.slope_j,
        "slope_k": None if math.isnan(report.slope_k) else report.slope_k,
        "intercept": report.intercept, "max_ratio": report.max_ratio,
        "cells": len(report.cells),
    })


def _run_kernel_scan(cfg: dict, out: Path) -> None:
    symbol = _symbol_from(cfg)
    try:
        report = kernel_decay_scan(
            symbol,
            range(cfg["scan.j_min"], cfg["scan.j_max"] + 1),
            range(cfg["scan.k_min"], cfg["scan.k_max"] + 1),
            samples_per_cell=cfg["scan.samples_per_cell"], seed=cfg["seed"],
            eps=cfg["scan.eps"], workers=cfg["workers"])
    except InsufficientDataError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc))
    write_csv(out / "cells.csv", ["j", "k", "measured", "bound", "ratio"], report.cells)
    write_json(out / "report.json", {
        "alpha": report.alpha, "beta": report.beta, "sign": report.sign,
        "eps": report.eps, "seed": report.seed,
        "samples_per_cell": report.samples_per_cell,
        "slope_j": report.slope_j, "slope_k": report.slope_k,
        "intercept": report.intercept, "max_ratio": report.max_ratio,
        "cells": len(report.cells),
    })


def _run_weyl_scan(cfg: dict, out: Path) -> None:
    try:
        report = weyl_scan(cfg["weyl.degree"], list(cfg["weyl.n_values"]),
                           trials=cfg["weyl.trials"], delta=cfg["weyl.delta"],
                           seed=cfg["seed"])
    except ValueError as exc:
        raise ConfigError(str(exc))
    write_csv(out / "rows.csv", ["n_terms", "trial", "q", "abs_sum", "bound", "ratio"],
              report.rows)
    write_json(out / "report.json", {
        "degree": report.degree, "delta": report.delta, "seed": report.seed,
        "max_ratio": report.max_ratio, "dirichlet_ok": report.dirichlet_ok,
        "rows": len(report.rows),
    })


def _run_vdc_scan(cfg: dict, out: Path) -> None:
    p = cfg["vdc.p"]
    if p < 2:
        raise ConfigError(f"vdc.p must be >= 2, got {p}")
    i_min, i_max = cfg["vdc.i_min"], cfg["vdc.i_max"]
    if i_max < i_min:
        raise ConfigError("vdc.i_max must be >= vdc.i_min")
    fact = math.factorial(p)
    rows = []
    max_ratio = 0.0
    max_scaled = 0.0
    for i in range(i_min, i_max + 1):
        lam = 2.0 ** i
        # monomial phase: the p-th derivative is exactly lam everywhere
        rep = vandercorput_check(
            phase=lambda x, c=lam: c * np.asarray(x) ** p / fact,
            phase_deriv_p=lambda x, c=lam: np.full_like(np.asarray(x, dtype=float), c),
            interval=(0.0, 1.0), lam=lam, p=p,
            amplitude=lambda x: np.sin(np.pi * np.asarray(x)) ** 2,
            amplitude_deriv=lambda x: np.pi * np.sin(2.0 * np.pi * np.asarray(x)))
        rows.append((lam, rep.lhs, rep.rhs, rep.rhs_alternate, rep.ratio))
        max_ratio = max(max_ratio, rep.ratio)
        max_scaled = max(max_scaled, rep.lhs * lam ** (1.0 / p))
    write_csv(out / "rows.csv", ["lam", "lhs", "rhs", "rhs_alternate", "ratio"], rows)
    write_json(out / "report.json", {
        "p": p, "rows": len(rows), "max_ratio": max_ratio,
        "max_lhs_scaled": max_scaled,
    })


def _run_convergence(cfg: dict, out: Path) -> None:
    grid = _grid_from(cfg)
    symbol = _symbol_from(cfg)
    mode = cfg["conv.mode"]
    report = {}
    if mode in ("temporal", "both"):
        phi = _initial_from(cfg, grid)
        dts = [cfg["conv.dt0"] / 2 ** i for i in range(cfg["conv.halvings"])]
        try:
            temporal = temporal_order_study(grid, symbol, phi, cfg["conv.t_end"], dts,
                                            integrator=cfg["conv.integrator"])
        except ValueError as exc:
            raise ConfigError(str(exc))
        rows = [(dt, err, order) for dt, err, order in
                zip(temporal.dts, temporal.errors,
                    [""] + [repr(o) for o in temporal.pairwise_orders])]
        write_csv(out / "temporal.csv", ["dt", "error", "pairwise_order"], rows)
        report["temporal_fitted_order"] = temporal.fitted_order
    if mode in ("spatial", "both"):
        profile = lambda g: _initial_from(cfg, g)
        try:
            spatial = spatial_convergence_study(symbol, profile,
                                                list(cfg["conv.n_values"]),
                                                cfg["conv.t_end"], cfg["conv.dt"])
        except ValueError as exc:
            raise ConfigError(str(exc))
        rows = [(n, err, dec) for n, err, dec in
                zip(spatial.n_values, spatial.errors,
                    [""] + [repr(d) for d in spatial.decades_per_doubling])]
        write_csv(out / "spatial.csv", ["n", "error", "decades_per_doubling"], rows)
        report["spatial_errors"] = list(spatial.errors)
        report["spatial_decades_per_doubling"] = list(spatial.decades_per_doubling)
    write_json(out / "report.json", report)


def _run_commutator_scan(cfg: dict, out: Path) -> None:
    grid = _grid_from(cfg)
    band = cfg["comm.band"] or max(1, grid.nx // 4)
    pairs = cfg["comm.pairs"]
    if pairs < 1:
        raise ConfigError(f"comm.pairs must be >= 1, got {pairs}")
    s_values = list(cfg["comm.s_values"])
    if any(s < 1 for s in s_values):
        raise ConfigError("comm.s_values must all be >= 1")
    seed = cfg["seed"]

    def one(task):
        si, trial = task
        rng = np.random.default_rng([seed, si, trial])
        f = random_band_field(grid, band, rng, mean_zero_x=False)
        g = random_band_field(grid, band, rng, mean_zero_x=False)
        lhs, rhs = commutator_check(f, g, s_values[si])
        return (s_values[si], trial, lhs, rhs, lhs / rhs if rhs else 0.0)

    tasks = [(si, trial) for si in range(len(s_values)) for trial in range(pairs)]
    workers = cfg["workers"]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(one, tasks))
    else:
        rows = [one(t) for t in tasks]
    write_csv(out / "rows.csv", ["s", "pair", "lhs", "rhs", "ratio"], rows)
    write_json(out / "report.json", {
        "pairs": pairs, "s_values": s_values, "band": band, "seed": seed,
        "max_ratio": max(r[4] for r in rows),
    })


_RUNNERS = {
    "simulate": _run_simulate,
    "regularized-family": _run_regularized_family,
    "strichartz-scan": _run_strichartz_scan,
    "kernel-scan": _run_kernel_scan,
    "weyl-scan": _run_weyl_scan,
    "vdc-scan": _run_vdc_scan,
    "convergence": _run_convergence,
    "commutator-scan": _run_commutator_scan,
}

_EXIT_BY_ERROR = (
    (ConfigError, EXIT_CONFIG),
    (InvalidInitialDataError, EXIT_INITIAL_DATA),
    (DivergenceError, EXIT_DIVERGENCE),
    (InsufficientDataError, EXIT_INSUFFICIENT),
    (OSError, EXIT_IO),
)


def _fail(exc: Exception, out: Path = None) -> int:
    code = EXIT_INTERNAL
    for etype, ecode in _EXIT_BY_ERROR:
        if isinstance(exc, etype):
            code = ecode
            break
    record = error_record(exc, code)
    print(json.dumps(record, sort_keys=True), file=sys.stderr)
    if out is not None:
        try:
            write_json(out / "error.json", record)
        except OSError:
            pass
    return code


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    out = None
    try:
        cfg = _resolve(args)
        out_arg = args.out
        if out_arg is None:
            root = os.environ.get("DGZK_OUT", "runs")
            out_arg = os.path.join(root, args.command)
        out = Path(out_arg)
        out.mkdir(parents=True, exist_ok=True)
        write_resolved_config(out / "resolved-config.txt", args.command, cfg)
        _RUNNERS[args.command](cfg, out)
    except Exception as exc:  # mapped to the documented exit-code table
        return _fail(exc, out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
