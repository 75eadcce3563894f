"""Command-line front end.

Every experiment class maps to a subcommand that writes CSV artifacts into
the --out directory (default ./out). Floats are written with 17 significant
digits, so files are byte-stable across runs and worker counts.

Exit codes: 0 success, 2 argument/validation problems, 3 numerical failures
(overflow, failed bisection brackets, eigensolver trouble, too-short runs).

A flat key = value config file can seed any subcommand's flags; explicit
command-line flags win over the file.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from pathlib import Path

import numpy as np

from .errors import FloquetRatchetError
from .floquet import (
    classify_floquet_states,
    detect_ep,
    floquet_spectrum,
    imag_sum_xi,
    pt_threshold,
    separation_threshold_omega_c,
    xi_for_params,
)
from .gpe import gpe_evolve, uniform_grid_state
from .model import DriveParams, MomentumState, initial_state_zero_momentum
from .observables import momentum_cutoff, time_averaged_current
from .propagation import (
    SCHEMES,
    PropagatorConfig,
    evolve_with_observables,
    one_period_propagator,
)
from .sweep import run_sweep
from .threelevel import (
    analytic_current_w05,
    analytic_current_w1,
    analytic_populations_w05,
    analytic_populations_w1,
    analytic_tac,
    build_t_matrix,
    rabi_period,
    resonant_momenta,
    three_level_ode_evolve,
)

__all__ = ["main"]


def _fmt(x) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.17g}"


def _write_csv(path: Path, header, rows) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(cell) for cell in row])


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _drive(args, **overrides) -> DriveParams:
    # subcommands that sweep a parameter pass it as an override instead of
    # defining the flag, so missing attributes are only read when needed
    kw = {
        "phi": getattr(args, "phi", 0.0),
        "g": getattr(args, "g", 0.0),
    }
    kw.update(overrides)
    for name in ("K", "lam", "omega"):
        if name not in kw:
            kw[name] = getattr(args, name)
    return DriveParams(**kw)


def _prop_config(args) -> PropagatorConfig:
    return PropagatorConfig(
        steps_per_period=args.steps_per_period,
        scheme=args.scheme,
        convergence_check=getattr(args, "convergence_check", False),
    )


def _grid(lo: float, hi: float, step: float) -> np.ndarray:
    if step <= 0:
        raise ValueError(f"grid step must be positive, got {step}")
    if hi < lo:
        raise ValueError(f"grid range is empty: [{lo}, {hi}]")
    n = int(math.floor((hi - lo) / step + 1e-9))
    return lo + step * np.arange(n + 1)


def _parse_span(text: str) -> np.ndarray:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"expected MIN:MAX:STEP, got {text!r}")
    lo, hi, step = (float(p) for p in parts)
    return _grid(lo, hi, step)


def _parse_list(text: str) -> list[float]:
    values = [float(p) for p in text.split(",") if p.strip()]
    if not values:
        raise ValueError(f"empty value list: {text!r}")
    return values


def _run_duration(args, params: DriveParams) -> float:
    if getattr(args, "t_max", None):
        return args.t_max
    return args.periods * params.period


def _write_timeseries(path: Path, series, with_populations: bool) -> None:
    header = ["t", "current", "log_norm"]
    if with_populations and series.populations is not None:
        M = (series.populations.shape[1] - 1) // 2
        header += [f"p_{n}" for n in range(-M, M + 1)]
        rows = (
            [series.times[k], series.current[k], series.log_norm[k]]
            + list(series.populations[k])
            for k in range(series.times.size)
        )
    else:
        rows = (
            [series.times[k], series.current[k], series.log_norm[k]]
            for k in range(series.times.size)
        )
    _write_csv(path, header, rows)


def _scan_rows(records, swept_values):
    for value, record in zip(swept_values, records):
        converged = (not record.failed) and record.diagnostics.get("converged", 1.0) > 0.5
        yield [value, record.value, converged]


# --- subcommands -----------------------------------------------------------


def cmd_spectrum(args) -> int:
    params = _drive(args)
    cfg = _prop_config(args)
    U = one_period_propagator(params, args.modes, cfg)
    spec = floquet_spectrum(U, params.omega)
    classes = classify_floquet_states(
        spec, overlap_state=initial_state_zero_momentum(args.modes)
    )
    rows = (
        [
            idx,
            spec.quasienergies[idx].real,
            spec.quasienergies[idx].imag,
            cls.mean_momentum,
            cls.tag,
            cls.overlap,
        ]
        for idx, cls in enumerate(classes)
    )
    _write_csv(_out_dir(args) / "spectrum.csv",
               ["index", "re_eps", "im_eps", "mean_p", "class", "overlap0"], rows)
    print(f"modes={2 * args.modes + 1} xi={imag_sum_xi(spec):.6e}")
    return 0


def cmd_threshold(args) -> int:
    cfg = _prop_config(args)
    out = _out_dir(args)
    if args.xi_grid:
        lams = _parse_span(args.xi_grid)
        grid = [_drive(args, lam=float(lam)) for lam in lams]
        records = run_sweep(
            grid,
            lambda p: (xi_for_params(p, args.modes, cfg), {}),
            "xi",
            workers=args.workers,
        )
        _write_csv(out / "xi.csv", ["lambda", "value", "converged"],
                   _scan_rows(records, lams))
        if args.grid_only:
            return 0
    lam_c = pt_threshold(
        K=args.K,
        omega=args.omega,
        lambda_range=(args.lambda_min, args.lambda_max),
        xi_tol=args.xi_tol,
        M=args.modes,
        cfg=cfg,
        resolution=args.resolution,
        phi=args.phi,
    )
    _write_csv(out / "threshold.csv", ["K", "omega", "lambda_c"],
               [[args.K, args.omega, lam_c]])
    print(f"lambda_c={lam_c:.6g}")
    return 0


def cmd_threshold_map(args) -> int:
    cfg = _prop_config(args)
    Ks = _parse_list(args.K_list)
    omegas = _parse_list(args.omega_list)
    grid = [
        DriveParams(K=K, lam=1.0, omega=omega, phi=args.phi)
        for K in Ks
        for omega in omegas
    ]

    def job(p: DriveParams):
        lam_c = pt_threshold(
            K=p.K,
            omega=p.omega,
            lambda_range=(args.lambda_min, args.lambda_max),
            xi_tol=args.xi_tol,
            M=args.modes,
            cfg=cfg,
            resolution=args.resolution,
            phi=p.phi,
        )
        return lam_c, {}

    records = run_sweep(grid, job, "lambda_c", workers=args.workers)
    rows = (
        [r.params.K, r.params.omega, r.value, (not r.failed)]
        for r in records
    )
    _write_csv(_out_dir(args) / "threshold_map.csv",
               ["K", "omega", "value", "converged"], rows)
    return 0


def _tac_job(args, cfg):
    def job(p: DriveParams):
        state = initial_state_zero_momentum(args.modes)
        series = evolve_with_observables(
            state, p, _run_duration(args, p),
            samples_per_period=args.samples_per_period, cfg=cfg,
        )
        stats = time_averaged_current(series, args.t_transient, period=p.period)
        return stats.tac, {
            "converged": float(stats.converged),
            "plateau": float(stats.plateau_detected),
        }

    return job


def cmd_tac_scan(args) -> int:
    cfg = _prop_config(args)
    omegas = _grid(args.omega_min, args.omega_max, args.omega_step)
    grid = [_drive(args, omega=float(w)) for w in omegas]
    records = run_sweep(grid, _tac_job(args, cfg), "tac", workers=args.workers)
    _write_csv(_out_dir(args) / "scan.csv", ["omega", "value", "converged"],
               _scan_rows(records, omegas))
    return 0


def cmd_tac_vs_lambda(args) -> int:
    cfg = _prop_config(args)
    lams = _grid(args.lambda_min, args.lambda_max, args.lambda_step)
    grid = [_drive(args, lam=float(lam)) for lam in lams]
    records = run_sweep(grid, _tac_job(args, cfg), "tac", workers=args.workers)
    out = _out_dir(args)
    _write_csv(out / "scan.csv", ["lambda", "value", "converged"],
               _scan_rows(records, lams))

    resonance = None
    if abs(args.omega - 1.0) < 1e-9:
        resonance = "one"
    elif abs(args.omega - 0.5) < 1e-9:
        resonance = "half"
    if resonance is not None:
        rows = (
            [lam, analytic_tac(args.K, float(lam), resonance,
                               _run_duration(args, p)), True]
            for lam, p in zip(lams, grid)
        )
        _write_csv(out / "scan_analytic.csv", ["lambda", "value", "converged"], rows)
    return 0


def cmd_evolve(args) -> int:
    cfg = _prop_config(args)
    out = _out_dir(args)

    if args.omega_grid:
        omegas = _parse_span(args.omega_grid)
        grid = [_drive(args, omega=float(w)) for w in omegas]

        def job(p: DriveParams):
            state = initial_state_zero_momentum(args.modes)
            series = evolve_with_observables(
                state, p, _run_duration(args, p),
                samples_per_period=args.samples_per_period, cfg=cfg,
            )
            stats = time_averaged_current(series, args.t_transient, period=p.period)
            value = stats.asymptotic if stats.asymptotic is not None else float("nan")
            return value, {
                "converged": float(stats.plateau_detected and stats.converged)
            }

        records = run_sweep(grid, job, "asymptotic_current", workers=args.workers)
        _write_csv(out / "asymptotic.csv", ["omega", "value", "converged"],
                   _scan_rows(records, omegas))
        return 0

    if args.omega is None:
        raise ValueError("pass either --omega or --omega-grid")
    params = _drive(args)
    state = initial_state_zero_momentum(args.modes)
    series = evolve_with_observables(
        state, params, _run_duration(args, params),
        samples_per_period=args.samples_per_period, cfg=cfg,
        populations=args.populations,
    )
    _write_timeseries(out / "timeseries.csv", series, args.populations)
    stats = time_averaged_current(series, args.t_transient, period=params.period)
    print(f"tac={stats.tac:.10g}")
    print(f"plateau_detected={int(stats.plateau_detected)}")
    if stats.asymptotic is not None:
        print(f"asymptotic={stats.asymptotic:.10g}")
    print(f"truncation_safe={int(series.truncation_safe)}")
    return 0


def cmd_ep_analyze(args) -> int:
    cfg = _prop_config(args)
    out = _out_dir(args)
    params = _drive(args)
    evidence = detect_ep(params, args.modes, cfg, degeneracy_tol=args.degeneracy_tol)
    rows = (
        [
            k,
            e.eigenvalue_gap,
            e.eigenvector_overlap,
            e.quasienergies[0].real,
            e.quasienergies[0].imag,
            e.quasienergies[1].real,
            e.quasienergies[1].imag,
            e.is_ep,
        ]
        for k, e in enumerate(evidence)
    )
    _write_csv(out / "ep.csv",
               ["pair_index", "gap", "overlap", "eps1_re", "eps1_im",
                "eps2_re", "eps2_im", "is_ep"], rows)
    n_ep = sum(e.is_ep for e in evidence)
    print(f"pairs={len(evidence)} ep_pairs={n_ep}")

    if args.cutoff_grid:
        omegas = _parse_span(args.cutoff_grid)
        grid = [_drive(args, omega=float(w)) for w in omegas]

        def job(p: DriveParams):
            state = initial_state_zero_momentum(args.modes)
            series = evolve_with_observables(
                state, p, _run_duration(args, p),
                samples_per_period=args.samples_per_period, cfg=cfg,
                populations=True,
            )
            final = MomentumState(
                amplitudes=np.sqrt(series.populations[-1]),
                truncation=args.modes,
                time=float(series.times[-1]),
            )
            return float(momentum_cutoff(final, args.cutoff_frac)), {}

        records = run_sweep(grid, job, "cutoff", workers=args.workers)
        _write_csv(out / "cutoff.csv", ["omega", "value", "converged"],
                   _scan_rows(records, omegas))
    return 0


def cmd_omega_c(args) -> int:
    cfg = _prop_config(args)
    out = _out_dir(args)
    if args.K is None and args.K_grid is None:
        raise ValueError("pass either --K or --K-grid")

    def locate(K: float) -> float:
        return separation_threshold_omega_c(
            K=K,
            lam=args.lam,
            omega_range=(args.omega_min, args.omega_max),
            s_tol=args.s_tol,
            M=args.modes,
            cfg=cfg,
            resolution=args.resolution,
            phi=args.phi,
        )

    if args.K_grid:
        Ks = _parse_list(args.K_grid)
        grid = [
            DriveParams(K=K, lam=args.lam, omega=args.omega_min, phi=args.phi)
            for K in Ks
        ]
        records = run_sweep(
            grid, lambda p: (locate(p.K), {}), "omega_c", workers=args.workers
        )
        _write_csv(out / "omega_c_scan.csv", ["K", "value", "converged"],
                   _scan_rows(records, Ks))
        return 0

    omega_c = locate(args.K)
    _write_csv(out / "omega_c.csv", ["K", "lambda", "omega_c"],
               [[args.K, args.lam, omega_c]])
    print(f"omega_c={omega_c:.6g}")
    return 0


def cmd_gpe_evolve(args) -> int:
    params = _drive(args)
    state = uniform_grid_state(args.grid_size)
    series = gpe_evolve(
        state, params, _run_duration(args, params),
        dt=args.dt,
        samples_per_period=args.samples_per_period,
        record_populations=args.populations,
    )
    _write_timeseries(_out_dir(args) / "timeseries.csv", series, args.populations)
    stats = time_averaged_current(series, args.t_transient, period=params.period)
    print(f"tac={stats.tac:.10g}")
    print(f"plateau_detected={int(stats.plateau_detected)}")
    if stats.asymptotic is not None:
        print(f"asymptotic={stats.asymptotic:.10g}")
    print(f"truncation_safe={int(series.truncation_safe)}")
    return 0


def cmd_threelevel(args) -> int:
    out = _out_dir(args)
    if args.t_max:
        t_max = args.t_max
    else:
        t_rabi = rabi_period(args.K, args.lam, args.resonance)
        if not math.isfinite(t_rabi):
            raise ValueError(
                "the Rabi frequency is not real here; pass --t-max explicitly"
            )
        t_max = args.rabi_periods * t_rabi
    dt = args.dt if args.dt else t_max / 4096.0

    T = build_t_matrix(args.K, args.lam, args.resonance)
    momenta = resonant_momenta(args.resonance)
    series = three_level_ode_evolve(T, t_max, dt, momenta=momenta)
    header = ["t", "current", "log_norm"] + [f"p_{n}" for n in momenta]
    rows = (
        [series.times[k], series.current[k], series.log_norm[k]]
        + list(series.populations[k])
        for k in range(series.times.size)
    )
    _write_csv(out / "timeseries.csv", header, rows)

    t = series.times
    if args.resonance == "one":
        current = analytic_current_w1(args.K, args.lam, t)
        p_hi, p_mid, p_lo = analytic_populations_w1(args.K, args.lam, t)
    else:
        current = analytic_current_w05(args.K, args.lam, t)
        p_hi, p_mid, p_lo = analytic_populations_w05(args.K, args.lam, t)
    total = p_hi + p_mid + p_lo
    rows = (
        [t[k], current[k], math.log(total[k])]
        for k in range(t.size)
    )
    _write_csv(out / "timeseries_analytic.csv", ["t", "current", "log_norm"], rows)
    print(f"t_max={t_max:.6g} samples={t.size}")
    return 0


# --- parser ----------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser, drive=True, g=False) -> None:
    p.add_argument("--out", default="./out", help="output directory")
    p.add_argument("--config", default=None,
                   help="flat key = value file seeding these flags")
    p.add_argument("--workers", type=int, default=None,
                   help="parallel workers for sweeps (default: all cores, "
                        "or FLOQUET_RATCHET_WORKERS)")
    if drive:
        p.add_argument("--K", type=float, required=True, help="driving amplitude")
        p.add_argument("--lambda", dest="lam", type=float, required=True,
                       help="non-Hermitian parameter")
        p.add_argument("--phi", type=float, default=0.0, help="driving phase")
    if g:
        p.add_argument("--g", type=float, default=0.0,
                       help="nonlinear interaction strength")


def _add_propagation(p: argparse.ArgumentParser, modes_default: int) -> None:
    p.add_argument("--modes", type=int, default=modes_default,
                   help="momentum truncation M (basis size 2M+1)")
    p.add_argument("--steps-per-period", type=int, default=256)
    p.add_argument("--scheme", choices=sorted(SCHEMES),
                   default="midpoint-exponential")
    p.add_argument("--samples-per-period", type=int, default=8)
    p.add_argument("--convergence-check", action="store_true")


def _add_duration(p: argparse.ArgumentParser, periods_default: float = 200.0) -> None:
    p.add_argument("--periods", type=float, default=periods_default,
                   help="run length in driving periods")
    p.add_argument("--t-max", type=float, default=None,
                   help="run length in time units (overrides --periods)")
    p.add_argument("--t-transient", type=float, default=0.0,
                   help="discard samples before this time when averaging")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="floquet-ratchet",
        description="Driven non-Hermitian rotor: spectra, thresholds, "
                    "currents, exceptional points.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="one-parameter Floquet spectrum")
    _add_common(p)
    p.add_argument("--omega", type=float, required=True)
    _add_propagation(p, modes_default=63)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("threshold", help="symmetry-breaking threshold lambda_c")
    _add_common(p, drive=False)
    p.add_argument("--K", type=float, required=True)
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--lambda-min", type=float, default=0.2)
    p.add_argument("--lambda-max", type=float, default=8.0)
    p.add_argument("--xi-tol", type=float, default=1e-5)
    p.add_argument("--resolution", type=float, default=1e-3)
    p.add_argument("--xi-grid", default=None, metavar="MIN:MAX:STEP",
                   help="also write xi over this lambda grid")
    p.add_argument("--grid-only", action="store_true",
                   help="skip the bisection, write only the xi grid")
    _add_propagation(p, modes_default=255)
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("threshold-map", help="lambda_c over a (K, omega) grid")
    _add_common(p, drive=False)
    p.add_argument("--K-list", required=True, help="comma-separated K values")
    p.add_argument("--omega-list", required=True, help="comma-separated omega values")
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--lambda-min", type=float, default=0.2)
    p.add_argument("--lambda-max", type=float, default=8.0)
    p.add_argument("--xi-tol", type=float, default=1e-5)
    p.add_argument("--resolution", type=float, default=1e-3)
    _add_propagation(p, modes_default=255)
    p.set_defaults(func=cmd_threshold_map)

    p = sub.add_parser("tac-scan", help="time-averaged current over omega")
    _add_common(p)
    p.add_argument("--omega-min", type=float, required=True)
    p.add_argument("--omega-max", type=float, required=True)
    p.add_argument("--omega-step", type=float, default=0.05)
    _add_propagation(p, modes_default=32)
    _add_duration(p)
    p.set_defaults(func=cmd_tac_scan)

    p = sub.add_parser("tac-vs-lambda",
                       help="time-averaged current over lambda at fixed omega")
    _add_common(p, drive=False)
    p.add_argument("--K", type=float, required=True)
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--lambda-min", type=float, required=True)
    p.add_argument("--lambda-max", type=float, required=True)
    p.add_argument("--lambda-step", type=float, default=0.1)
    _add_propagation(p, modes_default=32)
    _add_duration(p)
    p.set_defaults(func=cmd_tac_vs_lambda)

    p = sub.add_parser("evolve", help="single time evolution from |0>")
    _add_common(p)
    p.add_argument("--omega", type=float, default=None,
                   help="driving frequency (not needed with --omega-grid)")
    p.add_argument("--populations", action="store_true",
                   help="record per-mode populations in timeseries.csv")
    p.add_argument("--omega-grid", default=None, metavar="MIN:MAX:STEP",
                   help="instead of one run, sweep omega and write "
                        "asymptotic plateau currents")
    _add_propagation(p, modes_default=32)
    _add_duration(p)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("ep-analyze",
                       help="eigenvalue/eigenvector coalescence evidence")
    _add_common(p)
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--degeneracy-tol", type=float, default=1e-3)
    p.add_argument("--cutoff-grid", default=None, metavar="MIN:MAX:STEP",
                   help="also sweep omega and write the momentum cutoff of "
                        "the evolved state")
    p.add_argument("--cutoff-frac", type=float, default=1e-4)
    _add_propagation(p, modes_default=63)
    _add_duration(p)
    p.set_defaults(func=cmd_ep_analyze)

    p = sub.add_parser("omega-c",
                       help="frequency where the two leading states separate")
    _add_common(p, drive=False)
    p.add_argument("--K", type=float, default=None)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--omega-min", type=float, required=True)
    p.add_argument("--omega-max", type=float, required=True)
    p.add_argument("--s-tol", type=float, default=0.1)
    p.add_argument("--resolution", type=float, default=0.05)
    p.add_argument("--K-grid", default=None,
                   help="comma-separated K values to sweep instead of one --K")
    _add_propagation(p, modes_default=63)
    p.set_defaults(func=cmd_omega_c)

    p = sub.add_parser("gpe-evolve", help="nonlinear split-step evolution")
    _add_common(p, g=True)
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--grid-size", type=int, default=256)
    p.add_argument("--dt", type=float, default=None,
                   help="step bound (default T/1024, hard cap T/256)")
    p.add_argument("--samples-per-period", type=int, default=8)
    p.add_argument("--populations", action="store_true")
    _add_duration(p)
    p.set_defaults(func=cmd_gpe_evolve)

    p = sub.add_parser("threelevel",
                       help="effective resonant model, numeric and closed form")
    _add_common(p, drive=False)
    p.add_argument("--K", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--resonance", choices=("half", "one"), required=True)
    p.add_argument("--rabi-periods", type=float, default=1.0,
                   help="run length in population-oscillation periods")
    p.add_argument("--t-max", type=float, default=None)
    p.add_argument("--dt", type=float, default=None)
    p.set_defaults(func=cmd_threelevel)

    return parser


def _config_tokens(path: str) -> list[str]:
    tokens: list[str] = []
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"config line is not key = value: {raw.strip()!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if not key or not value:
                raise ValueError(f"config line is not key = value: {raw.strip()!r}")
            if value.lower() in ("true", "false"):
                if value.lower() == "true":
                    tokens.append(f"--{key}")
            else:
                tokens.extend((f"--{key}", value))
    return tokens


def _apply_config(argv: list[str]) -> list[str]:
    """Splice config-file tokens in after the subcommand, before user flags."""
    argv = list(argv)
    path = None
    for i, token in enumerate(argv):
        if token == "--config":
            if i + 1 >= len(argv):
                raise ValueError("--config needs a file path")
            path = argv[i + 1]
            del argv[i : i + 2]
            break
        if token.startswith("--config="):
            path = token.split("=", 1)[1]
            del argv[i]
            break
    if path is None or not argv:
        return argv
    return argv[:1] + _config_tokens(path) + argv[1:]


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv = _apply_config(argv)
        args = build_parser().parse_args(argv)
        return args.func(args)
    except FloquetRatchetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
