"""Deterministic parallel parameter sweeps.

Grid points run concurrently in a thread pool (the heavy lifting inside a
point is numpy/scipy work that releases the GIL), but results are collected
in grid order, so the output never depends on the worker count or on
completion timing. A failed point is recorded with a NaN value rather than
aborting the sweep.
"""

from __future__ import annotations

import hashlib
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import FloquetRatchetError
from .model import DriveParams

__all__ = ["ScanRecord", "RESULT_KINDS", "parameter_key", "resolve_workers", "run_sweep"]

RESULT_KINDS = frozenset(
    {"tac", "lambda_c", "omega_c", "asymptotic_current", "xi", "cutoff"}
)

WORKERS_ENV = "FLOQUET_RATCHET_WORKERS"


def parameter_key(params: DriveParams, result_kind: str) -> str:
    """Stable short hash identifying one (parameters, experiment) pair."""
    canon = (
        f"{result_kind}|K={params.K:.17g}|lam={params.lam:.17g}"
        f"|omega={params.omega:.17g}|phi={params.phi:.17g}|g={params.g:.17g}"
    )
    return hashlib.sha256(canon.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class ScanRecord:
    """One grid point's outcome."""

    params: DriveParams
    key: str
    result_kind: str
    value: float
    diagnostics: dict[str, float] = field(default_factory=dict)

    @property
    def failed(self) -> bool:
        return not np.isfinite(self.value) and self.diagnostics.get("failed", 0.0) > 0


def resolve_workers(workers: int | None = None) -> int:
    """Explicit argument, else the FLOQUET_RATCHET_WORKERS env var, else all cores."""
    if workers is not None:
        if workers < 1:
            raise ValueError(f"workers must be >= 1, got {workers}")
        return workers
    env = os.environ.get(WORKERS_ENV)
    if env:
        n = int(env)
        if n < 1:
            raise ValueError(f"{WORKERS_ENV} must be >= 1, got {env}")
        return n
    return os.cpu_count() or 1


def run_sweep(
    grid: Sequence[DriveParams],
    job: Callable[[DriveParams], tuple[float, dict[str, float]]],
    result_kind: str,
    workers: int | None = None,
) -> list[ScanRecord]:
    """Evaluate job on every grid point, concurrently but reproducibly.

    job maps one parameter point to (value, diagnostics). Exceptions from
    the numerical layer (and ValueError) mark that point failed; anything
    else propagates.
    """
    if result_kind not in RESULT_KINDS:
        raise ValueError(f"unknown result_kind {result_kind!r}")
    if len(grid) == 0:
        raise ValueError("empty sweep grid")

    def run_one(params: DriveParams) -> ScanRecord:
        key = parameter_key(params, result_kind)
        try:
            value, diagnostics = job(params)
        except (FloquetRatchetError, ValueError) as exc:
            print(
                f"sweep point K={params.K:g} lam={params.lam:g} "
                f"omega={params.omega:g} failed: {exc}",
                file=sys.stderr,
            )
            return ScanRecord(
                params=params,
                key=key,
                result_kind=result_kind,
                value=float("nan"),
                diagnostics={"failed": 1.0},
            )
        return ScanRecord(
            params=params,
            key=key,
            result_kind=result_kind,
            value=float(value),
            diagnostics=dict(diagnostics),
        )

    n_workers = min(resolve_workers(workers), len(grid))
    if n_workers == 1:
        return [run_one(p) for p in grid]
    with ThreadPoolExecutor(max_workers=n_workers) as pool:
        return list(pool.map(run_one, grid))
