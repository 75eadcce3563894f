"""Currents, norms, time averages and the momentum-cutoff diagnostic."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import TooShort, ZeroNorm
from .model import MomentumState
from .propagation import TimeSeries

__all__ = [
    "CurrentStats",
    "current",
    "norm_squared",
    "mean_momentum",
    "time_averaged_current",
    "momentum_cutoff",
]


@dataclass(frozen=True)
class CurrentStats:
    """Time-average summary of a current trace.

    ``asymptotic`` is the mean of the last 10% of samples, reported only
    when that tail is flat enough to count as a plateau: standard deviation
    below 1% of the plateau magnitude, or below 1e-4 absolute for plateaus
    near zero. ``converged`` compares the averages of the two halves of the
    window (relative difference under 2%) as a cheap stationarity check.
    """

    tac: float
    asymptotic: float | None
    plateau_detected: bool
    converged: bool = True
    tail_std: float = 0.0


def norm_squared(state: MomentumState) -> float:
    """N = sum |c_n|^2."""
    return float(np.sum(np.abs(state.amplitudes) ** 2))


def current(state: MomentumState) -> float:
    """Normalized momentum expectation sum n |c_n|^2 / sum |c_n|^2."""
    p = np.abs(state.amplitudes) ** 2
    total = p.sum()
    if total <= 0.0:
        raise ZeroNorm("current is undefined for a zero-norm state")
    return float(np.sum(state.momenta * p) / total)


def mean_momentum(mode: np.ndarray) -> float:
    """Mean momentum of an amplitude vector on the symmetric ladder."""
    mode = np.asarray(mode)
    p = np.abs(mode) ** 2
    total = p.sum()
    if total <= 0.0:
        raise ZeroNorm("mean momentum is undefined for a zero vector")
    M = (mode.size - 1) // 2
    n = np.arange(-M, M + 1)
    return float(np.sum(n * p) / total)


def time_averaged_current(
    series: TimeSeries, t_transient: float = 0.0, period: float | None = None
) -> CurrentStats:
    """Trapezoidal average of I(t) over [t_transient, end of series].

    Pass the driving period to enforce the minimum window of 20 periods;
    without it only the sample count is checked. Raises TooShort when the
    window cannot support a meaningful average.
    """
    mask = series.times >= t_transient - 1e-12
    t = series.times[mask]
    I = series.current[mask]
    if t.size < 2:
        raise TooShort("need at least two samples beyond the transient")
    span = t[-1] - t[0]
    if period is not None and span < 20.0 * period - 1e-9:
        raise TooShort(
            f"window of {span:.3g} covers fewer than 20 periods ({period:.3g} each)"
        )
    tac = float(np.trapezoid(I, t) / span)

    tail = I[int(np.floor(0.9 * I.size)) :]
    if tail.size < 2:
        tail = I[-2:]
    tail_mean = float(tail.mean())
    tail_std = float(tail.std())
    tol = 0.01 * abs(tail_mean) if abs(tail_mean) >= 1e-2 else 1e-4
    plateau = tail_std < tol

    half = I.size // 2
    a1 = float(np.trapezoid(I[: half + 1], t[: half + 1]) / max(t[half] - t[0], 1e-300))
    a2 = float(np.trapezoid(I[half:], t[half:]) / max(t[-1] - t[half], 1e-300))
    scale = max(abs(tac), 1e-9)
    converged = abs(a2 - a1) / scale < 0.02 or abs(a2 - a1) < 1e-3

    return CurrentStats(
        tac=tac,
        asymptotic=tail_mean if plateau else None,
        plateau_detected=plateau,
        converged=converged,
        tail_std=tail_std,
    )


def momentum_cutoff(state: MomentumState, frac: float = 1e-4) -> int:
    """Most negative momentum mode holding at least ``frac`` of the peak population.

    States with no occupied mode below n = 0 report 0: the cutoff measures
    how far the dynamics reaches down the ladder, so it is never positive.
    """
    if not 0.0 < frac < 1.0:
        raise ValueError(f"frac must be in (0, 1), got {frac}")
    p = np.abs(state.amplitudes) ** 2
    peak = p.max()
    if peak <= 0.0:
        raise ZeroNorm("momentum cutoff is undefined for a zero-norm state")
    qualifying = state.momenta[p / peak >= frac]
    return int(min(0, qualifying.min()))
