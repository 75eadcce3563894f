"""Time-ordered propagation and the one-period Floquet operator.

The evolution operator over one driving period,

    U(T, 0) = T_ord exp(-i int_0^T H(t) dt),

is approximated by a product of short-step exponentials. Two schemes are
provided:

* ``midpoint-exponential``: one factor exp(-i dt H(t_mid)) per step,
  second order in dt and unconditionally stable.
* ``fourth-order-commutator-free``: two factors per step built from the
  Hamiltonian at the two Gauss-Legendre nodes of the step; fourth order.

Every factor either scheme needs is the exponential of

    G = -i (a D + b W),

where D = diag(n^2/2) is the kinetic part and W the time-independent
coupling pattern (W[n, n+1] = i lam_plus / 2, W[n, n-1] = i lam_minus / 2),
with scalars (a, b) determined by the scheme. G is tridiagonal, so its
exponential is computed by scaled-and-squared Taylor summation on sparse
storage with band pruning: the result stays banded (the bandwidth grows only
with log of the step norm) and one factor costs milliseconds even at
511 modes, where a dense expm would cost close to half a second.

In the Hermitian limit lam = 0 the factors are built instead from an exact
eigendecomposition: a D + b W is unitarily equivalent (via the diagonal
gauge i^n) to a real symmetric tridiagonal matrix, so each factor is unitary
to machine precision and long runs conserve the norm to ~1e-12 per hundred
periods, which the Taylor path cannot guarantee.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.sparse as sp
from scipy.linalg import eigh_tridiagonal
from scipy.linalg import expm as _scipy_expm

from .errors import NonFinite
from .model import (
    CouplingPair,
    DriveParams,
    MomentumState,
    edge_population_fraction,
)

__all__ = [
    "PropagatorConfig",
    "TimeSeries",
    "SCHEMES",
    "matrix_exponential",
    "propagate",
    "one_period_propagator",
    "evolve_with_observables",
]

SCHEMES = ("midpoint-exponential", "fourth-order-commutator-free")

# Gauss-Legendre nodes on [0, 1] and the commutator-free weights.
_NODE_LO = 0.5 - math.sqrt(3.0) / 6.0
_NODE_HI = 0.5 + math.sqrt(3.0) / 6.0
_CF4_A = (3.0 - 2.0 * math.sqrt(3.0)) / 12.0
_CF4_B = (3.0 + 2.0 * math.sqrt(3.0)) / 12.0

# Relative magnitude below which entries of a squared band matrix are dropped.
_PRUNE = 1e-18
# Taylor length for the scaled exponential; with the norm scaled below 1/2,
# 20 terms leave a remainder under 1e-19.
_TAYLOR_TERMS = 20


@dataclass(frozen=True)
class PropagatorConfig:
    """Numerical controls for the propagators.

    Attributes:
        steps_per_period: time steps per driving period (>= 8).
        scheme: one of SCHEMES.
        renormalize_each_step: divide out the norm after every step and
            report its accumulated logarithm; required for long broken-phase
            runs where the raw norm overflows.
        convergence_check: when building a one-period propagator, rebuild it
            at half the step size and warn if the two disagree beyond 1e-6.
        truncation_guard_tol: highest tolerated fraction of population on the
            outermost two rungs of the ladder during sampled evolution.
    """

    steps_per_period: int = 256
    scheme: str = "midpoint-exponential"
    renormalize_each_step: bool = False
    convergence_check: bool = False
    truncation_guard_tol: float = 1e-8

    def __post_init__(self) -> None:
        if self.steps_per_period < 8:
            raise ValueError("steps_per_period must be >= 8")
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}, expected one of {SCHEMES}")


@dataclass(frozen=True)
class TimeSeries:
    """Sampled observables of one evolution.

    ``log_norm`` is the natural log of the squared norm N(t) = sum |c_n|^2,
    accumulated across renormalizations, so exp(log_norm) recovers the raw
    N(t) even when the raw amplitudes would have overflowed. ``populations``
    (when requested) holds normalized per-mode probabilities, one row per
    sample. ``truncation_safe`` is False when population reached the edge of
    the momentum ladder beyond the configured guard tolerance.
    """

    times: np.ndarray
    current: np.ndarray
    log_norm: np.ndarray
    populations: np.ndarray | None = None
    edge_population_max: float = 0.0
    truncation_safe: bool = True


def matrix_exponential(A: np.ndarray) -> np.ndarray:
    """exp(A) for a dense square matrix.

    Thin wrapper so the rest of the library has a single entry point with a
    tested accuracy contract (relative error < 1e-11 against a Taylor oracle
    on small inputs).
    """
    return _scipy_expm(np.asarray(A, dtype=complex))


def _expm_banded(A: sp.csr_matrix) -> sp.csr_matrix:
    """exp(A) for a banded sparse matrix, staying sparse.

    Scaling and squaring with a fixed-length Taylor series. After each
    squaring, entries below _PRUNE of the largest magnitude are dropped;
    for the generators used here the result keeps a bandwidth of a few tens
    regardless of matrix size.
    """
    norm1 = float(abs(A).sum(axis=0).max()) if A.nnz else 0.0
    s = max(0, int(np.ceil(np.log2(max(norm1, 1e-300) / 0.5))))
    B = (A / 2**s).tocsr()
    dim = A.shape[0]
    E = sp.identity(dim, format="csr", dtype=complex)
    term = sp.identity(dim, format="csr", dtype=complex)
    for k in range(1, _TAYLOR_TERMS + 1):
        term = (term @ B) / k
        E = E + term
    E = E.tocsr()
    for _ in range(s):
        E = E @ E
        cut = _PRUNE * max(abs(E.data).max(), 1e-300)
        E.data[np.abs(E.data) < cut] = 0.0
        E.eliminate_zeros()
    return E


def _factor_sparse(a: float, b: float, pair: CouplingPair, M: int) -> sp.csr_matrix:
    """exp(-i (a D + b W)) on sparse storage."""
    n = np.arange(-M, M + 1)
    main = -1j * a * (n.astype(float) ** 2 / 2.0)
    # -i * b * (i/2) lam_pm = (b/2) lam_pm: the off-diagonal generator
    # entries are real.
    sup = np.full(2 * M, (b / 2.0) * pair.lambda_plus, dtype=complex)
    sub = np.full(2 * M, (b / 2.0) * pair.lambda_minus, dtype=complex)
    G = sp.diags([sub, main, sup], offsets=[-1, 0, 1], format="csr", dtype=complex)
    return _expm_banded(G)


def _factor_hermitian(a: float, b: float, M: int) -> np.ndarray:
    """exp(-i (a D + b W)) at lam = 0, exactly unitary.

    The gauge Phi = diag(i^n) turns a D + b W into the real symmetric
    tridiagonal matrix with diagonal a n^2/2 and off-diagonal -b/2, whose
    eigendecomposition gives the factor as Phi Q e^{-i vals} Q^T Phi^dagger.
    """
    n = np.arange(-M, M + 1)
    diag = a * n.astype(float) ** 2 / 2.0
    off = np.full(2 * M, -b / 2.0)
    vals, Q = eigh_tridiagonal(diag, off)
    phase = np.exp(-1j * vals)
    core = (Q * phase) @ Q.T
    gauge = 1j ** np.mod(n, 4)
    return (gauge[:, None] * core) * np.conj(gauge)[None, :]


def _step_factors(
    params: DriveParams, t_step: float, dt: float, scheme: str
) -> list[tuple[float, float]]:
    """(a, b) scalars of the exponential factors for one step over
    [t_step, t_step + dt], listed in application order (first acts first)."""
    if scheme == "midpoint-exponential":
        f = params.drive_value(t_step + dt / 2.0)
        return [(dt, dt * f)]
    f1 = params.drive_value(t_step + _NODE_LO * dt)
    f2 = params.drive_value(t_step + _NODE_HI * dt)
    return [
        (dt / 2.0, dt * (_CF4_B * f1 + _CF4_A * f2)),
        (dt / 2.0, dt * (_CF4_A * f1 + _CF4_B * f2)),
    ]


def _build_factor(a: float, b: float, params: DriveParams, M: int):
    if params.lam == 0.0:
        return _factor_hermitian(a, b, M)
    return _factor_sparse(a, b, CouplingPair.from_lambda(params.lam), M)


def _accumulate_interval(
    params: DriveParams,
    M: int,
    cfg: PropagatorConfig,
    t_start: float,
    n_steps: int,
    dt: float,
) -> np.ndarray:
    """Dense propagator over n_steps consecutive steps starting at t_start."""
    U = np.eye(2 * M + 1, dtype=complex)
    for j in range(n_steps):
        t_step = t_start + j * dt
        for a, b in _step_factors(params, t_step, dt, cfg.scheme):
            U = _build_factor(a, b, params, M) @ U
    return np.asarray(U)


def propagate(
    state: MomentumState,
    params: DriveParams,
    t0: float,
    t1: float,
    cfg: PropagatorConfig | None = None,
) -> tuple[MomentumState, float]:
    """Advance a state from t0 to t1 under i d/dt psi = H(t) psi.

    The interval is split into uniform steps no longer than
    T / steps_per_period. Returns the advanced state (stamped with time t1)
    together with the accumulated log of the squared norm that was divided
    out; the log is 0.0 when renormalization is off, in which case the raw
    norm lives in the amplitudes themselves.

    Raises NonFinite if any amplitude overflows to NaN/Inf, which in
    broken-phase runs means renormalize_each_step should be enabled.
    """
    if cfg is None:
        cfg = PropagatorConfig()
    if not t1 > t0:
        raise ValueError(f"t1 must exceed t0, got [{t0}, {t1}]")
    span = t1 - t0
    dt_nominal = params.period / cfg.steps_per_period
    n_steps = max(1, int(math.ceil(span / dt_nominal - 1e-12)))
    dt = span / n_steps

    c = np.array(state.amplitudes, dtype=complex)
    log_norm = 0.0
    for j in range(n_steps):
        t_step = t0 + j * dt
        for a, b in _step_factors(params, t_step, dt, cfg.scheme):
            E = _build_factor(a, b, params, state.truncation)
            c = E @ c
        n2 = float(np.vdot(c, c).real)
        if not np.isfinite(n2) or n2 <= 0.0:
            raise NonFinite(
                f"norm became {n2} at t = {t_step + dt}; "
                "enable renormalize_each_step for broken-phase runs"
            )
        if cfg.renormalize_each_step:
            log_norm += math.log(n2)
            c /= math.sqrt(n2)
    return MomentumState(amplitudes=c, truncation=state.truncation, time=t1), log_norm


@lru_cache(maxsize=8)
def _one_period_cached(params: DriveParams, M: int, cfg: PropagatorConfig) -> np.ndarray:
    dt = params.period / cfg.steps_per_period
    U = _accumulate_interval(params, M, cfg, 0.0, cfg.steps_per_period, dt)
    if cfg.convergence_check:
        fine = PropagatorConfig(
            steps_per_period=2 * cfg.steps_per_period,
            scheme=cfg.scheme,
            renormalize_each_step=cfg.renormalize_each_step,
            convergence_check=False,
            truncation_guard_tol=cfg.truncation_guard_tol,
        )
        U2 = _accumulate_interval(
            params, M, fine, 0.0, fine.steps_per_period, dt / 2.0
        )
        drift = float(np.max(np.abs(U - U2)))
        if drift > 1e-6:
            warnings.warn(
                f"one-period propagator not converged: step halving moved "
                f"entries by {drift:.2e}",
                stacklevel=3,
            )
    U.flags.writeable = False
    return U


def one_period_propagator(
    params: DriveParams, M: int, cfg: PropagatorConfig | None = None
) -> np.ndarray:
    """The Floquet operator U(T, 0) as a dense (2M+1) x (2M+1) matrix.

    Deterministic for a fixed config and cached on (params, M, cfg); the
    returned array is read-only.
    """
    if cfg is None:
        cfg = PropagatorConfig()
    if not np.all(np.isfinite(U := _one_period_cached(params, M, cfg))):
        raise NonFinite("one-period propagator overflowed")
    return U


def evolve_with_observables(
    state0: MomentumState,
    params: DriveParams,
    t_max: float,
    samples_per_period: int = 8,
    cfg: PropagatorConfig | None = None,
    populations: bool = False,
) -> TimeSeries:
    """Evolve from state0 and sample current, log-norm and populations.

    Samples lie on the uniform grid state0.time + k T / samples_per_period,
    from k = 0 up to the first multiple covering t_max (a duration, measured
    from state0.time). Amplitudes are renormalized at every sample with the
    divided-out factor accumulated into log_norm, so the reported current is
    renormalization-invariant by construction and the run cannot overflow no
    matter how fast the norm grows.

    The per-sample-interval propagators repeat after one period and are
    therefore built once and reused, which makes long runs cheap: cost is
    one period's worth of exponentials plus a matrix-vector product per
    sample.
    """
    if cfg is None:
        cfg = PropagatorConfig()
    if not t_max > 0:
        raise ValueError(f"t_max must be positive, got {t_max}")
    if cfg.steps_per_period % samples_per_period != 0:
        raise ValueError(
            f"samples_per_period ({samples_per_period}) must divide "
            f"steps_per_period ({cfg.steps_per_period})"
        )
    M = state0.truncation
    T = params.period
    block = cfg.steps_per_period // samples_per_period
    dt = T / cfg.steps_per_period
    dt_sample = T / samples_per_period
    n_samples = int(math.ceil(t_max / dt_sample - 1e-9))

    intervals = [
        _accumulate_interval(params, M, cfg, state0.time + k * block * dt, block, dt)
        for k in range(samples_per_period)
    ]

    n = np.arange(-M, M + 1)
    c = np.array(state0.amplitudes, dtype=complex)
    n2 = float(np.vdot(c, c).real)
    if n2 <= 0.0:
        raise ValueError("initial state has zero norm")
    log_norm_acc = math.log(n2)
    c /= math.sqrt(n2)

    times = np.empty(n_samples + 1)
    current = np.empty(n_samples + 1)
    log_norm = np.empty(n_samples + 1)
    pops = np.empty((n_samples + 1, 2 * M + 1)) if populations else None

    def record(k: int, t: float) -> float:
        p = np.abs(c) ** 2
        times[k] = t
        current[k] = float(np.sum(n * p))
        log_norm[k] = log_norm_acc
        if pops is not None:
            pops[k] = p
        return edge_population_fraction(c)

    edge_max = record(0, state0.time)
    for k in range(1, n_samples + 1):
        c = intervals[(k - 1) % samples_per_period] @ c
        n2 = float(np.vdot(c, c).real)
        if not np.isfinite(n2) or n2 <= 0.0:
            raise NonFinite(f"norm became {n2} at sample {k}")
        log_norm_acc += math.log(n2)
        c /= math.sqrt(n2)
        edge_max = max(edge_max, record(k, state0.time + k * dt_sample))

    safe = edge_max <= cfg.truncation_guard_tol
    if not safe:
        warnings.warn(
            f"population reached the momentum-ladder edge "
            f"(max edge fraction {edge_max:.2e} > {cfg.truncation_guard_tol:.0e}); "
            f"results may be truncation-limited",
            stacklevel=2,
        )
    return TimeSeries(
        times=times,
        current=current,
        log_norm=log_norm,
        populations=pops,
        edge_population_max=edge_max,
        truncation_safe=safe,
    )
