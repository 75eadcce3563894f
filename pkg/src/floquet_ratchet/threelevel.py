"""Closed-form effective models for the two lowest drive resonances.

Near a resonance the slow dynamics reduces to three momentum modes coupled
through an effective T-matrix: at omega = 1 the modes are {+2, 0, -2} and
the couplings Gamma_pm = K^2 lambda_pm^2 / 8 arise at second order in the
drive, while at omega = 0.5 the modes are {+1, 0, -1} with first-order
couplings Gamma'_pm = K (1 +- lambda)/4. The second-order couplings are
nonnegative for every lambda, so that model only oscillates; the
first-order ones change sign at lambda = 1, where the Rabi frequency
Omega' = sqrt(2 Gamma'_- Gamma'_+) turns imaginary and the populations grow
hyperbolically instead.

The generic perturbative builder (perturbative_t_element) constructs any
T-matrix element from the extended-space coupling operator directly and is
the oracle the hard-coded matrices are tested against.

All closed-form currents here drop the norm's own dynamics, which is why
they are compared against full propagation only at weak driving.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .errors import DegenerateIntermediate, NonFinite
from .model import CouplingPair
from .propagation import TimeSeries

__all__ = [
    "EffectiveCouplings",
    "ExtendedFloquetIndex",
    "effective_couplings",
    "build_t_matrix",
    "resonant_momenta",
    "coupling_v_element",
    "perturbative_t_element",
    "analytic_populations_w1",
    "analytic_populations_w05",
    "analytic_current_w1",
    "analytic_current_w05",
    "analytic_tac",
    "rabi_period",
    "ep_analytic_solution",
    "three_level_ode_evolve",
]

_RESONANCES = ("half", "one")


@dataclass(frozen=True)
class EffectiveCouplings:
    """Effective couplings and Rabi frequency of one resonance.

    order "second" is the omega = 1 resonance (couplings quadratic in K,
    rabi always real); order "first" is omega = 0.5 (couplings linear in K,
    rabi purely imaginary for lambda > 1).
    """

    gamma_plus: float
    gamma_minus: float
    rabi: complex
    order: str


@dataclass(frozen=True)
class ExtendedFloquetIndex:
    """Basis label |n, m> of the extended (momentum x photon) space."""

    n: int
    m: int

    def zone_energy(self, omega: float) -> float:
        """Unperturbed extended-space energy n^2/2 - m*omega."""
        return 0.5 * self.n * self.n - self.m * omega


def _check_resonance(resonance: str) -> None:
    if resonance not in _RESONANCES:
        raise ValueError(f"resonance must be one of {_RESONANCES}, got {resonance!r}")


def effective_couplings(K: float, lam: float, resonance: str) -> EffectiveCouplings:
    _check_resonance(resonance)
    if resonance == "one":
        pair = CouplingPair.from_lambda(lam)
        gp = K * K * pair.lambda_plus**2 / 8.0
        gm = K * K * pair.lambda_minus**2 / 8.0
        order = "second"
    else:
        gp = K * (1.0 + lam) / 4.0
        gm = K * (1.0 - lam) / 4.0
        order = "first"
    rabi = complex(np.sqrt(complex(2.0 * gp * gm)))
    return EffectiveCouplings(gamma_plus=gp, gamma_minus=gm, rabi=rabi, order=order)


def resonant_momenta(resonance: str) -> tuple[int, int, int]:
    """Momentum weights of the three basis states, in basis order."""
    _check_resonance(resonance)
    return (2, 0, -2) if resonance == "one" else (1, 0, -1)


def build_t_matrix(K: float, lam: float, resonance: str) -> np.ndarray:
    """Effective 3x3 T-matrix on the resonant manifold.

    Basis order is descending momentum: {|2,2>, |0,0>, |-2,2>} at
    resonance="one" and {|1,1>, |0,0>, |-1,1>} at resonance="half".
    """
    c = effective_couplings(K, lam, resonance)
    gp, gm = c.gamma_plus, c.gamma_minus
    if resonance == "one":
        rows = [[0.0, gm, 0.0], [gp, 0.0, gm], [0.0, gp, 0.0]]
    else:
        rows = [[0.0, -gm, 0.0], [-gp, 0.0, gm], [0.0, gp, 0.0]]
    return np.array(rows, dtype=complex)


def coupling_v_element(
    row: ExtendedFloquetIndex, col: ExtendedFloquetIndex, K: float, lam: float
) -> complex:
    """First-order coupling <row|V|col> in the extended space.

    V moves one momentum step and one photon step per application:
    <n+1, m+-1|V|n, m> = +-(K/4) lambda_minus and
    <n-1, m+-1|V|n, m> = +-(K/4) lambda_plus, the sign following the photon
    step.
    """
    dn = row.n - col.n
    dm = row.m - col.m
    if abs(dn) != 1 or abs(dm) != 1:
        return 0.0 + 0.0j
    pair = CouplingPair.from_lambda(lam)
    lam_factor = pair.lambda_minus if dn == 1 else pair.lambda_plus
    return complex(dm * K * lam_factor / 4.0)


def perturbative_t_element(
    row: ExtendedFloquetIndex,
    col: ExtendedFloquetIndex,
    K: float,
    lam: float,
    omega: float,
    n_max: int = 8,
) -> complex:
    """T-matrix element from perturbation theory, through second order.

    First-order part is <row|V|col>; the second-order part sums over
    intermediate states |s> reachable from both sides, each weighted by
    -1/zone_energy(s). Intermediates are restricted to |s.n| <= n_max.

    Raises DegenerateIntermediate when a contributing intermediate state
    lies on the resonant manifold itself (|zone energy| < 1e-12), since the
    second-order weight is then undefined.
    """
    total = coupling_v_element(row, col, K, lam)
    for dn in (-1, 1):
        for dm in (-1, 1):
            s = ExtendedFloquetIndex(col.n + dn, col.m + dm)
            if abs(s.n) > n_max:
                continue
            amp = coupling_v_element(row, s, K, lam) * coupling_v_element(
                s, col, K, lam
            )
            if amp == 0:
                continue
            eps = s.zone_energy(omega)
            if abs(eps) < 1e-12:
                raise DegenerateIntermediate(
                    f"intermediate |{s.n},{s.m}> is resonant (zone energy {eps:.2e})"
                )
            total += amp * (-1.0 / eps)
    return total


def _sin_over_rabi(rabi: float, t) -> np.ndarray:
    """sin(rabi*t)/rabi, exact at rabi = 0 (where it is t)."""
    t = np.asarray(t, dtype=float)
    return t * np.sinc(rabi * t / math.pi)


def analytic_populations_w1(K: float, lam: float, t):
    """Bare three-level populations (P_2, P_0, P_-2) at the omega = 1 resonance.

    P_0 = cos^2(Omega t) and the side modes grow as (Gamma_pm / Omega)^2
    sin^2(Omega t), the minus mode with the larger weight Gamma_plus^2.
    These are unnormalized: their sum is not 1 because the model is not
    Hermitian.
    """
    c = effective_couplings(K, lam, "one")
    rabi = c.rabi.real
    s = _sin_over_rabi(rabi, t)
    p2 = (c.gamma_minus * s) ** 2
    p0 = np.cos(rabi * np.asarray(t, dtype=float)) ** 2
    pm2 = (c.gamma_plus * s) ** 2
    return p2, p0, pm2


def analytic_current_w1(K: float, lam: float, t):
    """Closed-form current at the omega = 1 resonance.

    Evaluates I(t) = -2(G+^2 - G-^2) / [(G+^2 + G-^2) + Omega^2 cot^2(Omega t)]
    in the singularity-free form obtained by multiplying through with
    sin^2(Omega t)/Omega^2, which also gives the correct 0 limit at the cot
    poles and at t = 0.
    """
    c = effective_couplings(K, lam, "one")
    rabi = c.rabi.real
    gp2, gm2 = c.gamma_plus**2, c.gamma_minus**2
    t = np.asarray(t, dtype=float)
    s2 = _sin_over_rabi(rabi, t) ** 2
    out = -2.0 * (gp2 - gm2) * s2 / ((gp2 + gm2) * s2 + np.cos(rabi * t) ** 2)
    return out if out.ndim else float(out)


def analytic_populations_w05(K: float, lam: float, t):
    """Bare populations (P_1, P_0, P_-1) at the omega = 0.5 resonance.

    Below lambda = 1 these oscillate like the second-order model's; above it
    the trigonometric functions of the imaginary Rabi frequency turn
    hyperbolic and the side modes grow without bound. At lambda = 1 exactly,
    P_-1 = (K t / 2)^2 and the total norm is the algebraic 1 + K^2 t^2 / 4.
    """
    c = effective_couplings(K, lam, "half")
    t = np.asarray(t, dtype=float)
    if abs(c.rabi.imag) > 0.0:
        growth = abs(c.rabi)
        s = np.sinh(growth * t) / growth
        mid = np.cosh(growth * t)
    else:
        s = _sin_over_rabi(c.rabi.real, t)
        mid = np.cos(c.rabi.real * t)
    return (c.gamma_minus * s) ** 2, mid**2, (c.gamma_plus * s) ** 2


def analytic_current_w05(K: float, lam: float, t):
    """Closed-form current at the omega = 0.5 resonance, any lambda >= 0.

    For lambda <= 1 the Rabi frequency is real and the current oscillates;
    the formula is I'(t) = -(G'+^2 - G'-^2) / [(G'+^2 + G'-^2)
    + |Omega'^2| |cot(Omega' t)|^2], evaluated in the same sin^2-multiplied
    form as the omega = 1 case (this covers lambda = 1, where Omega' = 0 and
    the current rises monotonically to -1). For lambda > 1 the cotangent of
    the imaginary argument becomes a hyperbolic cotangent; multiplying
    through by tanh^2 instead gives an overflow-safe expression approaching
    -1/lambda.
    """
    c = effective_couplings(K, lam, "half")
    gp, gm = c.gamma_plus, c.gamma_minus
    gp2, gm2 = gp * gp, gm * gm
    t = np.asarray(t, dtype=float)
    if lam <= 1.0:
        rabi = c.rabi.real
        s2 = _sin_over_rabi(rabi, t) ** 2
        out = -(gp2 - gm2) * s2 / ((gp2 + gm2) * s2 + np.cos(rabi * t) ** 2)
    else:
        growth = abs(c.rabi)
        th2 = np.tanh(growth * t) ** 2
        out = -(gp2 - gm2) * th2 / ((gp2 + gm2) * th2 + growth * growth)
    return out if out.ndim else float(out)


def analytic_tac(
    K: float, lam: float, resonance: str, t_max: float, n_samples: int = 2048
) -> float:
    """Trapezoidal time average of the closed-form current over [0, t_max].

    Uses the same averaging rule as the numeric runs so the two sides of a
    comparison see identical windowing.
    """
    _check_resonance(resonance)
    t = np.linspace(0.0, t_max, n_samples)
    current = (
        analytic_current_w1(K, lam, t)
        if resonance == "one"
        else analytic_current_w05(K, lam, t)
    )
    return float(np.trapezoid(current, t) / t_max)


def rabi_period(K: float, lam: float, resonance: str) -> float:
    """Period pi/Omega of the population oscillation (inf if Omega is not real)."""
    c = effective_couplings(K, lam, resonance)
    if c.rabi.real <= 0.0 or abs(c.rabi.imag) > 0.0:
        return math.inf
    return math.pi / c.rabi.real


def ep_analytic_solution(K: float, t: float):
    """Exact weak-drive solution at the lambda = 1, omega = 0.5 exceptional point.

    Returns (c_minus1, c_0, c_plus1, norm_squared, current) with
    c_-1(t) = (iK/2) t e^{-it/2} - iK sin(t/2), c_0 = 1, c_+1 = 0,
    the norm growing algebraically as 1 + K^2 t^2 / 4 and the current
    -1 / (1 + 4/(K^2 t^2)) approaching -1 from above.
    """
    c_m1 = 0.5j * K * t * np.exp(-0.5j * t) - 1j * K * math.sin(0.5 * t)
    norm2 = 1.0 + K * K * t * t / 4.0
    current = 0.0 if t == 0.0 else -1.0 / (1.0 + 4.0 / (K * K * t * t))
    return complex(c_m1), 1.0 + 0.0j, 0.0 + 0.0j, float(norm2), float(current)


def three_level_ode_evolve(
    T: np.ndarray,
    t_max: float,
    dt: float,
    momenta: tuple[int, int, int] = (2, 0, -2),
) -> TimeSeries:
    """Integrate i da/dt = T a from a = (0, 1, 0) and record observables.

    The basis is the descending-momentum order of build_t_matrix; pass
    momenta=(1, 0, -1) for the half resonance. Amplitudes are renormalized
    every step with the log of the squared norm accumulated, so broken-phase
    growth cannot overflow.
    """
    T = np.asarray(T, dtype=complex)
    if T.shape != (3, 3):
        raise ValueError(f"T must be 3x3, got {T.shape}")
    if dt <= 0 or t_max <= 0:
        raise ValueError("t_max and dt must be positive")
    step = expm(-1j * T * dt)
    n_samples = int(math.ceil(t_max / dt - 1e-9)) + 1
    weights = np.asarray(momenta, dtype=float)

    a = np.array([0.0, 1.0, 0.0], dtype=complex)
    log_norm = 0.0
    times = np.empty(n_samples)
    current = np.empty(n_samples)
    log_norms = np.empty(n_samples)
    populations = np.empty((n_samples, 3))
    for k in range(n_samples):
        n2 = float(np.vdot(a, a).real)
        if not np.isfinite(n2) or n2 <= 0.0:
            raise NonFinite(f"norm became invalid at step {k}")
        p = np.abs(a) ** 2 / n2
        times[k] = k * dt
        current[k] = float(weights @ p)
        log_norm += math.log(n2)
        a = a / math.sqrt(n2)
        log_norms[k] = log_norm
        populations[k] = p
        if k + 1 < n_samples:
            a = step @ a
    return TimeSeries(
        times=times,
        current=current,
        log_norm=log_norms,
        populations=populations,
    )
