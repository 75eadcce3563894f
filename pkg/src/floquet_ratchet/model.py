"""Driven-rotor model on a truncated momentum ladder.

The system is a quantum rotor driven by a flashing potential whose real and
imaginary parts share the same sinusoidal time profile:

    H(t) = p^2/2 + K sin(omega t + phi) [cos x - i lam sin x]

Expanded over momentum eigenstates |n> (psi = sum_n c_n e^{inx}/sqrt(2pi)),
the Hamiltonian is tridiagonal up to a diagonal gauge i^n that drops out of
every population and current: the kinetic term gives the diagonal n^2/2 and
the potential couples neighbouring rungs with asymmetric weights

    H[n, n+1] = (i K sin(omega t + phi) / 2) (lam + 1)
    H[n, n-1] = (i K sin(omega t + phi) / 2) (lam - 1)

At lam = 0 the two weights are complex conjugates of each other and H is
Hermitian; at lam = 1 the lower coupling vanishes and every rung feeds only
downward, which is the structural origin of the exceptional points studied
elsewhere in the library.

The ladder is truncated symmetrically to n in [-M, M]. Array index 0
corresponds to n = -M and index 2M to n = +M throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "DriveParams",
    "CouplingPair",
    "MomentumState",
    "hamiltonian_matrix",
    "hamiltonian_diagonals",
    "apply_hamiltonian",
    "initial_state_zero_momentum",
    "edge_population_fraction",
]


@dataclass(frozen=True)
class DriveParams:
    """Physical parameters of one run.

    Attributes:
        K: driving strength (dimensionless, >= 0).
        lam: relative strength of the imaginary part of the potential (>= 0).
        omega: driving angular frequency (> 0).
        phi: initial phase of the drive, radians.
        g: nonlinear interaction strength; 0 for linear runs.
    """

    K: float
    lam: float
    omega: float
    phi: float = 0.0
    g: float = 0.0

    def __post_init__(self) -> None:
        if self.K < 0:
            raise ValueError(f"K must be >= 0, got {self.K}")
        if self.lam < 0:
            raise ValueError(f"lam must be >= 0, got {self.lam}")
        if not self.omega > 0:
            raise ValueError(f"omega must be > 0, got {self.omega}")

    @property
    def period(self) -> float:
        """Driving period T = 2 pi / omega."""
        return 2.0 * np.pi / self.omega

    def drive_value(self, t: float) -> float:
        """Instantaneous drive amplitude K sin(omega t + phi)."""
        return self.K * np.sin(self.omega * t + self.phi)


@dataclass(frozen=True)
class CouplingPair:
    """The two ladder coupling weights lam_plus = lam + 1, lam_minus = lam - 1."""

    lambda_plus: float
    lambda_minus: float

    def __post_init__(self) -> None:
        if abs((self.lambda_plus - self.lambda_minus) - 2.0) > 1e-12:
            raise ValueError("lambda_plus - lambda_minus must equal 2")

    @classmethod
    def from_lambda(cls, lam: float) -> "CouplingPair":
        return cls(lambda_plus=lam + 1.0, lambda_minus=lam - 1.0)


@dataclass(frozen=True)
class MomentumState:
    """Complex amplitudes c_n on the symmetric ladder n in [-M, M].

    The amplitude array is made read-only on construction so states can be
    shared across threads; evolution always produces new states.
    """

    amplitudes: np.ndarray
    truncation: int
    time: float = 0.0

    def __post_init__(self) -> None:
        amps = np.array(self.amplitudes, dtype=complex, copy=True)
        if amps.ndim != 1 or amps.size != 2 * self.truncation + 1:
            raise ValueError(
                f"amplitudes must have length 2M+1 = {2 * self.truncation + 1}, "
                f"got shape {amps.shape}"
            )
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def momenta(self) -> np.ndarray:
        """Integer momentum labels n = -M .. M aligned with `amplitudes`."""
        return np.arange(-self.truncation, self.truncation + 1)


def hamiltonian_diagonals(
    params: DriveParams, t: float, M: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The three bands of H(t): (sub, main, super) diagonals.

    Returned as (H[n, n-1] band, H[n, n] band, H[n, n+1] band), with the
    off-diagonal bands of length 2M. This is the single place the matrix
    elements are written down; everything else in the library builds on it.
    """
    if M < 1:
        raise ValueError(f"M must be >= 1, got {M}")
    n = np.arange(-M, M + 1)
    drive = 1j * params.drive_value(t) / 2.0
    pair = CouplingPair.from_lambda(params.lam)
    main = (n.astype(float) ** 2 / 2.0).astype(complex)
    sup = np.full(2 * M, drive * pair.lambda_plus, dtype=complex)
    sub = np.full(2 * M, drive * pair.lambda_minus, dtype=complex)
    return sub, main, sup


def hamiltonian_matrix(params: DriveParams, t: float, M: int) -> np.ndarray:
    """Dense (2M+1) x (2M+1) Hamiltonian matrix at time t."""
    sub, main, sup = hamiltonian_diagonals(params, t, M)
    H = np.diag(main)
    idx = np.arange(2 * M)
    H[idx, idx + 1] = sup
    H[idx + 1, idx] = sub
    return H


def apply_hamiltonian(state: MomentumState, params: DriveParams, t: float) -> np.ndarray:
    """H(t) c without materializing the matrix.

    result[n] = (n^2/2) c_n + (i K sin(omega t + phi)/2)(lam_plus c_{n+1}
    + lam_minus c_{n-1}), with out-of-range neighbours treated as zero.
    """
    c = state.amplitudes
    M = state.truncation
    n = np.arange(-M, M + 1)
    drive = 1j * params.drive_value(t) / 2.0
    pair = CouplingPair.from_lambda(params.lam)
    out = (n.astype(float) ** 2 / 2.0) * c
    out[:-1] += drive * pair.lambda_plus * c[1:]
    out[1:] += drive * pair.lambda_minus * c[:-1]
    return out


def initial_state_zero_momentum(M: int) -> MomentumState:
    """The zero-current initial state |0>: c_n = delta_{n,0} at t = 0."""
    if M < 1:
        raise ValueError(f"M must be >= 1, got {M}")
    amps = np.zeros(2 * M + 1, dtype=complex)
    amps[M] = 1.0
    return MomentumState(amplitudes=amps, truncation=M, time=0.0)


def edge_population_fraction(amplitudes: np.ndarray) -> float:
    """Fraction of total population sitting on the outermost two rungs each side.

    Used as the truncation guard: evolutions flag themselves unsafe when this
    exceeds a tolerance, because population reaching the edge of the ladder
    means the physical system would have spread past the cutoff.
    """
    p = np.abs(amplitudes) ** 2
    total = p.sum()
    if total == 0.0:
        return 0.0
    return float((p[0] + p[1] + p[-2] + p[-1]) / total)
