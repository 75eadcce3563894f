"""Floquet spectra and everything built on them.

Quasienergies come from the eigenvalues mu of the one-period propagator as
eps = (i/T) Log mu: the real part is folded into the Brillouin zone
[-omega/2, omega/2) and the imaginary part ln|mu|/T is branch-free. The sum
xi of |Im eps| over all modes is the order parameter for the symmetry of the
spectrum: it sits at the numerical floor while all quasienergies are real
and rises sharply once complex-conjugate pairs appear, which is what the
threshold bisection exploits.

Distances between quasienergies are always measured on the circle, i.e. the
real part of the difference is refolded before taking the modulus, so pairs
straddling the zone edge are not missed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eig as la_eig, schur
from scipy.sparse.csgraph import connected_components
from scipy.sparse import csr_matrix

from .errors import BracketFailure, EigenFailure
from .model import DriveParams, MomentumState
from .propagation import PropagatorConfig, one_period_propagator

__all__ = [
    "FloquetSpectrum",
    "StateClass",
    "EPEvidence",
    "fold_quasienergy",
    "floquet_spectrum",
    "imag_sum_xi",
    "xi_for_params",
    "pt_threshold",
    "classify_floquet_states",
    "detect_ep",
    "dominant_floquet_state",
    "dominant_pair_separation",
    "separation_threshold_omega_c",
    "expansion_coefficients",
]

# Imaginary parts below this are treated as zero (real spectrum); measured
# eigensolver noise on 511-mode real-spectrum cases sits near 1e-11.
IMAG_FLOOR = 1e-9


def fold_quasienergy(x, omega: float):
    """Map real quasienergies into the Brillouin zone [-omega/2, omega/2)."""
    x = np.asarray(x, dtype=float)
    folded = x - omega * np.floor(x / omega + 0.5)
    return folded if folded.ndim else float(folded)


@dataclass(frozen=True)
class FloquetSpectrum:
    """Eigensystem of one Floquet operator.

    ``modes`` holds unit-norm right eigenvectors as columns, aligned with
    ``quasienergies`` (sorted by real part, then imaginary part). The
    operator itself is kept for diagnostics that need more than the
    eigenvectors, e.g. Schur-based classification near defective points.
    """

    quasienergies: np.ndarray
    modes: np.ndarray
    omega: float
    truncation: int
    u_matrix: np.ndarray


@dataclass(frozen=True)
class StateClass:
    """Classification of one Floquet state.

    tag is one of:
      - "degenerate-same-distribution": member of a quasienergy doublet whose
        momentum profiles coincide;
      - "degenerate-symmetric-pair": member of a doublet whose profiles are
        mirror images under n -> -n;
      - "nondegenerate-symmetric": unpaired state with a reflection-symmetric
        profile (carries no mean momentum);
      - "nondegenerate-asymmetric": unpaired state with an asymmetric profile
        (the current-carrying class).
    """

    tag: str
    partner_index: int | None
    mean_momentum: float
    overlap: float


@dataclass(frozen=True)
class EPEvidence:
    """Closeness of one quasienergy pair in both eigenvalue and eigenvector."""

    eigenvalue_gap: float
    eigenvector_overlap: float
    quasienergies: tuple[complex, complex]
    indices: tuple[int, int]
    is_ep: bool


def floquet_spectrum(U: np.ndarray, omega: float) -> FloquetSpectrum:
    """Diagonalize a one-period propagator.

    Raises EigenFailure if the eigensolver does not converge.
    """
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise ValueError(f"U must be square, got shape {U.shape}")
    T = 2.0 * math.pi / omega
    try:
        mu, vecs = np.linalg.eig(U)
    except np.linalg.LinAlgError as exc:
        raise EigenFailure(str(exc)) from exc
    eps_r = fold_quasienergy(-np.angle(mu) / T, omega)
    eps_i = np.log(np.abs(mu)) / T
    order = np.lexsort((eps_i, eps_r))
    eps = (eps_r + 1j * eps_i)[order]
    vecs = vecs[:, order]
    vecs = vecs / np.linalg.norm(vecs, axis=0, keepdims=True)
    M = (U.shape[0] - 1) // 2
    return FloquetSpectrum(
        quasienergies=eps, modes=vecs, omega=omega, truncation=M, u_matrix=U
    )


def imag_sum_xi(spec: FloquetSpectrum) -> float:
    """xi = sum of |Im eps| over all retained modes."""
    return float(np.sum(np.abs(spec.quasienergies.imag)))


def xi_for_params(
    params: DriveParams, M: int, cfg: PropagatorConfig | None = None
) -> float:
    """xi of the spectrum at one parameter point (builds U on the fly)."""
    U = one_period_propagator(params, M, cfg)
    return imag_sum_xi(floquet_spectrum(U, params.omega))


def pt_threshold(
    K: float,
    omega: float,
    lambda_range: tuple[float, float] = (0.2, 8.0),
    xi_tol: float = 1e-5,
    M: int = 255,
    cfg: PropagatorConfig | None = None,
    resolution: float = 1e-3,
    phi: float = 0.0,
) -> float:
    """Smallest lambda at which xi exceeds xi_tol, located by bisection.

    Raises BracketFailure unless xi is below xi_tol at the low end of
    lambda_range and above it at the high end.
    """
    lo, hi = lambda_range
    if not lo < hi:
        raise ValueError(f"need an increasing lambda_range, got {lambda_range}")

    def xi_at(lam: float) -> float:
        return xi_for_params(DriveParams(K=K, lam=lam, omega=omega, phi=phi), M, cfg)

    xi_lo, xi_hi = xi_at(lo), xi_at(hi)
    if xi_lo >= xi_tol or xi_hi <= xi_tol:
        raise BracketFailure(
            f"xi({lo}) = {xi_lo:.3e}, xi({hi}) = {xi_hi:.3e} do not straddle "
            f"xi_tol = {xi_tol:.3e}"
        )
    while hi - lo > resolution:
        mid = 0.5 * (lo + hi)
        if xi_at(mid) > xi_tol:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def _circle_gap_matrix(eps: np.ndarray, omega: float) -> np.ndarray:
    """Pairwise quasienergy distances with the real part folded on the circle."""
    dr = eps.real[:, None] - eps.real[None, :]
    dr = dr - omega * np.floor(dr / omega + 0.5)
    di = eps.imag[:, None] - eps.imag[None, :]
    return np.hypot(dr, di)


def _profiles(vectors: np.ndarray) -> np.ndarray:
    """Column-wise normalized momentum probability profiles."""
    p = np.abs(vectors) ** 2
    return p / p.sum(axis=0, keepdims=True)


def _match_indices(reference: np.ndarray, candidates: np.ndarray) -> np.ndarray:
    """Greedy one-to-one matching of two (near-)identical eigenvalue multisets.

    Returns, for each entry of `reference`, the index of its partner in
    `candidates`. Used to keep Schur-based diagnostics aligned with the
    spectrum's eigen-order.
    """
    remaining = list(range(len(candidates)))
    out = np.empty(len(reference), dtype=int)
    for i, value in enumerate(reference):
        dists = [abs(candidates[j] - value) for j in remaining]
        k = int(np.argmin(dists))
        out[i] = remaining.pop(k)
    return out


def _greedy_pairs(
    indices: list[int], profiles: np.ndarray, tol: float
) -> tuple[list[tuple[int, int, bool]], list[int]]:
    """Pair up profile columns by best L1 match, direct or index-reflected.

    Returns the accepted pairs as (a, b, matched_directly) plus the leftover
    indices once no remaining pair beats tol.
    """
    pairs: list[tuple[int, int, bool]] = []
    unpaired = list(indices)
    while len(unpaired) >= 2:
        best = None
        for ii, a in enumerate(unpaired):
            for b in unpaired[ii + 1 :]:
                d_same = float(np.abs(profiles[:, a] - profiles[:, b]).sum())
                d_mirr = float(np.abs(profiles[:, a] - profiles[::-1, b]).sum())
                d = min(d_same, d_mirr)
                if best is None or d < best[0]:
                    best = (d, a, b, d_same <= d_mirr)
        d, a, b, same = best
        if d >= tol:
            break
        pairs.append((a, b, same))
        unpaired.remove(a)
        unpaired.remove(b)
    return pairs, unpaired


def _momentum_canonical_basis(V: np.ndarray, n: np.ndarray) -> np.ndarray | None:
    """Re-basis a (near-)degenerate span so momentum is diagonal within it.

    Inside a numerically exact degeneracy the eigensolver's basis is an
    arbitrary rotation of the subspace; this picks the gauge in which the
    momentum operator restricted to the span is diagonal, which is the basis
    the mirror-pair structure is stated in. Returns None when the span is
    too ill-conditioned to re-basis safely (coalescing eigenvectors).
    """
    gram = np.conj(V.T) @ V
    if np.linalg.cond(gram) > 1e6:
        return None
    restricted = np.conj(V.T) @ (n[:, None] * V)
    try:
        mu, W = la_eig(restricted, gram)
    except np.linalg.LinAlgError:
        return None
    C = V @ W[:, np.argsort(mu.real)]
    norms = np.linalg.norm(C, axis=0, keepdims=True)
    if not np.all(norms > 0):
        return None
    return C / norms


def classify_floquet_states(
    spec: FloquetSpectrum,
    degeneracy_tol: float = 1e-6,
    overlap_state: MomentumState | None = None,
    profile_tol: float = 1e-6,
) -> list[StateClass]:
    """Sort Floquet states into degenerate doublets and nondegenerate singles.

    States are first clustered by quasienergy distance (on the circle, within
    degeneracy_tol); inside each cluster, profiles are paired greedily by the
    best match, either directly ("same-distribution") or after index
    reflection ("symmetric-pair"), with L1 profile distance below
    profile_tol. Everything left over is classified by the symmetry of its
    own profile.

    Cluster members that resist pairing are re-based first: within an exact
    degeneracy the eigenbasis is only defined up to rotation, so the span is
    put into the momentum-diagonal gauge before profiles are compared (and
    the reported mean momentum and overlap for those states refer to that
    canonical basis). This is what resolves the Hermitian limit, where every
    doublet supports an exact mirror pair but the raw eigenvectors come out
    as arbitrary mixtures of it.

    When the whole eigenvector matrix is too ill-conditioned to trust
    (condition number above 1e8, the near-defective regime), profiles are
    taken from Schur vectors of the propagator instead, matched to the
    eigenvalue order.
    """
    eps = spec.quasienergies
    N = eps.size
    vectors = spec.modes
    if np.linalg.cond(spec.modes) > 1e8:
        T_schur, Z = schur(spec.u_matrix, output="complex")
        T = 2.0 * math.pi / spec.omega
        schur_eps = (
            fold_quasienergy(-np.angle(np.diag(T_schur)) / T, spec.omega)
            + 1j * np.log(np.abs(np.diag(T_schur))) / T
        )
        vectors = Z[:, _match_indices(eps, schur_eps)]

    vectors = np.array(vectors)  # working copy; canonicalization edits columns
    profiles = _profiles(vectors)

    gaps = _circle_gap_matrix(eps, spec.omega)
    adjacency = csr_matrix(gaps < degeneracy_tol)
    n_comp, labels = connected_components(adjacency, directed=False)

    M = spec.truncation
    n = np.arange(-M, M + 1)

    tags: list[str | None] = [None] * N
    partners: list[int | None] = [None] * N

    def adopt(pairs: list[tuple[int, int, bool]]) -> None:
        for a, b, same in pairs:
            tag = "degenerate-same-distribution" if same else "degenerate-symmetric-pair"
            tags[a] = tags[b] = tag
            partners[a], partners[b] = b, a

    for comp in range(n_comp):
        members = list(np.flatnonzero(labels == comp))
        pairs, leftover = _greedy_pairs(members, profiles, profile_tol)
        adopt(pairs)
        if len(leftover) < 2:
            continue
        canonical = _momentum_canonical_basis(vectors[:, leftover], n)
        if canonical is None:
            continue
        vectors[:, leftover] = canonical
        profiles[:, leftover] = _profiles(canonical)
        pairs, _ = _greedy_pairs(leftover, profiles, profile_tol)
        adopt(pairs)

    mean_p = profiles.T @ n
    if overlap_state is not None:
        overlaps = np.abs(np.conj(vectors.T) @ overlap_state.amplitudes)
    else:
        overlaps = np.zeros(N)

    for idx in range(N):
        if tags[idx] is None:
            self_mirror = float(
                np.abs(profiles[:, idx] - profiles[::-1, idx]).sum()
            )
            tags[idx] = (
                "nondegenerate-symmetric"
                if self_mirror < profile_tol
                else "nondegenerate-asymmetric"
            )

    return [
        StateClass(
            tag=tags[idx],
            partner_index=partners[idx],
            mean_momentum=float(mean_p[idx]),
            overlap=float(overlaps[idx]),
        )
        for idx in range(N)
    ]


def detect_ep(
    params: DriveParams,
    M: int,
    cfg: PropagatorConfig | None = None,
    degeneracy_tol: float = 1e-3,
    overlap_threshold: float = 0.999,
) -> list[EPEvidence]:
    """Evidence for exceptional points in the spectrum at one parameter point.

    Every quasienergy pair closer than degeneracy_tol is reported with its
    eigenvector overlap |<phi_i|phi_j>|, sorted by overlap (largest first):
    an exceptional point shows up as a pair that is close in eigenvalue AND
    has overlap near 1, whereas ordinary degeneracies keep distinguishable
    eigenvectors. If no pair is that close, the single closest pair is
    returned so callers always see the nearest candidate.
    """
    spec = floquet_spectrum(one_period_propagator(params, M, cfg), params.omega)
    eps = spec.quasienergies
    gaps = _circle_gap_matrix(eps, spec.omega)
    iu, ju = np.triu_indices(eps.size, k=1)
    pair_gaps = gaps[iu, ju]

    close = pair_gaps < degeneracy_tol
    if not np.any(close):
        close = pair_gaps == pair_gaps.min()

    gram = np.abs(np.conj(spec.modes.T) @ spec.modes)
    evidence = [
        EPEvidence(
            eigenvalue_gap=float(pair_gaps[k]),
            eigenvector_overlap=float(gram[iu[k], ju[k]]),
            quasienergies=(complex(eps[iu[k]]), complex(eps[ju[k]])),
            indices=(int(iu[k]), int(ju[k])),
            is_ep=bool(
                pair_gaps[k] < degeneracy_tol
                and gram[iu[k], ju[k]] > overlap_threshold
            ),
        )
        for k in np.flatnonzero(close)
    ]
    evidence.sort(key=lambda e: -e.eigenvector_overlap)
    return evidence


def dominant_floquet_state(
    spec: FloquetSpectrum, degeneracy_tol: float = 1e-6
) -> tuple[np.ndarray, bool]:
    """Indices of the state(s) with maximal Im eps, and whether the phase is broken.

    In the unbroken phase (max Im eps at the numerical floor) there is no
    dominant state; all indices are returned with the flag False.
    """
    eps_i = spec.quasienergies.imag
    top = float(eps_i.max())
    if top <= IMAG_FLOOR:
        return np.arange(eps_i.size), False
    return np.flatnonzero(eps_i >= top - degeneracy_tol), True


def dominant_pair_separation(spec: FloquetSpectrum) -> float:
    """L1 distance between the momentum profiles of the two leading states.

    "Leading" means the two largest Im eps. Identical profiles (separation
    near 0) mean the late-time state, and hence the asymptotic current, is
    predictable; profiles splitting apart signal the loss of that
    predictability.
    """
    order = np.argsort(spec.quasienergies.imag)
    a, b = order[-1], order[-2]
    profiles = _profiles(spec.modes[:, [a, b]])
    return float(np.abs(profiles[:, 0] - profiles[:, 1]).sum())


def separation_threshold_omega_c(
    K: float,
    lam: float,
    omega_range: tuple[float, float],
    s_tol: float = 0.1,
    M: int = 63,
    cfg: PropagatorConfig | None = None,
    resolution: float = 0.05,
    phi: float = 0.0,
) -> float:
    """Driving frequency at which the two dominant Floquet states separate.

    Bisection on the separation metric of dominant_pair_separation; raises
    BracketFailure unless the metric is below s_tol at the low end of
    omega_range and above it at the high end.
    """
    lo, hi = omega_range
    if not lo < hi:
        raise ValueError(f"need an increasing omega_range, got {omega_range}")

    def sep_at(omega: float) -> float:
        params = DriveParams(K=K, lam=lam, omega=omega, phi=phi)
        spec = floquet_spectrum(one_period_propagator(params, M, cfg), omega)
        return dominant_pair_separation(spec)

    s_lo, s_hi = sep_at(lo), sep_at(hi)
    if s_lo >= s_tol or s_hi <= s_tol:
        raise BracketFailure(
            f"separation({lo}) = {s_lo:.3e}, separation({hi}) = {s_hi:.3e} "
            f"do not straddle s_tol = {s_tol}"
        )
    while hi - lo > resolution:
        mid = 0.5 * (lo + hi)
        if sep_at(mid) > s_tol:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def expansion_coefficients(
    spec: FloquetSpectrum, state: MomentumState, mode: str = "plain"
) -> np.ndarray:
    """Coefficients of a state expanded over the Floquet modes.

    mode="plain" projects with plain inner products C_a = <phi_a|psi>; for a
    non-normal propagator the modes are not orthogonal, so this is a
    diagnostic projection rather than an exact decomposition. That exact
    decomposition is mode="biorthogonal", which solves the linear system on
    the mode basis (equivalent to projecting on left eigenvectors).
    """
    if mode == "plain":
        return np.conj(spec.modes.T) @ state.amplitudes
    if mode == "biorthogonal":
        return np.linalg.solve(spec.modes, state.amplitudes)
    raise ValueError(f"unknown expansion mode {mode!r}")
