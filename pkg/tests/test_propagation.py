"""Time stepping: exactness limits, norm behavior, convergence orders."""

import math

import numpy as np
import pytest

from floquet_ratchet import (
    DriveParams,
    MomentumState,
    NonFinite,
    PropagatorConfig,
    evolve_with_observables,
    initial_state_zero_momentum,
    matrix_exponential,
    one_period_propagator,
    propagate,
)


def _series_exponential(A: np.ndarray) -> np.ndarray:
    """Plain Taylor sum, adequate for the small well-scaled test matrices."""
    out = np.eye(A.shape[0], dtype=complex)
    term = np.eye(A.shape[0], dtype=complex)
    for k in range(1, 60):
        term = term @ A / k
        out = out + term
        if np.max(np.abs(term)) < 1e-18:
            break
    return out


@pytest.mark.parametrize("n", [3, 8, 33])
def test_matrix_exponential_against_series(n):
    rng = np.random.default_rng(n)
    A = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    A *= 0.8 / np.linalg.norm(A, 2)
    got = matrix_exponential(A)
    want = _series_exponential(A)
    assert np.max(np.abs(got - want)) < 1e-11 * np.max(np.abs(want))


def test_matrix_exponential_of_antihermitian_is_unitary():
    rng = np.random.default_rng(3)
    H = rng.normal(size=(12, 12)) + 1j * rng.normal(size=(12, 12))
    H = H + H.conj().T
    U = matrix_exponential(-1j * H)
    assert np.max(np.abs(U @ U.conj().T - np.eye(12))) < 1e-12


def test_free_propagator_is_pure_kinetic_phases():
    params = DriveParams(K=0.0, lam=0.5, omega=1.0)
    U = one_period_propagator(params, 8, PropagatorConfig())
    n = np.arange(-8, 9)
    expected = np.diag(np.exp(-1j * n**2 / 2.0 * params.period))
    assert np.max(np.abs(U - expected)) < 1e-12


def test_hermitian_propagator_is_unitary():
    params = DriveParams(K=1.0, lam=0.0, omega=1.0)
    U = one_period_propagator(params, 64, PropagatorConfig())
    assert np.max(np.abs(U.conj().T @ U - np.eye(129))) < 1e-9


@pytest.mark.parametrize(
    "scheme,bound",
    [("midpoint-exponential", 2e-4), ("fourth-order-commutator-free", 2e-6)],
)
def test_step_doubling_drift_at_default_resolution(scheme, bound):
    # The residual of halving the step at 256 steps per period is the
    # per-period accuracy each scheme actually delivers at K = 1. The
    # midpoint drift is basis-size independent; the commutator-free one
    # picks up kinetic commutators and grows roughly with M^2.
    params = DriveParams(K=1.0, lam=0.5, omega=1.0)
    cfg1 = PropagatorConfig(steps_per_period=256, scheme=scheme)
    cfg2 = PropagatorConfig(steps_per_period=512, scheme=scheme)
    U1 = one_period_propagator(params, 64, cfg1)
    U2 = one_period_propagator(params, 64, cfg2)
    assert np.max(np.abs(U1 - U2)) < bound


@pytest.mark.parametrize(
    "scheme,lo,hi",
    [("midpoint-exponential", 1.7, 2.3), ("fourth-order-commutator-free", 3.6, 4.4)],
)
def test_scheme_self_convergence_order(scheme, lo, hi):
    # Steps of 32 and up put dt inside the asymptotic regime at these
    # parameters; coarser grids show inflated preasymptotic slopes.
    params = DriveParams(K=1.0, lam=0.5, omega=1.0)

    def U(steps):
        cfg = PropagatorConfig(steps_per_period=steps, scheme=scheme)
        return one_period_propagator(params, 8, cfg)

    e_coarse = np.max(np.abs(U(32) - U(64)))
    e_fine = np.max(np.abs(U(64) - U(128)))
    order = math.log2(e_coarse / e_fine)
    assert lo < order < hi


def test_norm_is_conserved_in_the_hermitian_limit():
    params = DriveParams(K=1.0, lam=0.0, omega=1.0)
    series = evolve_with_observables(
        initial_state_zero_momentum(63), params, 100 * params.period
    )
    assert np.max(np.abs(series.log_norm)) < 1e-9


def test_current_vanishes_in_the_hermitian_limit():
    params = DriveParams(K=1.0, lam=0.0, omega=1.0)
    series = evolve_with_observables(
        initial_state_zero_momentum(32), params, 20 * params.period
    )
    assert np.max(np.abs(series.current)) < 1e-10


def test_quadratic_norm_growth_at_the_balanced_point():
    # At lam = 1 the squared norm follows 1 + (K t / 2)^2 instead of an
    # exponential, a behavior specific to the coalesced pair.
    params = DriveParams(K=0.01, lam=1.0, omega=0.5)
    series = evolve_with_observables(
        initial_state_zero_momentum(16), params, 1000.0
    )
    norm2 = np.exp(series.log_norm)
    expected = 1.0 + (0.01 * series.times) ** 2 / 4.0
    assert np.max(np.abs(norm2 - expected) / expected) < 0.02


def test_propagation_composes_on_a_shared_step_grid():
    params = DriveParams(K=0.5, lam=0.8, omega=1.0)
    T = params.period
    state = initial_state_zero_momentum(12)
    direct, _ = propagate(state, params, 0.0, 5 * T / 8)
    mid, _ = propagate(state, params, 0.0, T / 4)
    two_leg, _ = propagate(mid, params, T / 4, 5 * T / 8)
    assert np.max(np.abs(direct.amplitudes - two_leg.amplitudes)) < 1e-12


def test_sampled_current_matches_raw_propagation():
    # evolve_with_observables renormalizes at every sample; the current must
    # be unchanged relative to carrying the raw growing amplitudes.
    params = DriveParams(K=0.1, lam=1.2, omega=0.5)
    T = params.period
    series = evolve_with_observables(
        initial_state_zero_momentum(16), params, 10 * T, samples_per_period=8
    )
    state = initial_state_zero_momentum(16)
    raw = [0.0]
    for k in range(1, 81):
        state, _ = propagate(state, params, (k - 1) * T / 8, k * T / 8)
        p = np.abs(state.amplitudes) ** 2
        raw.append(float(np.sum(state.momenta * p) / p.sum()))
    assert np.max(np.abs(series.current - np.array(raw))) < 1e-9


def test_raw_broken_phase_run_overflows_loudly():
    # log of the squared norm grows by ~130 per period here, so the raw
    # amplitudes overflow within a handful of periods
    params = DriveParams(K=2.0, lam=5.0, omega=0.5)
    with pytest.raises(NonFinite):
        propagate(initial_state_zero_momentum(16), params, 0.0, 200.0)


def test_renormalizing_config_reports_growth_in_log_norm():
    params = DriveParams(K=0.1, lam=1.2, omega=0.5)
    cfg = PropagatorConfig(renormalize_each_step=True)
    state, log_norm = propagate(
        initial_state_zero_momentum(16), params, 0.0, 10 * params.period, cfg
    )
    assert abs(np.vdot(state.amplitudes, state.amplitudes) - 1.0) < 1e-12
    assert log_norm > 0.0


def test_log_norm_starts_at_zero_for_a_unit_state():
    params = DriveParams(K=0.1, lam=0.5, omega=1.0)
    series = evolve_with_observables(
        initial_state_zero_momentum(8), params, 25 * params.period
    )
    assert series.log_norm[0] == 0.0
    assert series.times[0] == 0.0


def test_sample_times_are_uniform():
    params = DriveParams(K=0.1, lam=0.5, omega=1.0)
    series = evolve_with_observables(
        initial_state_zero_momentum(8), params, 25 * params.period,
        samples_per_period=4,
    )
    dt = np.diff(series.times)
    assert np.allclose(dt, params.period / 4, rtol=0, atol=1e-9)


def test_populations_rows_are_normalized():
    params = DriveParams(K=0.01, lam=1.0, omega=0.5)
    series = evolve_with_observables(
        initial_state_zero_momentum(8), params, 400.0, populations=True
    )
    assert np.allclose(series.populations.sum(axis=1), 1.0, atol=1e-12)


def test_truncation_guard_warns_when_population_hits_the_edge():
    params = DriveParams(K=2.0, lam=0.5, omega=1.0)
    with pytest.warns(UserWarning, match="momentum-ladder edge"):
        series = evolve_with_observables(
            initial_state_zero_momentum(4), params, 20 * params.period
        )
    assert not series.truncation_safe
    assert series.edge_population_max > 1e-8


def test_convergence_check_warns_on_a_coarse_grid():
    params = DriveParams(K=1.0, lam=0.5, omega=1.0)
    cfg = PropagatorConfig(steps_per_period=8, convergence_check=True)
    with pytest.warns(UserWarning, match="not converged"):
        one_period_propagator(params, 8, cfg)


def test_config_validation():
    with pytest.raises(ValueError):
        PropagatorConfig(steps_per_period=4)
    with pytest.raises(ValueError):
        PropagatorConfig(scheme="predictor-corrector")


def test_samples_must_divide_steps():
    params = DriveParams(K=0.1, lam=0.5, omega=1.0)
    with pytest.raises(ValueError):
        evolve_with_observables(
            initial_state_zero_momentum(4), params, 20 * params.period,
            samples_per_period=7,
        )


def test_propagate_rejects_a_backwards_interval():
    params = DriveParams(K=0.1, lam=0.5, omega=1.0)
    with pytest.raises(ValueError):
        propagate(initial_state_zero_momentum(4), params, 1.0, 1.0)
