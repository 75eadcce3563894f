"""Spatial-grid evolution and its agreement with the momentum ladder."""

import numpy as np
import pytest

from floquet_ratchet import (
    DriveParams,
    GridState,
    MomentumState,
    PropagatorConfig,
    SizeMismatch,
    evolve_with_observables,
    gpe_evolve,
    grid_norm_squared,
    grid_to_momentum,
    initial_state_zero_momentum,
    momentum_to_grid,
    norm_squared,
    uniform_grid_state,
)


def test_uniform_state_is_the_zero_momentum_impulse():
    mom = grid_to_momentum(uniform_grid_state(64), M=8)
    want = np.zeros(17, dtype=complex)
    want[8] = 1.0
    assert np.max(np.abs(mom.amplitudes - want)) < 1e-12


def test_plane_wave_maps_to_a_single_mode():
    grid = uniform_grid_state(64)
    values = np.exp(1j * grid.x) / np.sqrt(2 * np.pi)
    state = GridState(values=values, grid_size=64)
    mom = grid_to_momentum(state, M=4)
    want = np.zeros(9, dtype=complex)
    want[5] = 1.0  # n = +1
    assert np.max(np.abs(mom.amplitudes - want)) < 1e-12


def test_round_trip_preserves_band_limited_states():
    rng = np.random.default_rng(2)
    amps = rng.normal(size=17) + 1j * rng.normal(size=17)
    state = MomentumState(amplitudes=amps, truncation=8)
    back = grid_to_momentum(momentum_to_grid(state, 64), M=8)
    assert np.max(np.abs(back.amplitudes - amps)) < 1e-12


def test_grid_norm_matches_momentum_norm():
    rng = np.random.default_rng(4)
    amps = rng.normal(size=21) + 1j * rng.normal(size=21)
    state = MomentumState(amplitudes=amps, truncation=10)
    grid = momentum_to_grid(state, 128)
    assert grid_norm_squared(grid) == pytest.approx(norm_squared(state), rel=1e-12)


def test_transforms_reject_tight_grids():
    with pytest.raises(SizeMismatch):
        grid_to_momentum(uniform_grid_state(16), M=8)
    state = initial_state_zero_momentum(8)
    with pytest.raises(SizeMismatch):
        momentum_to_grid(state, 16)


def test_grid_state_validation():
    with pytest.raises(ValueError):
        GridState(values=np.zeros(12, dtype=complex), grid_size=12)
    with pytest.raises(SizeMismatch):
        GridState(values=np.zeros(8, dtype=complex), grid_size=16)


def test_step_bound_validation():
    params = DriveParams(K=0.1, lam=0.5, omega=1.0)
    state = uniform_grid_state(64)
    with pytest.raises(ValueError):
        gpe_evolve(state, params, 10.0, dt=params.period / 100.0)
    with pytest.raises(ValueError):
        gpe_evolve(state, params, 10.0, dt=-1.0)
    with pytest.raises(ValueError):
        gpe_evolve(state, params, 0.0)


def test_linear_grid_evolution_matches_the_ladder():
    # With the interaction off, the split-step run and the banded ladder
    # propagator integrate the same equation and must agree closely.
    params = DriveParams(K=0.1, lam=0.5, omega=1.0, g=0.0)
    T = params.period
    grid_series = gpe_evolve(
        uniform_grid_state(256), params, 20 * T, dt=T / 4096.0,
        samples_per_period=8,
    )
    cfg = PropagatorConfig(
        steps_per_period=1024, scheme="fourth-order-commutator-free"
    )
    ladder_series = evolve_with_observables(
        initial_state_zero_momentum(32), params, 20 * T,
        samples_per_period=8, cfg=cfg,
    )
    assert grid_series.times.size == ladder_series.times.size
    assert np.max(np.abs(grid_series.current - ladder_series.current)) < 1e-6


def test_norm_is_conserved_without_gain_or_loss():
    for g in (0.0, 0.2):
        params = DriveParams(K=0.5, lam=0.0, omega=1.0, g=g)
        series = gpe_evolve(uniform_grid_state(256), params, 100 * params.period)
        assert np.max(np.abs(series.log_norm)) < 1e-8


def test_interactions_suppress_the_directed_current():
    weak = DriveParams(K=0.1, lam=1.0, omega=1.0, g=0.01)
    strong = DriveParams(K=0.1, lam=1.0, omega=1.0, g=0.2)
    T = weak.period
    peak = {}
    for params in (weak, strong):
        series = gpe_evolve(
            uniform_grid_state(256), params, 150 * T, samples_per_period=4
        )
        peak[params.g] = float(np.max(np.abs(series.current)))
    assert peak[0.01] > 1.0
    assert peak[0.2] < 0.5


def test_populations_are_recorded_and_normalized():
    params = DriveParams(K=0.1, lam=0.5, omega=1.0, g=0.1)
    series = gpe_evolve(
        uniform_grid_state(64), params, 5 * params.period,
        record_populations=True,
    )
    assert series.populations is not None
    assert np.allclose(series.populations.sum(axis=1), 1.0, atol=1e-10)
    assert series.truncation_safe


def test_overflowing_grid_warns():
    params = DriveParams(K=1.0, lam=1.0, omega=1.0)
    with pytest.warns(UserWarning, match="outer momentum modes"):
        series = gpe_evolve(uniform_grid_state(16), params, 20 * params.period)
    assert not series.truncation_safe
