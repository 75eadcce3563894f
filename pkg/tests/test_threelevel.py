"""Effective resonant models: couplings, perturbation theory, closed forms."""

import math

import numpy as np
import pytest

from floquet_ratchet import (
    DegenerateIntermediate,
    ExtendedFloquetIndex,
    analytic_current_w05,
    analytic_current_w1,
    analytic_populations_w05,
    analytic_populations_w1,
    analytic_tac,
    build_t_matrix,
    coupling_v_element,
    effective_couplings,
    ep_analytic_solution,
    perturbative_t_element,
    rabi_period,
    resonant_momenta,
    three_level_ode_evolve,
)


def test_effective_coupling_values():
    c = effective_couplings(0.1, 0.5, "one")
    assert c.gamma_plus == pytest.approx(2.8125e-3)  # K^2 (1+lam)^2 / 8
    assert c.gamma_minus == pytest.approx(3.125e-4)  # K^2 (1-lam)^2 / 8
    assert c.order == "second"
    c = effective_couplings(0.1, 0.5, "half")
    assert c.gamma_plus == pytest.approx(0.0375)  # K (1+lam) / 4
    assert c.gamma_minus == pytest.approx(0.0125)  # K (1-lam) / 4
    assert c.order == "first"


def test_second_order_rabi_frequency_is_real_for_any_lambda():
    # Both second-order couplings are squares, so their product never goes
    # negative and the oscillation frequency stays real.
    for lam in (0.0, 0.5, 1.0, 2.0, 5.0):
        c = effective_couplings(0.1, lam, "one")
        assert c.rabi.imag == 0.0


def test_first_order_rabi_frequency_turns_imaginary_past_one():
    assert effective_couplings(0.1, 0.5, "half").rabi.imag == 0.0
    above = effective_couplings(0.1, 1.5, "half").rabi
    assert above.real == pytest.approx(0.0)
    assert above.imag != 0.0


def test_resonant_momenta():
    assert resonant_momenta("one") == (2, 0, -2)
    assert resonant_momenta("half") == (1, 0, -1)
    with pytest.raises(ValueError):
        resonant_momenta("third")


def test_zone_energy():
    assert ExtendedFloquetIndex(2, 2).zone_energy(1.0) == pytest.approx(0.0)
    assert ExtendedFloquetIndex(1, 1).zone_energy(0.5) == pytest.approx(0.0)
    assert ExtendedFloquetIndex(1, 1).zone_energy(1.0) == pytest.approx(-0.5)


def test_first_order_coupling_selection_rule():
    K, lam = 0.3, 0.4
    # one momentum step and one photon step, otherwise zero
    assert coupling_v_element(
        ExtendedFloquetIndex(0, 0), ExtendedFloquetIndex(2, 2), K, lam
    ) == 0.0
    assert coupling_v_element(
        ExtendedFloquetIndex(1, 0), ExtendedFloquetIndex(0, 0), K, lam
    ) == 0.0
    got = coupling_v_element(
        ExtendedFloquetIndex(1, 1), ExtendedFloquetIndex(0, 0), K, lam
    )
    assert got == pytest.approx(K * (lam - 1.0) / 4.0)


def test_t_matrix_off_diagonals_match_perturbation_theory():
    K, lam = 0.1, 0.5
    T = build_t_matrix(K, lam, "one")

    def elem(n_row, m_row, n_col, m_col):
        return perturbative_t_element(
            ExtendedFloquetIndex(n_row, m_row),
            ExtendedFloquetIndex(n_col, m_col),
            K, lam, omega=1.0,
        )

    assert T[0, 1] == pytest.approx(elem(2, 2, 0, 0))
    assert T[1, 0] == pytest.approx(elem(0, 0, 2, 2))
    assert T[1, 2] == pytest.approx(elem(0, 0, -2, 2))
    assert T[2, 1] == pytest.approx(elem(-2, 2, 0, 0))


def test_t_matrix_couplings_are_squared_weights():
    K, lam = 0.1, 0.5
    T = build_t_matrix(K, lam, "one")
    # stepping down the ladder carries (1+lam)^2, stepping up (1-lam)^2
    assert T[1, 0] == pytest.approx(K**2 * (1 + lam) ** 2 / 8.0)
    assert T[0, 1] == pytest.approx(K**2 * (1 - lam) ** 2 / 8.0)
    assert np.all(np.diag(T) == 0.0)


def test_t_matrix_is_hermitian_when_lambda_is_zero():
    for res in ("one", "half"):
        T = build_t_matrix(0.3, 0.0, res)
        assert np.max(np.abs(T - T.conj().T)) < 1e-15


def test_perturbative_diagonal_shifts():
    K, lam = 0.1, 0.5
    prod = K * K * (1 + lam) * (lam - 1)
    got0 = perturbative_t_element(
        ExtendedFloquetIndex(0, 0), ExtendedFloquetIndex(0, 0), K, lam, omega=1.0
    )
    assert got0 == pytest.approx(-prod / 6.0)
    got2 = perturbative_t_element(
        ExtendedFloquetIndex(2, 2), ExtendedFloquetIndex(2, 2), K, lam, omega=1.0
    )
    assert got2 == pytest.approx(-19.0 * prod / 210.0)
    gotm2 = perturbative_t_element(
        ExtendedFloquetIndex(-2, 2), ExtendedFloquetIndex(-2, 2), K, lam, omega=1.0
    )
    assert gotm2 == pytest.approx(got2)


def test_resonant_intermediate_is_rejected():
    with pytest.raises(DegenerateIntermediate):
        perturbative_t_element(
            ExtendedFloquetIndex(0, 0), ExtendedFloquetIndex(0, 0),
            0.1, 0.5, omega=0.5,
        )


def test_populations_start_in_the_middle_state():
    p_hi, p_mid, p_lo = analytic_populations_w1(0.1, 0.5, 0.0)
    assert (float(p_hi), float(p_mid), float(p_lo)) == (0.0, 1.0, 0.0)
    p_hi, p_mid, p_lo = analytic_populations_w05(0.1, 0.5, 0.0)
    assert (float(p_hi), float(p_mid), float(p_lo)) == (0.0, 1.0, 0.0)


def test_population_asymmetry_ratio():
    # the side populations keep a fixed ratio ((1+lam)/(1-lam))^4
    t = np.linspace(0.1, 2000.0, 7)
    p2, _, pm2 = analytic_populations_w1(0.1, 0.8, t)
    assert np.allclose(pm2 / p2, 9.0**4, rtol=1e-10)


def test_currents_vanish_at_lambda_zero():
    t = np.linspace(0.0, 500.0, 101)
    assert np.max(np.abs(analytic_current_w1(0.1, 0.0, t))) == 0.0
    assert np.max(np.abs(analytic_current_w05(0.1, 0.0, t))) == 0.0


def test_peak_current_values():
    K = 0.1
    t1 = np.linspace(0.0, rabi_period(K, 0.5, "one"), 4001)
    peak1 = np.min(analytic_current_w1(K, 0.5, t1))
    assert peak1 == pytest.approx(-80.0 / 41.0, rel=1e-6)

    t05 = np.linspace(0.0, rabi_period(K, 0.5, "half"), 4001)
    peak05 = np.min(analytic_current_w05(K, 0.5, t05))
    assert peak05 == pytest.approx(-0.8, rel=1e-6)


def test_peak_current_approaches_minus_two_near_unit_lambda():
    K = 0.1
    t = np.linspace(0.0, rabi_period(K, 0.99, "one"), 8001)
    peak = np.min(analytic_current_w1(K, 0.99, t))
    assert -2.0 < peak < -1.99


def test_broken_phase_current_saturates_at_minus_inverse_lambda():
    assert analytic_current_w05(0.1, 1.2, 600.0) == pytest.approx(
        -1.0 / 1.2, abs=1e-9
    )
    assert analytic_current_w05(0.1, 2.0, 600.0) == pytest.approx(-0.5, abs=1e-9)


def test_balanced_point_current_rises_to_minus_one():
    # lam = 1 sits between the oscillating and hyperbolic regimes; the
    # closed form reduces to -1 / (1 + 4 / (K t)^2)
    K = 0.01
    got = analytic_current_w05(K, 1.0, 1000.0)
    assert got == pytest.approx(-1.0 / 1.04, rel=1e-9)


def test_ep_solution_values():
    c_m1, c_0, c_1, norm2, cur = ep_analytic_solution(0.01, 0.0)
    assert (c_m1, c_0, c_1) == (0.0, 1.0, 0.0)
    assert norm2 == 1.0
    assert cur == 0.0

    c_m1, c_0, c_1, norm2, cur = ep_analytic_solution(0.01, 1000.0)
    assert c_1 == 0.0
    assert c_0 == 1.0
    assert norm2 == pytest.approx(26.0)
    assert cur == pytest.approx(-1.0 / 1.04, rel=1e-9)
    # |c_-1|^2 = 25 up to the bounded cross-term with the -iK sin(t/2) piece
    assert abs(c_m1) ** 2 == pytest.approx(25.0, abs=0.11)
    want = 0.5j * 0.01 * 1000.0 * np.exp(-500.0j) - 0.01j * math.sin(500.0)
    assert c_m1 == pytest.approx(want, rel=1e-12)


def test_rabi_period_value_and_divergence():
    K, lam = 0.1, 0.5
    # Omega = sqrt(2 G+ G-) = K^2 (1 - lam^2) / sqrt(32) below lam = 1
    want = math.pi * math.sqrt(32.0) / (K * K * (1 + lam) * (1 - lam))
    assert rabi_period(K, lam, "one") == pytest.approx(want, rel=1e-12)
    assert math.isinf(rabi_period(K, 1.0, "one"))


def test_ode_evolution_reproduces_the_closed_forms():
    K, lam = 0.1, 0.5
    t_rabi = rabi_period(K, lam, "one")
    T = build_t_matrix(K, lam, "one")
    series = three_level_ode_evolve(T, t_rabi, t_rabi / 4096.0)
    want = analytic_current_w1(K, lam, series.times)
    assert np.max(np.abs(series.current - want)) < 1e-6


def test_ode_evolution_matches_the_hyperbolic_plateau():
    K, lam = 0.1, 1.2
    T = build_t_matrix(K, lam, "half")
    series = three_level_ode_evolve(T, 600.0, 0.05, momenta=(1, 0, -1))
    assert series.current[-1] == pytest.approx(-1.0 / 1.2, rel=0.02)


def test_analytic_tac_integrates_the_closed_form():
    K, lam = 0.1, 0.5
    t_max = rabi_period(K, lam, "one")
    got = analytic_tac(K, lam, "one", t_max)
    t = np.linspace(0.0, t_max, 2048)
    want = np.trapezoid(analytic_current_w1(K, lam, t), t) / t_max
    assert got == pytest.approx(want, rel=1e-3)
