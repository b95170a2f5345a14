"""Theta series, delta atoms, combs, periodization, imaginary transform."""

import cmath
import math

import numpy as np
import pytest
from scipy.integrate import quad

from starcalc import (
    DeltaElement,
    DomainViolation,
    GEPElement,
    TruncationNotConverged,
    alpha_determination,
    annihilator_solution,
    comb_terms,
    delta_monodromy,
    delta_quadrature,
    delta_scaling_residual,
    delta_total_mass,
    evaluate_terms,
    jacobi_imaginary,
    periodic_lift,
    periodization_check,
    sawtooth_fourier_coefficient,
    sawtooth_square_fourier_coefficient,
    star_delta,
    star_product_gep,
    star_product_poly,
    theta,
    theta_tilde,
    translation_kernel,
    window_grid,
)

GRID = window_grid()
RNG = np.random.default_rng(20260815)


def random_gep(degree: int) -> GEPElement:
    def rnd(n):
        return RNG.normal(size=n) + 1j * RNG.normal(size=n)

    return GEPElement(rnd(1)[0], 0.12 * rnd(1)[0], 0.4 * rnd(1)[0], tuple(rnd(degree + 1)))


class TestThetaSeries:
    def test_nome_sum_at_origin(self):
        series = theta(3, 0.0, math.pi)
        want = sum(math.exp(-math.pi * n * n) for n in range(-20, 21))
        assert abs(series(np.array([0j]))[0] - want) < 1e-11

    def test_natural_boundary(self):
        for bad in (-1.0, 1j, 0.0 - 2.0j):
            with pytest.raises(DomainViolation):
                theta(3, 0.0, bad)
        with pytest.raises(DomainViolation):
            theta(5, 0.0, 1.0)

    def test_truncation_certificate(self):
        series = theta(3, 0.0, 1.0, tol=1e-9)
        tail = sum(
            math.exp(-n * n + 2 * n * 1.0) for n in range(series.truncation + 1, 60)
        )
        assert 2 * tail < 1e-9
        assert len(series.terms) == 2 * series.truncation + 1

    def test_quasi_periodicity(self):
        # e^{2iw - tau} theta_i(w + i tau) = +/- theta_i(w)
        for tau in (1.0, math.pi, 2.0 + 0.3j):
            shifted_window = (math.pi, 1.0 + 2.0 * abs(tau))
            for index, sign in [(1, -1), (2, 1), (3, 1), (4, -1)]:
                lhs = np.exp(2j * GRID - tau) * theta(
                    index, 1j * tau, tau, window=shifted_window, tol=1e-12
                )(GRID)
                rhs = sign * theta(index, 0.0, tau, tol=1e-12)(GRID)
                assert np.max(np.abs(lhs - rhs)) < 1e-10

    def test_periodicity(self):
        for index, sign in [(1, -1), (2, -1), (3, 1), (4, 1)]:
            lhs = theta(index, math.pi, 1.0)(GRID)
            rhs = sign * theta(index, 0.0, 1.0)(GRID)
            assert np.max(np.abs(lhs - rhs)) < 1e-9

    def test_shift_action(self):
        # e_*^{2iw} * theta_i = +/- theta_i, atom-wise exact exponential law;
        # the index shift moves one certified edge term out of the band, so
        # truncate deep enough that the edge is negligible
        tau = 1.2
        lift = GEPElement(cmath.exp(-tau), 0.0, 2j, (1.0,))
        for index, sign in [(1, -1), (2, 1), (3, 1), (4, -1)]:
            series = theta(index, 0.0, tau, tol=1e-14)
            acc = np.zeros_like(GRID)
            for coeff, atom in series.terms:
                prod, sheet = star_product_gep(lift, atom, tau)
                acc = acc + coeff * sheet.sign * prod(GRID)
            rhs = sign * series(GRID)
            assert np.max(np.abs(acc - rhs)) < 1e-9

    def test_non_zero_divisor_translation(self):
        # :e_*^{2iw}: * f = e^{-tau} e^{2iw} f(w + i tau) on random elements
        tau = 0.9 + 0.2j
        lift = GEPElement(cmath.exp(-tau), 0.0, 2j, (1.0,))
        for _ in range(10):
            f = random_gep(3)
            prod, sheet = star_product_gep(lift, f, tau)
            got = sheet.sign * prod(GRID)
            want = cmath.exp(-tau) * np.exp(2j * GRID) * f(GRID + 1j * tau)
            scale = np.max(np.abs(want)) + 1.0
            assert np.max(np.abs(got - want)) < 1e-12 * scale

    def test_csv_rows(self):
        series = theta(2, 0.0, 1.0)
        rows = series.csv_rows(np.array([0.5, 1j]))
        assert len(rows) == 2 and len(rows[0]) == 7
        assert rows[0][0] == 2


class TestStarDelta:
    def test_closed_form_at_origin(self):
        _, gep = star_delta(0.0, 1.0)
        w = np.linspace(-1, 1, 9).astype(complex)
        want = np.exp(-w * w) / math.sqrt(math.pi)
        assert np.max(np.abs(gep(w) - want)) < 1e-14

    def test_quadrature_matches_closed_form(self):
        for a, tau in [(0.4 + 0.1j, 1.0), (0.0, 2.0 + 0.5j), (-1.0, 0.7)]:
            _, gep = star_delta(a, tau)
            w = np.array([0.2, -0.5 + 0.3j, 1.0j])
            got = delta_quadrature(a, tau, w)
            assert np.max(np.abs(got - gep(w))) < 1e-10

    def test_admissibility(self):
        for bad in (-1.0, 1j, -0.2 + 1.0j):
            with pytest.raises(DomainViolation):
                star_delta(0.0, bad)

    def test_annihilation(self):
        a, tau = 0.4 + 0.1j, 1.0
        _, gep = star_delta(a, tau)
        lin = GEPElement.polynomial([a, 1.0])
        prod = star_product_poly(lin, gep, tau)
        assert max(abs(c) for c in prod.poly) * abs(prod.scale) < 1e-12

    def test_annihilator_uniqueness_structure(self):
        # the kernel element solves the first-order equation; detuning the
        # Gaussian width or center breaks it
        a, tau = 0.3, 1.5
        sol = annihilator_solution(a, tau)
        lin = GEPElement.polynomial([a, 1.0])
        good = star_product_poly(lin, sol, tau)
        assert max(abs(c) for c in good.poly) < 1e-14
        detuned = GEPElement(sol.scale, sol.quad + 0.05, sol.lin, sol.poly)
        bad = star_product_poly(lin, detuned, tau)
        assert max(abs(c) for c in bad.poly) > 1e-3

    def test_total_mass(self):
        for tau in (1.0, 2.0 + 0.5j, 0.3):
            assert abs(delta_total_mass(tau, w=0.3 + 0.2j) - 1.0) < 1e-10
            assert abs(delta_total_mass(tau) - 1.0) < 1e-10

    def test_scaling(self):
        for lam in (2.0, 0.5, -1.5):
            assert delta_scaling_residual(lam, 0.3, 1.0) < 1e-12
        with pytest.raises(DomainViolation):
            delta_scaling_residual(0.0, 0.3, 1.0)

    def test_monodromy(self):
        assert delta_monodromy(0.3, 1.0, loops=0).sign == 1
        assert delta_monodromy(0.3, 1.0, loops=1).sign == -1
        assert delta_monodromy(0.3, 1.0, loops=2).sign == 1
        assert delta_monodromy(0.0, 2.0 + 0.4j, loops=1).sign == -1


class TestCombs:
    def test_half_comb_identity(self):
        for index in (1, 2, 3, 4):
            series = theta(index, 0.0, math.pi, tol=1e-12)(GRID)
            comb = evaluate_terms(
                comb_terms(theta_tilde(index, math.pi, tol=1e-12), math.pi), GRID
            )
            assert np.max(np.abs(series - 0.5 * comb)) < 1e-10

    def test_alpha_determination(self):
        for index in (2, 3, 4):
            assert abs(alpha_determination(index, math.pi) - 0.5) < 1e-9
        assert abs(alpha_determination(1, math.pi, w=0.35) - 0.5) < 1e-9
        with pytest.raises(DomainViolation):
            alpha_determination(1, math.pi)

    def test_shift_action_on_combs(self):
        tau = 1.2
        lift = GEPElement(cmath.exp(-tau), 0.0, 2j, (1.0,))
        for index, sign in [(1, -1), (2, 1), (3, 1), (4, -1)]:
            comb = comb_terms(theta_tilde(index, tau), tau)
            acc = np.zeros_like(GRID)
            for coeff, atom in comb:
                prod, sheet = star_product_gep(lift, atom, tau)
                acc = acc + coeff * sheet.sign * prod(GRID)
            assert np.max(np.abs(acc - sign * evaluate_terms(comb, GRID))) < 1e-10


class TestImaginaryTransform:
    def test_fixed_point(self):
        grid_res, origin_res = jacobi_imaginary(math.pi)
        assert origin_res == 0.0
        assert grid_res < 1e-12

    def test_generic_parameters(self):
        for tau in (2.0, 0.7):
            grid_res, origin_res = jacobi_imaginary(tau)
            assert grid_res < 1e-10
            assert origin_res < 1e-12

    def test_cross_consistency(self):
        # evaluating the dual series directly reproduces theta at pi^2/tau
        tau = 0.5
        dual = math.pi**2 / tau
        lhs = theta(3, 0.0, dual)(np.array([0j]))[0]
        rhs = theta(3, 0.0, tau)(np.array([0j]))[0] / math.sqrt(math.pi / tau)
        assert abs(lhs - rhs) < 1e-12


class TestPeriodization:
    def test_small_parameter(self):
        assert periodization_check(0.0, 1.0, 12) < 1e-10
        assert periodization_check(math.pi, 1.0, 12) < 1e-10

    def test_large_parameter(self):
        assert periodization_check(0.0, 10.0, 12) < 1e-10

    def test_domain(self):
        with pytest.raises(DomainViolation):
            periodization_check(0.0, -1.0, 8)


class TestPeriodicLift:
    def test_fourier_coefficients_against_quadrature(self):
        # oracle: the defining integrals (1/2 pi) int x^m e^{-inx} dx
        for n in (1, 2, 5,-3):
            val = quad(
                lambda s, n=n: s * np.exp(-1j * n * s) / (2 * math.pi),
                -math.pi,
                math.pi,
                complex_func=True,
                epsabs=1e-13,
            )[0]
            assert abs(sawtooth_fourier_coefficient(n) - val) < 1e-10
            val2 = quad(
                lambda s, n=n: s * s * np.exp(-1j * n * s) / (2 * math.pi),
                -math.pi,
                math.pi,
                complex_func=True,
                epsabs=1e-13,
            )[0]
            assert abs(sawtooth_square_fourier_coefficient(n) - val2) < 1e-10
        mean = quad(lambda s: s * s / (2 * math.pi), -math.pi, math.pi)[0]
        assert abs(sawtooth_square_fourier_coefficient(0) - mean) < 1e-12

    def test_sawtooth_values(self):
        # away from the jump the smoothed expression matches the ramp
        terms = periodic_lift(sawtooth_fourier_coefficient, 0.01)
        pts = np.array([1.0, -0.7, 2.5], dtype=complex)
        assert np.max(np.abs(evaluate_terms(terms, pts) - pts)) < 1e-8

    def test_square_lift_heat_correction(self):
        # the Gaussian factors act as the quarter-parameter heat flow,
        # shifting the parabola by exactly tau/2
        tau = 0.01
        terms = periodic_lift(sawtooth_square_fourier_coefficient, tau)
        val = evaluate_terms(terms, np.array([1.0 + 0j]))[0]
        assert abs(val - (1.0 + tau / 2.0)) < 1e-8

    def test_constant(self):
        terms = periodic_lift(lambda n: 1.0 if n == 0 else 0.0, 1.0)
        assert len(terms) == 1
        assert abs(evaluate_terms(terms, np.array([0.7 + 0j]))[0] - 1.0) < 1e-15

    def test_growth_guard(self):
        with pytest.raises(TruncationNotConverged):
            periodic_lift(lambda n: math.exp(0.3 * n * n), 1.0, max_terms=64)


class TestTranslationKernel:
    def test_one_dimensional_constant(self):
        dim, kernel = translation_kernel(6)
        assert dim == 1
        vec = kernel[0]
        assert np.max(np.abs(vec - vec[0])) < 1e-12


class TestDeltaElementMechanics:
    def test_orientation_sign(self):
        atom = DeltaElement(0.5)
        flipped = DeltaElement(0.5, delta_monodromy(0.5, 1.0, loops=1))
        w = np.array([0.1, 0.9j])
        assert np.max(np.abs(atom(1.0, w) + flipped(1.0, w))) < 1e-15

    def test_expression_rejects_left_half(self):
        with pytest.raises(DomainViolation):
            DeltaElement(0.0).gep(-1.0)
