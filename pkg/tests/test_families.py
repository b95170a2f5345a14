"""Polynomial family tests: generating functions, orthogonality, series identities.

Quadrature-backed values are checked against closed forms computed
independently (scipy special functions, classical recursions); finite
identities are verified in exact rational arithmetic.
"""

import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.special import eval_legendre, gamma, jv

from starcalc import (
    DomainViolation,
    HalfSeries,
    NonUnit,
    RatPoly2,
    TruncationNotConverged,
    bernoulli_identity_check,
    bernoulli_numbers,
    bessel,
    bessel_addition_residual,
    bessel_sum_residual,
    euler_identity_check,
    euler_numbers,
    evaluate_terms,
    hermite,
    hermite_binomial_convolution,
    hermite_normalized_exact,
    hermite_orthogonality,
    laguerre,
    laguerre_exact,
    laguerre_gen_orthogonality,
    laguerre_orthogonality,
    laguerre_rodrigues,
    legendre,
    legendre_moment,
    legendre_orthogonality,
    star_product_exact,
    star_product_terms,
)

WPTS = np.array([0.3, 1.0, -0.7 + 0.2j, 2.0 - 0.5j])


def x_substituted(p: RatPoly2) -> RatPoly2:
    """Rewrite a polynomial in (x, tau) as one in (w, tau) via x = w^2."""
    return RatPoly2({(2 * m, k): c for (m, k), c in p.coeffs.items()})


# ---------------------------------------------------------------------------
# Hermite


class TestHermite:
    def test_first_members(self):
        assert dict(hermite_normalized_exact(0).coeffs) == {(0, 0): 1}
        assert dict(hermite_normalized_exact(1).coeffs) == {(1, 0): 1}
        assert dict(hermite_normalized_exact(2).coeffs) == {
            (2, 0): 1,
            (0, 1): Fraction(1, 2),
        }
        assert dict(hermite_normalized_exact(3).coeffs) == {
            (3, 0): 1,
            (1, 1): Fraction(3, 2),
        }

    def test_recursion_exact(self):
        # h_{n+1} = (tau/2) h_n' + w h_n, the sqrt(2)-normalized ladder
        w = RatPoly2.monomial(1, 0)
        half_tau = RatPoly2.monomial(0, 1) * Fraction(1, 2)
        for n in range(10):
            hn = hermite_normalized_exact(n)
            step = half_tau * hn.diff_u() + w * hn
            assert (step + hermite_normalized_exact(n + 1) * (-1)).is_zero()

    def test_ode_exact(self):
        # tau h'' + 2 w h' - 2 n h = 0 for every member
        w = RatPoly2.monomial(1, 0)
        tau = RatPoly2.monomial(0, 1)
        for n in range(11):
            hn = hermite_normalized_exact(n)
            lhs = tau * hn.diff_u().diff_u() + w * hn.diff_u() * 2 + hn * (-2 * n)
            assert lhs.is_zero()

    def test_lowering_exact(self):
        # h_n' = n h_{n-1}
        for n in range(1, 11):
            delta = hermite_normalized_exact(n).diff_u() + hermite_normalized_exact(
                n - 1
            ) * (-n)
            assert delta.is_zero()

    def test_generating_taylor(self):
        # coefficients of e_*^{sqrt(2) t w} in t match H_n / n! numerically
        tau = 0.6 - 0.4j
        w0 = 0.9 + 0.3j
        count, radius = 256, 0.4
        t = radius * np.exp(2j * np.pi * np.arange(count) / count)
        s = math.sqrt(2) * t
        vals = np.exp(s * s * tau / 4.0) * np.exp(s * w0)
        taylor = np.fft.fft(vals) / count / radius ** np.arange(count)
        for n in range(8):
            member = hermite(n, tau)
            want = taylor[n] * math.factorial(n)
            assert abs(member(np.array([w0]))[0] - want) < 1e-9 * max(1, abs(want))

    def test_star_convolution_exact(self):
        # h_k * h_l = h_{k+l}, hence the binomial sum collapses to 2^n h_n
        for k, l in [(1, 1), (2, 3), (4, 2), (0, 5)]:
            prod = star_product_exact(
                hermite_normalized_exact(k), hermite_normalized_exact(l)
            )
            assert (prod + hermite_normalized_exact(k + l) * (-1)).is_zero()
        for n in range(6):
            conv = hermite_binomial_convolution(n)
            assert (conv + hermite_normalized_exact(n) * (-(2**n))).is_zero()

    def test_orthogonality_quadrature(self):
        assert abs(hermite_orthogonality(0, 1, -1.0)) < 1e-10
        want = 2 * math.sqrt(math.pi)
        assert abs(hermite_orthogonality(2, 2, -1.0) - want) < 1e-9 * want
        want = math.factorial(3) * 8 * math.sqrt(2) * math.sqrt(math.pi)
        assert abs(hermite_orthogonality(3, 3, -2.0) - want) < 1e-9 * want

    def test_orthogonality_grid(self):
        # diagonal n! (-tau)^n sqrt(-tau) sqrt(pi), off-diagonal zero
        tau = -1.0
        for n in range(5):
            for m in range(5):
                val = hermite_orthogonality(n, m, tau)
                if n != m:
                    assert abs(val) < 1e-8
                else:
                    want = math.factorial(n) * math.sqrt(math.pi)
                    assert abs(val - want) < 1e-8 * want

    def test_orthogonality_domain(self):
        with pytest.raises(DomainViolation):
            hermite_orthogonality(1, 1, 1.0)


# ---------------------------------------------------------------------------
# Legendre


class TestLegendre:
    def test_moment_against_gamma(self):
        for r in range(12):
            assert abs(legendre_moment(r) - gamma(r + 0.5)) < 1e-10 * gamma(r + 0.5)

    def test_degree_zero_is_one(self):
        member = legendre(0, -0.5)
        assert abs(member.coeffs[0] - 1.0) < 1e-12

    def test_classical_limit(self):
        xs = np.linspace(-1, 1, 9)
        for n in range(5):
            member = legendre(n, -1e-8)
            assert np.max(np.abs(member(xs) - eval_legendre(n, xs))) < 1e-6

    def test_leading_coefficient_parameter_free(self):
        # top coefficient (2n-1)!!/n! regardless of the parameter
        for n, tau in [(3, -0.5), (4, -0.5), (4, -2.0), (5, -1.0 - 0.3j)]:
            dfact = 1.0
            for j in range(1, 2 * n, 2):
                dfact *= j
            want = dfact / math.factorial(n)
            assert abs(member_lead(n, tau) - want) < 1e-9 * want

    def test_orthogonality_limit(self):
        # off-diagonals vanish linearly and diagonals reach 2/(2n+1) as tau -> 0-
        for k in (2, 3, 4):
            tau = -(10.0 ** (-k))
            for n in range(4):
                diag = legendre_orthogonality(n, n, tau)
                assert abs(diag - 2.0 / (2 * n + 1)) < 5.0 * 10.0 ** (-k)
            off = legendre_orthogonality(0, 2, tau)
            assert abs(off) < 5.0 * 10.0 ** (-k)

    def test_domain(self):
        with pytest.raises(DomainViolation):
            legendre(2, 1.0)


def member_lead(n: int, tau) -> float:
    return abs(legendre(n, tau).coeffs[n])


# ---------------------------------------------------------------------------
# Bessel


class TestBessel:
    def test_classical_oracle_flat(self):
        # at vanishing deformation the family reduces to classical J_n
        for n in (0, 1, 3):
            got = evaluate_terms(bessel(n, 1.0, 1e-300, order=20), WPTS)
            assert np.max(np.abs(got - jv(n, WPTS))) < 1e-12

    def test_integral_oracle_deformed(self):
        # independent quadrature of the defining circle integral at tau = 1
        from scipy.integrate import quad

        tau, a, n = 1.0, 1.0, 2
        got = evaluate_terms(bessel(n, a, tau, order=20), WPTS)
        for i, w in enumerate(WPTS):
            val, _ = quad(
                lambda s: (
                    np.exp(tau * (1j * a * np.sin(s)) ** 2 / 4.0)
                    * np.exp(1j * a * np.sin(s) * w)
                    * np.exp(-1j * n * s)
                )
                / (2 * np.pi),
                0.0,
                2 * np.pi,
                complex_func=True,
                epsabs=1e-12,
            )
            assert abs(got[i] - val) < 1e-10

    def test_symmetry(self):
        for n in (1, 2, 5):
            plus = evaluate_terms(bessel(n, 1.0, 1.0, 16), WPTS)
            minus = evaluate_terms(bessel(-n, 1.0, 1.0, 16), WPTS)
            assert np.max(np.abs(plus - (-1.0) ** n * minus)) < 1e-12

    def test_negated_argument(self):
        got = evaluate_terms(bessel(3, -1.0, 1.0, 16), WPTS)
        want = evaluate_terms(bessel(-3, 1.0, 1.0, 16), WPTS)
        assert np.max(np.abs(got - want)) < 1e-12

    def test_bilateral_sum(self):
        assert bessel_sum_residual(1.0, 1.0, 16, WPTS) < 1e-8

    def test_addition_formula(self):
        assert bessel_addition_residual(1, 0.6, 0.8, 1.0, 16, WPTS) < 1e-8
        assert bessel_addition_residual(0, 0.7, 0.7, 1.0, 16, WPTS) < 1e-8

    def test_addition_truncated_literal(self):
        # the explicit truncated sum of member-by-member star products
        acc = np.zeros_like(WPTS)
        for m in range(-12, 13):
            acc = acc + star_product_terms(
                bessel(m, 0.7, 1.0, 16), bessel(-m, 0.7, 1.0, 16), 1.0, WPTS
            )
        direct = evaluate_terms(bessel(0, 1.4, 1.0, 16), WPTS)
        assert np.max(np.abs(acc - direct)) < 1e-10

    def test_truncation_guard(self):
        with pytest.raises(TruncationNotConverged):
            bessel(0, 25.0, 1.0, order=4)
        with pytest.raises(DomainViolation):
            bessel(8, 1.0, 1.0, order=4)


# ---------------------------------------------------------------------------
# Laguerre


class TestLaguerre:
    def test_first_members(self):
        assert dict(laguerre_exact(0).coeffs) == {(0, 0): 1}
        assert dict(laguerre_exact(1).coeffs) == {(1, 0): 1, (0, 1): Fraction(1, 2)}
        assert dict(laguerre_exact(2).coeffs) == {
            (2, 0): 1,
            (1, 1): 3,
            (0, 2): Fraction(3, 4),
        }

    def test_generating_taylor(self):
        # d^n/dt^n at 0 of (1 - t tau)^(-1/2) exp(t x/(1 - t tau))
        tau = 0.7 - 0.2j
        x0 = 1.3 + 0.4j
        count, radius = 256, 0.3
        t = radius * np.exp(2j * np.pi * np.arange(count) / count)
        vals = (1 - t * tau) ** (-0.5) * np.exp(t * x0 / (1 - t * tau))
        taylor = np.fft.fft(vals) / count / radius ** np.arange(count)
        for n in range(9):
            member = laguerre(n, tau)
            want = taylor[n] * math.factorial(n)
            assert abs(member(np.array([x0]))[0] - want) < 1e-8 * max(1, abs(want))

    def test_top_derivative_normalized(self):
        # the x^n coefficient of L_n is 1, so d^n/dx^n (L_n / n!) = 1
        for n in range(9):
            assert laguerre_exact(n).coeffs[(n, 0)] == 1

    def test_star_product_ladder(self):
        # L_k * L_l = L_{k+l} under the deformed product in w (x = w^2)
        for k, l in [(1, 1), (1, 2), (2, 2), (0, 4), (3, 2)]:
            prod = star_product_exact(
                x_substituted(laguerre_exact(k)), x_substituted(laguerre_exact(l))
            )
            assert (prod + x_substituted(laguerre_exact(k + l)) * (-1)).is_zero()

    def test_rodrigues_companion(self):
        # R_n from the derivative formula: R_1 = x/tau^2 + 3/(2 tau)
        member = laguerre_rodrigues(1, -1.0)
        assert abs(member.coeffs[0] - (-1.5)) < 1e-12
        assert abs(member.coeffs[1] - 1.0) < 1e-12

    def test_rodrigues_matches_derivative_definition(self):
        # numeric n-fold product-rule expansion of the defining derivative
        tau = -1.3
        n = 3
        xs = np.array([0.4, 1.1, 2.7])
        member = laguerre_rodrigues(n, tau)
        # d^3/dx^3 (x^(7/2) e^(x/tau)) via exact product rule terms
        got = np.zeros_like(xs, dtype=complex)
        powers = [3.5, 2.5, 1.5, 0.5]
        coeffs = [
            1.0 / tau**3,
            3 * 3.5 / tau**2,
            3 * 3.5 * 2.5 / tau,
            3.5 * 2.5 * 1.5,
        ]
        for c, p in zip(coeffs, powers):
            got += c * xs**p
        got *= np.exp(xs / tau)
        want = (
            member(xs.astype(complex))
            * math.factorial(n)
            * tau**n
            * np.sqrt(xs)
            * np.exp(xs / tau)
        )
        assert np.max(np.abs(got - want)) < 1e-10 * np.max(np.abs(got))

    def test_orthogonality_examples(self):
        assert abs(laguerre_orthogonality(0, 1, -1.0)) < 1e-10
        assert abs(laguerre_orthogonality(1, 1, -1.0) - 1.0) < 1e-9
        assert abs(laguerre_orthogonality(2, 3, -2.0)) < 1e-10

    def test_orthogonality_grid(self):
        for tau in (-1.0, -2.0):
            for n in range(4):
                for m in range(4):
                    val = laguerre_orthogonality(n, m, tau)
                    assert abs(val - (1.0 if n == m else 0.0)) < 1e-8

    def test_generating_family_orthogonality(self):
        # the generating-function members pair against the x^(-1/2) weight
        for n in range(4):
            for m in range(4):
                val = laguerre_gen_orthogonality(n, m, -1.0)
                assert abs(val - (1.0 if n == m else 0.0)) < 1e-8

    def test_domain(self):
        with pytest.raises(DomainViolation):
            laguerre_orthogonality(1, 1, 1.0)


# ---------------------------------------------------------------------------
# half-series algebra, Euler and Bernoulli identities


class TestHalfSeries:
    def test_unit_law(self):
        f = HalfSeries.from_coeffs([Fraction(k + 1) for k in range(9)], 8, lead=2)
        g = f * HalfSeries.one(8)
        assert g.lead == 2
        assert g.series.coeffs == f.series.coeffs

    def test_geometric_inverse(self):
        # (1 - z)^(-1) = 1 + z + z^2 + ...
        f = HalfSeries.from_coeffs([1, -1] + [0] * 9, 10)
        inv = f.inverse()
        assert all(inv.coefficient(k) == 1 for k in range(11))

    def test_lead_bookkeeping(self):
        # z^2 (1 + z) inverted has lead -2
        f = HalfSeries.from_coeffs([0, 0, 1, 1] + [0] * 5, 8)
        inv = f.inverse()
        assert inv.lead == -2
        assert inv.coefficient(-2) == 1
        assert inv.coefficient(-1) == -1
        prod = f * inv
        assert prod.coefficient(0) == 1
        assert all(prod.coefficient(k) == 0 for k in range(1, 5))

    def test_zero_has_no_inverse(self):
        f = HalfSeries.from_coeffs([0] * 7, 6)
        with pytest.raises(NonUnit):
            f.inverse()

    def test_addition_alignment(self):
        f = HalfSeries.from_coeffs([1, 2, 3], 2, lead=1)
        g = HalfSeries.from_coeffs([5, 7], 1, lead=0)
        h = f + g
        assert h.lead == 0
        assert h.coefficient(0) == 5
        assert h.coefficient(1) == 8

    def test_bernoulli_generating_inverse(self):
        # (sum z^n/(n+1)!)^(-1) carries B_k/k!, the z/2 shift included
        order = 14
        f = HalfSeries.from_coeffs(
            [Fraction(1, math.factorial(k + 1)) for k in range(order + 1)], order
        )
        inv = f.inverse()
        bern = bernoulli_numbers(order + 1)
        for k in range(order + 1):
            assert inv.coefficient(k) == bern[k] / math.factorial(k)
        assert inv.coefficient(1) == Fraction(-1, 2)


class TestNumberIdentities:
    def test_euler_numbers_oracle(self):
        assert euler_numbers(4)[:3] == [1, -1, 5]
        assert euler_numbers(4)[3] == -61

    def test_bernoulli_numbers_oracle(self):
        bern = bernoulli_numbers(7)
        assert bern[0] == 1
        assert bern[1] == Fraction(-1, 2)
        assert bern[2] == Fraction(1, 6)
        assert bern[4] == Fraction(-1, 30)
        assert bern[6] == Fraction(1, 42)
        assert bern[3] == 0 and bern[5] == 0

    def test_euler_identity_exact(self):
        assert euler_identity_check(20) == 0
        assert euler_identity_check(24) == 0

    def test_bernoulli_identity_exact(self):
        assert bernoulli_identity_check(20) == 0
        assert bernoulli_identity_check(24) == 0


# ---------------------------------------------------------------------------
# family container


class TestFamilyContainer:
    def test_csv_rows(self):
        member = hermite(2, -1.0)
        rows = member.csv_rows()
        assert rows[0][:2] == (2, 0)
        assert len(rows) == 3

    def test_evaluation_matches_coefficients(self):
        member = laguerre(3, -1.0)
        xs = np.array([0.5, 2.0], dtype=complex)
        direct = sum(c * xs**k for k, c in enumerate(member.coeffs))
        assert np.max(np.abs(member(xs) - direct)) < 1e-12
