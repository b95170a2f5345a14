"""Core algebra tests: product identities, heat flow, intertwiners, factorization.

Heat flow and the products are checked against independent oracles:
truncated derivative series evaluated pointwise, and hand-expanded small
cases.  Nothing here trusts the closed forms it is testing.
"""

import cmath
import math
import os
from fractions import Fraction

import numpy as np
import pytest
from numpy.polynomial import polynomial as npoly

from starcalc import (
    BranchSingularity,
    DegreeOverflow,
    DomainViolation,
    GEPElement,
    RootFindingFailure,
    StarPolynomial,
    TauPoint,
    continued_sqrt,
    heat_flow,
    infinitesimal_intertwiner,
    intertwine,
    radius_probe,
    star_factorize,
    star_power,
    star_power_exact,
    star_product_exact,
    star_product_gep,
    star_product_poly,
)
from starcalc.core import durand_kerner, window_grid
from starcalc.ratpoly import RatPoly2

RNG = np.random.default_rng(20260815)

TAUS = [1.0, 1j, -2.0, 0.7 + 0.3j]


def random_poly(deg: int) -> GEPElement:
    c = RNG.standard_normal(deg + 1) + 1j * RNG.standard_normal(deg + 1)
    return GEPElement.polynomial(c)


def random_gep(deg: int = 2, quad_scale: float = 0.3) -> GEPElement:
    c = RNG.standard_normal(deg + 1) + 1j * RNG.standard_normal(deg + 1)
    a = quad_scale * (RNG.standard_normal() + 1j * RNG.standard_normal())
    b = RNG.standard_normal() + 1j * RNG.standard_normal()
    return GEPElement(1.0, a, b, tuple(c))


def series_heat_oracle(f: GEPElement, t: complex, w: np.ndarray, terms: int = 60):
    """exp(t d^2) f by the raw derivative series, evaluated pointwise."""
    acc = np.zeros_like(w, dtype=complex)
    g = f
    coeff = 1.0
    for k in range(terms):
        acc = acc + coeff * g(w)
        g = g.derivative().derivative()
        coeff *= t / (k + 1)
    return acc


# ---------------------------------------------------------------------------
# element mechanics


def test_evaluate_and_derivative():
    f = GEPElement(2.0, 0.3 - 0.1j, -0.5j, (1.0, 0.0, 2.0))
    w = np.array([0.2, -1.1 + 0.4j, 3.0j])
    direct = 2.0 * np.exp((0.3 - 0.1j) * w**2 - 0.5j * w) * (1 + 2 * w**2)
    assert np.max(np.abs(f(w) - direct)) < 1e-14
    # derivative against central differences
    h = 1e-5
    fd = (f(w + h) - f(w - h)) / (2 * h)
    assert np.max(np.abs(f.derivative()(w) - fd)) < 1e-6


def test_translate():
    f = GEPElement(1.5, 0.2j, 0.7, (0.3, 1.0, -2.0j))
    s = 0.4 - 0.9j
    w = np.array([0.1, 1.0 - 0.3j])
    assert np.max(np.abs(f.translate(s)(w) - f(w + s))) < 1e-13


def test_json_round_trip():
    f = GEPElement(1.5 - 2j, 0.25j, -3.0, (1.0, 0.5j))
    assert GEPElement.from_dict(f.to_dict()) == f
    sp = StarPolynomial((1.0, 0.0, -2.0 + 1j))
    assert StarPolynomial.from_dict(sp.to_dict()) == sp


def test_normalized_absorbs_constant():
    f = GEPElement(2.0, 0.1, 0.2, (3.0,))
    g = f.normalized()
    assert g.poly == (1.0 + 0j,) and g.scale == 6.0 + 0j


# ---------------------------------------------------------------------------
# product identities


@pytest.mark.parametrize("tau", TAUS)
def test_generator_square(tau):
    w = GEPElement.polynomial([0, 1])
    p = star_product_poly(w, w, tau)
    assert p.poly == (tau / 2 + 0j, 0j, 1 + 0j)


def test_generator_cube():
    tau = 0.9 - 0.4j
    w = GEPElement.polynomial([0, 1])
    p = star_product_poly(star_product_poly(w, w, tau), w, tau)
    expect = np.array([0, 1.5 * tau, 0, 1.0])
    assert np.max(np.abs(np.asarray(p.poly) - expect)) < 1e-14


def test_star_power_closed_form():
    # P_4 = w^4 + 3 tau w^2 + 3/4 tau^2, checked symbolically and numerically
    p4 = star_power_exact(4)
    assert p4.coeffs[(4, 0)] == 1
    assert p4.coeffs[(2, 1)] == 3
    assert p4.coeffs[(0, 2)] == Fraction(3, 4)
    tau = 1.1 + 0.2j
    num = star_power(4, tau)
    assert abs(num.poly[0] - 0.75 * tau**2) < 1e-14


@pytest.mark.parametrize("n", range(12))
def test_star_power_recursion_exact(n):
    # w * P_n = P_{n+1} in exact arithmetic over (w, tau)
    w = RatPoly2.monomial(1, 0)
    assert star_product_exact(w, star_power_exact(n)) == star_power_exact(n + 1)


@pytest.mark.parametrize("tau", TAUS)
def test_star_power_by_repeated_product(tau):
    w = GEPElement.polynomial([0, 1])
    acc = GEPElement.polynomial([1.0])
    for n in range(1, 9):
        acc = star_product_poly(acc, w, tau)
        assert acc.coefficient_distance(star_power(n, tau)) < 1e-10 * max(
            1.0, abs(tau) ** n * math.factorial(n)
        )


def test_commutativity_and_bilinearity():
    tau = 0.8 + 0.1j
    f, g = random_poly(5), random_poly(6)
    fg = star_product_poly(f, g, tau)
    gf = star_product_poly(g, f, tau)
    assert fg.coefficient_distance(gf) < 1e-12
    h = random_poly(4)
    left = star_product_poly(GEPElement.polynomial(npoly.polyadd(f.poly, h.poly)), g, tau)
    right = npoly.polyadd(fg.poly, star_product_poly(h, g, tau).poly)
    assert np.max(np.abs(npoly.polysub(left.poly, right))) < 1e-12


def test_associativity_polynomials():
    tau = 1.0 + 0.5j
    f, g, h = random_poly(4), random_poly(3), random_poly(5)
    left = star_product_poly(star_product_poly(f, g, tau), h, tau)
    right = star_product_poly(f, star_product_poly(g, h, tau), tau)
    assert left.coefficient_distance(right) < 1e-10


def test_degree_overflow():
    f = random_poly(40)
    with pytest.raises(DegreeOverflow):
        star_product_poly(f, f, 1.0)
    os.environ["STAR_CALC_MAX_DEGREE"] = "100"
    try:
        star_product_poly(f, f, 1.0)
    finally:
        del os.environ["STAR_CALC_MAX_DEGREE"]


# ---------------------------------------------------------------------------
# heat flow


def test_heat_flow_linear_exponential_example():
    # exp(t d^2) (w e^{bw}) = (w + 2tb) e^{t b^2} e^{bw}, exactly
    b, t = 0.7 - 0.2j, 0.3 + 0.1j
    out, sheet = heat_flow(GEPElement(1.0, 0.0, b, (0, 1)), t)
    assert sheet.sign == 1
    assert abs(out.scale - cmath.exp(t * b * b)) < 1e-14
    assert abs(out.lin - b) < 1e-14 and abs(out.quad) < 1e-14
    assert np.max(np.abs(np.asarray(out.poly) - np.array([2 * t * b, 1.0]))) < 1e-14


@pytest.mark.parametrize("deg", [0, 1, 3, 5])
def test_heat_flow_against_series_oracle(deg):
    f = random_gep(deg, quad_scale=0.2)
    t = 0.04 + 0.02j
    out, _ = heat_flow(f, t)
    w = np.array([0.3, -0.7 + 0.2j, 1.1j, 0.05 - 0.4j])
    oracle = series_heat_oracle(f, t, w)
    assert np.max(np.abs(out(w) - oracle)) < 1e-10


def test_heat_flow_semigroup():
    f = random_gep(3)
    t1, t2 = 0.11 - 0.05j, 0.07 + 0.09j
    one, s1 = heat_flow(f, t1)
    two, s2 = heat_flow(one, t2)
    direct, s3 = heat_flow(f, t1 + t2)
    assert two.coefficient_distance(direct) < 1e-11
    assert (s1 * s2).sign == s3.sign


def test_heat_flow_focal_singularity():
    f = GEPElement.gaussian(1.0)
    with pytest.raises(BranchSingularity):
        heat_flow(f, 0.25)  # denominator crosses zero on the way
    with pytest.raises(BranchSingularity):
        heat_flow(f, 0.5)  # straight path passes through the branch point


def test_heat_flow_detour_sheets():
    # going around the focal point below vs above the real axis lands on
    # opposite sheets of the square root
    f = GEPElement.gaussian(1.0)
    below, sb = heat_flow(f, 0.5, t_path=[0.25 + 0.15j, 0.5])
    above, sa = heat_flow(f, 0.5, t_path=[0.25 - 0.15j, 0.5])
    assert sb.sign == -1 and sa.sign == 1
    assert abs(below.scale + above.scale) < 1e-12  # same value, opposite signs


def test_continued_sqrt_full_loop():
    # a loop around the origin flips the branch
    loop = [1, 1j, -1, -1j, 1]
    val, sheet = continued_sqrt(loop)
    assert sheet.sign == -1
    assert abs(val + 1.0) < 1e-12
    with pytest.raises(BranchSingularity):
        continued_sqrt([1, -1])


# ---------------------------------------------------------------------------
# intertwiners


@pytest.mark.parametrize("tau", [1.0, 1j, -2.0])
def test_intertwiner_morphism_random_pairs(tau):
    tau_to = tau + 0.9 - 0.3j
    for _ in range(25):
        f = random_poly(int(RNG.integers(0, 7)))
        g = random_poly(int(RNG.integers(0, 7)))
        prod = star_product_poly(f, g, tau)
        lhs, _ = intertwine(prod, tau, tau_to)
        fi, _ = intertwine(f, tau, tau_to)
        gi, _ = intertwine(g, tau, tau_to)
        rhs = star_product_poly(fi, gi, tau_to)
        scale = max(1.0, max(abs(c) for c in lhs.poly))
        assert lhs.coefficient_distance(rhs) < 1e-12 * scale


def test_intertwiner_star_power_transport():
    # the abstract generator powers expressed at tau map onto those at tau'
    tau, tau_to = 1.0, -0.5 + 0.8j
    for n in range(8):
        moved, _ = intertwine(star_power(n, tau), tau, tau_to)
        assert moved.coefficient_distance(star_power(n, tau_to)) < 1e-10


def test_infinitesimal_intertwiner():
    f = random_gep(3)
    gen = infinitesimal_intertwiner(f)
    w = np.array([0.2 - 0.1j, 1.0, -0.6j])
    # Richardson-extrapolated difference quotient of the flow in tau
    def quotient(h):
        out, _ = intertwine(f, 0.3, 0.3 + h)
        return (out(w) - f(w)) / h

    d1, d2 = quotient(1e-4), quotient(5e-5)
    extrapolated = 2 * d2 - d1
    assert np.max(np.abs(extrapolated - gen(w))) < 1e-7


# ---------------------------------------------------------------------------
# products of exponential elements


def test_gaussian_pair_product():
    tau = 1.3 + 0.4j
    a, c = 0.12 + 0.3j, -0.25 + 0.1j
    prod, sheet = star_product_gep(GEPElement.gaussian(a), GEPElement.gaussian(c), tau)
    denom = 1 - a * c * tau**2
    assert sheet.sign == 1
    assert abs(prod.quad - (a + c + 2 * a * c * tau) / denom) < 1e-12
    assert abs(prod.scale * prod.poly[0] - denom**-0.5) < 1e-12


def test_pure_exponential_translation_law():
    tau = 0.6 - 1.1j
    for _ in range(20):
        b = RNG.standard_normal() + 1j * RNG.standard_normal()
        g = random_gep(int(RNG.integers(0, 4)))
        out, sheet = star_product_gep(GEPElement.exponential(b), g, tau)
        assert sheet.sign == 1
        w = np.array([0.4, -0.2 + 0.7j, 1.3j])
        oracle = np.exp(b * w) * g(w + b * tau / 2)
        ref = max(1.0, float(np.max(np.abs(oracle))))
        assert np.max(np.abs(out(w) - oracle)) < 1e-12 * ref


def test_exponential_exchange_both_orders():
    tau = 1.7
    b1, b2 = 0.4 + 0.2j, -0.9j
    e1, e2 = GEPElement.exponential(b1), GEPElement.exponential(b2)
    p12, _ = star_product_gep(e1, e2, tau)
    p21, _ = star_product_gep(e2, e1, tau)
    assert p12.normalized().coefficient_distance(p21.normalized()) < 1e-14
    assert abs(p12.normalized().scale - cmath.exp(b1 * b2 * tau / 2)) < 1e-14


def test_general_route_matches_finite_series():
    # dual route: heat-flow product vs the terminating series when one
    # factor happens to be polynomial
    tau = 0.9 + 0.2j
    p = random_poly(4)
    g = random_gep(2)
    direct = star_product_poly(p, g, tau)
    # force the generic Gaussian route by giving p an epsilon Gaussian part
    eps = 1e-30
    fuzzy = GEPElement(p.scale, eps, 0.0, p.poly)
    viaheat, _ = star_product_gep(fuzzy, g, tau)
    w = np.array([0.3 - 0.2j, 0.8, -1.1j])
    assert np.max(np.abs(direct(w) - viaheat(w))) < 1e-8


# ---------------------------------------------------------------------------
# factorization


def test_factorize_simple_and_multiple_roots():
    base = npoly.polymul(npoly.polymul([1, 2, 1], [-2, 1]), [1j, 1])
    fact = star_factorize(StarPolynomial(tuple(3.0 * base)))
    assert abs(fact.lead - 3.0) < 1e-14
    assert fact.residual < 1e-12
    shifts = sorted(fact.factors, key=lambda f: (f[0].real, f[0].imag))
    assert [m for _, m in shifts] in ([1, 1, 2], [1, 2, 1], [2, 1, 1])
    lookup = {m: s for s, m in shifts}
    assert abs(lookup[2] - 1.0) < 1e-9


def test_factorize_reproduces_expression():
    # star-multiplying the linear factors at a parameter reproduces the
    # expression of the original star polynomial there
    tau = 0.8 - 0.5j
    sp = StarPolynomial((2.0 + 1j, -0.5, 1.5j, 1.0))
    fact = star_factorize(sp)
    assert fact.residual < 1e-10
    acc = GEPElement.polynomial([fact.lead])
    for shift, mult in fact.factors:
        for _ in range(mult):
            acc = star_product_poly(acc, GEPElement.polynomial([shift, 1.0]), tau)
    assert acc.coefficient_distance(sp.tau_expression(tau)) < 1e-9


def test_durand_kerner_failure():
    with pytest.raises(RootFindingFailure):
        durand_kerner([1.0, 3.0, -2.0, 1.0], max_iter=1)


# ---------------------------------------------------------------------------
# radius probe and parameters


def test_radius_probe_regimes():
    r3 = radius_probe(3, 1.0, 0, 11)
    assert np.all(np.diff(r3) < 0)
    assert r3[10] < 1e-2
    r1 = radius_probe(1, 1.0, 1, 11)
    assert np.all(r1 > 1e-1)
    np.testing.assert_allclose(r1, np.arange(1, 12))
    r2 = radius_probe(2, 1.0, 0, 40)
    assert abs(r2[-1] - 0.25) < 1e-2


def test_radius_probe_validation():
    with pytest.raises(DomainViolation):
        radius_probe(0, 1.0, 0, 5)
    with pytest.raises(DomainViolation):
        radius_probe(3, 1.0, 2, 5)
    with pytest.raises(DomainViolation):
        radius_probe(3, 0.0, 0, 5)


def test_tau_point_admissibility():
    p = TauPoint.from_value(1.0)
    assert p.admissible()
    assert not p.displaced(math.pi / 2, 0.0).admissible()
    with pytest.raises(DomainViolation):
        p.displaced(math.pi / 2, 0.0).require_admissible()
    q = TauPoint.from_value(1j)  # sigma = pi/2: boundary, not admissible
    assert not q.admissible()
    assert abs(q.value - 1j) < 1e-15


def test_window_grid():
    g = window_grid(9, 3, 2.0, 0.5)
    assert g.shape == (27,)
    assert np.max(np.abs(g.real)) <= 2.0 + 1e-12
    assert np.max(np.abs(g.imag)) <= 0.5 + 1e-12
