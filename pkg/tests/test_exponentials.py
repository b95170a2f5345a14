"""Star-exponential tests: closed forms, exponential laws, branch monodromy.

The quadratic exponential's evolution equation is checked with symbolic
derivatives of the closed form, and sheet behavior is probed with explicit
loop paths around the branch point.
"""

import cmath
import math

import numpy as np
import pytest

from starcalc import BranchSingularity, GEPElement, intertwine, star_product_gep, star_product_poly
from starcalc.exponentials import (
    StarElement,
    branch_loop_path,
    gaussian_inversion,
    linear_star_exponential,
    naive_sheet_values,
    quad_exponential_law_check,
    quadratic_star_element,
    quadratic_star_exponential,
    sinh_cosh_quadratic,
    star_cos,
    star_sin,
)

RNG = np.random.default_rng(7)


def ev(terms, w):
    return sum(c * g(w) for c, g in terms)


def star_square(terms, tau):
    out = []
    for c1, g1 in terms:
        for c2, g2 in terms:
            p, sh = star_product_gep(g1, g2, tau)
            out.append((c1 * c2 * sh.sign, p))
    return out


# ---------------------------------------------------------------------------
# linear exponentials


def test_linear_at_zero_argument():
    e = linear_star_exponential(0.0)
    for tau in (1.0, 1j, -2.0):
        terms, sheet = e.expression(tau)
        assert sheet.sign == 1
        assert len(terms) == 1
        coeff, gep = terms[0]
        assert coeff == 1.0 and gep == GEPElement()


def test_linear_evaluation_at_origin_not_homomorphism():
    a, tau = 0.8 + 0.3j, 1.2 - 0.4j
    terms, _ = linear_star_exponential(a).expression(tau)
    val = ev(terms, np.array([0.0]))[0]
    assert abs(val - cmath.exp(a * a * tau / 4)) < 1e-14
    assert abs(val - 1.0) > 0.01  # so evaluation at w=0 is not multiplicative


def test_linear_exponential_law_exact():
    tau = 0.9 + 1.1j
    for _ in range(10):
        s = RNG.standard_normal() + 1j * RNG.standard_normal()
        t = RNG.standard_normal() + 1j * RNG.standard_normal()
        (c1, g1), = linear_star_exponential(s).expression(tau)[0]
        (c2, g2), = linear_star_exponential(t).expression(tau)[0]
        prod, sheet = star_product_gep(g1, g2, tau)
        (c3, g3), = linear_star_exponential(s + t).expression(tau)[0]
        assert sheet.sign == 1
        assert prod.normalized().coefficient_distance(g3.normalized()) < 1e-12 * max(
            1.0, abs(g3.scale)
        )


def test_linear_evolution_equation():
    # d/dt e_*^{tw} = w * e_*^{tw}, with the t-derivative taken on the closed form
    tau = 0.7 - 0.2j
    w = GEPElement.polynomial([0, 1])
    wpts = np.array([0.4, -0.3 + 0.6j, 1.0j])
    for _ in range(20):
        t = RNG.standard_normal() + 1j * RNG.standard_normal()
        (_, gep), = linear_star_exponential(t).expression(tau)[0]
        # closed form scale e^{t^2 tau/4}: d/dt = (t tau/2 + w) f
        lhs = (t * tau / 2 + wpts) * gep(wpts)
        rhs = star_product_poly(w, gep, tau)(wpts)
        assert np.max(np.abs(lhs - rhs)) < 1e-12 * max(1.0, float(np.max(np.abs(rhs))))


def test_scalar_exponential_law():
    # e_*^{tw} scaled by e^s is e_*^{tw} with the scalar folded in, exactly
    tau, t, s = 1.3, 0.6 - 0.1j, 0.25 + 0.5j
    (_, gep), = linear_star_exponential(t).expression(tau)[0]
    scaled = gep.scaled(cmath.exp(s))
    assert abs(scaled.scale - cmath.exp(t * t * tau / 4 + s)) < 1e-14


# ---------------------------------------------------------------------------
# trigonometric combinations


@pytest.mark.parametrize("tau", [1.0, 1j, -2.0, 0.5 + 0.8j])
def test_sin_cos_pythagoras(tau):
    w = np.linspace(-1.2, 1.2, 9) + 0.3j
    tsn, _ = star_sin().expression(tau)
    tcs, _ = star_cos().expression(tau)
    total = ev(star_square(tsn, tau), w) + ev(star_square(tcs, tau), w)
    assert np.max(np.abs(total - 1.0)) < 1e-12


def test_sin_closed_form():
    tau = 1.4 - 0.3j
    w = np.linspace(-2, 2, 11) + 0.1j
    tsn, _ = star_sin().expression(tau)
    assert np.max(np.abs(ev(tsn, w) - np.exp(-tau / 4) * np.sin(w))) < 1e-13


def test_cos_at_vanishing_deformation():
    terms, _ = star_cos().expression(1e-300)
    assert abs(ev(terms, np.array([0.0]))[0] - 1.0) < 1e-14


def test_shifted_sin_is_translated():
    tau, s = 0.9, 0.4 - 0.2j
    w = np.array([0.1, -0.7 + 0.3j])
    shifted, _ = star_sin(s).expression(tau)
    plain, _ = star_sin().expression(tau)
    assert np.max(np.abs(ev(shifted, w) - ev(plain, w + s))) < 1e-13


# ---------------------------------------------------------------------------
# quadratic exponential


def test_quadratic_initial_condition():
    gep, sheet = quadratic_star_exponential(0.0, 1.0)
    assert sheet.sign == 1 and gep == GEPElement()


def test_quadratic_weyl_limit():
    gep, _ = quadratic_star_exponential(0.37, 1e-300)
    assert abs(gep.quad - 0.37) < 1e-12 and abs(gep.scale - 1.0) < 1e-12


def test_quadratic_evolution_equation():
    # d/dt f = (w^2 + tau/2) f + tau w f' + (tau^2/4) f'' with symbolic derivatives
    for _ in range(20):
        tau = RNG.standard_normal() + 1j * RNG.standard_normal()
        t = 0.3 * (RNG.standard_normal() + 1j * RNG.standard_normal())
        if abs(1 - tau * t) < 0.1:
            continue
        gep, _ = quadratic_star_exponential(t, tau)
        w = RNG.standard_normal(3) + 1j * RNG.standard_normal(3)
        denom = 1 - tau * t
        lhs = (tau / (2 * denom) + w * w / denom**2) * gep(w)
        d1 = gep.derivative()
        d2 = d1.derivative()
        rhs = (w * w + tau / 2) * gep(w) + tau * w * d1(w) + tau**2 / 4 * d2(w)
        assert np.max(np.abs(lhs - rhs)) < 1e-8 * max(1.0, float(np.max(np.abs(rhs))))


def test_quadratic_large_time_invariant_limit():
    tau = -1.0
    wpts = np.array([0.3, -0.5 + 0.2j])
    target = (-tau) ** -0.5 * np.exp(-wpts**2 / tau)
    errs = []
    for t in (1e4, 1e6):
        gep, _ = quadratic_star_exponential(t, tau)
        errs.append(float(np.max(np.abs(math.sqrt(t) * gep(wpts) - target))))
    assert errs[1] < errs[0] / 50
    assert errs[1] < 1e-5


def test_quadratic_branch_singularity():
    with pytest.raises(BranchSingularity):
        quadratic_star_exponential(1.0, 1.0)  # straight path hits t tau = 1 at endpoint
    with pytest.raises(BranchSingularity):
        quadratic_star_exponential(2.0, 1.0)  # and passes through it here


def test_sheet_monodromy_single_and_double_loop():
    tau = 1.0
    once = branch_loop_path(1.0, 0.4, 0.3, turns=1)
    twice = branch_loop_path(1.0, 0.4, 0.3, turns=2)
    direct, s0 = quadratic_star_exponential(0.3, tau)
    looped, s1 = quadratic_star_exponential(0.3, tau, path=once)
    relooped, s2 = quadratic_star_exponential(0.3, tau, path=twice)
    assert s0.sign == 1 and s1.sign == -1 and s2.sign == 1
    assert abs(looped.scale + direct.scale) < 1e-12
    assert abs(relooped.scale - direct.scale) < 1e-12


def test_exponential_law_straight_paths():
    res, sheet = quad_exponential_law_check(0.12, 0.07, 1.0)
    assert res < 1e-12 and sheet.sign == 1
    res0, sheet0 = quad_exponential_law_check(0.0, 0.0, 2.0)
    assert res0 == 0.0 and sheet0.sign == 1


def test_exponential_law_loop_glues_identity_to_minus_one():
    loop = branch_loop_path(1.0, 0.4, 0.2, turns=1)
    res, sheet = quad_exponential_law_check(-0.2, 0.2, 1.0, path_t=loop)
    assert res < 1e-12
    assert sheet.sign == -1


def test_intertwiner_transports_quadratic_exponential():
    # same t, different parameters, equal up to sheet
    t = 0.25
    tau_a, tau_b = 1.0, 0.4 + 0.6j
    ga, _ = quadratic_star_exponential(t, tau_a)
    gb, _ = quadratic_star_exponential(t, tau_b)
    moved, _ = intertwine(ga, tau_a, tau_b)
    d_plus = moved.normalized().coefficient_distance(gb.normalized())
    d_minus = moved.normalized().coefficient_distance(gb.scaled(-1).normalized())
    assert min(d_plus, d_minus) < 1e-12


# ---------------------------------------------------------------------------
# inversion and the hyperbolic pair


def test_gaussian_inversion_round_trip():
    t0, scale0 = gaussian_inversion(0.0, 1.0)
    assert t0 == 0 and scale0 == 1.0
    for _ in range(10):
        a = RNG.standard_normal() + 1j * RNG.standard_normal()
        tau = RNG.standard_normal() + 1j * RNG.standard_normal()
        if abs(1 + a * tau) < 0.05:
            continue
        t, scale = gaussian_inversion(a, tau)
        assert abs(t / (1 - t * tau) - a) < 1e-12  # algebraic inverse
        gep, _ = quadratic_star_exponential(t, tau)
        target = GEPElement.gaussian(a)
        got = gep.scaled(scale).normalized()
        assert got.coefficient_distance(target) < 1e-12 or got.scaled(
            -1
        ).coefficient_distance(target) < 1e-12


def test_gaussian_inversion_singularity():
    with pytest.raises(BranchSingularity):
        gaussian_inversion(-1.0, 1.0)


def test_inversion_reproduces_pair_product():
    # e^{aw^2} * e^{bw^2} through the exponential law equals the direct product
    tau = 0.8
    a, b = 0.21 - 0.1j, -0.13 + 0.05j
    ta, sa = gaussian_inversion(a, tau)
    tb, sb = gaussian_inversion(b, tau)
    law, _ = quadratic_star_exponential(ta + tb, tau)
    via_law = law.scaled(sa * sb)
    direct, _ = star_product_gep(GEPElement.gaussian(a), GEPElement.gaussian(b), tau)
    assert via_law.normalized().coefficient_distance(direct.normalized()) < 1e-12


def test_sinh_cosh_at_zero():
    sh, ch = sinh_cosh_quadratic(0.0, 1.0)
    w = np.array([0.0, 0.5])
    assert np.max(np.abs(ev(sh, w))) == 0.0
    assert np.max(np.abs(ev(ch, w) - 1.0)) == 0.0


def test_sinh_matches_quadrature_and_closed_form():
    sh, ch = sinh_cosh_quadratic(0.2, 1.0)  # audit runs inside
    val = ev(sh, np.array([0.0]))[0]
    expect = 0.5 * (0.8**-0.5 - 1.2**-0.5)
    assert abs(val - expect) < 1e-12


def test_sinh_derivative_relation():
    # d/ds sinh_* s w_*^2 = w_*^2 * cosh_* s w_*^2
    tau, s, h = 1.0, 0.2, 1e-5
    w = np.array([0.1, 0.4 - 0.2j])
    sh_p, _ = sinh_cosh_quadratic(s + h, tau)
    sh_m, _ = sinh_cosh_quadratic(s - h, tau)
    _, ch = sinh_cosh_quadratic(s, tau)
    fd = (ev(sh_p, w) - ev(sh_m, w)) / (2 * h)
    wsq = GEPElement.polynomial([tau / 2, 0, 1])
    rhs = sum(c * star_product_poly(wsq, g, tau)(w) for c, g in ch)
    assert np.max(np.abs(fd - rhs)) < 1e-8


def test_sinh_on_detour_path():
    # declared path avoiding the origin still anchors consistently
    s, tau = 0.2, 1.0
    sh, _ = sinh_cosh_quadratic(s, tau, path=[-s, -0.1 + 0.05j, 0.1 + 0.05j, s])
    straight, _ = sinh_cosh_quadratic(s, tau)
    w = np.array([0.0, 0.3])
    assert np.max(np.abs(ev(sh, w) - ev(straight, w))) < 1e-10


def test_naive_definition_is_triple_valued_at_zero():
    vals = naive_sheet_values(0.0, 1.0)
    assert len(vals) == 3
    assert max(abs(v - e) for v, e in zip(vals, [-1.0, 0.0, 1.0])) < 1e-12


# ---------------------------------------------------------------------------
# StarElement mechanics


def test_star_element_domain_enforced():
    elem = quadratic_star_element(0.5)
    assert elem.multiplicity == 2
    assert elem.domain_descriptor == "punctured:(2+0j)"
    with pytest.raises(BranchSingularity):
        elem.expression(2.0)
    terms, sheet = elem.expression(1.0)
    assert sheet.sign == 1 and len(terms) == 1


def test_star_element_serialization():
    data = star_sin().to_dict(1.0)
    assert data["domain"] == "all" and data["multiplicity"] == 1
    assert len(data["terms"]) == 2
    coeff = data["terms"][0]["coefficient"]
    assert isinstance(coeff, list) and len(coeff) == 2
    assert "poly" in data["terms"][0]["element"]


def test_star_element_intertwine_compatibility():
    # the family tau -> expr(tau) is a single abstract element
    tau_a, tau_b = 1.0, -0.7 + 0.4j
    for elem in (linear_star_exponential(0.8 - 0.3j), star_sin(0.2), star_cos()):
        terms_a, _ = elem.expression(tau_a)
        terms_b, _ = elem.expression(tau_b)
        w = np.array([0.2, -0.4 + 0.1j])
        moved = sum(c * intertwine(g, tau_a, tau_b)[0](w) for c, g in terms_a)
        direct = ev(terms_b, w)
        assert np.max(np.abs(moved - direct)) < 1e-12
