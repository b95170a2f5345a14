"""Star exponentials of linear and quadratic arguments.

The linear exponential is entire and single-valued; the quadratic one
carries a square root with a movable branch point at t = 1/tau, so every
operation here takes a declared t-path and reports which sheet the
continuation ended on.  The trigonometric combinations of the quadratic
exponential are defined through integrals along such paths, never as
naive half-sums, which the sheet ambiguity would make triple-valued.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad_vec

from .core import (
    BranchSheet,
    GEPElement,
    TauPoint,
    as_tau,
    continued_sqrt,
    star_product_poly,
)
from .errors import BranchSingularity, QuadratureNonConvergence

from .core import Terms


@dataclass(frozen=True)
class StarElement:
    """An element of the abstract algebra, expressed on demand.

    ``expr`` maps an expression parameter to a finite sum of closed-class
    elements together with the sheet the expression was continued to.
    ``domain`` is the validity predicate on parameters, with a string
    descriptor for serialization; ``multiplicity`` flags double-valued
    families.
    """

    expr: Callable[[complex], tuple[Terms, BranchSheet]]
    domain: Callable[[complex], bool]
    domain_descriptor: str = "all"
    multiplicity: int = 1

    def expression(self, tau) -> tuple[Terms, BranchSheet]:
        tau = as_tau(tau)
        if not self.domain(tau):
            raise BranchSingularity(
                f"parameter {tau} outside domain {self.domain_descriptor}"
            )
        return self.expr(tau)

    def __call__(self, tau, w):
        terms, _ = self.expression(tau)
        w = np.asarray(w, dtype=complex)
        acc = np.zeros_like(w)
        for coeff, gep in terms:
            acc = acc + coeff * gep(w)
        return acc

    def scaled(self, factor: complex) -> "StarElement":
        def expr(tau):
            terms, sheet = self.expr(tau)
            return tuple((factor * c, g) for c, g in terms), sheet

        return StarElement(expr, self.domain, self.domain_descriptor, self.multiplicity)

    def __add__(self, other: "StarElement") -> "StarElement":
        def expr(tau):
            t1, s1 = self.expr(tau)
            t2, s2 = other.expr(tau)
            return t1 + t2, s1 * s2

        def dom(tau):
            return self.domain(tau) and other.domain(tau)

        desc = (
            self.domain_descriptor
            if self.domain_descriptor == other.domain_descriptor
            else f"{self.domain_descriptor}&{other.domain_descriptor}"
        )
        return StarElement(expr, dom, desc, max(self.multiplicity, other.multiplicity))

    def to_dict(self, tau) -> dict:
        terms, sheet = self.expression(tau)
        return {
            "domain": self.domain_descriptor,
            "multiplicity": self.multiplicity,
            "sheet": sheet.sign,
            "terms": [
                {"coefficient": [c.real, c.imag], "element": g.to_dict()}
                for c, g in terms
            ],
        }


def _always(_tau: complex) -> bool:
    return True


# ---------------------------------------------------------------------------
# linear exponentials and their trigonometric combinations


def linear_star_exponential(s: complex) -> StarElement:
    """e_*^{sw}: expressed at tau as exp(s^2 tau / 4) exp(s w), entire in tau."""
    s = complex(s)

    def expr(tau):
        gep = GEPElement(cmath.exp(s * s * tau / 4.0), 0.0, s, (1.0,))
        return ((1.0 + 0j, gep),), BranchSheet(1)

    return StarElement(expr, _always, "all", 1)


def star_sin(shift: complex = 0.0) -> StarElement:
    """sin_*(w + shift) as the two-term exponential combination."""
    shift = complex(shift)
    plus = linear_star_exponential(1j).scaled(cmath.exp(1j * shift) / 2j)
    minus = linear_star_exponential(-1j).scaled(-cmath.exp(-1j * shift) / 2j)
    return plus + minus


def star_cos(shift: complex = 0.0) -> StarElement:
    """cos_*(w + shift) as the two-term exponential combination."""
    shift = complex(shift)
    plus = linear_star_exponential(1j).scaled(cmath.exp(1j * shift) / 2)
    minus = linear_star_exponential(-1j).scaled(cmath.exp(-1j * shift) / 2)
    return plus + minus


# ---------------------------------------------------------------------------
# the quadratic exponential and its branch structure


def _path_from_zero(t: complex, path: Sequence[complex] | None) -> list[complex]:
    t = complex(t)
    pts = [0j]
    if path is not None:
        pts.extend(complex(p) for p in path)
    if pts[-1] != t:
        pts.append(t)
    return pts


def quadratic_star_exponential(
    t: complex,
    tau,
    path: Sequence[complex] | None = None,
) -> tuple[GEPElement, BranchSheet]:
    """e_*^{t w_*^2} expressed at tau: (1 - tau t)^(-1/2) exp(t w^2/(1 - tau t)).

    The square root is continued from +1 at t = 0 along the declared
    piecewise-linear t-path (straight segment by default).  Raises
    BranchSingularity when the path hits the branch point t = 1/tau.
    """
    tau = as_tau(tau)
    t = complex(t)
    pts = _path_from_zero(t, path)
    denom_path = [1.0 - tau * p for p in pts]
    root, sheet = continued_sqrt(denom_path)
    denom = 1.0 - tau * t
    return GEPElement(1.0 / root, t / denom, 0.0, (1.0,)), sheet


def quadratic_star_element(t: complex, path: Sequence[complex] | None = None) -> StarElement:
    """The same exponential as a parameter-indexed element (double-valued)."""
    t = complex(t)

    def expr(tau):
        gep, sheet = quadratic_star_exponential(t, tau, path)
        return ((1.0 + 0j, gep),), sheet

    def dom(tau):
        return t == 0 or abs(tau - 1.0 / t) > 1e-14 if t != 0 else True

    descriptor = "all" if t == 0 else f"punctured:{1.0 / t}"
    return StarElement(expr, dom, descriptor, 2)


def quad_exponential_law_check(
    s: complex,
    t: complex,
    tau,
    path_s: Sequence[complex] | None = None,
    path_t: Sequence[complex] | None = None,
    path_sum: Sequence[complex] | None = None,
) -> tuple[float, BranchSheet]:
    """Residual of e_*^{sw^2} * e_*^{tw^2} = e_*^{(s+t)w^2} with declared paths.

    Returns the coefficient residual together with the relative sheet: the
    sign relating the product (with its factors' continuations composed)
    to the principal continuation of the right-hand side.  A factor
    carried once around the branch point makes the relative sheet -1 even
    when s + t = 0, exhibiting the identity glued to its negative.
    """
    tau = as_tau(tau)
    from .core import star_product_gep

    es, sheet_s = quadratic_star_exponential(s, tau, path_s)
    et, sheet_t = quadratic_star_exponential(t, tau, path_t)
    prod, sheet_p = star_product_gep(es, et, tau)
    target, sheet_sum = quadratic_star_exponential(s + t, tau, path_sum)
    rel = sheet_s * sheet_t * sheet_p * sheet_sum
    residual = prod.normalized().coefficient_distance(
        target.scaled(rel.sign).normalized()
    )
    return residual, rel


def gaussian_inversion(a: complex, tau) -> tuple[complex, complex]:
    """Write exp(a w^2) as scale * e_*^{t w_*^2}: t = a/(1+a tau), scale = (1+a tau)^(-1/2)."""
    tau = as_tau(tau)
    a = complex(a)
    denom = 1.0 + a * tau
    if abs(denom) < 1e-14:
        raise BranchSingularity("inversion undefined at 1 + a tau = 0")
    return a / denom, denom**-0.5


# ---------------------------------------------------------------------------
# integral-defined hyperbolic pair


def _continue_on(
    waypoints: list[complex], idx: int, u: float, tau: complex
) -> tuple[GEPElement, BranchSheet]:
    """Continuation to the point at parameter u of leg idx of the polyline.

    The branch is anchored by first walking from t = 0 to the polyline
    start, then along the polyline itself.
    """
    a, b = waypoints[idx], waypoints[idx + 1]
    pt = a + (b - a) * u
    sub = list(waypoints[: idx + 1]) + [pt]
    return quadratic_star_exponential(pt, tau, path=sub)


def sinh_cosh_quadratic(
    s: complex,
    tau,
    path: Sequence[complex] | None = None,
    w_check: np.ndarray | None = None,
    check_tol: float = 1e-9,
) -> tuple[Terms, Terms]:
    """sinh and cosh of s w_*^2, defined by integrals along a declared path.

    sinh is half the integral of w_*^2 * e_*^{t w_*^2} over the path from
    -s to s, cosh half the s-derivative of the plain integral; both reduce
    to half-sums of the endpoint continuations because the sinh integrand
    is an exact derivative.  The endpoint sheets are fixed consistently by
    continuing along the one declared path (anchored at t = 0), which
    removes the triple-valuedness of the naive definition.  The sinh
    reduction is audited by Gauss-Kronrod quadrature on a small w-grid.

    ``path`` lists waypoints from -s to s (straight segment by default,
    which passes through 0).  Raises BranchSingularity if the path meets
    1/tau and QuadratureNonConvergence if the audit fails.
    """
    tau = as_tau(tau)
    s = complex(s)
    if s == 0:
        one = GEPElement()
        return ((0j, one),), ((1.0 + 0j, one),)
    if path is None:
        waypoints = [-s, s]
    else:
        waypoints = [complex(p) for p in path]
        if waypoints[0] != -s or waypoints[-1] != s:
            raise BranchSingularity("path must run from -s to s")

    e_minus, _ = quadratic_star_exponential(-s, tau, path=[waypoints[0]])
    e_plus, _ = _continue_on(waypoints, len(waypoints) - 2, 1.0, tau)
    sinh_terms: Terms = ((0.5 + 0j, e_plus), (-0.5 + 0j, e_minus))
    cosh_terms: Terms = ((0.5 + 0j, e_plus), (0.5 + 0j, e_minus))

    if w_check is None:
        w_check = np.array([0.0, 0.35, -0.2 + 0.15j])
    w_check = np.asarray(w_check, dtype=complex)

    # audit: quadrature of the defining integrand, leg by leg
    wsq = GEPElement.polynomial([tau / 2.0, 0.0, 1.0])  # w_*^2 expressed at tau
    total = np.zeros_like(w_check)
    for idx in range(len(waypoints) - 1):
        a, b = waypoints[idx], waypoints[idx + 1]

        def leg(u: float, idx=idx, vel=b - a) -> np.ndarray:
            gep, _ = _continue_on(waypoints, idx, u, tau)
            return star_product_poly(wsq, gep, tau)(w_check) * vel

        val, _err = quad_vec(leg, 0.0, 1.0, epsrel=1e-10, epsabs=1e-12)
        total = total + val
    sinh_val = 0.5 * total
    closed = 0.5 * (e_plus(w_check) - e_minus(w_check))
    scale = max(1.0, float(np.max(np.abs(closed))))
    if float(np.max(np.abs(sinh_val - closed))) > check_tol * scale:
        raise QuadratureNonConvergence(
            "integral definition disagrees with endpoint continuation"
        )
    return sinh_terms, cosh_terms


def naive_sheet_values(s: complex, tau) -> list[complex]:
    """Values at w = 0 of the naive sinh half-difference over all sheet choices.

    With the two endpoint sheets chosen independently the half-difference
    (e_*^{sw^2} - e_*^{-sw^2})/2 takes up to four values; at s = 0 they
    collapse to the three values 1, 0, -1.
    """
    tau = as_tau(tau)
    plus, _ = quadratic_star_exponential(s, tau)
    minus, _ = quadratic_star_exponential(-s, tau)
    vals = []
    for sign_p in (1, -1):
        for sign_m in (1, -1):
            v = 0.5 * (sign_p * complex(plus(0.0)) - sign_m * complex(minus(0.0)))
            vals.append(v)
    out: list[complex] = []
    for v in vals:
        if all(abs(v - u) > 1e-12 for u in out):
            out.append(v)
    return sorted(out, key=lambda z: (round(z.real, 9), round(z.imag, 9)))


# ---------------------------------------------------------------------------
# monodromy helper


def branch_loop_path(center: complex, radius: float, t_end: complex, turns: int = 1, n: int = 24) -> list[complex]:
    """Piecewise-linear t-path from 0 that circles ``center`` and ends at t_end."""
    start = center - radius
    pts = [complex(start)]
    for k in range(1, turns * n + 1):
        ang = cmath.pi * 2 * k / n
        pts.append(center - radius * cmath.exp(1j * ang))
    pts.append(complex(t_end))
    return pts
