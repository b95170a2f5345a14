"""Core algebra: the deformed product on entire functions of one variable.

The commutative product carries a complex deformation parameter tau and
acts on the algebra generated by Gaussian-exponential-polynomial elements

    f(w) = scale * exp(quad * w**2 + lin * w) * p(w),

which is closed under the product, under heat flow, and under the
intertwiners that move an element between expression parameters.  All
closed forms live here; branch bookkeeping for the square-root
prefactors rides along as an explicit sheet value.
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import (
    BranchSingularity,
    DegreeOverflow,
    DomainViolation,
    RootFindingFailure,
)
from .ratpoly import RatPoly2


def max_degree() -> int:
    """Degree cap for polynomial parts, configurable via STAR_CALC_MAX_DEGREE."""
    return int(os.environ.get("STAR_CALC_MAX_DEGREE", "64"))


def _trim(coeffs: Sequence[complex]) -> tuple[complex, ...]:
    out = list(coeffs)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(complex(c) for c in out)


def _check_degree(coeffs: Sequence[complex], context: str) -> None:
    if len(coeffs) - 1 > max_degree():
        raise DegreeOverflow(
            f"{context}: degree {len(coeffs) - 1} exceeds cap {max_degree()}"
        )


# ---------------------------------------------------------------------------
# branch bookkeeping


@dataclass(frozen=True)
class BranchSheet:
    """Which determination of a square-root prefactor is in force.

    ``sign`` is +1 when the value agrees with the principal branch at the
    endpoint of the defining path and -1 when it sits on the other sheet.
    """

    sign: int = 1
    note: str = ""

    def __mul__(self, other: "BranchSheet") -> "BranchSheet":
        return BranchSheet(self.sign * other.sign, other.note or self.note)

    def flipped(self, note: str = "") -> "BranchSheet":
        return BranchSheet(-self.sign, note or self.note)


def continued_sqrt(path: Sequence[complex], samples_per_leg: int = 64):
    """Square root continued along a polygonal path from path[0].

    Starts on the principal branch at the first point and tracks the
    argument continuously.  Returns (value_at_end, BranchSheet relative to
    the principal branch at the end).
    """
    pts = [complex(p) for p in path]
    if len(pts) < 2:
        val = cmath.sqrt(pts[0])
        return val, BranchSheet(1)
    arg = cmath.phase(pts[0])
    total = arg
    prev = pts[0]
    floor = max(abs(p) for p in pts) * 1e-13 + 1e-300
    for a, b in zip(pts[:-1], pts[1:]):
        for k in range(1, samples_per_leg + 1):
            z = a + (b - a) * (k / samples_per_leg)
            if abs(z) < floor:
                raise BranchSingularity("path passes through the branch point 0")
            step = cmath.phase(z / prev)
            total += step
            prev = z
    val = math.sqrt(abs(pts[-1])) * cmath.exp(0.5j * total)
    principal = cmath.sqrt(pts[-1])
    sign = 1 if abs(val - principal) <= abs(val + principal) else -1
    return val, BranchSheet(sign)


# ---------------------------------------------------------------------------
# expression parameters


@dataclass(frozen=True)
class TauPoint:
    """Expression parameter on the universal cover.

    ``sigma`` is the (unreduced) argument of tau, ``theta`` the rotation
    applied to arguments of the elements expressed at this point.  The
    pair is jointly admissible while |2*theta + sigma| < pi/2.
    """

    modulus: float
    sigma: float = 0.0
    theta: float = 0.0

    @classmethod
    def from_value(cls, tau: complex, theta: float = 0.0) -> "TauPoint":
        tau = complex(tau)
        if tau == 0:
            raise DomainViolation("tau must be nonzero")
        return cls(abs(tau), cmath.phase(tau), theta)

    @property
    def value(self) -> complex:
        return self.modulus * cmath.exp(1j * self.sigma)

    def admissible(self) -> bool:
        return abs(2.0 * self.theta + self.sigma) < math.pi / 2

    def require_admissible(self) -> None:
        if not self.admissible():
            raise DomainViolation(
                f"joint parameter (theta={self.theta:.4f}, sigma={self.sigma:.4f}) "
                "violates |2 theta + sigma| < pi/2"
            )

    def displaced(self, dtheta: float, dsigma: float) -> "TauPoint":
        return TauPoint(self.modulus, self.sigma + dsigma, self.theta + dtheta)


def as_tau(tau) -> complex:
    """Accept plain complex values or TauPoint wherever tau is needed."""
    if isinstance(tau, TauPoint):
        return tau.value
    return complex(tau)


# ---------------------------------------------------------------------------
# the closed element class


@dataclass(frozen=True)
class GEPElement:
    """scale * exp(quad w^2 + lin w) * poly(w), poly by ascending degree."""

    scale: complex = 1.0 + 0j
    quad: complex = 0j
    lin: complex = 0j
    poly: tuple[complex, ...] = (1.0 + 0j,)

    def __post_init__(self):
        object.__setattr__(self, "scale", complex(self.scale))
        object.__setattr__(self, "quad", complex(self.quad))
        object.__setattr__(self, "lin", complex(self.lin))
        object.__setattr__(self, "poly", _trim(self.poly))

    # -- structure ----------------------------------------------------------

    @classmethod
    def polynomial(cls, coeffs: Sequence[complex]) -> "GEPElement":
        return cls(1.0, 0.0, 0.0, tuple(coeffs))

    @classmethod
    def exponential(cls, lin: complex, scale: complex = 1.0) -> "GEPElement":
        return cls(scale, 0.0, lin, (1.0,))

    @classmethod
    def gaussian(cls, quad: complex, lin: complex = 0.0, scale: complex = 1.0) -> "GEPElement":
        return cls(scale, quad, lin, (1.0,))

    @property
    def degree(self) -> int:
        return len(self.poly) - 1

    def is_polynomial(self) -> bool:
        return self.quad == 0 and self.lin == 0

    def is_pure_exponential(self) -> bool:
        return self.quad == 0 and self.degree == 0

    def normalized(self) -> "GEPElement":
        """Absorb the scale into the polynomial when the latter is constant."""
        if self.degree == 0:
            return GEPElement(self.scale * self.poly[0], self.quad, self.lin, (1.0,))
        return self

    # -- calculus ------------------------------------------------------------

    def __call__(self, w):
        w = np.asarray(w, dtype=complex)
        val = npoly.polyval(w, np.asarray(self.poly, dtype=complex))
        return self.scale * np.exp(self.quad * w * w + self.lin * w) * val

    def derivative(self) -> "GEPElement":
        p = np.asarray(self.poly, dtype=complex)
        dp = npoly.polyder(p) if len(p) > 1 else np.zeros(1, dtype=complex)
        chain = npoly.polymul(np.array([self.lin, 2 * self.quad]), p)
        return GEPElement(self.scale, self.quad, self.lin, _trim(npoly.polyadd(dp, chain)))

    def nth_derivative(self, n: int) -> "GEPElement":
        out = self
        for _ in range(n):
            out = out.derivative()
        return out

    def pointwise_mul(self, other: "GEPElement") -> "GEPElement":
        prod = npoly.polymul(
            np.asarray(self.poly, dtype=complex), np.asarray(other.poly, dtype=complex)
        )
        _check_degree(prod, "pointwise product")
        return GEPElement(
            self.scale * other.scale,
            self.quad + other.quad,
            self.lin + other.lin,
            _trim(prod),
        )

    def translate(self, shift: complex) -> "GEPElement":
        """The element w -> f(w + shift), re-expanded in w."""
        shift = complex(shift)
        if shift == 0:
            return self
        # p(w + s) via the binomial re-expansion
        p = np.asarray(self.poly, dtype=complex)
        out = np.zeros_like(p)
        for k, c in enumerate(p):
            if c == 0:
                continue
            row = np.zeros(k + 1, dtype=complex)
            for j in range(k + 1):
                row[j] = c * math.comb(k, j) * shift ** (k - j)
            out[: k + 1] += row
        scale = self.scale * cmath.exp(self.quad * shift * shift + self.lin * shift)
        return GEPElement(scale, self.quad, self.lin + 2 * self.quad * shift, _trim(out))

    def scaled(self, factor: complex) -> "GEPElement":
        return GEPElement(self.scale * factor, self.quad, self.lin, self.poly)

    # -- comparison and serialization ----------------------------------------

    def coefficient_distance(self, other: "GEPElement") -> float:
        """Sup distance between the defining data, scales folded into polys."""
        a, b = self, other
        pa = np.asarray(a.poly, dtype=complex) * a.scale
        pb = np.asarray(b.poly, dtype=complex) * b.scale
        n = max(len(pa), len(pb))
        pa = np.pad(pa, (0, n - len(pa)))
        pb = np.pad(pb, (0, n - len(pb)))
        return float(
            max(abs(a.quad - b.quad), abs(a.lin - b.lin), np.max(np.abs(pa - pb)))
        )

    def isclose(self, other: "GEPElement", tol: float = 1e-12) -> bool:
        ref = max(
            1.0,
            abs(self.scale) * max(abs(c) for c in self.poly),
            abs(self.quad),
            abs(self.lin),
        )
        return self.coefficient_distance(other) <= tol * ref

    def to_dict(self) -> dict:
        return {
            "scale": [self.scale.real, self.scale.imag],
            "quad": [self.quad.real, self.quad.imag],
            "lin": [self.lin.real, self.lin.imag],
            "poly": [[c.real, c.imag] for c in self.poly],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GEPElement":
        def cplx(pair):
            return complex(pair[0], pair[1])

        return cls(
            cplx(data["scale"]),
            cplx(data["quad"]),
            cplx(data["lin"]),
            tuple(cplx(p) for p in data["poly"]),
        )


ONE = GEPElement()


# ---------------------------------------------------------------------------
# heat flow and intertwiners


def heat_flow(
    f: GEPElement,
    t: complex,
    t_path: Sequence[complex] | None = None,
) -> tuple[GEPElement, BranchSheet]:
    """Apply exp(t d^2/dw^2) to a closed-class element.

    On exp(a w^2 + b w) the flow is the exact rescaling

        quad -> a/(1-4ta),  lin -> b/(1-4ta),
        scale gains (1-4ta)^(-1/2) exp(t b^2/(1-4ta)),

    and a polynomial factor is carried along exactly by differentiating
    the flowed Gaussian with respect to its linear coefficient.  The
    square root is continued along ``t_path`` (waypoints from 0 to t,
    straight segment by default); the returned sheet says whether the
    endpoint agrees with the principal branch.
    """
    t = complex(t)
    if t == 0:
        return f, BranchSheet(1)
    a, b = f.quad, f.lin
    denom = 1.0 - 4.0 * t * a
    if abs(denom) < 1e-14:
        raise BranchSingularity("heat flow reached the focal time 1/(4 quad)")

    if t_path is None:
        waypoints = [0j, t]
    else:
        waypoints = [0j] + [complex(p) for p in t_path]
        if waypoints[-1] != t:
            waypoints.append(t)
    denom_path = [1.0 - 4.0 * p * a for p in waypoints]
    root, sheet = continued_sqrt(denom_path)

    gain = cmath.exp(t * b * b / denom) / root
    new_quad = a / denom
    new_lin = b / denom

    if f.degree == 0:
        return (
            GEPElement(f.scale * f.poly[0] * gain, new_quad, new_lin, (1.0,)),
            sheet,
        )

    # polynomial factor: p(w) e^{aw^2+bw} = p(d/db) e^{aw^2+bw}, and the
    # flowed Gaussian H(b) obeys dH/db = (w + 2tb)/denom * H, so the k-th
    # derivative contributes a bivariate polynomial r_k(w, b).
    deg = f.degree
    r = np.zeros((1, 1), dtype=complex)
    r[0, 0] = 1.0
    acc = np.zeros(deg + 1, dtype=complex)
    acc[0] = f.poly[0]
    for k in range(1, deg + 1):
        dr = r[:, 1:] * np.arange(1, r.shape[1])  # d/db
        grown = np.zeros((k + 1, k + 1), dtype=complex)
        grown[: dr.shape[0], : dr.shape[1]] += dr
        grown[1 : r.shape[0] + 1, : r.shape[1]] += r / denom  # w * r
        grown[: r.shape[0], 1 : r.shape[1] + 1] += r * (2 * t / denom)  # 2tb * r
        r = grown
        ck = f.poly[k]
        if ck != 0:
            bpows = b ** np.arange(r.shape[1])
            acc[: k + 1] += ck * (r @ bpows)
    return GEPElement(f.scale * gain, new_quad, new_lin, _trim(acc)), sheet


def intertwine(
    f: GEPElement,
    tau_from,
    tau_to,
    t_path: Sequence[complex] | None = None,
) -> tuple[GEPElement, BranchSheet]:
    """Move an expression from parameter tau_from to tau_to.

    This is the heat flow at time (tau_to - tau_from)/4; it is an algebra
    isomorphism between the two product structures.
    """
    t = (as_tau(tau_to) - as_tau(tau_from)) / 4.0
    return heat_flow(f, t, t_path=t_path)


def infinitesimal_intertwiner(f: GEPElement) -> GEPElement:
    """Generator of the intertwiner family: one quarter of the second derivative."""
    return f.derivative().derivative().scaled(0.25)


# ---------------------------------------------------------------------------
# star products


def star_product_poly(f: GEPElement, g: GEPElement, tau) -> GEPElement:
    """Product via the finite differential series.

    Requires one factor to be an honest polynomial (no exponential part);
    then sum_k tau^k/(2^k k!) f^(k) g^(k) terminates and the result is
    exact in the coefficients.
    """
    tau = as_tau(tau)
    if f.is_polynomial():
        poly_side, base = f, g
    elif g.is_polynomial():
        poly_side, base = g, f
    else:
        raise DomainViolation(
            "finite product series needs a polynomial factor; "
            "use star_product_gep for two exponential elements"
        )
    p = np.asarray(poly_side.poly, dtype=complex) * poly_side.scale
    q = np.asarray(base.poly, dtype=complex)
    chain = np.array([base.lin, 2 * base.quad])
    acc = np.zeros(1, dtype=complex)
    factor = 1.0 + 0j
    for k in range(len(p)):
        if np.any(p != 0):
            term = npoly.polymul(p, q) * factor
            acc = npoly.polyadd(acc, term)
        p = npoly.polyder(p) if len(p) > 1 else np.zeros(1, dtype=complex)
        dq = npoly.polyder(q) if len(q) > 1 else np.zeros(1, dtype=complex)
        q = npoly.polyadd(dq, npoly.polymul(chain, q))
        factor *= tau / (2.0 * (k + 1))
        if not np.any(p):
            break
    _check_degree(acc, "star product")
    return GEPElement(base.scale, base.quad, base.lin, _trim(acc))


def star_product_gep(
    f: GEPElement, g: GEPElement, tau
) -> tuple[GEPElement, BranchSheet]:
    """Product of two closed-class elements.

    A factor that is a pure exponential acts exactly by translation:
    exp(b w) * f = exp(b w) f(w + b tau / 2).  Otherwise the product is
    routed through parameter 0, where it is the pointwise product, and
    back; the two square roots picked up on the way contribute the sheet.
    """
    tau = as_tau(tau)
    if f.is_polynomial() or g.is_polynomial():
        return star_product_poly(f, g, tau), BranchSheet(1)
    if f.is_pure_exponential():
        coeff = f.scale * f.poly[0]
        shifted = g.translate(f.lin * tau / 2.0)
        out = GEPElement(
            coeff * shifted.scale, shifted.quad, shifted.lin + f.lin, shifted.poly
        )
        return out, BranchSheet(1)
    if g.is_pure_exponential():
        return star_product_gep(g, f, tau)
    f0, s1 = heat_flow(f, -tau / 4.0)
    g0, s2 = heat_flow(g, -tau / 4.0)
    out, s3 = heat_flow(f0.pointwise_mul(g0), tau / 4.0)
    return out, s1 * s2 * s3


# ---------------------------------------------------------------------------
# star powers and star polynomials


def star_power_exact(n: int) -> RatPoly2:
    """The n-th star power of w as an exact polynomial in (w, tau).

    Coefficient of tau^k w^(n-2k) is n! / (4^k k! (n-2k)!).
    """
    if n < 0:
        raise DomainViolation("star powers are defined for n >= 0")
    coeffs = {}
    for k in range(n // 2 + 1):
        num = Fraction(math.factorial(n), 4**k * math.factorial(k) * math.factorial(n - 2 * k))
        coeffs[(n - 2 * k, k)] = num
    return RatPoly2(coeffs)


def star_power(n: int, tau) -> GEPElement:
    """Numeric expression of w_*^n at the given parameter."""
    tau = as_tau(tau)
    coeffs = star_power_exact(n).u_coefficients(tau)
    return GEPElement.polynomial(coeffs)


def star_product_exact(p: RatPoly2, q: RatPoly2) -> RatPoly2:
    """Exact product for polynomials in (w, tau): sum_k tau^k/(2^k k!) p^(k) q^(k)."""
    acc = RatPoly2()
    dp, dq = p, q
    k = 0
    coeff = Fraction(1)
    while not dp.is_zero() and not dq.is_zero():
        acc = acc + (dp * dq) * coeff * RatPoly2.monomial(0, k)
        dp = dp.diff_u()
        dq = dq.diff_u()
        k += 1
        coeff = coeff / (2 * k)
    return acc


@dataclass(frozen=True)
class StarPolynomial:
    """Polynomial in the star generator, by abstract coefficients of w_*^k."""

    coeffs: tuple[complex, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def tau_expression(self, tau) -> GEPElement:
        """Expression at a parameter: sum c_k :w_*^k:."""
        tau = as_tau(tau)
        acc = np.zeros(1, dtype=complex)
        for k, c in enumerate(self.coeffs):
            if c != 0:
                pk = np.asarray(star_power(k, tau).poly, dtype=complex)
                acc = npoly.polyadd(acc, c * pk)
        return GEPElement.polynomial(_trim(acc))

    def to_dict(self) -> dict:
        return {"coeffs": [[c.real, c.imag] for c in self.coeffs]}

    @classmethod
    def from_dict(cls, data: dict) -> "StarPolynomial":
        return cls(tuple(complex(p[0], p[1]) for p in data["coeffs"]))


def durand_kerner(
    coeffs: Sequence[complex],
    max_iter: int = 200,
    residual_target: float = 1e-13,
) -> np.ndarray:
    """All roots of a polynomial (ascending coefficients) simultaneously."""
    c = np.asarray(_trim(coeffs), dtype=complex)
    if len(c) < 2:
        return np.zeros(0, dtype=complex)
    monic = c / c[-1]
    n = len(monic) - 1
    bound = 1.0 + float(np.max(np.abs(monic[:-1])))
    roots = bound * (0.4 + 0.9j) ** np.arange(1, n + 1)
    for _ in range(max_iter):
        vals = npoly.polyval(roots, monic)
        if float(np.max(np.abs(vals))) < residual_target:
            return roots
        for i in range(n):
            diff = roots[i] - np.delete(roots, i)
            denom = np.prod(diff) if n > 1 else 1.0
            roots[i] -= vals[i] / denom
    vals = npoly.polyval(roots, monic)
    if float(np.max(np.abs(vals))) < residual_target:
        return roots
    raise RootFindingFailure(
        f"root residual {float(np.max(np.abs(vals))):.3e} after {max_iter} iterations"
    )


def _cluster(roots: np.ndarray, tol: float) -> list[tuple[complex, int]]:
    clusters: list[list[complex]] = []
    for r in sorted(roots, key=lambda z: (z.real, z.imag)):
        for group in clusters:
            if abs(r - group[0]) < tol:
                group.append(r)
                break
        else:
            clusters.append([r])
    return [(complex(np.mean(g)), len(g)) for g in clusters]


def _polish_root(coeffs: np.ndarray, z: complex, mult: int) -> complex:
    # a root of multiplicity m is a simple root of the (m-1)-th derivative
    g = coeffs
    for _ in range(mult - 1):
        g = npoly.polyder(g)
    dg = npoly.polyder(g)
    for _ in range(6):
        val = npoly.polyval(z, g)
        slope = npoly.polyval(z, dg)
        if slope == 0:
            break
        step = val / slope
        z -= step
        if abs(step) < 1e-15 * (1 + abs(z)):
            break
    return z


@dataclass(frozen=True)
class StarFactorization:
    """lead * (w + shift_1)_*^m1 * ... with shifts listed with multiplicities."""

    lead: complex
    factors: tuple[tuple[complex, int], ...]
    residual: float

    def expanded(self) -> StarPolynomial:
        acc = np.array([1.0 + 0j])
        for shift, mult in self.factors:
            for _ in range(mult):
                acc = npoly.polymul(acc, np.array([shift, 1.0]))
        return StarPolynomial(tuple(self.lead * acc))


def star_factorize(
    p: StarPolynomial, cluster_tol: float | None = None
) -> StarFactorization:
    """Unique factorization into linear star factors.

    The abstract coefficients form an ordinary polynomial ring, so the
    factor shifts are the negated roots of sum c_k X^k; the star products
    of the linear factors then reproduce p in any expression parameter.
    Roots are clustered into multiplicities and polished; with no
    explicit cluster width, several widths are tried and the one whose
    re-expansion reproduces the coefficients best wins.
    """
    if p.degree < 1:
        return StarFactorization(p.coeffs[0] if p.coeffs else 0.0, (), 0.0)
    roots = durand_kerner(p.coeffs)
    lead = p.coeffs[-1]
    monic = np.asarray(p.coeffs, dtype=complex) / lead
    widths = [cluster_tol] if cluster_tol is not None else [1e-10, 1e-7, 1e-4, 1e-2]
    scale = float(np.max(np.abs(np.asarray(p.coeffs))))
    best: StarFactorization | None = None
    for width in widths:
        factors = tuple(
            (-_polish_root(monic, r, m), m) for r, m in _cluster(roots, width)
        )
        rebuilt = StarFactorization(lead, factors, 0.0).expanded()
        n = max(len(rebuilt.coeffs), len(p.coeffs))
        ra = np.pad(np.asarray(rebuilt.coeffs), (0, n - len(rebuilt.coeffs)))
        pa = np.pad(np.asarray(p.coeffs), (0, n - len(p.coeffs)))
        residual = float(np.max(np.abs(ra - pa))) / scale
        cand = StarFactorization(lead, factors, residual)
        if best is None or cand.residual < best.residual:
            best = cand
    return best


# ---------------------------------------------------------------------------
# radius probe for exponentials of higher star powers


def radius_probe(ell: int, t: float, m: int, count: int) -> np.ndarray:
    """Ratio test data for the tau-series of sum_n t^n w_*^(ell n) / n!.

    Collecting the lowest-order w-coefficient of each term, the n-th
    entry of the series (in the normalization that divides the k-th
    tau-power by k! 4^k) has magnitude a_n = t^n (ell n)! / n!, and the
    probe returns r_n = (n+1) a_n / a_{n+1} for n < count.  The series
    converges for ell <= 2 (r_n stays bounded away from zero) and
    collapses to radius zero for ell >= 3 (r_n -> 0).  ``m`` selects the
    tracked low-order w-power and must be 0 or 1; the ratio values do not
    depend on it.
    """
    if ell < 1:
        raise DomainViolation("ell must be a positive integer")
    if m not in (0, 1):
        raise DomainViolation("the tracked w-power m must be 0 or 1")
    if count < 1:
        raise DomainViolation("count must be positive")
    t = abs(t)
    if t == 0:
        raise DomainViolation("t must be nonzero")
    out = np.empty(count)
    for n in range(count):
        denom = t
        for i in range(1, ell + 1):
            denom *= ell * n + i
        out[n] = (n + 1) ** 2 / denom
    return out


# ---------------------------------------------------------------------------
# evaluation grids and term sums

Terms = tuple[tuple[complex, GEPElement], ...]


def evaluate_terms(terms: Terms, w) -> np.ndarray:
    """Evaluate a finite combination sum coeff * element on a point grid."""
    w = np.asarray(w, dtype=complex)
    acc = np.zeros_like(w)
    for coeff, gep in terms:
        acc = acc + coeff * gep(w)
    return acc


def chebyshev_points(n: int, lo: float, hi: float) -> np.ndarray:
    """n Chebyshev points on [lo, hi] (extrema grid)."""
    k = np.arange(n)
    x = np.cos(math.pi * k / (n - 1)) if n > 1 else np.zeros(1)
    return 0.5 * (lo + hi) + 0.5 * (hi - lo) * x[::-1]


def window_grid(
    n_re: int = 33,
    n_im: int = 5,
    re_max: float = math.pi,
    im_max: float = 1.0,
) -> np.ndarray:
    """Complex evaluation grid on the standard window |Re w|<=re_max, |Im w|<=im_max."""
    re = chebyshev_points(n_re, -re_max, re_max)
    im = chebyshev_points(n_im, -im_max, im_max) if n_im > 1 else np.zeros(1)
    grid = re[None, :] + 1j * im[:, None]
    return grid.ravel()
