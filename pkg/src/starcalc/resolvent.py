"""Signed star inverses: half-line resolvents, geometric series, lifts.

A linear base a + w acquires two distinct star inverses, labelled + and -,
as the two half-line integrals of the exponential e_*^{it(a+w)}.  Both are
genuine two-sided inverses; their difference is 2 pi i times the Gaussian
delta at the same shift.  The same sign split runs through geometric
series in e_*^{2iw}, trigonometric bases, factored star polynomials and
the lifts of classical distributions.  Products of signed inverses never
pass through raw pointwise multiplication: they reduce by the resolvent
rules implemented here, and the few places where associativity genuinely
breaks are exposed as explicit gap witnesses instead of being patched.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .core import (
    GEPElement,
    StarFactorization,
    StarPolynomial,
    TauPoint,
    as_tau,
    star_factorize,
    star_product_poly,
    window_grid,
)
from .errors import (
    DivergentProduct,
    DomainViolation,
    ResultantZero,
    TruncationNotConverged,
    UndefinedProduct,
)
from .quadrature import gauss_legendre_panels, oscillatory_panels, tanh_sinh
from .theta import DeltaElement, theta

__all__ = [
    "InverseElement",
    "ResolventExpression",
    "inverse_linear",
    "sign_difference_delta",
    "imaginary_axis_inverse",
    "star_apply",
    "resolvent_product",
    "delta_product_rules",
    "delta_pair_pointwise_norm",
    "AssociativityGuard",
    "delta_associativity_guard",
    "eigenvalue_rule_residual",
    "DiscreteInverse",
    "inverse_discrete",
    "discrete_base_residual",
    "theta3_split_residual",
    "OddExponentialSeries",
    "cos_star_inverse",
    "sin_star_inverse",
    "trig_inverse_base_residual",
    "trig_inverse_theta_residual",
    "vanishing_check",
    "theta_derivative_vanishing",
    "bezout_vanishing",
    "poly_star_inverse",
    "quadratic_sum_inverse",
    "quadratic_difference_fit",
    "constant_variation_inverse",
    "constant_variation_gap",
    "integral_inverse_sin",
    "sin_residual_check",
    "sin_integral_shift_residual",
    "sin_integral_reflection_residual",
    "sin_integral_pair_sum_residual",
    "heaviside_lift",
    "sgn_lift",
    "symbol_lift_product",
    "vp_lift",
    "pf_lift",
    "cauchy_contour_residual",
    "inverse_decay_profile",
]

# decay budget: exp(-42) ~ 5.7e-19 leaves headroom for polynomial factors
_TAIL = 42.0

JetFunction = Callable[..., np.ndarray]


def _right_half(tau) -> complex:
    """Parameter value on the Re tau > 0 chart, via the angle for points."""
    if isinstance(tau, TauPoint):
        tau.require_admissible()
        return tau.value
    value = as_tau(tau)
    if value.real <= 0.0:
        raise DomainViolation("inverse integrals need Re tau > 0")
    return value


def _left_half(tau) -> complex:
    if isinstance(tau, TauPoint):
        if math.cos(2.0 * tau.theta + tau.sigma) >= 0.0:
            raise DomainViolation("this integral converges only for Re tau < 0")
        return tau.value
    value = as_tau(tau)
    if value.real >= 0.0:
        raise DomainViolation("this integral converges only for Re tau < 0")
    return value


def _as_point(tau) -> TauPoint:
    return tau if isinstance(tau, TauPoint) else TauPoint.from_value(as_tau(tau))


def _grid(w) -> np.ndarray:
    if w is None:
        return window_grid()
    return np.atleast_1d(np.asarray(w, dtype=complex))


def _u_cap(re_tau: float, drift: float) -> float:
    """Quartic-vs-linear crossover: exp(re u^4/4 - drift u^2) below e^-_TAIL."""
    x = (2.0 / re_tau) * (drift + math.sqrt(drift * drift + re_tau * _TAIL))
    return math.sqrt(max(x, 4.0 / math.sqrt(re_tau)))


def _half_line_jet(
    a: complex,
    sign: int,
    power: int,
    tau: complex,
    w,
    order: int = 0,
    tol: float = 1e-12,
) -> np.ndarray:
    """d^order/dw^order of (a+w)^{-power} with the chosen sign at parameter tau.

    The + inverse is i int_{-inf}^0 e_*^{it(a+w)} dt and the - inverse is
    -i int_0^inf; raising the power differentiates in a, which multiplies
    the integrand by (-1)^{p-1}/(p-1)! (it)^{p-1}.  The substitution
    t = -sign u^2 folds the half line into [0, U] with quartic decay; U is
    chosen so the Gaussian beats the worst drift exp(sign Im(a+w) u^2).
    """
    w = _grid(w)
    a = complex(a)
    drift = max(0.0, float(np.max(sign * (a + w).imag)))
    cap = _u_cap(tau.real, drift)
    pref = 1j * sign * (-1.0) ** (power - 1) / math.factorial(power - 1)
    exponent = power - 1 + order

    def integrand(u: np.ndarray) -> np.ndarray:
        t = (-sign * u * u).astype(complex)
        it = 1j * t
        phase = np.exp(-t[:, None] ** 2 * tau / 4.0 + np.outer(it, a + w))
        factor = it**exponent if exponent else np.ones_like(t)
        return pref * (factor * 2.0 * u)[:, None] * phase

    return tanh_sinh(integrand, 0.0, cap, tol=tol)


# ---------------------------------------------------------------------------
# signed inverse elements


@dataclass(frozen=True)
class InverseElement:
    """One signed inverse: a base descriptor, a sign and a power.

    Continuous elements invert a + w, discrete ones 1 - c e_*^{2iw}, and
    constant-variation elements carry the free weight of the homogeneous
    Gaussian solution on top of a continuous linear base.
    """

    base: complex
    sign: int = 1
    power: int = 1
    kind: str = "continuous"
    constant: complex = 0.0

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise DomainViolation("sign must be +1 or -1")
        if self.power < 1:
            raise DomainViolation("power must be a positive integer")
        if self.kind not in ("continuous", "discrete", "constant-variation"):
            raise DomainViolation(f"unknown inverse kind {self.kind!r}")

    def key(self) -> tuple:
        if self.kind == "continuous":
            return _inv_key(self.base, self.sign, self.power)
        if self.kind == "discrete":
            return _dinv_key(self.base, self.sign, self.power)
        raise DomainViolation(
            "constant-variation inverses evaluate directly and do not enter "
            "resolvent expressions"
        )

    def evaluate(self, tau, w, order: int = 0) -> np.ndarray:
        if self.kind == "continuous":
            value = _right_half(tau)
            return _half_line_jet(self.base, self.sign, self.power, value, w, order)
        if self.kind == "discrete":
            series = inverse_discrete(self.base, self.sign, tau, power=self.power)
            return series.values(w, order)
        jet = constant_variation_inverse(self.base, self.constant, tau)
        if self.power != 1:
            raise DomainViolation("constant-variation inverses carry power 1")
        return jet(_grid(w), order)

    def pretty(self) -> str:
        mark = "+" if self.sign > 0 else "-"
        if self.kind == "continuous":
            return f"({_label(self.base)}+w)^{{-{self.power}}}_{{{mark}}}"
        if self.kind == "discrete":
            return f"(1-{_label(self.base)}e_*^{{2iw}})^{{-{self.power}}}_{{{mark}}}"
        return f"({_label(self.base)}+w)^{{-1}}[C={_label(self.constant)}]"

    def as_expression(self, tau) -> "ResolventExpression":
        return ResolventExpression.from_mapping(_as_point(tau), {self.key(): 1.0})


def _label(z: complex) -> str:
    z = complex(z)
    if z.imag == 0.0:
        return f"{z.real:g}"
    if z.real == 0.0:
        return f"{z.imag:g}i"
    return f"({z.real:g}{z.imag:+g}i)"


# expression term keys; the trailing slot counts extra w-derivatives
def _inv_key(base: complex, sign: int, power: int, der: int = 0) -> tuple:
    return ("inv", complex(base), int(sign), int(power), int(der))


def _dinv_key(c: complex, sign: int, power: int, der: int = 0) -> tuple:
    return ("dinv", complex(c), int(sign), int(power), int(der))


def _delta_key(shift: complex, der: int = 0) -> tuple:
    return ("delta", complex(shift), int(der))


def _pinv_key(coeffs: tuple, sign: int, xpow: int, der: int = 0) -> tuple:
    return ("pinv", tuple(coeffs), int(sign), int(xpow), int(der))


def _order_key(key: tuple):
    tag = key[0]
    if tag == "inv":
        _, base, sign, power, der = key
        return (0, base.real, base.imag, power, -sign, der)
    if tag == "dinv":
        _, c, sign, power, der = key
        return (1, c.real, c.imag, power, -sign, der)
    if tag == "pinv":
        _, coeffs, sign, xpow, der = key
        flat = tuple(float(x) for c in coeffs for x in (complex(c).real, complex(c).imag))
        return (2, len(coeffs), -sign, xpow, der) + flat
    _, shift, der = key
    return (3, shift.real, shift.imag, der, 0, 0)


def _accumulate(terms: dict, key: tuple, coeff: complex) -> None:
    terms[key] = terms.get(key, 0.0) + coeff


def _key_pretty(key: tuple) -> str:
    tag = key[0]
    mark = lambda s: "+" if s > 0 else "-"  # noqa: E731 - tiny local formatter
    if tag == "inv":
        _, base, sign, power, der = key
        body = f"({_label(base)}+w)^{{-{power}}}_{{{mark(sign)}}}"
    elif tag == "dinv":
        _, c, sign, power, der = key
        body = f"(1-{_label(c)}e_*^{{2iw}})^{{-{power}}}_{{{mark(sign)}}}"
    elif tag == "pinv":
        _, coeffs, sign, xpow, der = key
        head = f"X^{xpow}." if xpow else ""
        body = f"{head}p[{','.join(_label(c) for c in coeffs)}]^{{-1}}_{{{mark(sign)}}}"
    else:
        _, shift, der = key
        body = f"delta_*({_label(shift)}+w)"
        return ("d/dw^%d " % der) + body if der else body
    der = key[-1]
    return (f"d/dw^{der} " + body) if der else body


@dataclass(frozen=True)
class ResolventExpression:
    """Normal-form linear combination of signed inverses and delta atoms.

    Terms are keyed by (kind, base data, sign, power, derivative count) and
    kept sorted by (base, power, sign); products are only ever built through
    the resolvent rules, so a raw same-base +/- pair never appears here.
    Evaluation first rewrites every continuous - inverse as the + inverse
    minus its 2 pi i delta correction, then quadratures term by term.
    """

    tau: TauPoint
    terms: tuple[tuple[tuple, complex], ...]

    @classmethod
    def from_mapping(cls, tau, mapping: dict) -> "ResolventExpression":
        point = _as_point(tau)
        kept = {k: v for k, v in mapping.items() if v != 0.0}
        ordered = tuple(sorted(kept.items(), key=lambda item: _order_key(item[0])))
        return cls(point, ordered)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def mapping(self) -> dict:
        return dict(self.terms)

    def __add__(self, other: "ResolventExpression") -> "ResolventExpression":
        if not np.isclose(self.tau.value, other.tau.value):
            raise DomainViolation("expressions live at a single parameter value")
        merged = self.mapping()
        for key, coeff in other.terms:
            _accumulate(merged, key, coeff)
        return ResolventExpression.from_mapping(self.tau, merged)

    def __sub__(self, other: "ResolventExpression") -> "ResolventExpression":
        return self + other.scaled(-1.0)

    def scaled(self, factor: complex) -> "ResolventExpression":
        return ResolventExpression.from_mapping(
            self.tau, {k: factor * v for k, v in self.terms}
        )

    def rewrite_minus(self) -> "ResolventExpression":
        """Trade continuous - inverses for + inverses plus delta corrections."""
        out: dict = {}
        for key, coeff in self.terms:
            if key[0] == "inv" and key[2] == -1:
                _, base, _, power, der = key
                _accumulate(out, _inv_key(base, 1, power, der), coeff)
                weight = (
                    -2j
                    * math.pi
                    * (-1.0) ** (power - 1)
                    / math.factorial(power - 1)
                )
                _accumulate(out, _delta_key(base, power - 1 + der), coeff * weight)
            else:
                _accumulate(out, key, coeff)
        return ResolventExpression.from_mapping(self.tau, out)

    def evaluate(self, w=None, order: int = 0) -> np.ndarray:
        w = _grid(w)
        value = self.tau.value
        total = np.zeros(w.shape, dtype=complex)
        for key, coeff in self.rewrite_minus().terms:
            tag = key[0]
            if tag == "inv":
                _, base, sign, power, der = key
                total += coeff * _half_line_jet(base, sign, power, value, w, order + der)
            elif tag == "delta":
                _, shift, der = key
                gep = DeltaElement(shift).gep(value).nth_derivative(order + der)
                total += coeff * gep(w)
            elif tag == "dinv":
                _, c, sign, power, der = key
                series = inverse_discrete(c, sign, self.tau, power=power)
                total += coeff * series.values(w, order + der)
            else:
                raise DomainViolation(
                    "trig-polynomial inverses evaluate only through their "
                    "factored form"
                )
        return total

    def pretty(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for key, coeff in self.terms:
            parts.append(f"{_label(coeff)}*{_key_pretty(key)}")
        return " + ".join(parts)


def inverse_linear(a: complex, sign: int, tau) -> ResolventExpression:
    """The signed inverse of a + w as a one-term expression.

    Either sign gives a two-sided star inverse; the two disagree by the
    delta term reported by ``sign_difference_delta``.
    """
    point = _as_point(tau)
    _right_half(point)
    element = InverseElement(complex(a), int(sign), 1, "continuous")
    return element.as_expression(point)


def sign_difference_delta(a: complex, tau) -> GEPElement:
    """Closed form of (a+w)^{-1}_+ - (a+w)^{-1}_-, namely 2 pi i delta_*(a+w)."""
    value = _right_half(tau)
    return DeltaElement(complex(a)).gep(value).scaled(2j * math.pi)


def imaginary_axis_inverse(alpha: complex, axis: int, tau) -> JetFunction:
    """Jet of (alpha + axis i w)^{-1} from the real half-line integral.

    The defining integral int_{-inf}^0 e^{t alpha} e_*^{t axis i w} dt uses a
    plain (not squared) substitution, so it is an independent crosscheck of
    the rotated identity (-i alpha + w)^{-1}_+ = i (alpha + i w)^{-1}_+.
    The sign label of the result matches the axis orientation.
    """
    if axis not in (1, -1):
        raise DomainViolation("axis orientation must be +1 or -1")
    value = _right_half(tau)
    alpha = complex(alpha)

    def jet(w, order: int = 0) -> np.ndarray:
        w = _grid(w)
        # t = -u: integrand exp(-u alpha - u^2 tau/4 - axis i u w)
        lin = max(0.0, float(np.max((-alpha - 1j * axis * w).real)))
        cap = 2.0 * (lin + math.sqrt(lin * lin + value.real * _TAIL)) / value.real

        def integrand(u: np.ndarray) -> np.ndarray:
            t = (-u).astype(complex)
            body = np.exp(
                -t[:, None] ** 2 * value / 4.0
                + np.outer(t, alpha + 1j * axis * w)
            )
            factor = (1j * axis * t) ** order if order else np.ones_like(t)
            return factor[:, None] * body

        return tanh_sinh(integrand, 0.0, cap)

    return jet


def star_apply(coeffs: Sequence[complex], jet: JetFunction, tau, w) -> np.ndarray:
    """Left star multiplication of a jet by an ordinary polynomial.

    ``coeffs`` are ascending in w; the product is the finite series
    sum_k (tau/2)^k/k! p^(k)(w) jet(w, k), exact in k because p is
    polynomial.  The star product is commutative, so this is also the
    right product.
    """
    value = as_tau(tau)
    w = _grid(w)
    poly = np.polynomial.Polynomial([complex(c) for c in coeffs])
    total = np.zeros(w.shape, dtype=complex)
    for k in range(len(poly.coef)):
        total += (value / 2.0) ** k / math.factorial(k) * poly.deriv(k)(w) * jet(w, k)
    return total


# ---------------------------------------------------------------------------
# resolvent products


def _distinct_base_product(
    alpha: complex, s1: int, k1: int, beta: complex, s2: int, k2: int, tau: TauPoint
) -> ResolventExpression:
    # Leibniz expansion of the partial-fraction seed under d^k/da^k d^l/db^l
    k, l = k1 - 1, k2 - 1
    s = beta - alpha
    pref = (-1.0) ** k / (math.factorial(k) * math.factorial(l))
    terms: dict = {}
    for i in range(k + 1):
        coeff = (
            pref
            * math.comb(k, i)
            * (-1.0) ** i
            * math.factorial(i)
            * math.factorial(k + l - i)
            * s ** (-(k + l - i + 1))
        )
        _accumulate(terms, _inv_key(alpha, s1, i + 1), coeff)
    for j in range(l + 1):
        coeff = (
            -pref
            * math.comb(l, j)
            * math.factorial(j)
            * math.factorial(k + l - j)
            * s ** (-(k + l - j + 1))
        )
        _accumulate(terms, _inv_key(beta, s2, j + 1), coeff)
    return ResolventExpression.from_mapping(tau, terms)


def resolvent_product(
    x: InverseElement, y: InverseElement, tau
) -> ResolventExpression:
    """Star product of two signed inverses, reduced to normal form.

    Distinct bases reduce by partial fractions with each summand keeping
    its own sign; a common base adds powers when the signs agree and has
    no finite reduction when they differ, because the would-be product of
    the geometric tails diverges term by term.
    """
    point = _as_point(tau)
    if x.kind != y.kind or x.kind not in ("continuous", "discrete"):
        raise DomainViolation("resolvent rules pair inverses of a common kind")
    same_base = x.base == y.base
    if same_base and x.sign != y.sign:
        raise DivergentProduct(
            f"{x.pretty()} * {y.pretty()} diverges: opposite signs on one base"
        )
    if same_base:
        merged = InverseElement(x.base, x.sign, x.power + y.power, x.kind)
        return merged.as_expression(point)
    if x.kind == "continuous":
        return _distinct_base_product(
            x.base, x.sign, x.power, y.base, y.sign, y.power, point
        )
    if x.power != 1 or y.power != 1:
        raise DomainViolation(
            "discrete resolvent reduction is defined for first powers; "
            "differentiate the base rule for higher ones"
        )
    u = 1.0 / (x.base - y.base)
    terms: dict = {}
    _accumulate(terms, _dinv_key(x.base, x.sign, 1), u)
    _accumulate(terms, _dinv_key(y.base, y.sign, 1), -u)
    return ResolventExpression.from_mapping(point, terms)


# ---------------------------------------------------------------------------
# delta interactions


def delta_product_rules(x, y, tau) -> ResolventExpression:
    """Star product rules between delta atoms and signed inverses.

    Two deltas at distinct shifts multiply to zero; at a common shift the
    square is undefined (the Gaussian pairing diverges).  An inverse eats a
    delta through the eigenvalue relation (a+w) * delta_*(b+w) =
    (a-b) delta_*(b+w), so the signed inverse contributes (a-b)^{-power}.
    """
    point = _as_point(tau)
    if isinstance(x, DeltaElement) and isinstance(y, DeltaElement):
        if complex(x.shift) == complex(y.shift):
            raise UndefinedProduct("delta atoms at one point have no star square")
        return ResolventExpression.from_mapping(point, {})
    if isinstance(x, InverseElement) and isinstance(y, InverseElement):
        return resolvent_product(x, y, point)
    if isinstance(y, InverseElement):
        x, y = y, x
    if not (isinstance(x, InverseElement) and isinstance(y, DeltaElement)):
        raise DomainViolation("arguments must be inverse elements or delta atoms")
    if x.kind != "continuous":
        raise DomainViolation("delta reduction pairs a continuous inverse")
    gap = complex(x.base) - complex(y.shift)
    if gap == 0.0:
        raise DivergentProduct(
            "the delta sits on the base's own zero eigenvalue; the product "
            "diverges"
        )
    coeff = gap ** (-x.power)
    return ResolventExpression.from_mapping(point, {_delta_key(y.shift): coeff})


def delta_pair_pointwise_norm(
    alpha: complex, beta: complex, tau
) -> tuple[float, float]:
    """Sup of |delta_*(alpha+w) delta_*(beta+w)| on the real line, with bound.

    The pointwise Gaussian product peaks at w = -(alpha+beta)/2, giving the
    envelope |exp(-(alpha-beta)^2/(2 tau))| / (pi |tau|); its smallness is
    what lets the zero product coexist with associativity.
    """
    value = _right_half(tau)
    g1 = DeltaElement(complex(alpha)).gep(value)
    g2 = DeltaElement(complex(beta)).gep(value)
    w = np.linspace(-8.0, 8.0, 641).astype(complex)
    sup = float(np.max(np.abs(g1(w) * g2(w))))
    gap = complex(alpha) - complex(beta)
    bound = abs(cmath.exp(-gap * gap / (2.0 * value))) / (math.pi * abs(value))
    return sup, bound


@dataclass(frozen=True)
class AssociativityGuard:
    """Witness that w * delta products associate only through delta * delta = 0."""

    left_scalar: complex
    right_scalar: complex
    eigenvalue_residual: float
    product_is_zero: bool


def delta_associativity_guard(a: complex, b: complex, tau) -> AssociativityGuard:
    """Check the two association orders of w * delta_a * delta_b.

    Grouping w with either atom first scales it by -a or -b; the orders
    agree only because the remaining delta pair multiplies to zero, which
    is the advertised near-miss of associativity in the delta sector.
    """
    value = _right_half(tau)
    w_poly = GEPElement.polynomial((0.0, 1.0))
    residual = 0.0
    for shift in (a, b):
        atom = DeltaElement(complex(shift)).gep(value)
        product = star_product_poly(w_poly, atom, value)
        residual = max(residual, product.coefficient_distance(atom.scaled(-shift)))
    zero = delta_product_rules(
        DeltaElement(complex(a)), DeltaElement(complex(b)), tau
    ).is_zero
    return AssociativityGuard(-complex(a), -complex(b), residual, zero)


def eigenvalue_rule_residual(
    alpha: complex, lam: complex, tau, w=None
) -> float:
    """Relative residual of (alpha+w)^{-1}_+ * delta_*(alpha-lam+w) = delta/lam.

    Star-multiplying the half-line integrand against the delta collapses it
    exactly to delta_*(alpha-lam+w) e^{it lam}, so the + integral converges
    precisely when Im lam < 0 and the product scales the atom by 1/lam.
    """
    lam = complex(lam)
    if lam.imag >= 0.0:
        raise DomainViolation("the + eigenvalue relation needs Im lam < 0")
    value = _right_half(tau)
    w = _grid(w)
    atom = DeltaElement(complex(alpha) - lam).gep(value)(w)
    cap = _TAIL / abs(lam.imag)

    def integrand(u: np.ndarray) -> np.ndarray:
        return np.exp(-1j * u.astype(complex) * lam)

    scalar = 1j * oscillatory_panels(
        integrand, 0.0, cap, total_phase=cap * abs(lam.real), n_points=20
    )
    lhs = scalar * atom
    rhs = atom / lam
    scale = float(np.max(np.abs(rhs)))
    return float(np.max(np.abs(lhs - rhs))) / max(scale, 1e-300)


# ---------------------------------------------------------------------------
# discrete inverses


@dataclass(frozen=True)
class DiscreteInverse:
    """Certified truncation of a geometric series in e_*^{2iw}.

    ``entries`` lists (n, coefficient) for coefficient e_*^{2niw}; the tail
    beyond the recorded truncation is below the construction tolerance on
    the recorded window.
    """

    c: complex
    sign: int
    power: int
    tau: TauPoint
    truncation: int
    entries: tuple[tuple[int, complex], ...]
    window: tuple[float, float]

    def atom(self, n: int) -> GEPElement:
        return GEPElement(
            cmath.exp(-float(n * n) * self.tau.value), 0.0, 2j * n, (1.0,)
        )

    def values(self, w=None, order: int = 0) -> np.ndarray:
        w = _grid(w)
        total = np.zeros(w.shape, dtype=complex)
        for n, coeff in self.entries:
            factor = (2j * n) ** order if order else 1.0
            total += coeff * factor * self.atom(n)(w)
        return total

    def __call__(self, w) -> np.ndarray:
        return self.values(w)


def _one_sided_truncation(bound: Callable[[int], float], tol: float) -> int:
    best = math.inf
    for n in range(1, 4000):
        b = bound(n)
        if 4.0 * b < tol and b <= best:
            return n - 1
        best = min(best, b)
    raise TruncationNotConverged("geometric tail did not certify below tolerance")


def inverse_discrete(
    c: complex,
    sign: int,
    tau,
    power: int = 1,
    tol: float = 1e-10,
    window: tuple[float, float] = (math.pi, 1.0),
) -> DiscreteInverse:
    """Signed inverse of (1 - c e_*^{2iw})^power as a certified series.

    The + inverse expands in nonnegative powers of e_*^{2iw} and the -
    inverse in negative ones; the n-th atom carries exp(-n^2 tau), so any
    Re tau > 0 certifies a Gaussian tail.  Re tau = 0 is rejected: the
    series has the unit circle of nomes as a natural boundary, so there is
    nothing to continue to.
    """
    if sign not in (1, -1):
        raise DomainViolation("sign must be +1 or -1")
    if power < 1:
        raise DomainViolation("power must be a positive integer")
    point = _as_point(tau)
    try:
        value = _right_half(point)
    except DomainViolation as exc:
        raise DomainViolation(
            "the nome series stops at its natural boundary Re tau = 0"
        ) from exc
    c = complex(c)
    if c == 0.0 and sign == -1:
        raise DomainViolation("the - series needs an invertible coefficient")
    growth = 2.0 * window[1]
    re = value.real
    mag = abs(c)

    if sign == 1:

        def bound(n: int) -> float:
            body = -float(n * n) * re + growth * n + n * math.log(mag) if mag else -math.inf
            comb = (n + 1.0) ** (power - 1)
            return comb * math.exp(body) if body > -700 else 0.0

        cutoff = _one_sided_truncation(bound, tol)
        entries = tuple(
            (n, math.comb(n + power - 1, power - 1) * c**n)
            for n in range(cutoff + 1)
        )
    else:
        # multiplying by the base slides the far edge up to power-1 steps
        # toward zero; certify against the worst slid position
        def bound(m: int) -> float:
            n = m + power - 1
            body = (
                -float(m * m) * re
                + growth * m
                + (power - 1 - n) * math.log(mag)
            )
            comb = float(n) ** (power - 1) if n else 1.0
            return comb * math.exp(body) if body > -700 else 0.0

        cutoff = _one_sided_truncation(bound, tol)
        entries = tuple(
            (-m, (-1.0) ** power * math.comb(m - 1, power - 1) * c ** (-m))
            for m in range(power, power + cutoff + 1)
        )
    return DiscreteInverse(c, sign, power, point, cutoff, entries, window)


def discrete_base_residual(inv: DiscreteInverse, w=None) -> float:
    """Sup of |(1 - c e_*^{2iw})^power * series - 1| on the grid.

    Multiplying by the base is exact index shifting (the exponential law),
    so the residual is precisely the telescoped tail edge.
    """
    w = _grid(w)
    coeffs = dict(inv.entries)
    for _ in range(inv.power):
        shifted: dict = {}
        for n, coeff in coeffs.items():
            _accumulate(shifted, n, coeff)
            _accumulate(shifted, n + 1, -inv.c * coeff)
        coeffs = shifted
    _accumulate(coeffs, 0, -1.0)
    total = np.zeros(w.shape, dtype=complex)
    for n, coeff in coeffs.items():
        if coeff != 0.0:
            total += coeff * inv.atom(n)(w)
    return float(np.max(np.abs(total)))


def theta3_split_residual(a: complex, tau, w=None, tol: float = 1e-11) -> float:
    """Sup distance between the signed-series difference and theta_3(a + w)."""
    w = _grid(w)
    c = cmath.exp(2j * complex(a))
    plus = inverse_discrete(c, 1, tau, tol=tol)
    minus = inverse_discrete(c, -1, tau, tol=tol)
    split = plus.values(w) - minus.values(w)
    series = theta(3, a, tau, tol=tol)
    return float(np.max(np.abs(split - series(w))))


@dataclass(frozen=True)
class OddExponentialSeries:
    """Certified series over odd star exponentials e_*^{kiw}."""

    kind: str
    sign: int
    tau: TauPoint
    truncation: int
    entries: tuple[tuple[int, complex], ...]

    def values(self, w=None, order: int = 0) -> np.ndarray:
        w = _grid(w)
        value = self.tau.value
        total = np.zeros(w.shape, dtype=complex)
        for k, coeff in self.entries:
            factor = (1j * k) ** order if order else 1.0
            scale = cmath.exp(-float(k * k) * value / 4.0)
            total += coeff * factor * scale * np.exp(1j * k * w)
        return total

    def __call__(self, w) -> np.ndarray:
        return self.values(w)


def _odd_series(
    kind: str,
    sign: int,
    tau,
    coeff_of: Callable[[int], complex],
    orient: int,
    tol: float,
    window: tuple[float, float],
) -> OddExponentialSeries:
    point = _as_point(tau)
    value = _right_half(point)
    growth = window[1]

    def bound(n: int) -> float:
        k = 2 * n + 1
        body = -float(k * k) * value.real / 4.0 + k * growth
        return 2.0 * math.exp(body) if body > -700 else 0.0

    cutoff = _one_sided_truncation(bound, tol)
    entries = tuple((orient * (2 * n + 1), coeff_of(n)) for n in range(cutoff + 1))
    return OddExponentialSeries(kind, sign, point, cutoff, entries)


def cos_star_inverse(
    sign: int,
    tau,
    tol: float = 1e-10,
    window: tuple[float, float] = (math.pi, 1.0),
) -> OddExponentialSeries:
    """Signed inverse of cos_* w: alternating odd exponentials, one per sign.

    The + series climbs e_*^{(2n+1)iw} and the - series descends; their
    difference reproduces 2i theta_1(w).
    """
    if sign not in (1, -1):
        raise DomainViolation("sign must be +1 or -1")
    return _odd_series(
        "cos", sign, tau, lambda n: 2.0 * (-1.0) ** n, sign, tol, window
    )


def sin_star_inverse(
    sign: int,
    tau,
    tol: float = 1e-10,
    window: tuple[float, float] = (math.pi, 1.0),
) -> OddExponentialSeries:
    """Signed inverse of sin_* w; the sign difference reproduces 2i theta_2(w)."""
    if sign not in (1, -1):
        raise DomainViolation("sign must be +1 or -1")
    coeff = 2j if sign == 1 else -2j
    return _odd_series("sin", sign, tau, lambda n: coeff, -sign, tol, window)


def trig_inverse_base_residual(series: OddExponentialSeries, w=None) -> float:
    """Sup of |base * series - 1| with the base applied by exact index shifts."""
    w = _grid(w)
    value = series.tau.value
    shifted: dict = {}
    for k, coeff in series.entries:
        if series.kind == "cos":
            _accumulate(shifted, k + 1, coeff / 2.0)
            _accumulate(shifted, k - 1, coeff / 2.0)
        else:
            _accumulate(shifted, k + 1, coeff / 2j)
            _accumulate(shifted, k - 1, -coeff / 2j)
    _accumulate(shifted, 0, -1.0)
    total = np.zeros(w.shape, dtype=complex)
    for k, coeff in shifted.items():
        if coeff != 0.0:
            total += coeff * cmath.exp(-float(k * k) * value / 4.0) * np.exp(1j * k * w)
    return float(np.max(np.abs(total)))


def trig_inverse_theta_residual(kind: str, tau, w=None, tol: float = 1e-11) -> float:
    """Sup distance between the signed difference and 2i theta_1 or 2i theta_2."""
    if kind not in ("cos", "sin"):
        raise DomainViolation("kind must be 'cos' or 'sin'")
    w = _grid(w)
    build = cos_star_inverse if kind == "cos" else sin_star_inverse
    split = build(1, tau, tol=tol).values(w) - build(-1, tau, tol=tol).values(w)
    index = 1 if kind == "cos" else 2
    target = 2j * theta(index, 0.0, tau, tol=tol)(w)
    return float(np.max(np.abs(split - target)))


# ---------------------------------------------------------------------------
# vanishing products


def _shared_root_guard(alpha: complex, beta: complex) -> complex:
    s = alpha - beta
    if abs(s) <= 1e-14 * (abs(alpha) + abs(beta)):
        raise ResultantZero("the two discrete bases share a root")
    return s


def vanishing_check(
    a: complex, b: complex, tau, w=None
) -> tuple[ResolventExpression, float]:
    """theta_3(a+w) * theta_3(b+w) through the resolvent rule, plus residual.

    Each factor splits as the signed-inverse difference of 1 - e^{2ia}X in
    X = e_*^{2iw}; the four pairwise products reduce by the first-power
    rule and the eight summands cancel syntactically whenever a - b is not
    a period, which is the vanishing of the theta product.
    """
    point = _as_point(tau)
    _right_half(point)
    alpha = cmath.exp(2j * complex(a))
    beta = cmath.exp(2j * complex(b))
    u = 1.0 / _shared_root_guard(alpha, beta)
    terms: dict = {}
    for s1 in (1, -1):
        for s2 in (1, -1):
            weight = float(s1 * s2)
            _accumulate(terms, _dinv_key(alpha, s1, 1), weight * u)
            _accumulate(terms, _dinv_key(beta, s2, 1), -weight * u)
    expr = ResolventExpression.from_mapping(point, terms)
    residual = 0.0 if expr.is_zero else float(np.max(np.abs(expr.evaluate(w))))
    return expr, residual


def theta_derivative_vanishing(
    a: complex, b: complex, tau
) -> tuple[ResolventExpression, float]:
    """Shift-derivative image of the vanishing product, still syntactically zero.

    Differentiating theta_3(a+w) * theta_3(b+w) = 0 in a keeps only the
    first factor's derivative, so theta_3'(a+w) * theta_3(b+w) = 0 on its
    own; adding the b-image gives the w-derivative Leibniz corollary.
    """
    point = _as_point(tau)
    _right_half(point)
    alpha = cmath.exp(2j * complex(a))
    beta = cmath.exp(2j * complex(b))
    u = 1.0 / _shared_root_guard(alpha, beta)
    dalpha = 2j * alpha
    terms: dict = {}
    # one pass per Leibniz line, so paired +/- contributions meet adjacently
    # and cancel without rounding
    for s1 in (1, -1):
        for s2 in (1, -1):
            weight = float(s1 * s2) * dalpha
            # d/da of u (A - B): the u' part ...
            _accumulate(terms, _dinv_key(alpha, s1, 1), -weight * u * u)
            _accumulate(terms, _dinv_key(beta, s2, 1), weight * u * u)
    for s1 in (1, -1):
        for s2 in (1, -1):
            weight = float(s1 * s2) * dalpha
            # ... and dA/dalpha = (A^2 - A)/alpha
            _accumulate(terms, _dinv_key(alpha, s1, 2), weight * u / alpha)
            _accumulate(terms, _dinv_key(alpha, s1, 1), -weight * u / alpha)
    expr = ResolventExpression.from_mapping(point, terms)
    residual = 0.0 if expr.is_zero else float(np.max(np.abs(expr.evaluate())))
    return expr, residual


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(
    num: list[Fraction], den: list[Fraction]
) -> tuple[list[Fraction], list[Fraction]]:
    num = list(num)
    quot = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    while len(num) >= len(den):
        factor = num[-1] / den[-1]
        shift = len(num) - len(den)
        quot[shift] = factor
        for i, d in enumerate(den):
            num[shift + i] -= factor * d
        _poly_trim(num)
        if not num:
            break
    return quot, num


def _poly_xgcd(
    p: list[Fraction], q: list[Fraction]
) -> tuple[list[Fraction], list[Fraction], list[Fraction]]:
    # returns (g, s, t) with s p + t q = g
    def combine(u, v, quot):
        out = list(u)
        prod = [Fraction(0)] * (len(quot) + len(v) - 1) if quot and v else []
        for i, qc in enumerate(quot):
            for j, vc in enumerate(v):
                prod[i + j] += qc * vc
        width = max(len(out), len(prod))
        out += [Fraction(0)] * (width - len(out))
        for i, pc in enumerate(prod):
            out[i] -= pc
        return _poly_trim(out)

    r0, r1 = _poly_trim(list(p)), _poly_trim(list(q))
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        quot, rem = _poly_divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, combine(s0, s1, quot)
        t0, t1 = t1, combine(t0, t1, quot)
    return r0, s0, t0


def bezout_vanishing(
    p: Sequence, q: Sequence, tau
) -> tuple[ResolventExpression, float]:
    """Vanishing of the signed-difference product for coprime trig polynomials.

    For coprime p, q in X = e_*^{2iw} with a p + b q = 1, the product of
    signed inverses is declared by partial fractions as b p^{-1} + a q^{-1},
    each summand keeping its factor's sign.  The difference elements
    p^{-1}_+ - p^{-1}_- then multiply to zero by pure sign bookkeeping.
    Coefficients must be rational; a shared root raises ResultantZero.
    """
    point = _as_point(tau)
    _right_half(point)
    pf = _poly_trim([Fraction(x) for x in p])
    qf = _poly_trim([Fraction(x) for x in q])
    if len(pf) < 2 or len(qf) < 2:
        raise DomainViolation("both polynomials must be nonconstant")
    g, s, t = _poly_xgcd(pf, qf)
    if len(g) != 1:
        raise ResultantZero("the polynomials share a root, so the rule degenerates")
    unit = g[0]
    a_coeffs = [complex(x / unit) for x in s]
    b_coeffs = [complex(x / unit) for x in t]
    p_key = tuple(complex(x) for x in pf)
    q_key = tuple(complex(x) for x in qf)
    terms: dict = {}
    for s1 in (1, -1):
        for s2 in (1, -1):
            weight = float(s1 * s2)
            for m, coeff in enumerate(b_coeffs):
                _accumulate(terms, _pinv_key(p_key, s1, m), weight * coeff)
            for m, coeff in enumerate(a_coeffs):
                _accumulate(terms, _pinv_key(q_key, s2, m), weight * coeff)
    expr = ResolventExpression.from_mapping(point, terms)
    residual = 0.0 if expr.is_zero else math.inf
    return expr, residual


# ---------------------------------------------------------------------------
# star polynomial inverses


def _series_inverse(h: np.ndarray, length: int) -> np.ndarray:
    out = np.zeros(length, dtype=complex)
    out[0] = 1.0 / h[0]
    for n in range(1, length):
        acc = 0.0
        for j in range(1, n + 1):
            if j < len(h):
                acc += h[j] * out[n - j]
        out[n] = -acc / h[0]
    return out


def poly_star_inverse(p, sign: int, tau) -> ResolventExpression:
    """Signed inverse of a star polynomial by factoring and partial fractions.

    Star polynomials multiply like ordinary ones in the generator, so the
    inverse is the classical partial-fraction expansion with every pole
    replaced by the signed inverse of its linear factor.  All summands
    take the requested sign.
    """
    if sign not in (1, -1):
        raise DomainViolation("sign must be +1 or -1")
    point = _as_point(tau)
    _right_half(point)
    if not isinstance(p, StarPolynomial):
        p = StarPolynomial(tuple(complex(c) for c in p))
    if p.degree < 1:
        raise DomainViolation("the polynomial must be nonconstant")
    fact: StarFactorization = star_factorize(p)
    terms: dict = {}
    for shift, mult in fact.factors:
        cofactor = np.polynomial.Polynomial([complex(fact.lead)])
        for other, m2 in fact.factors:
            if other == shift:
                continue
            cofactor = cofactor * np.polynomial.Polynomial([other - shift, 1.0]) ** m2
        local = _series_inverse(cofactor.coef.astype(complex), mult)
        for d in range(mult):
            _accumulate(terms, _inv_key(shift, sign, mult - d), complex(local[d]))
    return ResolventExpression.from_mapping(point, terms)


# ---------------------------------------------------------------------------
# the quadratic sum


def quadratic_sum_inverse(a: float, tau) -> tuple[JetFunction, JetFunction]:
    """Two independent inverses of a^2 + w*w for real a > 0.

    The first integrates (1/a) e^{at} cos_*(tw) over the left half line,
    which is the signed partial-fraction route through a +- iw; the second
    flows the constant through the quadratic heat kernel, picking up the
    (1 - t tau)^{-1/2} amplitude.  Both are two-sided inverses; they differ
    by a combination of the deltas at w = +-ia, which
    ``quadratic_difference_fit`` extracts.
    """
    a = float(a)
    if a <= 0.0:
        raise DomainViolation("the coefficient a must be a positive real")
    value = _right_half(tau)

    def first(w, order: int = 0) -> np.ndarray:
        w = _grid(w)
        drift = max(0.0, float(np.max(np.abs(w.imag))))
        cap = _u_cap(value.real, drift)

        def integrand(u: np.ndarray) -> np.ndarray:
            t = (-u * u).astype(complex)
            it = 1j * t
            gauss = np.exp(-(t**2) * value / 4.0 + a * t)
            plus = (it**order)[:, None] * np.exp(np.outer(it, w)) if order else np.exp(np.outer(it, w))
            minus = ((-it) ** order)[:, None] * np.exp(-np.outer(it, w)) if order else np.exp(-np.outer(it, w))
            return (gauss * 2.0 * u / a)[:, None] * (plus + minus) / 2.0

        return tanh_sinh(integrand, 0.0, cap)

    def second(w, order: int = 0) -> np.ndarray:
        if order > 2:
            raise DomainViolation("the heat-flow route carries jets up to order 2")
        w = _grid(w)
        spread = float(np.max(np.abs(w))) ** 2 / value.real
        cap = (_TAIL + spread) / (a * a)

        def integrand(u: np.ndarray) -> np.ndarray:
            uu = u.astype(complex)[:, None]
            den = 1.0 + uu * value
            body = np.exp(-(a * a) * uu - uu * w[None, :] ** 2 / den) / np.sqrt(den)
            if order == 0:
                return body
            d1 = -2.0 * uu * w[None, :] / den
            if order == 1:
                return d1 * body
            return (d1 * d1 - 2.0 * uu / den) * body

        return tanh_sinh(integrand, 0.0, cap)

    return first, second


def quadratic_difference_fit(
    a: float, tau, w=None
) -> tuple[complex, complex, float]:
    """Least-squares weights of the two deltas inside the route difference."""
    value = _right_half(tau)
    w = _grid(w)
    first, second = quadratic_sum_inverse(a, tau)
    diff = first(w) - second(w)
    basis = np.stack(
        [DeltaElement(1j * a).gep(value)(w), DeltaElement(-1j * a).gep(value)(w)],
        axis=1,
    )
    coeffs, *_ = np.linalg.lstsq(basis, diff, rcond=None)
    residual = float(np.max(np.abs(diff - basis @ coeffs)))
    return complex(coeffs[0]), complex(coeffs[1]), residual


# ---------------------------------------------------------------------------
# constant variation


def constant_variation_inverse(a: complex, constant: complex, tau) -> JetFunction:
    """Inverse of a + w by varying the constant of the annihilated Gaussian.

    The particular solution is an explicit unit-interval integral; adding
    any multiple of exp(-(a+w)^2/tau) keeps the inverse property because
    that Gaussian star-annihilates the base.  Jets of orders one and two
    come from the first-order equation itself, so the only quadrature
    error in (a+w) * g - 1 is the one already made in g.  The panel count
    follows the peak of the integrand, which stays modest for tau on or
    near the real and imaginary axes; strongly oblique tau push the peak
    exponentially above the answer and double precision caps the
    attainable accuracy at peak times machine epsilon.
    """
    value = as_tau(tau)
    if value == 0.0:
        raise DomainViolation("the construction needs tau != 0")
    a = complex(a)
    constant = complex(constant)

    def jet(w, order: int = 0) -> np.ndarray:
        if order > 2:
            raise DomainViolation("jets are carried up to order 2")
        w = _grid(w)

        def exponent(t: np.ndarray) -> np.ndarray:
            tt = t.astype(complex)[:, None]
            return ((a + w[None, :] * tt) ** 2 - (a + w[None, :]) ** 2) / value

        peak = float(np.max(exponent(np.linspace(0.0, 1.0, 33)).real))
        panels = max(12, int(1.5 * peak) + 1)
        body = gauss_legendre_panels(
            lambda t: np.exp(exponent(t)), 0.0, 1.0, n_points=24, n_panels=panels
        )
        g0 = (2.0 / value) * w * body + constant * np.exp(-((a + w) ** 2) / value)
        if order == 0:
            return g0
        g1 = 2.0 / value - (2.0 * (a + w) / value) * g0
        if order == 1:
            return g1
        return -(2.0 / value) * g0 - (2.0 * (a + w) / value) * g1

    return jet


def constant_variation_gap(a: complex, tau, w=None) -> float:
    """Sup of the homogeneous Gaussian: the witness separating the two
    association orders of h * (a + w) * g."""
    value = as_tau(tau)
    w = _grid(w)
    return float(np.max(np.abs(np.exp(-((complex(a) + w) ** 2) / value))))


# ---------------------------------------------------------------------------
# the sin integral inverse


def integral_inverse_sin(tau, a_shift: float = 0.0) -> JetFunction:
    """Jet of the real-line exponential average inverting sin_*(pi w) / pi.

    The defining integral runs e_*^{tw}/(1 + e^t) over the real line and
    needs Re tau < 0 for the Gaussian amplitude to decay.  The contour may
    slide to Im t = a strictly between the poles at odd multiples of pi;
    the value does not move, which ``sin_integral_shift_residual`` checks.
    """
    value = _left_half(tau)
    a_shift = float(a_shift)
    if not -math.pi < a_shift < math.pi:
        raise DomainViolation("the shifted contour must stay between the poles")
    re = -value.real

    def jet(w, order: int = 0) -> np.ndarray:
        w = _grid(w)
        reach = float(np.max(np.abs(w.real))) + 1.0
        cap = (2.0 / re) * (reach + math.sqrt(reach * reach + re * _TAIL))
        gap = min(math.pi - abs(a_shift), 1.0)
        panels = max(
            8,
            int(cap * 1.5 / gap) + 1,
            int(cap * cap * abs(value.imag) / (4.0 * math.pi)) + 1,
        )

        def integrand(t: np.ndarray) -> np.ndarray:
            z = t.astype(complex) + 1j * a_shift
            body = np.exp(z[:, None] ** 2 * value / 4.0 + np.outer(z, w))
            body /= (1.0 + np.exp(z))[:, None]
            if order:
                body = (z**order)[:, None] * body
            return body

        return gauss_legendre_panels(integrand, -cap, cap, n_points=16, n_panels=panels)

    return jet


def sin_residual_check(f: JetFunction, tau, w=None) -> float:
    """Sup of |(1/pi) sin_*(pi w) * f - 1| using the exact translation rule.

    A pure exponential star-multiplies by translating its partner, so the
    product needs f only at w +- i pi tau/2; no quadrature is layered on
    top of the one inside f.  When tau leaves the negative real axis the
    shift acquires a real part that drags w into the Gaussian growth
    region of f, where the defining integrand peaks far above the value
    it cancels down to; the residual then reflects double-precision
    conditioning rather than a defect in f.
    """
    value = _left_half(tau)
    w = _grid(w)
    pref = cmath.exp(-math.pi**2 * value / 4.0) / 2j
    shift = 1j * math.pi * value / 2.0
    product = pref * (
        np.exp(1j * math.pi * w) * f(w + shift)
        - np.exp(-1j * math.pi * w) * f(w - shift)
    )
    return float(np.max(np.abs(product / math.pi - 1.0)))


def sin_integral_shift_residual(tau, a_shift: float, w=None) -> float:
    """Sup distance between the base contour and the shifted one."""
    w = _grid(w)
    base = integral_inverse_sin(tau)
    moved = integral_inverse_sin(tau, a_shift=a_shift)
    return float(np.max(np.abs(base(w) - moved(w))))


def sin_integral_reflection_residual(tau, w=None) -> float:
    """Sup of |f(w) - f(1 - w)|; the reflection is exact by t -> -t."""
    w = _grid(w)
    f = integral_inverse_sin(tau)
    return float(np.max(np.abs(f(w) - f(1.0 - w))))


def sin_integral_pair_sum_residual(tau, w=None) -> float:
    """Sup of |f(w) + f(w+1) - full Gaussian average|.

    Adding the unit translate cancels the 1/(1+e^t) weight, leaving
    int e_*^{tw} dt = 2 sqrt(pi/(-tau)) exp(-w^2/tau) in closed form.
    """
    value = _left_half(tau)
    w = _grid(w)
    f = integral_inverse_sin(tau)
    closed = 2.0 * cmath.sqrt(math.pi / -value) * np.exp(-(w**2) / value)
    return float(np.max(np.abs(f(w) + f(w + 1.0) - closed)))


# ---------------------------------------------------------------------------
# lifts of heaviside, sgn and the principal values


def _delta_kernel(x: np.ndarray, w: np.ndarray, value: complex, order: int) -> np.ndarray:
    """d^order/dw^order of the Gaussian delta kernel at shift x - w."""
    y = x.astype(complex)[:, None] - w[None, :]
    base = np.exp(-(y**2) / value) / cmath.sqrt(math.pi * value)
    if order == 0:
        return base
    poly = np.polynomial.Polynomial([1.0])
    step = np.polynomial.Polynomial([0.0, 2.0 / value])
    for _ in range(order):
        poly = step * poly - poly.deriv()
    return poly(y) * base


def _lift_reach(value: complex, w: np.ndarray) -> float:
    rate = (1.0 / value).real
    skew = abs((1.0 / value).imag)
    imax = float(np.max(np.abs(w.imag)))
    return (skew * imax + math.sqrt(_TAIL / rate)) / max(rate, 1e-300) * rate + imax + math.sqrt(_TAIL / rate) + 1.0


def heaviside_lift(side: int, tau) -> JetFunction:
    """Jet of the lifted half-line indicator: int over side x > 0 of the kernel.

    side=+1 lifts the Heaviside step, side=-1 its mirror; the two sum to
    the constant 1 and each reproduces itself under the lifted product.
    The first derivative is exactly the delta at zero, by parts.
    """
    if side not in (1, -1):
        raise DomainViolation("side must be +1 or -1")
    value = _right_half(tau)

    def jet(w, order: int = 0) -> np.ndarray:
        w = _grid(w)
        reach = max(1.0, float(np.max(side * w.real))) + _lift_reach(value, w)

        def integrand(x: np.ndarray) -> np.ndarray:
            return _delta_kernel(x, w, value, order)

        lo, hi = (0.0, reach) if side == 1 else (-reach, 0.0)
        panels = max(8, int(reach * 2.0))
        return gauss_legendre_panels(integrand, lo, hi, n_points=24, n_panels=panels)

    return jet


def sgn_lift(tau) -> JetFunction:
    """Jet of the lifted sign function, the difference of the two steps."""
    plus = heaviside_lift(1, tau)
    minus = heaviside_lift(-1, tau)

    def jet(w, order: int = 0) -> np.ndarray:
        return plus(w, order) - minus(w, order)

    return jet


def symbol_lift_product(
    s1: Callable[[np.ndarray], np.ndarray],
    s2: Callable[[np.ndarray], np.ndarray],
    tau,
) -> JetFunction:
    """Lifted star product of two real symbols: lift of their pointwise product.

    This is the defining product for lifted distributions; the integration
    window covers the kernel's Gaussian mass and splits at the origin so
    jump discontinuities land on panel edges.
    """
    value = _right_half(tau)

    def jet(w, order: int = 0) -> np.ndarray:
        w = _grid(w)
        reach = max(1.0, float(np.max(np.abs(w.real)))) + _lift_reach(value, w)

        def integrand(x: np.ndarray) -> np.ndarray:
            weight = (np.asarray(s1(x)) * np.asarray(s2(x))).astype(complex)
            return weight[:, None] * _delta_kernel(x, w, value, order)

        panels = max(8, int(reach * 2.0))
        left = gauss_legendre_panels(integrand, -reach, 0.0, n_points=24, n_panels=panels)
        right = gauss_legendre_panels(integrand, 0.0, reach, n_points=24, n_panels=panels)
        return left + right

    return jet


def vp_lift(tau, w=None) -> np.ndarray:
    """Principal-value lift of 1/x against the delta kernel.

    The odd combination (g(x) - g(-x))/x is regular at zero; writing it
    through sinh keeps the cancellation exact, and the result matches the
    average of the two signed inverses of w.
    """
    value = _right_half(tau)
    w = _grid(w)
    reach = max(1.0, float(np.max(np.abs(w.real)))) + _lift_reach(value, w)
    norm = 2.0 / cmath.sqrt(math.pi * value)

    def integrand(x: np.ndarray) -> np.ndarray:
        xx = x.astype(complex)[:, None]
        body = np.exp(-(xx**2 + w[None, :] ** 2) / value)
        z = 2.0 * xx * w[None, :] / value
        return norm * body * (2.0 * w[None, :] / value) * _sinhc(z)

    return tanh_sinh(integrand, 0.0, reach)


def _sinhc(z: np.ndarray) -> np.ndarray:
    small = np.abs(z) < 1e-4
    safe = np.where(small, 1.0, z)
    zz = z * z
    series = 1.0 + zz / 6.0 * (1.0 + zz / 20.0)
    return np.where(small, series, np.sinh(safe) / safe)


def _cexpm1(u: np.ndarray) -> np.ndarray:
    small = np.abs(u) < 1e-4
    safe = np.where(small, 0.0, u)
    series = u * (1.0 + u / 2.0 * (1.0 + u / 3.0 * (1.0 + u / 4.0)))
    return np.where(small, series, np.exp(safe) - 1.0)


def pf_lift(tau, w=None) -> np.ndarray:
    """Hadamard finite-part lift of 1/x^2 against the delta kernel.

    The even combination (g(x) + g(-x) - 2g(0))/x^2 has two regimes.
    Near zero all three Gaussians agree to O(x^2), so the difference is
    assembled from sinh^2 and expm1 pieces that carry the cancellation
    analytically.  Away from zero the plain difference is benign, and
    past the quadrature cutoff only the -g(0)/x^2 piece survives; its
    exact tail integral -g(0)/reach is added in closed form.
    """
    value = _right_half(tau)
    w = _grid(w)
    reach = max(1.0, float(np.max(np.abs(w.real)))) + _lift_reach(value, w)
    norm = 2.0 / cmath.sqrt(math.pi * value)
    center = norm * np.exp(-(w**2) / value)

    def integrand(x: np.ndarray) -> np.ndarray:
        # tanh-sinh nodes can underflow onto the endpoint; the combination
        # is regular there, so nudging x off zero costs nothing measurable
        xx = np.maximum(x, 1e-8).astype(complex)[:, None]
        z = 2.0 * xx * w[None, :] / value
        inner = (np.abs(z) < 1.0) & (np.abs(xx**2 / value) < 1.0)
        zs = np.where(inner, z, 0.0)
        us = np.where(inner, -(xx**2) / value, 0.0)
        bracket = 2.0 * np.sinh(zs / 2.0) ** 2 + _cexpm1(us) * np.cosh(zs)
        series = center[None, :] * bracket
        plain = (
            0.5 * norm * np.exp(-((xx - w[None, :]) ** 2) / value)
            + 0.5 * norm * np.exp(-((xx + w[None, :]) ** 2) / value)
            - center[None, :]
        )
        return np.where(inner, series, plain) / xx**2

    return tanh_sinh(integrand, 0.0, reach) - center / reach


# ---------------------------------------------------------------------------
# contours and decay


def cauchy_contour_residual(
    symbol: Callable[[complex], complex],
    center: complex,
    half_side: float,
    sign: int,
    tau,
    w=None,
) -> float:
    """Sup of the square contour integral of symbol(z) (z+w)^{-1}_sign dz.

    The signed inverse is entire in its shift (the half-line integrand is
    dominated by the Gaussian), so the integral of any entire symbol
    against it vanishes: there is no pole inside to collect.
    """
    value = _right_half(tau)
    w = window_grid(9, 3) if w is None else _grid(w)
    nodes, weights = np.polynomial.legendre.leggauss(20)
    corners = [
        center + half_side * (1.0 - 1j),
        center + half_side * (1.0 + 1j),
        center + half_side * (-1.0 + 1j),
        center + half_side * (-1.0 - 1j),
    ]
    total = np.zeros(w.shape, dtype=complex)
    for z0, z1 in zip(corners, corners[1:] + corners[:1]):
        mid = 0.5 * (z0 + z1)
        half = 0.5 * (z1 - z0)
        for node, weight in zip(nodes, weights):
            z = mid + half * node
            total += weight * half * symbol(z) * _half_line_jet(z, sign, 1, value, w)
    return float(np.max(np.abs(total)))


def inverse_decay_profile(
    k: int, ell: int, sign: int, tau, radii: Sequence[float], w=None
) -> np.ndarray:
    """Samples of R^k sup_w |d^ell (z+w)^{-1}_sign| along z = -sign i R.

    Into its convergence half-plane the signed inverse decays like the
    classical resolvent: the ell-th derivative falls off as R^{-ell-1}, so
    the profile decreases for k <= ell and stays bounded at k = ell + 1.
    """
    value = _right_half(tau)
    w = window_grid(9, 3) if w is None else _grid(w)
    out = []
    for radius in radii:
        z = -1j * sign * float(radius)
        vals = _half_line_jet(z, sign, 1, value, w, order=ell)
        out.append(float(radius) ** k * float(np.max(np.abs(vals))))
    return np.asarray(out)
