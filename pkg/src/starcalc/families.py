"""Generating-function families under the deformed product.

Hermite, Legendre, Laguerre and Bessel families defined by transporting
the classical generating functions through the star calculus, plus the
half-series algebra in powers of e_*^{iw} used for the Euler and
Bernoulli identities.

Exact coefficient arithmetic (Fraction-valued, the parameter kept
symbolic) backs every identity that closes in finitely many terms;
quadrature enters only for orthogonality integrals and the Legendre
moment representation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import GEPElement, Terms, as_tau, evaluate_terms, star_product_exact
from .errors import DomainViolation, NonUnit, TruncationNotConverged
from .quadrature import real_line_gaussian, tanh_sinh
from .ratpoly import RatPoly2, RatSeries, bernoulli_numbers, euler_numbers


@dataclass(frozen=True)
class PolynomialFamily:
    """One member of a named polynomial family at a fixed parameter.

    ``variable`` records the evaluation variable: "w" for Hermite and
    Legendre, "x" (= w^2) for Laguerre.  Coefficients ascend by degree.
    """

    kind: str
    n: int
    tau: complex
    coeffs: tuple[complex, ...]
    variable: str = "w"

    def __call__(self, points):
        points = np.asarray(points, dtype=complex)
        acc = np.zeros_like(points)
        for c in reversed(self.coeffs):
            acc = acc * points + c
        return acc

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def csv_rows(self) -> list[tuple[int, int, float, float]]:
        return [(self.n, k, c.real, c.imag) for k, c in enumerate(self.coeffs)]


# ---------------------------------------------------------------------------
# Hermite


def hermite_normalized_exact(n: int) -> RatPoly2:
    """h_n = H_n / sqrt(2)^n as an exact polynomial in (w, tau).

    The normalization strips the only irrational factor, so the
    coefficient of tau^p w^(n-2p) is the rational n!/(p! (n-2p)! 4^p).
    """
    if n < 0:
        raise DomainViolation("degree must be nonnegative")
    coeffs = {}
    for p in range(n // 2 + 1):
        coeffs[(n - 2 * p, p)] = Fraction(
            math.factorial(n), math.factorial(p) * math.factorial(n - 2 * p) * 4**p
        )
    return RatPoly2(coeffs)


def hermite(n: int, tau) -> PolynomialFamily:
    """H_n(w, tau): coefficients of the n-th derivative at 0 of e_*^{sqrt(2) t w}."""
    tau = as_tau(tau)
    h = hermite_normalized_exact(n)
    raw = h.u_coefficients(tau)
    raw += [0j] * (n + 1 - len(raw))
    factor = 2.0 ** (n / 2.0)
    return PolynomialFamily("hermite", n, tau, tuple(factor * c for c in raw))


def hermite_binomial_convolution(n: int) -> RatPoly2:
    """sum_k (n choose k) h_k * h_{n-k}, exact in (w, tau).

    The generating identity gives h_k * h_l = h_{k+l}, so the sum equals
    2^n h_n (each of the 2^n binomial weights contributes one h_n).
    """
    acc = RatPoly2()
    for k in range(n + 1):
        prod = star_product_exact(hermite_normalized_exact(k), hermite_normalized_exact(n - k))
        acc = acc + prod * Fraction(math.comb(n, k))
    return acc


def hermite_orthogonality(n: int, m: int, tau, tol: float = 1e-12) -> complex:
    """Quadrature of the weighted pairing int exp(w^2/tau) H_n H_m dw over R.

    Requires Re tau < 0 so the weight decays.  The value is 0 off the
    diagonal and n! (-tau)^n sqrt(-tau) sqrt(pi) on it.
    """
    tau = as_tau(tau)
    if tau.real >= 0:
        raise DomainViolation("orthogonality weight needs Re tau < 0")
    hn, hm = hermite(n, tau), hermite(m, tau)
    decay = -(1.0 / tau).real
    phase = abs((1.0 / tau).imag)

    def f(w: np.ndarray) -> np.ndarray:
        w = w.astype(complex)
        return np.exp(w * w / tau) * hn(w) * hm(w)

    val = real_line_gaussian(f, decay, tol=tol, phase_rate=phase * 10.0)
    return complex(val)


# ---------------------------------------------------------------------------
# Legendre


def legendre_moment(r: int, tol: float = 1e-13) -> float:
    """int_0^inf s^(r-1/2) e^(-s) ds by quadrature, with s = u^2.

    (The analytic value is Gamma(r + 1/2); tests compare against it, the
    implementation never assumes it.)
    """
    if r < 0:
        raise DomainViolation("moment order must be nonnegative")
    peak = math.sqrt(max(r, 1))
    umax = 1.5 * peak + 9.0

    def f(u: np.ndarray) -> np.ndarray:
        return 2.0 * u ** (2 * r) * np.exp(-u * u)

    return float(np.real(tanh_sinh(f, 0.0, umax, tol=tol)))


def legendre(n: int, tau, tol: float = 1e-13) -> PolynomialFamily:
    """P_n(w, tau) from the Laplace-integral generating function.

    The t-expansion of pi^(-1/2) int_0^inf s^(-1/2) e^{tau s^2 t^2}
    e^{-s(1 - 2tw + t^2)} ds is differentiated symbolically under the
    integral; each resulting s-moment is evaluated by quadrature.
    Requires Re tau < 0 (convergence region of the generating integral).
    """
    tau = as_tau(tau)
    if tau.real >= 0:
        raise DomainViolation("generating integral needs Re tau < 0")
    moments: dict[int, float] = {}

    def mom(r: int) -> float:
        if r not in moments:
            moments[r] = legendre_moment(r, tol)
        return moments[r]

    coeffs = [0j] * (n + 1)
    for i in range(n // 2 + 1):
        for k in range((n - 2 * i) // 2 + 1):
            j = n - 2 * i - 2 * k
            weight = (
                tau**i
                * 2.0**j
                * (-1.0) ** k
                / (
                    math.factorial(i) * math.factorial(j) * math.factorial(k)
                )
            )
            coeffs[j] += weight * mom(2 * i + j + k)
    scale = 1.0 / math.sqrt(math.pi)
    return PolynomialFamily("legendre", n, tau, tuple(scale * c for c in coeffs))


def legendre_orthogonality(m: int, n: int, tau, n_points: int = 48) -> complex:
    """int_{-1}^{1} P_m P_n dw by Gauss-Legendre (exact for polynomials)."""
    pm, pn = legendre(m, tau), legendre(n, tau)
    x, wts = np.polynomial.legendre.leggauss(max(n_points, m + n + 2))
    return complex(np.sum(wts * pm(x) * pn(x)))


# ---------------------------------------------------------------------------
# Bessel


def _bessel_nodes(a: complex, tau: complex, order: int, n: int):
    count = max(128, 4 * (order + abs(n)))
    s = 2.0 * math.pi * np.arange(count) / count
    lin = 1j * a * np.sin(s)
    scales = np.exp(tau * lin * lin / 4.0)
    return s, lin, scales


def bessel(n: int, a: complex, tau, order: int = 24) -> Terms:
    """J_n(aw, tau): n-th Fourier coefficient of the swung star exponential.

    Returns the trapezoidal discretization as a sum of pure exponentials
    (coefficient, element); the rule is spectrally accurate in the node
    count derived from ``order``.  Raises TruncationNotConverged when the
    high-frequency tail of the sampled data is not negligible on the
    standard window.
    """
    tau = as_tau(tau)
    a = complex(a)
    if order < abs(n):
        raise DomainViolation("truncation order must cover |n|")
    s, lin, scales = _bessel_nodes(a, tau, order, n)
    count = len(s)

    # trapezoid aliasing estimate: the actual integrand's Fourier tail at
    # the corners of the standard evaluation window
    worst = 0.0
    for w_ref in (3.3, -3.3, 3.0 + 1.0j, -3.0 + 1.0j):
        spect = np.abs(np.fft.fft(scales * np.exp(lin * w_ref))) / count
        band = float(np.max(spect[count // 3 : 2 * count // 3 + 1]))
        worst = max(worst, band / max(1.0, float(np.max(spect))))
    if worst > 1e-9:
        raise TruncationNotConverged(f"Fourier tail {worst:.2e} at order {order}")

    phase = np.exp(-1j * n * s) / count
    return tuple(
        (complex(phase[k] * scales[k]), GEPElement(1.0, 0.0, lin[k], (1.0,)))
        for k in range(count)
    )


def bessel_sum_residual(a: complex, tau, order: int, w) -> float:
    """Deviation of the bilateral sum sum_{|n| <= order} J_n(aw, tau) from 1."""
    tau = as_tau(tau)
    w = np.asarray(w, dtype=complex)
    total = np.zeros_like(w)
    for n in range(-order, order + 1):
        total = total + evaluate_terms(bessel(n, a, tau, order), w)
    return float(np.max(np.abs(total - 1.0)))


def bessel_addition_residual(n: int, a: complex, b: complex, tau, order: int, w) -> float:
    """Residual of J_n((a+b)w,*) = sum_m J_m(aw,*) * J_{n-m}(bw,*).

    The full bilateral sum is evaluated in Fourier space: the star
    product is taken samplewise in the angle (each factor is a pure
    exponential, so the product is exact), and the n-th coefficient of
    the product series is the convolution the identity asserts.
    """
    tau = as_tau(tau)
    w = np.asarray(w, dtype=complex)
    s, lin_a, scale_a = _bessel_nodes(a, tau, order, n)
    _, lin_b, scale_b = _bessel_nodes(b, tau, order, n)
    cross = scale_a * scale_b * np.exp(lin_a * lin_b * tau / 2.0)
    vals = cross[:, None] * np.exp((lin_a + lin_b)[:, None] * w[None, :])
    coeff_n = np.exp(-1j * n * s)[None, :] @ vals / len(s)
    direct = evaluate_terms(bessel(n, a + b, tau, order), w)
    return float(np.max(np.abs(coeff_n[0] - direct)))


def star_product_terms(terms_a: Terms, terms_b: Terms, tau, w) -> np.ndarray:
    """Evaluate (sum_p a_p e^{c_p w}) * (sum_q b_q e^{d_q w}) on a grid.

    All cross products follow the exact pure-exponential rule; used for
    the literal truncated form of the addition formula.
    """
    tau = as_tau(tau)
    w = np.asarray(w, dtype=complex)
    ca = np.array([g.lin for _c, g in terms_a])
    cb = np.array([g.lin for _c, g in terms_b])
    aa = np.array([c * g.scale * g.poly[0] for c, g in terms_a])
    bb = np.array([c * g.scale * g.poly[0] for c, g in terms_b])
    acc = np.zeros_like(w)
    for p in range(len(ca)):
        inner = bb * np.exp(ca[p] * cb * tau / 2.0)
        acc = acc + aa[p] * np.exp(ca[p] * w) * (inner @ np.exp(cb[:, None] * w[None, :]))
    return acc


# ---------------------------------------------------------------------------
# Laguerre


def laguerre_exact(n: int) -> RatPoly2:
    """L_n(x, tau) = d^n/dt^n at 0 of (1-t tau)^(-1/2) exp(t x/(1-t tau)).

    Exact in (x, tau): the coefficient of x^m tau^(j+r) collects
    (2j choose j)/4^j from the root factor and (m+r-1 choose r) from the
    geometric expansion of (1-t tau)^(-m), all times n!/m!.
    """
    if n < 0:
        raise DomainViolation("degree must be nonnegative")
    coeffs: dict[tuple[int, int], Fraction] = {}
    for j in range(n + 1):
        root = Fraction(math.comb(2 * j, j), 4**j)
        for m in range(n - j + 1):
            r = n - j - m
            if m == 0 and r > 0:
                continue  # (1 - t tau)^0 contributes no tau powers
            geo = Fraction(math.comb(m + r - 1, r)) if m > 0 else Fraction(1)
            key = (m, j + r)
            val = root * geo * Fraction(math.factorial(n), math.factorial(m))
            coeffs[key] = coeffs.get(key, Fraction(0)) + val
    return RatPoly2(coeffs)


def laguerre(n: int, tau) -> PolynomialFamily:
    """L_n in the variable x = w^2 at a numeric parameter."""
    tau = as_tau(tau)
    raw = laguerre_exact(n).u_coefficients(tau)
    raw += [0j] * (n + 1 - len(raw))
    return PolynomialFamily("laguerre", n, tau, tuple(raw), variable="x")


def _half_integer_product(lo: int, hi: int) -> Fraction:
    """(lo + 1/2)(lo + 3/2)...(hi - 1/2) as a Fraction: prod_{j=lo+1}^{hi} (j + 1/2)."""
    acc = Fraction(1)
    for j in range(lo + 1, hi + 1):
        acc *= Fraction(2 * j + 1, 2)
    return acc


def laguerre_rodrigues(n: int, tau) -> PolynomialFamily:
    """The companion family generated by the derivative formula.

    R_n(x, tau) = tau^(-n)/n! x^(-1/2) e^(-x/tau) d^n/dx^n (x^(n+1/2) e^(x/tau)):
    the family the n-fold integration-by-parts orthogonality argument
    acts on.  It is distinct from the generating-function family
    ``laguerre`` (which is orthogonal against the x^(-1/2) weight); this
    one is orthogonal against x^(1/2) e^(x/tau) with diagonal
    Gamma(n+3/2) (-tau)^(3/2) tau^(-2n) / n!.
    """
    tau = as_tau(tau)
    coeffs = []
    for k in range(n + 1):
        frac = _half_integer_product(k, n) / (
            math.factorial(n - k) * math.factorial(k)
        )
        coeffs.append(complex(frac) * tau ** (-(n + k)))
    return PolynomialFamily("laguerre_rodrigues", n, tau, tuple(coeffs), variable="x")


def _laguerre_diag(n: int, tau: complex) -> complex:
    # Gamma(n + 3/2) = sqrt(pi) (2n+1)!! / 2^(n+1)
    dfact = 1.0
    for j in range(1, 2 * n + 2, 2):
        dfact *= j
    gamma_val = math.sqrt(math.pi) * dfact / 2.0 ** (n + 1)
    return gamma_val * (-tau) ** 1.5 * tau ** (-2 * n) / math.factorial(n)


def _half_line_pairing(poly_vals, tau: complex, power: float, tol: float) -> complex:
    """int_0^inf x^power e^(x/tau) f(x) dx with x = u^2 regularization."""
    lam = -(1.0 / tau).real
    if lam <= 0:
        raise DomainViolation("pairing weight needs Re tau < 0")
    umax = math.sqrt(math.log(1e22) / lam) + 6.0

    def f(u: np.ndarray) -> np.ndarray:
        x = (u * u).astype(complex)
        # x^power dx = 2 u^(2 power + 1) du, finite at u = 0 for power >= -1/2
        return 2.0 * u ** (2.0 * power + 1.0) * np.exp(x / tau) * poly_vals(x)

    return complex(tanh_sinh(f, 0.0, umax, tol=tol))


def laguerre_orthogonality(n: int, m: int, tau, tol: float = 1e-12) -> complex:
    """Weighted pairing of the Rodrigues companions, normalized to delta.

    Quadrature of int_0^inf x^(1/2) e^(x/tau) R_n R_m dx divided by the
    closed-form diagonal; equals delta_{n,m} within quadrature error.
    Requires Re tau < 0.
    """
    tau = as_tau(tau)
    if tau.real >= 0:
        raise DomainViolation("orthogonality weight needs Re tau < 0")
    rn, rm = laguerre_rodrigues(n, tau), laguerre_rodrigues(m, tau)
    val = _half_line_pairing(lambda x: rn(x) * rm(x), tau, 0.5, tol)
    norm = cmath.sqrt(_laguerre_diag(n, tau)) * cmath.sqrt(_laguerre_diag(m, tau))
    return val / norm


def laguerre_gen_orthogonality(n: int, m: int, tau, tol: float = 1e-12) -> complex:
    """Pairing of the generating-function family against its own weight.

    int_0^inf x^(-1/2) e^(x/tau) L_n L_m dx normalized by the diagonal
    n! Gamma(n+1/2) (-tau)^(1/2) tau^(2n); equals delta_{n,m}.
    """
    tau = as_tau(tau)
    if tau.real >= 0:
        raise DomainViolation("orthogonality weight needs Re tau < 0")
    ln, lm = laguerre(n, tau), laguerre(m, tau)
    val = _half_line_pairing(lambda x: ln(x) * lm(x), tau, -0.5, tol)

    def diag(k: int) -> complex:
        dfact = 1.0
        for j in range(1, 2 * k, 2):
            dfact *= j
        gamma_val = math.sqrt(math.pi) * dfact / 2.0**k  # Gamma(k + 1/2)
        return math.factorial(k) * gamma_val * (-tau) ** 0.5 * tau ** (2 * k)

    return val / cmath.sqrt(diag(n) * diag(m))


# ---------------------------------------------------------------------------
# half-series algebra


@dataclass(frozen=True)
class HalfSeries:
    """Truncated one-sided series in the unit z = e_*^{iw}.

    ``lead`` is the z-power factored out front, ``series`` the Fraction
    coefficient tail.  Products and inverses stay within the truncation
    order; the known-radius flag marks elements whose expression
    converges for Re tau > 0.
    """

    lead: int
    series: RatSeries
    known_radius: bool = True

    @classmethod
    def from_coeffs(cls, coeffs: Sequence, order: int, lead: int = 0) -> "HalfSeries":
        return cls(lead, RatSeries(coeffs, order))

    @classmethod
    def one(cls, order: int) -> "HalfSeries":
        return cls(0, RatSeries.one(order))

    @property
    def order(self) -> int:
        return self.series.order

    def coefficient(self, power: int) -> Fraction:
        """Coefficient of z^power in the full element."""
        idx = power - self.lead
        if idx < 0 or idx > self.order:
            return Fraction(0)
        return self.series.coeffs[idx]

    def __mul__(self, other: "HalfSeries") -> "HalfSeries":
        return HalfSeries(
            self.lead + other.lead,
            self.series * other.series,
            self.known_radius and other.known_radius,
        )

    def __add__(self, other: "HalfSeries") -> "HalfSeries":
        lead = min(self.lead, other.lead)
        top = min(self.lead + self.order, other.lead + other.order)
        order = top - lead
        out = [
            self.coefficient(lead + k) + other.coefficient(lead + k)
            for k in range(order + 1)
        ]
        return HalfSeries(lead, RatSeries(out, order), self.known_radius and other.known_radius)

    def __sub__(self, other: "HalfSeries") -> "HalfSeries":
        return self + other.scale(-1)

    def scale(self, factor) -> "HalfSeries":
        return HalfSeries(self.lead, self.series * Fraction(factor), self.known_radius)

    def normalized(self) -> "HalfSeries":
        """Factor leading zero coefficients into the lead power."""
        coeffs = self.series.coeffs
        shift = 0
        while shift <= self.order and coeffs[shift] == 0:
            shift += 1
        if shift > self.order:
            raise NonUnit("series is zero to truncation order")
        if shift == 0:
            return self
        return HalfSeries(
            self.lead + shift,
            RatSeries(coeffs[shift:], self.order - shift),
            self.known_radius,
        )

    def inverse(self) -> "HalfSeries":
        norm = self.normalized()
        return HalfSeries(-norm.lead, norm.series.inverse(), norm.known_radius)


def half_series_mul(f: HalfSeries, g: HalfSeries) -> HalfSeries:
    return f * g


def half_series_inverse(f: HalfSeries) -> HalfSeries:
    return f.inverse()


def euler_identity_check(order: int = 20) -> Fraction:
    """Max coefficient residual of the half-series Euler-number identity.

    e_*^{z} (1 + sum 2^k z^k/k!)^{-1} + e_*^{-z} (1 + sum (-2)^k z^k/k!)^{-1}
    = sum E_{2n} z^{2n}/(2n)!, checked in exact rational arithmetic against
    recursion-generated Euler numbers.  Zero on success.
    """
    ez = HalfSeries.from_coeffs(
        [Fraction(1, math.factorial(k)) for k in range(order + 1)], order
    )
    emz = HalfSeries.from_coeffs(
        [Fraction((-1) ** k, math.factorial(k)) for k in range(order + 1)], order
    )
    dp = [Fraction(2**k, math.factorial(k)) for k in range(order + 1)]
    dm = [Fraction((-2) ** k, math.factorial(k)) for k in range(order + 1)]
    dp[0] += 1
    dm[0] += 1
    lhs = ez * HalfSeries.from_coeffs(dp, order).inverse() + emz * HalfSeries.from_coeffs(
        dm, order
    ).inverse()
    evens = euler_numbers(order // 2 + 1)
    residual = Fraction(0)
    for power in range(order + 1):
        expect = (
            evens[power // 2] / math.factorial(power) if power % 2 == 0 else Fraction(0)
        )
        residual = max(residual, abs(lhs.coefficient(power) - expect))
    return residual


def bernoulli_identity_check(order: int = 20) -> Fraction:
    """Max coefficient residual of the half-series Bernoulli-number identity.

    (1/2)(sum z^n/(n+1)!)^{-1} + (1/2)(sum (-z)^n/(n+1)!)^{-1}
    = sum B_{2n} z^{2n}/(2n)!, exact rational; zero on success.
    """
    p = HalfSeries.from_coeffs(
        [Fraction(1, math.factorial(k + 1)) for k in range(order + 1)], order
    )
    m = HalfSeries.from_coeffs(
        [Fraction((-1) ** k, math.factorial(k + 1)) for k in range(order + 1)], order
    )
    lhs = p.inverse().scale(Fraction(1, 2)) + m.inverse().scale(Fraction(1, 2))
    bern = bernoulli_numbers(order + 1)
    residual = Fraction(0)
    for power in range(order + 1):
        expect = (
            bern[power] / math.factorial(power) if power % 2 == 0 else Fraction(0)
        )
        residual = max(residual, abs(lhs.coefficient(power) - expect))
    return residual
