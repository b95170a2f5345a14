"""Theta combs, star-delta elements, periodization, imaginary transform.

Two dual pictures of the same periodic elements: bilateral sums of
linear star exponentials (theta series, convergent for Re tau > 0 with
nome e^{-tau}), and Gaussian delta combs obtained from them by Poisson
summation.  The delta atom is double-valued in the expression parameter
(a Moebius section); orientation is tracked with BranchSheet.

Unit convention: the Fourier integral of a linear star exponential
produces 2 pi times a delta atom, so the comb duals here carry an
explicit 2 pi per atom.  With that unit each theta series equals half
its comb on the nose.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .core import (
    BranchSheet,
    GEPElement,
    TauPoint,
    Terms,
    as_tau,
    continued_sqrt,
    evaluate_terms,
    window_grid,
)
from .errors import DomainViolation, TruncationNotConverged
from .quadrature import real_line_gaussian

# (half-integer stepping, alternating signs, overall prefactor) per index
_INDEX_DATA = {
    1: (True, True, -1j),
    2: (True, False, 1.0 + 0j),
    3: (False, False, 1.0 + 0j),
    4: (False, True, 1.0 + 0j),
}


def _require_right_half(tau) -> complex:
    # angle test for TauPoint: the polar round trip can lift Re tau = 0
    # to a positive rounding residue
    if isinstance(tau, TauPoint):
        if abs(tau.sigma) >= math.pi / 2.0:
            raise DomainViolation(
                "series parameter lies on or beyond the natural boundary Re tau = 0"
            )
        return tau.value
    tau = as_tau(tau)
    if tau.real <= 0:
        raise DomainViolation(
            "series parameter lies on or beyond the natural boundary Re tau = 0"
        )
    return tau


def _bilateral_truncation(
    bound: Callable[[int], float], tol: float, max_terms: int = 512
) -> int:
    """Smallest N with a certified two-sided tail below tol.

    Relies on the Gaussian-dominated term bounds eventually halving with
    each step, which makes 4 * bound(N+1) a rigorous tail majorant.
    """

    def safe(n: int) -> float:
        try:
            return bound(n)
        except OverflowError:
            return math.inf

    previous = safe(1)
    for n in range(1, max_terms):
        current = safe(n + 1)
        if current <= 0.5 * previous and 4.0 * current < tol:
            return n
        previous = current
    raise TruncationNotConverged(f"no certified truncation within {max_terms} terms")


@dataclass(frozen=True)
class ThetaSeries:
    """Truncated bilateral sum of linear star exponentials.

    Terms carry the certified truncation: the omitted tail is below the
    construction tolerance everywhere on the recorded window.
    """

    index: int
    shift: complex
    tau: TauPoint
    truncation: int
    terms: Terms
    window: tuple[float, float]

    def __call__(self, w) -> np.ndarray:
        return evaluate_terms(self.terms, w)

    def csv_rows(self, w_values) -> list[tuple]:
        tau = self.tau.value
        vals = self(np.asarray(w_values, dtype=complex))
        return [
            (self.index, w.real, w.imag, tau.real, tau.imag, v.real, v.imag)
            for w, v in zip(np.asarray(w_values, dtype=complex), vals)
        ]


def theta(
    index: int,
    a: complex,
    tau,
    window: tuple[float, float] = (math.pi, 1.0),
    tol: float = 1e-9,
) -> ThetaSeries:
    """theta_index(a + w) as a certified-truncation sum of exponentials.

    Atom n contributes e^{-k^2 tau/4} e^{ik(a+w)} with k the (2n) or
    (2n+1) stepping of the index, alternating signs included.  Rejects
    Re tau <= 0: the nome series has the unit circle as natural boundary.
    """
    if index not in _INDEX_DATA:
        raise DomainViolation("index must be 1, 2, 3 or 4")
    value = _require_right_half(tau if isinstance(tau, TauPoint) else as_tau(tau))
    point = tau if isinstance(tau, TauPoint) else TauPoint.from_value(value)
    a = complex(a)
    half, alternating, prefactor = _INDEX_DATA[index]
    growth = window[1] + abs(a.imag)

    def wavenumber(n: int) -> int:
        return 2 * n + 1 if half else 2 * n

    def bound(n: int) -> float:
        out = 0.0
        for m in (n, -n):
            k = wavenumber(m)
            out = max(
                out, math.exp(-(k * k) * value.real / 4.0 + abs(k) * growth)
            )
        return out

    cutoff = _bilateral_truncation(bound, tol)
    terms = []
    for n in range(-cutoff, cutoff + 1):
        k = wavenumber(n)
        coeff = prefactor * ((-1.0) ** n if alternating else 1.0)
        scale = cmath.exp(-(k * k) * value / 4.0 + 1j * k * a)
        terms.append((coeff, GEPElement(scale, 0.0, 1j * k, (1.0,))))
    return ThetaSeries(index, a, point, cutoff, tuple(terms), window)


# ---------------------------------------------------------------------------
# star-delta


@dataclass(frozen=True)
class DeltaElement:
    """Gaussian delta atom with tracked square-root orientation."""

    shift: complex
    orientation: BranchSheet = field(default_factory=BranchSheet)

    def gep(self, tau) -> GEPElement:
        tau = as_tau(tau)
        _require_right_half(tau)
        a = complex(self.shift)
        scale = (
            self.orientation.sign
            / cmath.sqrt(math.pi * tau)
            * cmath.exp(-a * a / tau)
        )
        return GEPElement(scale, -1.0 / tau, -2.0 * a / tau, (1.0,))

    def __call__(self, tau, w) -> np.ndarray:
        return self.gep(tau)(np.asarray(w, dtype=complex))


def star_delta(a: complex, tau) -> tuple[DeltaElement, GEPElement]:
    """The delta atom at shift a and its expression at the given parameter.

    The closed form (pi tau)^(-1/2) e^{-(a+w)^2/tau} requires the joint
    chart to be admissible; with the rotation angle at zero this is
    exactly Re tau > 0.
    """
    point = tau if isinstance(tau, TauPoint) else TauPoint.from_value(as_tau(tau))
    point.require_admissible()
    atom = DeltaElement(complex(a))
    return atom, atom.gep(point.value)


def delta_quadrature(a: complex, tau, w, tol: float = 1e-11) -> np.ndarray:
    """(1/2 pi) int e^{-t^2 tau/4} e^{it(a+w)} dt, the defining integral."""
    tau = _require_right_half(as_tau(tau))
    w = np.atleast_1d(np.asarray(w, dtype=complex))
    a = complex(a)

    def f(t: np.ndarray) -> np.ndarray:
        t = t.astype(complex)
        return np.exp(-t[:, None] ** 2 * tau / 4.0 + 1j * t[:, None] * (a + w[None, :]))

    phase = float(np.max(np.abs(a + w)))
    return real_line_gaussian(f, tau.real / 4.0, tol=tol, phase_rate=phase) / (
        2.0 * math.pi
    )


def annihilator_solution(a: complex, tau) -> GEPElement:
    """The one-dimensional solution space of (a+w) * f = 0: e^{-(a+w)^2/tau}."""
    tau = as_tau(tau)
    a = complex(a)
    return GEPElement(cmath.exp(-a * a / tau), -1.0 / tau, -2.0 * a / tau, (1.0,))


def delta_total_mass(tau, w: complex = 0.0, tol: float = 1e-11) -> complex:
    """int over real x of the delta expression at shift x; equals 1 for all tau."""
    tau = _require_right_half(as_tau(tau))
    w = complex(w)
    root = cmath.sqrt(math.pi * tau)

    def f(x: np.ndarray) -> np.ndarray:
        u = x.astype(complex) + w
        return np.exp(-u * u / tau) / root

    decay = (1.0 / tau).real
    phase = abs((1.0 / tau).imag) * (2.0 * abs(w) + 2.0)
    return complex(real_line_gaussian(f, decay, center=-w.real, tol=tol, phase_rate=phase))


def delta_scaling_residual(lam: float, a: complex, tau) -> float:
    """Residual of delta(lambda(a+w)) = lambda^{-1} delta(a+w) as sections.

    The left side read at parameter tau equals the right side read at
    tau/lambda^2; for negative lambda the comparison is up to the global
    Moebius sign.
    """
    if lam == 0 or lam != lam.real:
        raise DomainViolation("scaling factor must be real and nonzero")
    tau = as_tau(tau)
    a = complex(a)
    lhs = GEPElement(
        1.0 / cmath.sqrt(math.pi * tau) * cmath.exp(-(lam * a) ** 2 / tau),
        -lam * lam / tau,
        -2.0 * lam * lam * a / tau,
        (1.0,),
    )
    _, rhs = star_delta(a, tau / lam**2)
    rhs = rhs.scaled(1.0 / lam)
    return min(
        lhs.coefficient_distance(rhs), lhs.coefficient_distance(rhs.scaled(-1.0))
    )


def delta_monodromy(a: complex, tau, loops: int = 1, samples: int = 96) -> BranchSheet:
    """Continue the delta prefactor around sigma: 0 -> 2 pi loops.

    The circle tau e^{i sigma} stays jointly admissible with the
    compensating rotation theta = -sigma/2; the square-root prefactor
    returns to minus itself after each full loop.
    """
    tau = as_tau(tau)
    if loops == 0:
        return BranchSheet()
    total = 2.0 * math.pi * abs(loops)
    steps = max(samples, 24) * abs(loops)
    path = [tau * cmath.exp(1j * total * k / steps) for k in range(steps + 1)]
    _, sheet = continued_sqrt(path)
    return sheet


# ---------------------------------------------------------------------------
# delta combs


def theta_tilde(
    index: int,
    tau,
    window: tuple[float, float] = (math.pi, 1.0),
    tol: float = 1e-9,
) -> tuple[tuple[complex, DeltaElement], ...]:
    """The delta-comb dual of a theta series, 2 pi per atom.

    Index 3 is the plain comb on pi Z, index 4 its half-period shift,
    indices 1 and 2 the alternating variants; each theta series equals
    half its comb.  (The alternation of the index-1 comb starts at -1 so
    the identity holds on the principal delta sheet.)
    """
    if index not in _INDEX_DATA:
        raise DomainViolation("index must be 1, 2, 3 or 4")
    value = _require_right_half(as_tau(tau))
    offset = math.pi / 2.0 if index in (1, 4) else 0.0
    alternating = index in (1, 2)
    base_sign = -1.0 if index == 1 else 1.0
    grid = window_grid(re_max=window[0], im_max=window[1])

    def atom(n: int) -> DeltaElement:
        return DeltaElement(offset + math.pi * n)

    def coeff(n: int) -> complex:
        sign = (-1.0) ** n if alternating else 1.0
        return 2.0 * math.pi * base_sign * sign

    def bound(n: int) -> float:
        out = 0.0
        for m in (n, -n):
            out = max(out, 2.0 * math.pi * float(np.max(np.abs(atom(m)(value, grid)))))
        return out

    cutoff = _bilateral_truncation(bound, tol)
    return tuple((coeff(n), atom(n)) for n in range(-cutoff, cutoff + 1))


def comb_terms(comb: Sequence[tuple[complex, DeltaElement]], tau) -> Terms:
    """Expression of a delta comb at a parameter, as evaluable terms."""
    tau = as_tau(tau)
    return tuple((c, atom.gep(tau)) for c, atom in comb)


def alpha_determination(index: int, tau, w: complex = 0.0) -> complex:
    """Ratio of a theta series to its comb at one point (1/2 on the nose).

    The default w = 0 works for indices 2, 3, 4; the odd index 1
    vanishes there, so pass any other point for it.
    """
    value = _require_right_half(as_tau(tau))
    series = theta(index, 0.0, value)
    comb = comb_terms(theta_tilde(index, value), value)
    pts = np.array([w], dtype=complex)
    denom = evaluate_terms(comb, pts)[0]
    atom_scale = max(abs(c * gep(pts)[0]) for c, gep in comb)
    if abs(denom) < 1e-9 * atom_scale:
        raise DomainViolation("comb vanishes at the probe point; choose another w")
    return series(pts)[0] / denom


def jacobi_imaginary(tau, tol: float = 1e-11) -> tuple[float, float]:
    """Residuals of the imaginary transformation at parameter tau.

    Returns (grid residual, origin residual) for
    theta_3(w, tau) = sqrt(pi/tau) e^{-w^2/tau} theta_3(pi w/(i tau), pi^2/tau),
    the origin case being the classical theta relation.
    """
    value = _require_right_half(as_tau(tau))
    dual = math.pi**2 / value
    grid = window_grid()
    mapped = math.pi * grid / (1j * value)
    dual_window = (
        float(np.max(np.abs(mapped.real))) + 0.5,
        float(np.max(np.abs(mapped.imag))) + 0.5,
    )
    lhs = theta(3, 0.0, value, tol=tol)(grid)
    dual_series = theta(3, 0.0, dual, window=dual_window, tol=tol)
    rhs = cmath.sqrt(math.pi / value) * np.exp(-grid * grid / value) * dual_series(mapped)
    grid_residual = float(np.max(np.abs(lhs - rhs)))
    origin = abs(
        theta(3, 0.0, value, tol=tol)(np.array([0j]))[0]
        - cmath.sqrt(math.pi / value) * theta(3, 0.0, dual, tol=tol)(np.array([0j]))[0]
    )
    return grid_residual, origin


def periodization_check(a: complex, tau, count: int) -> float:
    """Residual of the Poisson pairing of a delta comb with its series.

    2 pi sum delta(a + 2 pi n + w) against sum e_*^{in(a+w)}, both sides
    truncated at the given count, compared on the standard window.  (The
    2 pi is the Fourier unit of a single atom.)
    """
    value = _require_right_half(as_tau(tau))
    a = complex(a)
    grid = window_grid()
    lhs = np.zeros_like(grid)
    for n in range(-count, count + 1):
        lhs = lhs + 2.0 * math.pi * DeltaElement(a + 2.0 * math.pi * n)(value, grid)
    rhs = np.zeros_like(grid)
    for n in range(-count, count + 1):
        rhs = rhs + cmath.exp(-n * n * value / 4.0 + 1j * n * a) * np.exp(
            1j * n * grid
        )
    return float(np.max(np.abs(lhs - rhs)))


# ---------------------------------------------------------------------------
# periodic lifts


def periodic_lift(
    coeff: Callable[[int], complex],
    tau,
    window: tuple[float, float] = (math.pi, 1.0),
    tol: float = 1e-9,
    max_terms: int = 512,
) -> Terms:
    """sum a_n e_*^{inw} for Fourier data of at most polynomial growth.

    The Gaussian factors e^{-n^2 tau/4} dominate any polynomial
    coefficient growth; the truncation is certified on the window.
    """
    value = _require_right_half(as_tau(tau))
    growth = window[1]

    def bound(n: int) -> float:
        out = 0.0
        for m in (n, -n):
            out = max(
                out,
                abs(coeff(m)) * math.exp(-(m * m) * value.real / 4.0 + abs(m) * growth),
            )
        return out

    cutoff = _bilateral_truncation(bound, tol, max_terms)
    terms = []
    for n in range(-cutoff, cutoff + 1):
        c = complex(coeff(n))
        if c == 0:
            continue
        scale = cmath.exp(-(n * n) * value / 4.0)
        terms.append((c, GEPElement(scale, 0.0, 1j * n, (1.0,))))
    return tuple(terms)


def sawtooth_fourier_coefficient(n: int) -> complex:
    """Fourier coefficient of the 2 pi-periodized identity map on (-pi, pi].

    c_n = i (-1)^n / n for n != 0, zero mean.
    """
    if n == 0:
        return 0j
    return 1j * (-1.0) ** n / n


def sawtooth_square_fourier_coefficient(n: int) -> complex:
    """Fourier coefficient of the periodized square map: 2 (-1)^n / n^2, mean pi^2/3."""
    if n == 0:
        return complex(math.pi**2 / 3.0)
    return complex(2.0 * (-1.0) ** n / (n * n))


# ---------------------------------------------------------------------------
# kernel characterizations


def translation_kernel(count: int) -> tuple[int, np.ndarray]:
    """Kernel of the even-exponential shift minus identity on coefficients.

    Trigonometric polynomials sum c_n e_*^{2inw} are mapped by the
    product with (e_*^{2iw} - 1) to the differences c_{n-1} - c_n; the
    interior equations leave exactly the constant vector, the truncated
    stand-in for the theta-series coefficient profile.
    """
    dim = 2 * count + 1
    rows = []
    for m in range(1, dim):
        row = np.zeros(dim)
        row[m - 1] = 1.0
        row[m] = -1.0
        rows.append(row)
    matrix = np.array(rows)
    _u, s, vt = np.linalg.svd(matrix)
    rank = int(np.sum(s > 1e-12))
    kernel = vt[rank:]
    return kernel.shape[0], kernel
