"""Vectorized quadrature rules shared by the numeric evaluators.

All integrands here are smooth complex-valued functions damped by a
Gaussian factor somewhere, so fixed rules with certified truncation do
better than generic adaptive routines.  Integrands are vectorized: they
receive an array of nodes of shape (n,) and may return shape (n,) or
(n, m) for simultaneous evaluation on an m-point w-grid.

scipy's adaptive Gauss-Kronrod (`quad_vec`) is wrapped for the places
that genuinely want adaptivity.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np
from scipy.integrate import quad_vec

from .errors import QuadratureNonConvergence

Integrand = Callable[[np.ndarray], np.ndarray]


def _tanh_sinh_nodes(level: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights for tanh-sinh on (-1, 1) at the given level."""
    h = 1.0 / 2**level
    # |x| approaches 1 double-exponentially; stop once 1 - |x| ~ 1e-17,
    # using atanh(1 - eps) ~ log(2/eps)/2 to dodge the float rounding at 1
    s_cut = 0.5 * math.log(2.0 / 1e-17)
    kmax = int(math.asinh(s_cut * 2.0 / math.pi) / h) + 1
    k = np.arange(-kmax, kmax + 1)
    u = k * h
    s = 0.5 * math.pi * np.sinh(u)
    x = np.tanh(s)
    w = h * 0.5 * math.pi * np.cosh(u) / np.cosh(s) ** 2
    keep = w > 1e-300
    return x[keep], w[keep]


def tanh_sinh(
    f: Integrand,
    a: float,
    b: float,
    tol: float = 1e-12,
    max_level: int = 11,
) -> np.ndarray:
    """Integrate f over the real segment [a, b] by tanh-sinh doubling."""
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    previous = None
    for level in range(4, max_level + 1):
        x, w = _tanh_sinh_nodes(level)
        vals = np.asarray(f(mid + half * x))
        weights = (half * w).reshape((-1,) + (1,) * (vals.ndim - 1))
        current = np.sum(weights * vals, axis=0)
        if previous is not None:
            err = np.max(np.abs(current - previous))
            scale = max(1.0, float(np.max(np.abs(current))))
            if err <= tol * scale:
                return current
        previous = current
    raise QuadratureNonConvergence(
        f"tanh-sinh on [{a}, {b}] did not reach tol={tol} by level {max_level}"
    )


def gauss_legendre_panels(
    f: Integrand,
    a: float,
    b: float,
    n_points: int = 24,
    n_panels: int = 8,
) -> np.ndarray:
    """Composite Gauss-Legendre rule with equal panels on [a, b]."""
    nodes, weights = np.polynomial.legendre.leggauss(n_points)
    edges = np.linspace(a, b, n_panels + 1)
    total = None
    for left, right in zip(edges[:-1], edges[1:]):
        mid = 0.5 * (left + right)
        half = 0.5 * (right - left)
        vals = np.asarray(f(mid + half * nodes))
        wshape = (half * weights).reshape((-1,) + (1,) * (vals.ndim - 1))
        part = np.sum(wshape * vals, axis=0)
        total = part if total is None else total + part
    return total


def oscillatory_panels(
    f: Integrand,
    a: float,
    b: float,
    total_phase: float,
    n_points: int = 16,
    min_panels: int = 4,
    points_per_period: int = 12,
) -> np.ndarray:
    """Gauss-Legendre panels sized from an oscillation budget.

    ``total_phase`` is an upper bound for the phase swept by the integrand
    over [a, b]; panels are chosen so the rule sees at least
    ``points_per_period`` points per oscillation period.
    """
    periods = abs(total_phase) / (2 * math.pi)
    needed = int(math.ceil(periods * points_per_period / n_points))
    return gauss_legendre_panels(f, a, b, n_points, max(min_panels, needed))


def gaussian_halfwidth(decay: float, tol: float) -> float:
    """Radius R with exp(-decay * R^2) < tol, padded a little."""
    if decay <= 0:
        raise QuadratureNonConvergence("nonpositive Gaussian decay rate")
    return math.sqrt(max(math.log(1.0 / tol), 1.0) / decay) + 1.0


def real_line_gaussian(
    f: Integrand,
    decay: float,
    center: float = 0.0,
    tol: float = 1e-12,
    phase_rate: float = 0.0,
    cutoff: float = 1e-18,
) -> np.ndarray:
    """Integrate f over the real line assuming |f| <= C exp(-decay (t-c)^2).

    ``phase_rate`` bounds |d(arg f)/dt| and only affects the point budget.
    """
    radius = gaussian_halfwidth(decay, cutoff)
    total_phase = phase_rate * 2 * radius + decay * radius**2
    return oscillatory_panels(
        f, center - radius, center + radius, total_phase, n_points=20
    )


def half_line_gaussian(
    f: Integrand,
    quad_decay: float,
    side: int = -1,
    tol: float = 1e-12,
    phase_rate: float = 0.0,
    cutoff: float = 1e-18,
) -> np.ndarray:
    """Integrate f over (-inf, 0] (side=-1) or [0, inf) (side=+1).

    The integrand must carry a factor exp(-quad_decay * t^2).  The
    substitution t = side * u^2 turns the half line into [0, U] with a
    quartic-decay integrand that tanh-sinh resolves quickly.
    """
    if quad_decay <= 0:
        raise QuadratureNonConvergence("half-line integrand lacks Gaussian decay")
    umax = (max(math.log(1.0 / cutoff), 1.0) / quad_decay) ** 0.25 + 0.5

    def substituted(u: np.ndarray) -> np.ndarray:
        t = side * u * u
        vals = np.asarray(f(t))
        jac = (2.0 * u).reshape((-1,) + (1,) * (vals.ndim - 1))
        return jac * vals

    # the substitution squares the phase rate's reach; fold it into the
    # level budget by integrating with a tighter tolerance first
    try:
        return tanh_sinh(substituted, 0.0, umax, tol=tol)
    except QuadratureNonConvergence:
        # strongly oscillatory tails: fall back to panels with a budget
        total_phase = phase_rate * umax**2 + quad_decay * umax**4
        return oscillatory_panels(substituted, 0.0, umax, total_phase, n_points=24)


def adaptive(f: Integrand, a: float, b: float, tol: float = 1e-10) -> np.ndarray:
    """Adaptive Gauss-Kronrod for a scalar-argument complex integrand."""
    result, _err = quad_vec(f, a, b, epsabs=tol, epsrel=tol)
    return result


def trapezoid_periodic(f: Integrand, period: float, n: int) -> np.ndarray:
    """Trapezoidal rule over one period (spectrally accurate)."""
    t = np.arange(n) * (period / n)
    vals = np.asarray(f(t))
    return np.sum(vals, axis=0) * (period / n)
