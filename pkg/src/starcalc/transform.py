"""Distribution lifts, covering integrals, and parallel displacement.

Tempered sources (atomic measures, sampled or analytic slowly increasing
functions, principal-value symbols) are pushed through the Gaussian
kernel (pi tau)^{-1/2} e^{-(x-w)^2/tau} into entire functions of w.  On
top of the lift sit the pointwise-product calculus, star exponentials of
subquadratic phases, the branched covering integrals of e^{is x^ell}
sources, and the joint movement of the rotation and expression angles
that exchanges representatives on the parameter cover.

Evaluators are pure functions of the w grid; nothing here mutates shared
state, so grid evaluations may run concurrently without coordination.
Products of covering elements taken at distinct rotation angles are not
defined and no such operation is exposed.
"""

from __future__ import annotations

import cmath
import csv
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .core import (
    GEPElement,
    TauPoint,
    as_tau,
    star_power,
    window_grid,
)
from .errors import (
    ClassViolation,
    DomainViolation,
    GrowthViolation,
    PathInadmissible,
    QuadratureNonConvergence,
)
from .exponentials import quadratic_star_exponential
from .quadrature import (
    gauss_legendre_panels,
    gaussian_halfwidth,
    half_line_gaussian,
    oscillatory_panels,
)
from .resolvent import star_apply
from .theta import sawtooth_fourier_coefficient

__all__ = [
    "AnalyticSource",
    "AtomicSource",
    "CoveringBranch",
    "CoveringState",
    "DisplacementResult",
    "DistributionLift",
    "LiftEvaluator",
    "LogDerivativeReport",
    "MonodromyReport",
    "NonuniquenessReport",
    "PeriodicKernelReport",
    "RootRotationReport",
    "SampledSource",
    "SymbolSource",
    "covering_evolution_residual",
    "covering_integral",
    "covering_monodromy",
    "covering_theta_relation_residual",
    "delta_pair_residual",
    "discrete_vs_continuous_logderiv",
    "exp_of_inverse",
    "exp_of_inverse_series",
    "formal_star_integration",
    "hyouka_style_bound",
    "inverse_exp_evolution_residual",
    "inverse_exp_group_residual",
    "inverse_from_exp",
    "joint_displacement",
    "lift",
    "lift_product",
    "nonuniqueness_witness",
    "periodic_kernel_rank",
    "point_evaluation_residual",
    "read_sampled_source",
    "rotated_root_integral",
    "star_exp_subquadratic",
    "subquadratic_evolution_residual",
    "subquadratic_exp_law_residual",
    "write_evaluator_csv",
]

_EXP_FLOOR = math.log(1e18)


def _require_right_half(tau) -> complex:
    value = as_tau(tau)
    if value.real <= 0:
        raise DomainViolation("the lift kernel needs Re tau > 0")
    return value


# ---------------------------------------------------------------------------
# source descriptors


@dataclass(frozen=True)
class SampledSource:
    """Function data on a uniform grid with a declared growth envelope.

    The envelope |f(x)| <= exp(C (1 + |x|)^alpha) with alpha < 2
    certifies that the part of the integral beyond the sampled window is
    below the quadrature tolerance; the grid itself carries a composite
    Simpson rule, so the accuracy is fourth order in the spacing.
    """

    x: tuple[float, ...]
    values: tuple[complex, ...]
    growth_alpha: float
    envelope_c: float

    def __post_init__(self) -> None:
        if len(self.x) != len(self.values):
            raise ClassViolation("sample grid and values disagree in length")
        if len(self.x) < 5:
            raise ClassViolation("sampled sources need at least five points")
        steps = np.diff(np.asarray(self.x))
        if steps.min() <= 0 or np.ptp(steps) > 1e-9 * abs(steps[0]):
            raise ClassViolation("sample grid must be uniform and increasing")

    @property
    def spacing(self) -> float:
        return float(self.x[1] - self.x[0])

    def value_at(self, x0: float) -> complex:
        """Four-point Lagrange read-off, matching the Simpson-order error."""
        grid = np.asarray(self.x)
        if not grid[0] <= x0 <= grid[-1]:
            raise ClassViolation("interpolation point outside the sampled window")
        j = int(np.clip(np.searchsorted(grid, x0) - 2, 0, len(grid) - 4))
        xs = grid[j : j + 4]
        out = 0j
        for m in range(4):
            num = np.prod(np.delete(x0 - xs, m))
            den = np.prod(np.delete(xs[m] - xs, m))
            out += complex(self.values[j + m]) * num / den
        return out


@dataclass(frozen=True)
class AtomicSource:
    """Finite sum of weighted point masses."""

    points: tuple[complex, ...]
    weights: tuple[complex, ...]

    def __post_init__(self) -> None:
        if len(self.points) != len(self.weights):
            raise ClassViolation("atom points and weights disagree in length")


@dataclass(frozen=True)
class SymbolSource:
    """Principal-value or finite-part power symbol on the real line."""

    kind: str
    power: int = 1

    def __post_init__(self) -> None:
        if self.kind not in ("vp", "pf"):
            raise ClassViolation("symbol kind must be 'vp' or 'pf'")


@dataclass(frozen=True)
class AnalyticSource:
    """Callable source with a declared subgaussian growth envelope.

    ``oscillation`` bounds |d arg f / dx| and feeds the panel budget of
    the quadrature; leave it at zero for monotone-phase sources.
    ``feature_scale`` is the smallest length on which f varies (for
    instance the distance of a complex pole from the line); panels never
    exceed it, so sharp but smooth features stay resolved.
    """

    fn: Callable[[np.ndarray], np.ndarray]
    growth_alpha: float
    envelope_c: float = 1.0
    oscillation: float = 0.0
    feature_scale: float = math.inf


Source = "SampledSource | AtomicSource | SymbolSource | AnalyticSource"


@dataclass(frozen=True)
class DistributionLift:
    """A declared source together with the expression parameter."""

    source: object
    tau: complex

    def __post_init__(self) -> None:
        _require_right_half(self.tau)


def read_sampled_source(csv_path: str, header_path: str) -> SampledSource:
    """Load a sampled source from rows (x, Re f, Im f) plus a JSON header."""
    with open(header_path, encoding="utf-8") as fh:
        header = json.load(fh)
    xs: list[float] = []
    vals: list[complex] = []
    with open(csv_path, newline="", encoding="utf-8") as fh:
        for row in csv.reader(fh):
            if not row or row[0].lstrip().startswith("#"):
                continue
            xs.append(float(row[0]))
            vals.append(complex(float(row[1]), float(row[2])))
    return SampledSource(
        tuple(xs),
        tuple(vals),
        float(header["growth_alpha"]),
        float(header["envelope_C"]),
    )


def write_evaluator_csv(path: str, w, values) -> None:
    """Store evaluator output as rows (Re w, Im w, Re val, Im val)."""
    w = np.atleast_1d(np.asarray(w, dtype=complex))
    values = np.atleast_1d(np.asarray(values, dtype=complex))
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        for wi, vi in zip(w, values):
            writer.writerow([wi.real, wi.imag, vi.real, vi.imag])


# ---------------------------------------------------------------------------
# the Gaussian kernel and its w-jets


def _jet_polynomials(inv_t: complex, order: int) -> list[np.ndarray]:
    """Coefficients in u = x - w of d^k/dw^k applied to e^{-u^2/t}, k <= order."""
    polys = [np.array([1.0 + 0j])]
    for _ in range(order):
        q = polys[-1]
        # d/dw = -d/du on the prefactor, plus the chain term 2u/t from the bell
        term = np.zeros(len(q) + 1, dtype=complex)
        term[1:] = 2.0 * inv_t * q
        if len(q) > 1:
            term[: len(q) - 1] -= np.polynomial.polynomial.polyder(q)
        polys.append(term)
    return polys


def _kernel_jet(x: np.ndarray, w: np.ndarray, tau: complex, order: int) -> np.ndarray:
    """d^order/dw^order of (pi tau)^{-1/2} e^{-(x-w)^2/tau}, broadcast over (x, w)."""
    u = x[:, None] - w[None, :]
    q = _jet_polynomials(1.0 / tau, order)[order]
    norm = 1.0 / cmath.sqrt(math.pi * tau)
    return norm * np.polynomial.polynomial.polyval(u, q, tensor=False) * np.exp(
        -(u * u) / tau
    )


def _gaussian_reach(tau: complex, centers: np.ndarray, extra_log: float = 0.0) -> tuple[float, float]:
    """Window [lo, hi] outside which the kernel tail is below 1e-18.

    Complex centers both shift the kernel maximum off the real line and
    skew its level sets; the imaginary offset feeds back into the decay
    budget so the window stays certified for every center in the batch.
    """
    decay = (1.0 / tau).real
    if decay <= 0:
        raise DomainViolation("the lift kernel needs Re(1/tau) > 0")
    skew = abs((1.0 / tau).imag) / decay
    offset = float(np.max(np.abs(centers.imag)))
    slack = decay * offset * offset * (1.0 + skew * skew)
    radius = gaussian_halfwidth(decay, 1e-18 * math.exp(-extra_log - slack))
    radius += offset * skew
    return float(np.min(centers.real) - radius), float(np.max(centers.real) + radius)


def _simpson_weights(count: int, spacing: float) -> np.ndarray:
    """Composite Simpson weights; an even count closes with a trapezoid."""
    n = count if count % 2 == 1 else count - 1
    weights = np.full(count, 0.0)
    weights[:n:2] = 2.0
    weights[1:n:2] = 4.0
    weights[0] = 1.0
    weights[n - 1] = 1.0
    weights *= spacing / 3.0
    if n < count:
        weights[-2] += spacing / 2.0
        weights[-1] += spacing / 2.0
    return weights


# ---------------------------------------------------------------------------
# lift evaluators


class LiftEvaluator:
    """Entire-function view of a lifted source; call with (w, order=0)."""

    def __init__(self, source, tau: complex) -> None:
        self.source = source
        self.tau = as_tau(tau)

    def __call__(self, w, order: int = 0):
        w = np.atleast_1d(np.asarray(w, dtype=complex))
        src = self.source
        if isinstance(src, AtomicSource):
            return self._atomic(src, w, order)
        if isinstance(src, SampledSource):
            return self._sampled(src, w, order)
        if isinstance(src, AnalyticSource):
            return self._analytic(src, w, order)
        if isinstance(src, SymbolSource):
            return self._symbol(src, w, order)
        raise ClassViolation(f"unsupported source type {type(src).__name__}")

    def _atomic(self, src: AtomicSource, w: np.ndarray, order: int) -> np.ndarray:
        pts = np.asarray(src.points, dtype=complex)
        wts = np.asarray(src.weights, dtype=complex)
        jets = _kernel_jet(pts, w, self.tau, order)
        return np.tensordot(wts, jets, axes=(0, 0))

    def _sampled(self, src: SampledSource, w: np.ndarray, order: int) -> np.ndarray:
        if src.growth_alpha >= 2.0:
            raise GrowthViolation("sampled growth exponent must stay below 2")
        grid = np.asarray(src.x)
        self._certify_window(src, grid[0], grid[-1], w)
        vals = np.asarray(src.values, dtype=complex)
        weights = _simpson_weights(len(grid), src.spacing)
        jets = _kernel_jet(grid, w, self.tau, order)
        return np.tensordot(weights * vals, jets, axes=(0, 0))

    def _analytic(self, src: AnalyticSource, w: np.ndarray, order: int) -> np.ndarray:
        if src.growth_alpha >= 2.0:
            raise GrowthViolation("analytic growth exponent must stay below 2")
        lo, hi = self._analytic_window(src, w)
        phase = src.oscillation * (hi - lo) + abs(
            (1.0 / self.tau).imag
        ) * 0.25 * (hi - lo) ** 2
        floor = 4
        if math.isfinite(src.feature_scale) and src.feature_scale > 0:
            floor = max(floor, int(math.ceil((hi - lo) / src.feature_scale)))

        def integrand(x: np.ndarray) -> np.ndarray:
            fx = np.asarray(src.fn(x), dtype=complex)
            return fx[:, None] * _kernel_jet(x, w, self.tau, order)

        return oscillatory_panels(integrand, lo, hi, phase, n_points=20, min_panels=floor)

    def _symbol(self, src: SymbolSource, w: np.ndarray, order: int) -> np.ndarray:
        if order != 0:
            raise DomainViolation("symbol lifts expose values only")
        from . import resolvent

        if src.kind == "vp":
            if src.power != 1:
                raise ClassViolation("the principal value symbol has power one")
            return resolvent.vp_lift(self.tau, w)
        if src.power != 2:
            raise ClassViolation("the finite-part lift is provided at power two")
        return resolvent.pf_lift(self.tau, w)

    def _certify_window(self, src: SampledSource, lo: float, hi: float, w) -> None:
        decay = (1.0 / self.tau).real
        skew = abs((1.0 / self.tau).imag)
        re_lo, re_hi = float(np.min(w.real)), float(np.max(w.real))
        im_max = float(np.max(np.abs(w.imag)))
        for edge in (lo, hi):
            gap = 0.0 if re_lo <= edge <= re_hi else min(abs(edge - re_lo), abs(edge - re_hi))
            log_tail = src.envelope_c * (1.0 + abs(edge)) ** src.growth_alpha
            log_tail -= decay * (gap * gap - im_max * im_max)
            log_tail += 2.0 * skew * gap * im_max
            if log_tail > math.log(1e-9):
                raise QuadratureNonConvergence(
                    "sampled window too short for the declared envelope"
                )

    def _analytic_window(self, src: AnalyticSource, w: np.ndarray) -> tuple[float, float]:
        decay = (1.0 / self.tau).real
        if decay <= 0:
            raise DomainViolation("the lift kernel needs Re(1/tau) > 0")
        lo, hi = _gaussian_reach(self.tau, w)
        for _ in range(64):
            span = max(abs(lo), abs(hi))
            bump = src.envelope_c * (1.0 + span) ** src.growth_alpha
            radius = math.sqrt((_EXP_FLOOR + bump) / decay) + 1.0
            new_lo = float(np.min(w.real)) - radius
            new_hi = float(np.max(w.real)) + radius
            if new_hi - new_lo <= (hi - lo) + 1e-6:
                return new_lo, new_hi
            lo, hi = new_lo, new_hi
        raise QuadratureNonConvergence("growth envelope never fell below the kernel")


def lift(declared: DistributionLift) -> LiftEvaluator:
    """Entire function int f(x) (pi tau)^{-1/2} e^{-(x-w)^2/tau} dx of w.

    Atomic sources evaluate exactly as Gaussian sums; sampled and
    analytic sources go through certified quadrature, and the symbol
    sources reuse the signed half-line representatives.
    """
    return LiftEvaluator(declared.source, declared.tau)


def _pointwise_product(f, g):
    """Source of the pointwise product f g, or ClassViolation."""
    if isinstance(f, AtomicSource) and isinstance(g, AtomicSource):
        shared = set(f.points) & set(g.points)
        if shared:
            raise ClassViolation("coincident atoms have no pointwise product")
        return AtomicSource((), ())
    if isinstance(f, SymbolSource) or isinstance(g, SymbolSource):
        raise ClassViolation("symbol sources multiply through the signed calculus")
    if isinstance(g, AtomicSource):
        f, g = g, f
    if isinstance(f, AtomicSource):
        weights = []
        for p, c in zip(f.points, f.weights):
            if isinstance(g, SampledSource):
                weights.append(c * g.value_at(float(p.real)))
            else:
                weights.append(c * complex(np.asarray(g.fn(np.array([p])))[0]))
        return AtomicSource(f.points, tuple(weights))
    if isinstance(f, SampledSource) and isinstance(g, SampledSource):
        if f.x != g.x:
            raise ClassViolation("sampled factors must share one grid")
        vals = tuple(a * b for a, b in zip(f.values, g.values))
        alpha = max(f.growth_alpha, g.growth_alpha)
        if alpha >= 2.0:
            raise GrowthViolation("product growth exponent reached 2")
        return SampledSource(f.x, vals, alpha, f.envelope_c + g.envelope_c)
    if isinstance(f, SampledSource):
        f, g = g, f
    if isinstance(f, AnalyticSource) and isinstance(g, SampledSource):
        grid = np.asarray(g.x)
        vals = np.asarray(g.values, dtype=complex) * np.asarray(
            f.fn(grid), dtype=complex
        )
        alpha = max(f.growth_alpha, g.growth_alpha)
        if alpha >= 2.0:
            raise GrowthViolation("product growth exponent reached 2")
        return SampledSource(g.x, tuple(vals), alpha, f.envelope_c + g.envelope_c)
    if isinstance(f, AnalyticSource) and isinstance(g, AnalyticSource):
        alpha = max(f.growth_alpha, g.growth_alpha)
        if alpha >= 2.0:
            raise GrowthViolation("product growth exponent reached 2")
        return AnalyticSource(
            lambda x, a=f.fn, b=g.fn: np.asarray(a(x)) * np.asarray(b(x)),
            alpha,
            f.envelope_c + g.envelope_c,
            f.oscillation + g.oscillation,
        )
    raise ClassViolation("no liftable class contains this pointwise product")


def lift_product(f: DistributionLift, g: DistributionLift) -> LiftEvaluator:
    """Lift of the pointwise product; the product of the lifted elements.

    A smooth factor against a point mass reduces to point evaluation, so
    this operation reproduces the eigenvalue rule of the delta family.
    """
    if as_tau(f.tau) != as_tau(g.tau):
        raise ClassViolation("both factors must share the expression parameter")
    return LiftEvaluator(_pointwise_product(f.source, g.source), as_tau(f.tau))


# ---------------------------------------------------------------------------
# regularized products against delta atoms

# A point mass star a second expression with the same critical Gaussian
# width is singular, so the checks below mollify one factor: the atom at
# x' widens into the lift of a Gaussian bump of variance eps/2, the
# closed pair product becomes regular, and Richardson steps in eps
# remove the smoothing error.


def _atom_star_gaussian(x, quad, lin, scale, tau, w) -> np.ndarray:
    """Closed star product of atom lifts at x against Gaussian partners.

    Broadcasts P partners (lin, scale) sharing one quadratic coefficient
    over N atoms and the w grid, shape (P, N, len(w)).  Works on the
    frequency side of the atom, where the star product is an exact
    argument translation, then closes the remaining Gaussian integral;
    valid while 1 + quad tau keeps the closing integral convergent.
    """
    a_coef = 0.25 * tau * (1.0 + quad * tau)
    if abs(a_coef) < 1e-14 or a_coef.real <= 0:
        raise QuadratureNonConvergence("pair product degenerates at this width")
    lin_arr = np.atleast_1d(np.asarray(lin, dtype=complex))[:, None, None]
    scale_arr = np.atleast_1d(np.asarray(scale, dtype=complex))[:, None, None]
    xs = np.asarray(x, dtype=complex)[None, :, None]
    ws = np.asarray(w, dtype=complex)[None, None, :]
    b_coef = 1j * (xs - ws) - 1j * quad * tau * ws - 0.5j * lin_arr * tau
    body = np.exp(b_coef * b_coef / (4.0 * a_coef))
    gauss = np.exp(quad * ws * ws + lin_arr * ws)
    return scale_arr * cmath.sqrt(math.pi / a_coef) / (2.0 * math.pi) * body * gauss


def _mollified_atom(a: complex, eps: float, tau: complex) -> tuple[complex, complex, complex]:
    """(quad, lin, scale) of the lifted Gaussian bump centered at a."""
    width = tau + eps
    return (
        -1.0 / width,
        2.0 * a / width,
        cmath.exp(-a * a / width) / cmath.sqrt(math.pi * width),
    )


def _pair_width(eps: float, tau: complex) -> float:
    """Concentration scale of the closed pair product at mollifier width eps."""
    return math.sqrt(0.5 * abs(tau) * eps / abs(tau + eps))


def _atom_nodes(
    source, tau: complex, w: np.ndarray, resolution: float = math.inf
) -> tuple[np.ndarray, np.ndarray]:
    """Quadrature atoms (nodes, weights f(x) dx) representing a smooth lift.

    ``resolution`` caps the panel width; partners concentrated on a
    short scale need nodes at least that dense to see them.
    """
    evaluator = LiftEvaluator(source, tau)
    if isinstance(source, SampledSource):
        if source.spacing > resolution / 4.0:
            raise QuadratureNonConvergence(
                "sample spacing too coarse for the requested pair resolution"
            )
        grid = np.asarray(source.x)
        vals = np.asarray(source.values, dtype=complex)
        weights = _simpson_weights(len(grid), source.spacing)
        return grid, weights * vals
    if isinstance(source, AnalyticSource):
        lo, hi = evaluator._analytic_window(source, w)
        n_panels = max(12, int((hi - lo) * 3.0))
        if math.isfinite(resolution) and resolution > 0:
            n_panels = max(n_panels, int(math.ceil((hi - lo) / resolution)))
        nodes, weights = np.polynomial.legendre.leggauss(16)
        edges = np.linspace(lo, hi, n_panels + 1)
        xs, ws = [], []
        for left, right in zip(edges[:-1], edges[1:]):
            mid, half = 0.5 * (left + right), 0.5 * (right - left)
            xs.append(mid + half * nodes)
            ws.append(half * weights)
        grid = np.concatenate(xs)
        return grid, np.concatenate(ws) * np.asarray(source.fn(grid), dtype=complex)
    raise ClassViolation("atom discretization needs a smooth source")


def _mollified_point_product(
    source, a: complex, eps: float, tau: complex, w: np.ndarray
) -> np.ndarray:
    nodes, weights = _atom_nodes(source, tau, w, resolution=2.0 * _pair_width(eps, tau))
    quad, lin, scale = _mollified_atom(a, eps, tau)
    pair = _atom_star_gaussian(nodes, quad, lin, scale, tau, w)[0]
    return np.tensordot(weights, pair, axes=(0, 0))


def point_evaluation_residual(
    declared: DistributionLift, a: complex, eps: float = 0.05, levels: int = 6, w=None
) -> float:
    """Gap between lift(f) * delta at a and f(a) times the delta expression.

    The product is taken against the mollified atom and extrapolated in
    the mollifier width; the smoothing error expands in integer powers
    of the width, so a few halving levels drive it well below the
    quadrature floor.  This oracle shares no code path with the
    pointwise reduction used by the product rule.
    """
    tau = as_tau(declared.tau)
    w = window_grid() if w is None else np.atleast_1d(np.asarray(w, dtype=complex))
    src = declared.source
    rungs = [
        _mollified_point_product(src, a, eps / 2**j, tau, w) for j in range(levels)
    ]
    refined = _richardson(rungs)
    if isinstance(src, SampledSource):
        fa = src.value_at(float(complex(a).real))
    else:
        fa = complex(np.asarray(src.fn(np.array([a], dtype=complex)))[0])
    target = fa * _kernel_jet(np.array([complex(a)]), w, tau, 0)[0]
    return float(np.max(np.abs(refined - target)))


def _richardson(levels: Sequence[np.ndarray]) -> np.ndarray:
    """Eliminate the leading power errors from a halving sequence."""
    rows = [np.asarray(v) for v in levels]
    order = 1
    while len(rows) > 1:
        fac = 2.0**order
        rows = [
            (fac * fine - coarse) / (fac - 1.0)
            for coarse, fine in zip(rows[:-1], rows[1:])
        ]
        order += 1
    return rows[0]


def delta_pair_residual(
    g_fn: Callable[[np.ndarray], np.ndarray],
    x0: float,
    tau,
    eps: float = 0.1,
    levels: int = 4,
    w=None,
) -> float:
    """Regularized two-delta rule: the x'-average against g reproduces g(x0).

    int g(x') [delta(x0 - w) * delta_eps(x' - w)] dx' converges, after
    extrapolation in the mollifier width, to g(x0) delta(x0 - w); the
    unsmoothed statement is distributional and has no pointwise meaning.
    """
    tau = _require_right_half(tau)
    w = window_grid() if w is None else np.atleast_1d(np.asarray(w, dtype=complex))
    atom = np.array([float(x0)])

    def level(e: float) -> np.ndarray:
        reach = math.sqrt((e + 2.0 * tau.real) * _EXP_FLOOR) + 1.0
        n_panels = max(24, int(math.ceil(reach / _pair_width(e, tau))))

        def integrand(xp: np.ndarray) -> np.ndarray:
            width = tau + e
            quad = -1.0 / width
            lins = 2.0 * xp.astype(complex) / width
            scales = np.exp(-xp.astype(complex) ** 2 / width) / cmath.sqrt(
                math.pi * width
            )
            pair = _atom_star_gaussian(atom, quad, lins, scales, tau, w)[:, 0, :]
            return np.asarray(g_fn(xp), dtype=complex)[:, None] * pair

        return gauss_legendre_panels(
            integrand, x0 - reach, x0 + reach, n_points=20, n_panels=n_panels
        )

    refined = _richardson([level(eps / 2**j) for j in range(levels)])
    target = complex(np.asarray(g_fn(np.array([x0])))[0]) * _kernel_jet(
        atom.astype(complex), w, tau, 0
    )[0]
    return float(np.max(np.abs(refined - target)))


# ---------------------------------------------------------------------------
# star exponentials of subquadratic phases


def star_exp_subquadratic(h, s: complex, tau) -> LiftEvaluator:
    """Lift of e^{s h(x)} for a phase of growth order below two.

    The result obeys the exponential law in s and the linear evolution
    driven by the lifted phase; both are exposed as residual helpers.
    """
    tau = _require_right_half(tau)
    if isinstance(h, SampledSource):
        if h.growth_alpha >= 2.0:
            raise GrowthViolation("phase growth exponent must stay below 2")
        vals = tuple(cmath.exp(s * complex(v)) for v in h.values)
        cap = abs(s) * h.envelope_c
        return LiftEvaluator(SampledSource(h.x, vals, h.growth_alpha, max(cap, 1.0)), tau)
    if isinstance(h, AnalyticSource):
        if h.growth_alpha >= 2.0:
            raise GrowthViolation("phase growth exponent must stay below 2")
        bump = AnalyticSource(
            lambda x, f=h.fn: np.exp(s * np.asarray(f(x), dtype=complex)),
            h.growth_alpha,
            max(abs(s) * h.envelope_c, 1.0),
            abs(s.imag) * h.envelope_c + h.oscillation,
        )
        return LiftEvaluator(bump, tau)
    raise ClassViolation("the phase must be a sampled or analytic source")


def subquadratic_exp_law_residual(
    h: AnalyticSource, s: complex, sp: complex, tau, eps: float = 0.1, levels: int = 4, w=None
) -> float:
    """Exponential law through the regularized pair product.

    The factor at s is discretized into atoms, the factor at s' is
    mollified, the double sum of closed pair products is extrapolated in
    the mollifier width, and the outcome is compared with the single
    lift at s + s'.
    """
    tau = _require_right_half(tau)
    if w is None:
        # real segment of the window: off-axis kernel phases inflate the
        # smoothing coefficients and would demand deeper extrapolation
        w = np.linspace(-math.pi, math.pi, 33).astype(complex)
    else:
        w = np.atleast_1d(np.asarray(w, dtype=complex))
    resolution = 2.0 * _pair_width(eps / 2 ** (levels - 1), tau)
    left = star_exp_subquadratic(h, s, tau)
    nodes, weights = _atom_nodes(left.source, tau, w, resolution)
    prime = star_exp_subquadratic(h, sp, tau)
    nodes_p, weights_p = _atom_nodes(prime.source, tau, w, resolution)

    def level(e: float) -> np.ndarray:
        width = tau + e
        quad = -1.0 / width
        lins = 2.0 * nodes_p.astype(complex) / width
        scales = np.exp(-nodes_p.astype(complex) ** 2 / width) / cmath.sqrt(
            math.pi * width
        )
        total = np.zeros(len(w), dtype=complex)
        # chunk the partner axis: the full (P, N, w) product cube is large
        for j in range(0, len(nodes_p), 24):
            pair = _atom_star_gaussian(
                nodes, quad, lins[j : j + 24], scales[j : j + 24], tau, w
            )
            total += np.einsum("p,n,pnw->w", weights_p[j : j + 24], weights, pair)
        return total

    refined = _richardson([level(eps / 2**j) for j in range(levels)])
    target = star_exp_subquadratic(h, s + sp, tau)(w)
    return float(np.max(np.abs(refined - target)))


def subquadratic_evolution_residual(
    h: AnalyticSource, s: complex, tau, ds: float = 1e-2, w=None
) -> float:
    """Five-point derivative in s against the lifted-phase drive."""
    tau = _require_right_half(tau)
    w = window_grid() if w is None else np.atleast_1d(np.asarray(w, dtype=complex))
    samples = [star_exp_subquadratic(h, s + k * ds, tau)(w) for k in (-2, -1, 1, 2)]
    deriv = (samples[0] - 8.0 * samples[1] + 8.0 * samples[2] - samples[3]) / (12.0 * ds)
    driven = AnalyticSource(
        lambda x, f=h.fn: np.asarray(f(x), dtype=complex)
        * np.exp(s * np.asarray(f(x), dtype=complex)),
        h.growth_alpha,
        max((abs(s) + 1.0) * h.envelope_c, 1.0),
        h.oscillation,
    )
    return float(np.max(np.abs(deriv - LiftEvaluator(driven, tau)(w))))


# ---------------------------------------------------------------------------
# covering integrals of monomial phases


@dataclass(frozen=True)
class CoveringState:
    """Point on the parameter cover of the monomial-phase integral.

    ``theta`` is the unreduced rotation angle; the admissible chart is
    the band where the effective width |tau| e^{i (2 theta / ell + sigma)}
    keeps a positive real part.  States whose angles differ by 2 pi ell
    in theta together with -4 pi in sigma carry identical data.
    """

    ell: int
    s: float
    theta: float
    tau: TauPoint

    def __post_init__(self) -> None:
        if self.ell < 1:
            raise DomainViolation("the phase degree must be a positive integer")

    @classmethod
    def make(cls, ell: int, s: float, theta: float, tau) -> "CoveringState":
        point = tau if isinstance(tau, TauPoint) else TauPoint.from_value(as_tau(tau))
        return cls(ell, float(s), float(theta), point)

    @property
    def phase(self) -> float:
        return 2.0 * self.theta / self.ell + self.tau.sigma

    @property
    def width(self) -> complex:
        return self.tau.modulus * cmath.exp(1j * self.phase)

    @property
    def argument_turn(self) -> complex:
        return cmath.exp(1j * self.theta / self.ell)

    def admissible(self) -> bool:
        return math.cos(self.phase) > 0.0

    def require_admissible(self) -> None:
        if not self.admissible():
            raise DomainViolation(
                f"covering chart angle {self.phase:.4f} leaves the positive band"
            )

    def displaced(self, dtheta: float, dsigma: float) -> "CoveringState":
        return CoveringState(
            self.ell,
            self.s,
            self.theta + dtheta,
            self.tau.displaced(0.0, dsigma),
        )

    def with_s(self, s: float) -> "CoveringState":
        return CoveringState(self.ell, float(s), self.theta, self.tau)


class CoveringEvaluator:
    """Quadrature view of a covering state; call with (w, order=0).

    The square root of the effective width is tracked continuously in
    the unreduced angles, which is what makes the branched structure of
    the family observable.
    """

    def __init__(self, state: CoveringState) -> None:
        state.require_admissible()
        self.state = state

    def __call__(self, w, order: int = 0):
        st = self.state
        w = np.atleast_1d(np.asarray(w, dtype=complex))
        turn = st.argument_turn
        centers = turn * w
        width = st.width
        root = math.sqrt(math.pi * st.tau.modulus) * cmath.exp(0.5j * st.phase)
        lo, hi = _gaussian_reach(width, centers, extra_log=4.0)
        for edge in (lo, hi):
            tail = np.max(np.exp(-((edge - centers) ** 2 / width).real))
            if tail > 1e-13:
                raise QuadratureNonConvergence(
                    "covering window endpoints carry unresolved mass"
                )
        decay = (1.0 / width).real
        chirp = abs((1.0 / width).imag)
        hub = float(np.mean(centers.real))

        def rate(x: np.ndarray) -> np.ndarray:
            # local phase speed of head times bell, plus bell resolution
            return (
                abs(st.s) * st.ell * np.abs(x) ** (st.ell - 1)
                + 2.0 * chirp * np.abs(x - hub)
            )

        edges = _graded_edges(lo, hi, rate, decay)
        q = _jet_polynomials(1.0 / width, order)[order]

        def integrand(x: np.ndarray) -> np.ndarray:
            u = x[:, None] - centers[None, :]
            bell = np.exp(-(u * u) / width)
            head = np.exp(1j * st.s * x.astype(complex) ** st.ell)[:, None]
            return head * np.polynomial.polynomial.polyval(u, q, tensor=False) * bell

        out = _panel_sum(integrand, edges, len(w))
        return turn**order * out / root


def covering_integral(state: CoveringState) -> CoveringEvaluator:
    """Entire function of w attached to the covering state.

    At degree one this is the lifted linear exponential, at degree two
    the closed quadratic exponential; from degree three on the family is
    a branched covering of the would-be exponential and the evaluator
    depends on the unreduced angles, not only on their residues.
    """
    return CoveringEvaluator(state)


def covering_evolution_residual(state: CoveringState, ds: float = 2e-3, w=None) -> float:
    """Five-point s-derivative against the monomial star drive."""
    if w is None:
        w = _degree_scaled_grid(state.ell)
    else:
        w = np.atleast_1d(np.asarray(w, dtype=complex))
    samples = [
        covering_integral(state.with_s(state.s + k * ds))(w) for k in (-2, -1, 1, 2)
    ]
    deriv = (samples[0] - 8.0 * samples[1] + 8.0 * samples[2] - samples[3]) / (12.0 * ds)
    value = state.tau.modulus * cmath.exp(1j * state.tau.sigma)
    coeffs = np.asarray(star_power(state.ell, value).poly, dtype=complex)
    here = covering_integral(state)
    jet = lambda ww, order=0: here(ww, order)
    drive = 1j * cmath.exp(1j * state.theta) * star_apply(coeffs, jet, value, w)
    return float(np.max(np.abs(deriv - drive)))


def covering_theta_relation_residual(
    state: CoveringState, dtheta: float = 5e-3, ds: float = 5e-3, w=None
) -> float:
    """The angle derivative equals i s times the s-derivative."""
    if w is None:
        w = _degree_scaled_grid(state.ell)
    else:
        w = np.atleast_1d(np.asarray(w, dtype=complex))

    def stencil(samples: list, h: float) -> np.ndarray:
        m2, m1, p1, p2 = samples
        return (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h)

    d_theta = stencil(
        [covering_integral(state.displaced(k * dtheta, 0.0))(w) for k in (-2, -1, 1, 2)],
        dtheta,
    )
    d_s = stencil(
        [covering_integral(state.with_s(state.s + k * ds))(w) for k in (-2, -1, 1, 2)],
        ds,
    )
    return float(np.max(np.abs(d_theta - 1j * state.s * d_s)))


# ---------------------------------------------------------------------------
# monodromy of the covering


@dataclass(frozen=True)
class MonodromyReport:
    equal_at_2pi_ell: bool
    distinct_at_2pi: bool
    equal_gap: float
    distinct_gap: float
    comparison_tau: complex
    steps_verified: int


def _degree_scaled_grid(ell: int) -> np.ndarray:
    """Comparison grid shrunk with the degree.

    The oscillation budget of the quadrature grows with the degree-th
    power of the window reach, so high-degree comparisons are sampled on
    a correspondingly smaller disc of arguments.
    """
    return window_grid(
        n_re=9,
        n_im=3,
        re_max=min(math.pi, 9.0 / ell),
        im_max=min(1.0, 3.0 / ell),
    )


def _walk(state: CoveringState, d_theta: float, d_sigma: float, step: float) -> tuple[CoveringState, int]:
    """Advance the state along a straight joint segment, checking the band."""
    count = max(1, int(math.ceil(max(abs(d_theta), abs(d_sigma)) / step)))
    current = state
    for _ in range(count):
        current = current.displaced(d_theta / count, d_sigma / count)
        if not current.admissible():
            raise PathInadmissible(
                f"joint segment left the band at angle {current.phase:.4f}"
            )
    return current, count


def covering_monodromy(
    ell: int,
    s: float,
    tau,
    step: float = math.pi / 16.0,
    fixed_sigma: bool = False,
    w=None,
) -> MonodromyReport:
    """Compare the covering value across one and across ell full turns.

    The turn is taken jointly with the expression angle so the band
    condition survives at every step.  Both single-turn sheets are read
    at one matched parameter value (the sheets differ by a whole turn of
    the expression angle, so the value is shared); the band geometry
    places that value at a displaced argument, reported as
    ``comparison_tau``.  After ell joint turns the chart data repeat
    literally, which is the closing statement of the covering.  With
    ``fixed_sigma`` the expression angle stays put during the turn; the
    band is wide enough for that from degree five on, and at degree
    three and four it is not.
    """
    if ell < 3:
        raise DomainViolation("monodromy comparisons start at degree three")
    if ell == 4:
        raise DomainViolation(
            "at degree four the turned sheet sits a half turn away in the "
            "width angle, so no admissible path reaches a shared value"
        )
    if fixed_sigma and ell < 5:
        raise DomainViolation(
            "keeping the expression angle fixed through a turn needs the "
            "band width of degree five and above"
        )
    if w is None:
        w = _degree_scaled_grid(ell)
    else:
        w = np.atleast_1d(np.asarray(w, dtype=complex))
    point = tau if isinstance(tau, TauPoint) else TauPoint.from_value(as_tau(tau))
    # the single-turn sheets land 4 pi / ell apart in the width angle,
    # modulo whole turns of the expression angle; center the pair
    wraps = 1 if ell == 3 else 0
    gap_angle = 4.0 * math.pi / ell - 2.0 * math.pi * wraps
    sigma_cmp = -0.5 * gap_angle
    steps = 0

    start = CoveringState(ell, s, 0.0, point)
    start.require_admissible()
    at_cmp, n = _walk(start, 0.0, sigma_cmp - point.sigma, step)
    steps += n
    base = covering_integral(at_cmp)(w)

    turned, n = _walk(at_cmp, 2.0 * math.pi, -2.0 * math.pi * wraps, step)
    steps += n
    moved = covering_integral(turned)(w)
    distinct_gap = float(np.max(np.abs(moved - base)))

    closed, n = _walk(
        turned,
        2.0 * math.pi * (ell - 1),
        (sigma_cmp - 4.0 * math.pi) - turned.tau.sigma,
        step,
    )
    steps += n
    equal_gap = float(np.max(np.abs(covering_integral(closed)(w) - base)))
    return MonodromyReport(
        equal_gap < 1e-8,
        distinct_gap > 1e-3,
        equal_gap,
        distinct_gap,
        point.modulus * cmath.exp(1j * sigma_cmp),
        steps,
    )


# ---------------------------------------------------------------------------
# failure of uniqueness for the monomial evolution


@dataclass(frozen=True)
class CoveringBranch:
    index: int
    state: CoveringState
    expression_value: complex


@dataclass(frozen=True)
class NonuniquenessReport:
    branches: tuple[CoveringBranch, ...]
    pairwise_gap: float
    evolution_residuals: tuple[float, ...]
    zero_gap: float


def nonuniqueness_witness(
    ell: int, tau, s: float = 0.5, w=None, ds: float = 2e-3
) -> NonuniquenessReport:
    """The ell distinct solutions of the degree-ell star evolution.

    Branch k sits at theta = 2 pi k with the expression angle displaced
    by -4 pi k / ell, the joint move that keeps the chart admissible; no
    single expression angle carries all branches once ell exceeds two,
    so each branch certifies the evolution in its own displaced chart,
    whose parameter value the report records.  All branches start from
    one at s = 0 and separate immediately afterwards.
    """
    if ell < 3:
        raise DomainViolation("uniqueness only fails from degree three on")
    if w is None:
        w = _degree_scaled_grid(ell)
    else:
        w = np.atleast_1d(np.asarray(w, dtype=complex))
    point = tau if isinstance(tau, TauPoint) else TauPoint.from_value(as_tau(tau))
    branches = []
    values = []
    residuals = []
    zeros = []
    for k in range(ell):
        state = CoveringState(
            ell, s, 2.0 * math.pi * k, point.displaced(0.0, -4.0 * math.pi * k / ell)
        )
        state.require_admissible()
        branches.append(
            CoveringBranch(k, state, point.modulus * cmath.exp(1j * state.tau.sigma))
        )
        values.append(covering_integral(state)(w))
        residuals.append(covering_evolution_residual(state, ds=ds, w=w))
        zeros.append(covering_integral(state.with_s(0.0))(w))
    gap = min(
        float(np.max(np.abs(values[i] - values[j])))
        for i in range(ell)
        for j in range(i + 1, ell)
    )
    zero_gap = max(float(np.max(np.abs(z - 1.0))) for z in zeros)
    return NonuniquenessReport(tuple(branches), gap, tuple(residuals), zero_gap)


# ---------------------------------------------------------------------------
# joint parallel displacement


@dataclass(frozen=True)
class DisplacementResult:
    values: np.ndarray
    sheet: complex
    label: str
    steps_verified: int


def _inverse_path_value(a: complex, sign: int, theta: float, sigma: float, modulus: float, w: np.ndarray) -> np.ndarray:
    """Rotated half-line representative of the signed linear inverse."""
    turn = cmath.exp(1j * theta)
    width = modulus * cmath.exp(1j * (2.0 * theta + sigma))
    decay = 0.25 * width.real

    def integrand(t: np.ndarray) -> np.ndarray:
        ts = t.astype(complex)[:, None]
        return np.exp(
            1j * ts * turn * (a + w[None, :]) - 0.25 * ts * ts * width
        )

    body = half_line_gaussian(integrand, decay, side=-sign, phase_rate=abs(a) + float(np.max(np.abs(w))))
    return 1j * sign * turn * body


def joint_displacement(
    element,
    path: Callable[[float], tuple[float, float]] | Sequence[tuple[float, float]],
    steps: int = 96,
    tau=1.0,
    w=None,
) -> DisplacementResult:
    """Carry a representative along a joint (rotation, expression) path.

    ``element`` is ("inverse", a, sign), ("delta", a), or a covering
    state; ``path`` maps [0, 1] to unreduced (theta, sigma) offsets from
    the element's starting chart, or is a polyline of such pairs.  Every
    step re-checks the band for the element's kind; the result carries
    the final values on the grid and the accumulated square-root sheet.
    A covering state brings its own expression parameter, the other two
    kinds start at ``tau``.
    """
    w = window_grid() if w is None else np.atleast_1d(np.asarray(w, dtype=complex))
    if callable(path):
        samples = [path(u) for u in np.linspace(0.0, 1.0, steps + 1)]
    else:
        corners = list(path)
        samples = []
        for (t0, s0), (t1, s1) in zip(corners[:-1], corners[1:]):
            for u in np.linspace(0.0, 1.0, steps + 1)[:-1]:
                samples.append((t0 + u * (t1 - t0), s0 + u * (s1 - s0)))
        samples.append(corners[-1])

    if isinstance(element, CoveringState):
        current = element
        base_theta, base_sigma = element.theta, element.tau.sigma
        for theta, sigma in samples:
            current = CoveringState(
                element.ell,
                element.s,
                base_theta + theta,
                TauPoint(element.tau.modulus, base_sigma + sigma),
            )
            if not current.admissible():
                raise PathInadmissible(
                    f"covering chart left the band at angle {current.phase:.4f}"
                )
        sheet = cmath.exp(-0.5j * (current.phase - element.phase))
        return DisplacementResult(
            covering_integral(current)(w), sheet, "covering", len(samples)
        )

    start = TauPoint.from_value(_require_right_half(tau))
    modulus, sigma0 = start.modulus, start.sigma
    for theta, sigma in samples:
        if math.cos(2.0 * theta + sigma0 + sigma) <= 0.0:
            raise PathInadmissible(
                f"chart left the band at theta={theta:.4f}, sigma={sigma0 + sigma:.4f}"
            )
    theta_end, sigma_end = samples[-1]
    sigma_full = sigma0 + sigma_end

    kind = element[0]
    if kind == "inverse":
        _, a, sign = element
        values = _inverse_path_value(
            complex(a), int(sign), theta_end, sigma_full, modulus, w
        )
        label = (
            "inverse_plus"
            if _closer_to_plus(values, complex(a), sigma_full, modulus, w)
            else "inverse_minus"
        )
        return DisplacementResult(values, cmath.exp(1j * theta_end), label, len(samples))

    if kind == "delta":
        _, a = element
        width = modulus * cmath.exp(1j * sigma_full)
        root = math.sqrt(math.pi * modulus) * cmath.exp(0.5j * sigma_full)
        values = np.exp(-((complex(a) + w) ** 2) / width) / root
        sheet = cmath.exp(-0.5j * (sigma_full - sigma0))
        return DisplacementResult(values, sheet, "delta", len(samples))

    raise ClassViolation("displaceable elements: inverse, delta, covering state")


def _closer_to_plus(
    values: np.ndarray, a: complex, sigma: float, modulus: float, w: np.ndarray
) -> bool:
    from .resolvent import InverseElement

    tau_end = modulus * cmath.exp(1j * sigma)
    if tau_end.real <= 1e-12:
        return True
    plus = InverseElement(a, 1, 1).evaluate(tau_end, w)
    minus = InverseElement(a, -1, 1).evaluate(tau_end, w)
    gap_plus = float(np.max(np.abs(values - plus)))
    gap_minus = float(np.max(np.abs(values - minus)))
    return gap_plus <= gap_minus


# ---------------------------------------------------------------------------
# star exponential of the signed linear inverse


def _inverse_exp_profile(alpha: complex, s: complex, eta: float, tau: complex, w: np.ndarray, order: int, weight_power: int = 0) -> np.ndarray:
    """Common quadrature of e^{s/(alpha + x - i eta)} against the shifted kernel."""
    if eta <= 0:
        raise DomainViolation("the contour offset eta must be positive")
    shift = 1j * eta
    centers = w + shift
    lo, hi = _gaussian_reach(tau, centers, extra_log=abs(s) / eta)
    q = _jet_polynomials(1.0 / tau, order)[order]
    norm = 1.0 / cmath.sqrt(math.pi * tau)
    phase = abs((1.0 / tau).imag) * 0.25 * (hi - lo) ** 2 + abs(s) * (hi - lo) / eta
    # the symbol varies on the scale of the contour clearance eta
    floor = max(4, int(math.ceil((hi - lo) / eta)))

    def integrand(x: np.ndarray) -> np.ndarray:
        pole = alpha + x.astype(complex) - 1j * eta
        head = np.exp(s / pole) * pole ** (-weight_power)
        u = x[:, None] - centers[None, :]
        bell = np.exp(-(u * u) / tau)
        return head[:, None] * np.polynomial.polynomial.polyval(u, q, tensor=False) * bell

    return norm * oscillatory_panels(integrand, lo, hi, phase, n_points=20, min_panels=floor)


def exp_of_inverse(alpha: complex, s: complex, eta: float, tau) -> Callable:
    """One-parameter star group generated by the signed inverse of alpha + w.

    Realized as the lift of e^{s/(alpha + x - i eta)} along the contour
    dropped by eta below the real axis; the value does not move with
    eta because nothing singular is crossed on the way.
    """
    tau = _require_right_half(tau)
    alpha = complex(alpha)

    def evaluator(w, order: int = 0):
        w = np.atleast_1d(np.asarray(w, dtype=complex))
        return _inverse_exp_profile(alpha, complex(s), float(eta), tau, w, order)

    return evaluator


def exp_of_inverse_series(
    alpha: complex, s: complex, eta: float, tau, terms: int = 24
) -> Callable:
    """Same group element through the signed-inverse power series.

    e^{s X} = sum s^n X^n / n! with X the plus-signed inverse based at
    alpha - i eta; the powers multiply by exact index addition, so this
    route shares nothing with the contour quadrature.
    """
    from .resolvent import InverseElement

    tau = _require_right_half(tau)
    base = complex(alpha) - 1j * float(eta)

    def evaluator(w):
        w = np.atleast_1d(np.asarray(w, dtype=complex))
        total = np.ones(len(w), dtype=complex)
        coeff = 1.0 + 0j
        for n in range(1, terms + 1):
            coeff *= complex(s) / n
            total = total + coeff * InverseElement(base, 1, n).evaluate(tau, w)
        return total

    return evaluator


def inverse_exp_group_residual(
    alpha: complex, s: complex, sp: complex, eta: float, tau, w=None, terms: int = 28
) -> float:
    """Group law in s, certified against the independent series route."""
    w = window_grid() if w is None else np.atleast_1d(np.asarray(w, dtype=complex))
    joined = exp_of_inverse(alpha, complex(s) + complex(sp), eta, tau)(w)
    series = exp_of_inverse_series(alpha, complex(s) + complex(sp), eta, tau, terms)(w)
    return float(np.max(np.abs(joined - series)))


def inverse_exp_evolution_residual(
    alpha: complex, s: complex, eta: float, tau, w=None
) -> float:
    """(alpha + w) star d/ds of the group element gives back the element."""
    tau = _require_right_half(tau)
    w = window_grid() if w is None else np.atleast_1d(np.asarray(w, dtype=complex))

    def derivative_jet(ww, order: int = 0):
        ww = np.atleast_1d(np.asarray(ww, dtype=complex))
        return _inverse_exp_profile(
            complex(alpha), complex(s), float(eta), tau, ww, order, weight_power=1
        )

    coeffs = np.array([complex(alpha), 1.0], dtype=complex)
    left = star_apply(coeffs, derivative_jet, tau, w)
    right = exp_of_inverse(alpha, s, eta, tau)(w)
    return float(np.max(np.abs(left - right)))


def inverse_from_exp(alpha: complex, eta: float, tau, w=None, t_reach: float = 12.0) -> np.ndarray:
    """Recover alpha + w by integrating the group along the imaginary axis.

    -i times the integral over s = i t, t >= 0, of the group element;
    the kernel shift makes the closed value exactly alpha + w with no
    trace of eta.  Beyond ``t_reach`` the t-integral closes in closed
    form under the x-integral (the inner exponential is a pure decaying
    oscillation there), so the quadrature burden stays on a finite leg.
    """
    tau = _require_right_half(tau)
    alpha = complex(alpha)
    eta = float(eta)
    w = window_grid() if w is None else np.atleast_1d(np.asarray(w, dtype=complex))

    def integrand(t: np.ndarray) -> np.ndarray:
        out = np.empty((len(t), len(w)), dtype=complex)
        for j, tj in enumerate(t):
            out[j] = _inverse_exp_profile(alpha, 1j * float(tj), eta, tau, w, 0)
        return out

    body = gauss_legendre_panels(integrand, 0.0, t_reach, n_points=12, n_panels=24)

    shift = 1j * eta
    centers = w + shift
    lo, hi = _gaussian_reach(tau, centers)
    norm = 1.0 / cmath.sqrt(math.pi * tau)
    span = hi - lo
    phase = abs((1.0 / tau).imag) * 0.25 * span * span + t_reach * span / eta

    def tail(x: np.ndarray) -> np.ndarray:
        pole = alpha + x.astype(complex) - 1j * eta
        head = pole * np.exp(1j * t_reach / pole)
        u = x[:, None] - centers[None, :]
        return head[:, None] * np.exp(-(u * u) / tau)

    floor = max(4, int(math.ceil(span / eta)))
    closed_tail = norm * oscillatory_panels(tail, lo, hi, phase, n_points=20, min_panels=floor)
    return -1j * body + closed_tail


# ---------------------------------------------------------------------------
# formal integration over the argument


def formal_star_integration(declared: DistributionLift, a: complex, theta: float = 0.0) -> complex:
    """Total mass of the lifted product against the atom at a; equals f(a).

    The w-line may be rotated by theta; the square-root ambiguity of the
    atom cancels against the rotated measure, so the value is blind to
    both the rotation and the expression parameter.
    """
    tau = as_tau(declared.tau)
    sigma = cmath.phase(tau)
    if math.cos(2.0 * theta - sigma) <= 0.0:
        raise DomainViolation("rotated mass integral leaves the decay sector")
    atom = DistributionLift(AtomicSource((complex(a),), (1.0 + 0j,)), tau)
    product = lift_product(declared, atom)
    turn = cmath.exp(1j * theta)
    decay = (turn * turn / tau).real
    radius = gaussian_halfwidth(decay, 1e-18) + abs(a)
    center = (complex(a) / turn).real

    def integrand(u: np.ndarray) -> np.ndarray:
        return np.asarray(product(turn * u.astype(complex)))

    body = oscillatory_panels(
        integrand,
        center - radius,
        center + radius,
        abs((turn * turn / tau).imag) * radius**2 + 2.0 * abs(a) * radius / abs(tau),
        n_points=20,
    )
    return complex(turn * body)


# ---------------------------------------------------------------------------
# rotation of the integration ray for monomial phases


@dataclass(frozen=True)
class RootRotationReport:
    angles: tuple[float, ...]
    values: tuple[np.ndarray, ...]
    measure_phase: complex
    deck_residual: float


def rotated_root_integral(ell: int, s: float, tau, turns: int = 1, w=None) -> RootRotationReport:
    """Rotate the integration ray of the monomial-phase lift by 2 pi / ell.

    The ray angle rho advances in hops of pi / ell (the only angles at
    which the monomial factor stays bounded on the whole line), with the
    expression angle moved jointly so the Gaussian factor keeps its
    decay.  A full hop sequence multiplies the measure by e^{2 pi i/ell}
    while the kernel argument turns the opposite way, so the composite
    acts as the deck transformation w -> e^{-2 pi i / ell} w: that is
    the precise sense in which the family is an ell-th root rather than
    a plain exponential.
    """
    if ell < 1:
        raise DomainViolation("the phase degree must be a positive integer")
    tau_val = _require_right_half(tau)
    sigma0 = cmath.phase(tau_val)
    modulus = abs(tau_val)
    w = window_grid() if w is None else np.atleast_1d(np.asarray(w, dtype=complex))

    hops = [j * math.pi / ell for j in range(2 * turns + 1)]
    values = []
    for rho in hops:
        head_sign = cmath.exp(1j * ell * rho)
        turn = cmath.exp(-1j * rho)
        centers = turn * w
        width = modulus * cmath.exp(1j * sigma0)
        root = math.sqrt(math.pi * modulus) * cmath.exp(0.5j * sigma0)
        lo, hi = _gaussian_reach(width, centers, extra_log=4.0)
        span = max(abs(lo), abs(hi))

        def integrand(x: np.ndarray) -> np.ndarray:
            u = x[:, None] - centers[None, :]
            head = np.exp(1j * s * head_sign * x.astype(complex) ** ell)[:, None]
            return head * np.exp(-(u * u) / width)

        body = oscillatory_panels(
            integrand,
            lo,
            hi,
            abs(s) * span**ell + abs((1.0 / width).imag) * span**2,
            n_points=20,
        )
        values.append(body / root)

    deck = cmath.exp(-2j * math.pi / ell)
    turned_grid = np.atleast_1d(deck * w)
    base_state = values[0]
    # recompute the start at the turned argument for the deck comparison
    centers = turned_grid
    width = modulus * cmath.exp(1j * sigma0)
    root = math.sqrt(math.pi * modulus) * cmath.exp(0.5j * sigma0)
    lo, hi = _gaussian_reach(width, centers, extra_log=4.0)
    span = max(abs(lo), abs(hi))

    def integrand0(x: np.ndarray) -> np.ndarray:
        u = x[:, None] - centers[None, :]
        head = np.exp(1j * s * x.astype(complex) ** ell)[:, None]
        return head * np.exp(-(u * u) / width)

    turned_value = (
        oscillatory_panels(
            integrand0,
            lo,
            hi,
            abs(s) * span**ell + abs((1.0 / width).imag) * span**2,
            n_points=20,
        )
        / root
    )
    deck_residual = float(np.max(np.abs(values[2 * turns] - turned_value)))
    measure_phase = cmath.exp(2j * math.pi * turns / ell)
    return RootRotationReport(tuple(hops), tuple(values), measure_phase, deck_residual)


# ---------------------------------------------------------------------------
# discrete summation against half-line integration


@dataclass(frozen=True)
class LogDerivativeReport:
    tail_gap: float
    bound_margin: float
    continuous_residual: float
    divergent_magnitudes: tuple[float, ...]


def _discrete_series(beta: complex, tau: complex, k_max: int, n_max: int, w: np.ndarray) -> np.ndarray:
    total = np.zeros(len(w), dtype=complex)
    for k in range(1, k_max + 1):
        for n in range(1, n_max + 1):
            a = n * k * beta
            total += k * np.exp(0.25 * a * a * tau + a * w)
    return total


def hyouka_style_bound(beta: complex, tau: complex, k_max: int, n_max: int, w_cap: float) -> tuple[float, float]:
    """Certified envelope of the discrete double series on |w| <= w_cap.

    Half of the quadratic decay absorbs the linear growth (completing
    the square in the product index), and the splitting
    (nk)^2 >= (n^2 + k^2)/2 turns the rest into a product of two
    convergent single sums.  Returns (series magnitude, product bound);
    the first never exceeds the second.
    """
    c = (tau * beta * beta).real
    if c >= 0:
        raise DomainViolation("the discrete series needs Re(tau beta^2) < 0")
    t_lin = abs(beta) * w_cap
    lhs = 0.0
    for k in range(1, k_max + 1):
        for n in range(1, n_max + 1):
            lhs += k * math.exp(0.25 * c * (n * k) ** 2 + n * k * t_lin)
    head = math.exp(2.0 * t_lin * t_lin / abs(c))
    sixteenth = c / 16.0
    sum_n = sum(math.exp(sixteenth * n * n) for n in range(1, n_max + 1))
    sum_k = sum(k * math.exp(sixteenth * k * k) for k in range(1, k_max + 1))
    return lhs, head * sum_n * sum_k


def discrete_vs_continuous_logderiv(
    beta: complex, tau, k_max: int = 20, n_max: int = 20, w=None
) -> LogDerivativeReport:
    """Convergent discrete double series against the divergent half-line sum.

    The discrete side is the absolutely convergent weighted series of
    linear exponentials; the report carries its Cauchy tail between the
    given truncation and a half-larger one, plus the margin of the
    product envelope.  On the continuous side each frequency has the
    exact logarithmic derivative -1/beta, so the sum over frequencies
    grows linearly without remedy; the partial-sum magnitudes record
    this documented non-result.
    """
    tau = as_tau(tau)
    beta = complex(beta)
    if (tau * beta * beta).real >= 0:
        raise DomainViolation("the discrete series needs Re(tau beta^2) < 0")
    w = window_grid() if w is None else np.atleast_1d(np.asarray(w, dtype=complex))

    small = _discrete_series(beta, tau, k_max, n_max, w)
    large = _discrete_series(beta, tau, k_max + k_max // 2, n_max + n_max // 2, w)
    tail_gap = float(np.max(np.abs(large - small)))

    w_cap = float(np.max(np.abs(w)))
    lhs, rhs = hyouka_style_bound(beta, tau, k_max, n_max, w_cap)
    bound_margin = rhs - lhs

    residual = _continuous_logderiv_residual(beta, tau, w)
    partial = tuple(kk / abs(beta) for kk in (10.0, 20.0, 30.0))
    return LogDerivativeReport(tail_gap, bound_margin, residual, partial)


def _continuous_logderiv_residual(beta: complex, tau: complex, w: np.ndarray) -> float:
    """|d/dbeta + 1/beta| applied to the half-line integral, first frequency."""
    decay = -0.25 * (tau * beta * beta).real
    if decay <= 0:
        raise DomainViolation("half-line integral needs Re(tau beta^2) < 0")

    def value(b: complex) -> np.ndarray:
        def integrand(t: np.ndarray) -> np.ndarray:
            ts = t.astype(complex)[:, None]
            return np.exp(0.25 * ts * ts * b * b * tau + ts * b * w[None, :])

        return half_line_gaussian(
            integrand, decay * 0.8, side=-1, phase_rate=float(np.max(np.abs(w)))
        )

    h = 1e-4
    deriv = (value(beta + h) - value(beta - h)) / (2.0 * h)
    return float(np.max(np.abs(deriv + value(beta) / beta)))


# ---------------------------------------------------------------------------
# kernel of the periodized-coordinate multiplication


@dataclass(frozen=True)
class PeriodicKernelReport:
    dimension: int
    smallest: float
    second_smallest: float
    comb_overlap: float


def periodic_kernel_rank(order: int) -> PeriodicKernelReport:
    """Rank witness for multiplication by the periodized coordinate.

    On frequencies |m| <= order the product with the periodized sawtooth
    is the Toeplitz matrix of its Fourier data (exact, by the index
    addition of linear exponentials; no expression parameter enters).
    Its kernel is one-dimensional up to truncation and lies along the
    all-ones vector, the frequency profile of the delta comb.
    """
    if order < 2:
        raise DomainViolation("the truncated system needs order at least two")
    dim = 2 * order + 1
    matrix = np.empty((dim, dim), dtype=complex)
    for p in range(-order, order + 1):
        for q in range(-order, order + 1):
            matrix[p + order, q + order] = sawtooth_fourier_coefficient(p - q)
    _, singular, right = np.linalg.svd(matrix)
    null = right[-1].conj()
    ones = np.ones(dim) / math.sqrt(dim)
    overlap = float(abs(np.dot(null.conj(), ones)))
    return PeriodicKernelReport(dim, float(singular[-1]), float(singular[-2]), overlap)
