"""Exact rational polynomial arithmetic for the symbolic layer.

Two small kernels back every "exact in the deformation parameter" test in
the package:

* :class:`RatPoly2` -- polynomials in two commuting variables with
  ``fractions.Fraction`` coefficients, keyed by exponent pairs.  Used with
  the variables read as (w, tau) or (x, tau).
* :class:`RatSeries` -- truncated power series in one variable over
  Fraction, with Cauchy product and inversion.

Only what the identities need is implemented; this is not a CAS.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


class RatPoly2:
    """Polynomial sum(c[j,k] * u^j * v^k) with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[tuple[int, int], Fraction] | None = None):
        self.coeffs: dict[tuple[int, int], Fraction] = {}
        if coeffs:
            for key, val in coeffs.items():
                val = Fraction(val)
                if val != 0:
                    self.coeffs[key] = val

    @classmethod
    def constant(cls, value) -> "RatPoly2":
        return cls({(0, 0): Fraction(value)})

    @classmethod
    def monomial(cls, j: int, k: int, value=1) -> "RatPoly2":
        return cls({(j, k): Fraction(value)})

    def __add__(self, other: "RatPoly2") -> "RatPoly2":
        out = dict(self.coeffs)
        for key, val in other.coeffs.items():
            out[key] = out.get(key, Fraction(0)) + val
        return RatPoly2(out)

    def __sub__(self, other: "RatPoly2") -> "RatPoly2":
        out = dict(self.coeffs)
        for key, val in other.coeffs.items():
            out[key] = out.get(key, Fraction(0)) - val
        return RatPoly2(out)

    def __mul__(self, other) -> "RatPoly2":
        if isinstance(other, RatPoly2):
            out: dict[tuple[int, int], Fraction] = {}
            for (j1, k1), v1 in self.coeffs.items():
                for (j2, k2), v2 in other.coeffs.items():
                    key = (j1 + j2, k1 + k2)
                    out[key] = out.get(key, Fraction(0)) + v1 * v2
            return RatPoly2(out)
        scalar = Fraction(other)
        return RatPoly2({k: v * scalar for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __neg__(self) -> "RatPoly2":
        return RatPoly2({k: -v for k, v in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, RatPoly2) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_zero(self) -> bool:
        return not self.coeffs

    def diff_u(self) -> "RatPoly2":
        """Derivative with respect to the first variable."""
        return RatPoly2({(j - 1, k): v * j for (j, k), v in self.coeffs.items() if j > 0})

    def degree_u(self) -> int:
        return max((j for (j, _k) in self.coeffs), default=0)

    def evaluate(self, u: complex, v: complex) -> complex:
        return sum(complex(c) * u**j * v**k for (j, k), c in self.coeffs.items())

    def u_coefficients(self, v: complex) -> list[complex]:
        """Collapse the second variable at a numeric point; coefficients in u."""
        out = [0j] * (self.degree_u() + 1)
        for (j, k), c in self.coeffs.items():
            out[j] += complex(c) * v**k
        return out

    def __repr__(self):
        terms = sorted(self.coeffs.items())
        return "RatPoly2(" + ", ".join(f"u^{j} v^{k}: {c}" for (j, k), c in terms) + ")"


class RatSeries:
    """Truncated power series sum(a[n] z^n, n <= order) over Fraction."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable, order: int):
        data = [Fraction(c) for c in coeffs]
        if len(data) < order + 1:
            data += [Fraction(0)] * (order + 1 - len(data))
        self.coeffs = data[: order + 1]
        self.order = order

    @classmethod
    def zero(cls, order: int) -> "RatSeries":
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> "RatSeries":
        return cls([Fraction(1)], order)

    def __add__(self, other: "RatSeries") -> "RatSeries":
        n = min(self.order, other.order)
        return RatSeries([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)], n)

    def __sub__(self, other: "RatSeries") -> "RatSeries":
        n = min(self.order, other.order)
        return RatSeries([self.coeffs[i] - other.coeffs[i] for i in range(n + 1)], n)

    def __mul__(self, other) -> "RatSeries":
        if isinstance(other, RatSeries):
            n = min(self.order, other.order)
            out = [Fraction(0)] * (n + 1)
            for i, a in enumerate(self.coeffs[: n + 1]):
                if a == 0:
                    continue
                for j in range(0, n + 1 - i):
                    b = other.coeffs[j]
                    if b != 0:
                        out[i + j] += a * b
            return RatSeries(out, n)
        scalar = Fraction(other)
        return RatSeries([c * scalar for c in self.coeffs], self.order)

    __rmul__ = __mul__

    def inverse(self) -> "RatSeries":
        """Multiplicative inverse; requires a nonzero constant term."""
        from .errors import NonUnit

        if self.coeffs[0] == 0:
            raise NonUnit("series has no constant term, cannot invert")
        inv0 = Fraction(1) / self.coeffs[0]
        out = [inv0] + [Fraction(0)] * self.order
        for n in range(1, self.order + 1):
            acc = Fraction(0)
            for k in range(1, n + 1):
                acc += self.coeffs[k] * out[n - k]
            out[n] = -inv0 * acc
        return RatSeries(out, self.order)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RatSeries)
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        return f"RatSeries({self.coeffs}, order={self.order})"


def bernoulli_numbers(count: int) -> list[Fraction]:
    """B_0 .. B_{count-1} with B_1 = -1/2, by the defining recursion."""
    numbers: list[Fraction] = []
    for m in range(count):
        if m == 0:
            numbers.append(Fraction(1))
            continue
        acc = Fraction(0)
        for k in range(m):
            acc += _binomial(m + 1, k) * numbers[k]
        numbers.append(-acc / (m + 1))
    return numbers


def euler_numbers(count: int) -> list[Fraction]:
    """E_0, E_2, E_4, ... as a list of the even-index Euler numbers."""
    evens: list[Fraction] = []
    for n in range(count):
        if n == 0:
            evens.append(Fraction(1))
            continue
        acc = Fraction(0)
        for k in range(n):
            acc += _binomial(2 * n, 2 * k) * evens[k]
        evens.append(-acc)
    return evens


def _binomial(n: int, k: int) -> Fraction:
    import math

    return Fraction(math.comb(n, k))
