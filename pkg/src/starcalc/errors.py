"""Exception types raised by the star-calculus layers.

Every computational failure mode gets its own class so callers can react
to the mathematical situation (a branch point on a path, a divergent
product, ...) rather than pattern-match on messages.
"""


class StarCalcError(Exception):
    """Base class for all errors raised by this package."""


class DegreeOverflow(StarCalcError):
    """A polynomial operation exceeded the configured maximum degree."""


class BranchSingularity(StarCalcError):
    """A square-root prefactor hit its branch point along the requested path."""


class RootFindingFailure(StarCalcError):
    """The simultaneous root iteration did not reach the residual target."""


class DomainViolation(StarCalcError):
    """An expression parameter lies outside the domain of the representation."""


class QuadratureNonConvergence(StarCalcError):
    """A quadrature rule failed to converge to the requested tolerance."""


class TruncationNotConverged(StarCalcError):
    """A truncated series cannot meet its certified tail bound."""


class DivergentProduct(StarCalcError):
    """The requested star product diverges (same base, opposite signs)."""


class UndefinedProduct(StarCalcError):
    """The requested star product has no value (coincident delta factors)."""


class ResultantZero(StarCalcError):
    """Two polynomials share a root, so no Bezout splitting exists."""


class GrowthViolation(StarCalcError):
    """A sampled function grows too fast for the Gaussian kernel to absorb."""


class ClassViolation(StarCalcError):
    """An operand left the closed class required by the operation."""


class PathInadmissible(StarCalcError):
    """A displacement path leaves the joint admissibility region."""


class NonUnit(StarCalcError):
    """Series inversion was attempted on a series with vanishing lead term."""


class ParseError(StarCalcError):
    """The expression grammar could not parse the input."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at token {position})"
        super().__init__(message)
