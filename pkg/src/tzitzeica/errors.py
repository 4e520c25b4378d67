"""Exception hierarchy shared by the package."""

from __future__ import annotations


class TzitzeicaError(Exception):
    """Base class for every error raised by this package."""


class ParseError(TzitzeicaError, ValueError):
    """Malformed field text. ``position`` is the 0-based character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.position = position


class DomainError(TzitzeicaError, ValueError):
    """A field was evaluated outside its domain (e.g. division by zero)."""


class DegeneratePoint(TzitzeicaError, ArithmeticError):
    """The invariant cannot be computed at the given point."""


class NotImmersed(DegeneratePoint):
    """Gradient of the defining function vanishes (numerically) at the point."""


class OffSurface(DegeneratePoint):
    """The point does not lie on the zero set of the defining function."""


class TangentThroughOrigin(DegeneratePoint):
    """The tangent hyperplane passes through the origin, so d = 0."""


class SamplingError(TzitzeicaError):
    """A sampler could not produce a point on its surface."""


class AllPointsDegenerate(TzitzeicaError):
    """Every sample drawn during a verification run was skipped."""


class EmptyMesh(TzitzeicaError):
    """Mesh generation excluded every grid point."""
