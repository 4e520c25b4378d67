"""Curvature, support distance and the centroaffine invariant of implicit hypersurfaces.

A hypersurface M^n in R^(n+1) is given as the zero set of a field F. At a
point p with gradient g = grad F(p) and Hessian H:

* the bordered Hessian is ``[[H, g], [g^T, 0]]``;
* the Gaussian curvature for the normal ``-g/|g|`` is
  ``K = -det(bordered) / |g|^(n+2)``;
* the distance from the origin to the tangent hyperplane is
  ``d = |g . p| / |g|``;
* the Tzitzeica invariant is ``K / d^(n+2)``.

Flipping the normal multiplies K (and the invariant) by ``(-1)^n``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import NotImmersed, OffSurface, TangentThroughOrigin
from .field import Expr, Jet2, eval_jet2

MAX_DETERMINANT_SIZE = 18


class Orientation(enum.Enum):
    PAPER = "paper"  # N = -grad F / |grad F|
    OPPOSITE = "opposite"

    @classmethod
    def parse(cls, value: "str | Orientation") -> "Orientation":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


@dataclass(frozen=True)
class Thresholds:
    """Degeneracy cut-offs.

    ``gradient`` is scaled by ``max(1, |p|)``; the others are absolute.
    """

    gradient: float = 1e-12
    distance: float = 1e-12
    on_surface: float = 1e-9


DEFAULT_THRESHOLDS = Thresholds()


@dataclass(frozen=True)
class InvariantSample:
    point: np.ndarray
    curvature: float
    distance: float
    tzitzeica: float
    gradient_norm: float
    determinant: float
    support: float  # F_i x^i, signed

    @property
    def n(self) -> int:
        return self.point.shape[0] - 1


def bordered_hessian(jet: Jet2) -> np.ndarray:
    m = jet.dimension
    out = np.zeros((m + 1, m + 1))
    out[:m, :m] = jet.hessian
    out[:m, m] = jet.gradient
    out[m, :m] = jet.gradient
    return out


def determinant(matrix) -> float:
    """Determinant by Gaussian elimination with partial pivoting."""
    a = np.array(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"determinant needs a square matrix, got shape {a.shape}")
    size = a.shape[0]
    if size > MAX_DETERMINANT_SIZE:
        raise ValueError(f"matrix size {size} exceeds {MAX_DETERMINANT_SIZE}")
    det = 1.0
    for k in range(size):
        pivot = k + int(np.argmax(np.abs(a[k:, k])))
        if a[pivot, k] == 0.0:
            return 0.0
        if pivot != k:
            a[[k, pivot]] = a[[pivot, k]]
            det = -det
        det *= a[k, k]
        if k + 1 < size:
            factors = a[k + 1 :, k] / a[k, k]
            a[k + 1 :, k:] -= np.outer(factors, a[k, k:])
    return float(det)


def _checked_jet(field: Expr, p, thresholds: Thresholds, require_on_surface: bool):
    pt = np.asarray(p, dtype=float)
    jet = eval_jet2(field, pt)
    if require_on_surface and abs(jet.value) > thresholds.on_surface:
        raise OffSurface(
            f"|F(p)| = {abs(jet.value):.3e} exceeds tolerance {thresholds.on_surface:.1e}"
        )
    gnorm = float(np.linalg.norm(jet.gradient))
    if gnorm <= thresholds.gradient * max(1.0, float(np.linalg.norm(pt))):
        raise NotImmersed(f"gradient norm {gnorm:.3e} is numerically zero")
    return pt, jet, gnorm


def _curvature(jet: Jet2, gnorm: float, orientation: Orientation) -> tuple[float, float]:
    n = jet.dimension - 1
    det = determinant(bordered_hessian(jet))
    k = -det / gnorm ** (n + 2)
    if orientation is Orientation.OPPOSITE and n % 2 == 1:
        k = -k
    return k, det


def gaussian_curvature(
    field: Expr,
    p,
    orientation: Orientation = Orientation.PAPER,
    thresholds: Thresholds = DEFAULT_THRESHOLDS,
) -> float:
    _, jet, gnorm = _checked_jet(field, p, thresholds, require_on_surface=True)
    return _curvature(jet, gnorm, Orientation.parse(orientation))[0]


def support_distance(field: Expr, p, thresholds: Thresholds = DEFAULT_THRESHOLDS) -> float:
    """Distance from the origin to the tangent hyperplane of the level set through p."""
    pt, jet, gnorm = _checked_jet(field, p, thresholds, require_on_surface=False)
    return abs(float(jet.gradient @ pt)) / gnorm


def tzitzeica_invariant(
    field: Expr,
    p,
    orientation: Orientation = Orientation.PAPER,
    thresholds: Thresholds = DEFAULT_THRESHOLDS,
) -> InvariantSample:
    pt, jet, gnorm = _checked_jet(field, p, thresholds, require_on_surface=True)
    n = pt.size - 1
    k, det = _curvature(jet, gnorm, Orientation.parse(orientation))
    support = float(jet.gradient @ pt)
    d = abs(support) / gnorm
    if d <= thresholds.distance:
        raise TangentThroughOrigin(f"support distance {d:.3e} is numerically zero")
    tz = k / d ** (n + 2)
    if not math.isfinite(tz):
        raise TangentThroughOrigin(f"invariant overflowed (K={k!r}, d={d!r})")
    return InvariantSample(
        point=pt,
        curvature=k,
        distance=d,
        tzitzeica=tz,
        gradient_norm=gnorm,
        determinant=det,
        support=support,
    )
