"""Built-in hypersurfaces with on-surface samplers and known invariants.

Every entry is a :class:`SurfaceSpec`. Samplers are pure functions of
``(seed, index)``; see :mod:`tzitzeica.streams`.

The rotation chart maps parameters ``u = (u1, ..., un)``, ``un > 0``, to

    x_i     = 2 un u_i / D        (i < n)
    x_n     = un (D - 2) / D
    x_(n+1) = f(un)

with ``D = u1^2 + ... + u_(n-1)^2 + 1``, an inverse stereographic projection
of the (n-1)-sphere scaled by ``un``, so that ``x1^2 + ... + xn^2 = un^2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, SamplingError
from .field import (
    Expr,
    Pow,
    Sqrt,
    Var,
    eval_jet2,
    evaluate,
    product,
    squared_norm,
    to_text,
)
from .streams import stream, unit_direction

MAX_N = 16
RADIUS_RANGE = (0.3, 3.0)

Sampler = Callable[[int, int], np.ndarray]


@dataclass(frozen=True)
class SurfaceSpec:
    name: str
    n: int
    field: Expr
    sampler: Sampler = dc_field(repr=False, compare=False)
    expected_invariant: Fraction | None = None
    sample_domain: str = ""
    note: str = ""

    @property
    def ambient_dimension(self) -> int:
        return self.n + 1

    def sample(self, seed: int, index: int) -> np.ndarray:
        return self.sampler(seed, index)

    def to_dict(self) -> dict:
        expected = self.expected_invariant
        return {
            "name": self.name,
            "n": self.n,
            "field": to_text(self.field),
            "expected": None if expected is None else str(expected),
        }


@dataclass(frozen=True)
class ChartParams:
    u: tuple[float, ...]
    profile: Expr  # univariate, in x1

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(float(v) for v in self.u))
        if not self.u:
            raise ValueError("chart needs at least one parameter")
        if not self.u[-1] > 0.0:
            raise DomainError(f"last chart parameter must be > 0, got {self.u[-1]}")
        if self.profile.dimension > 1:
            raise ValueError("profile must be a function of x1 only")


def _check_n(n: int) -> int:
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= MAX_N:
        raise ValueError(f"n must be an integer in 1..{MAX_N}, got {n!r}")
    return int(n)


def _radial_point(rng: np.random.Generator, n: int) -> tuple[float, np.ndarray]:
    r = rng.uniform(*RADIUS_RANGE)
    return r, r * unit_direction(rng, n)


def tzitzeica_constant(n: int) -> Fraction:
    """Signed invariant of ``x_(n+1)^2 |x'|^(2n) = 1`` for the default normal."""
    return Fraction(-(n**n), (n + 1) ** (n + 1))


def new_hypersurface(n: int, branch: int = 1) -> SurfaceSpec:
    """``(x_(n+1))^2 (x1^2 + ... + xn^2)^n = 1``; ``branch`` picks the sign of x_(n+1)."""
    n = _check_n(n)
    if branch not in (1, -1):
        raise ValueError("branch must be +1 or -1")
    f = Pow(Var(n + 1), 2) * Pow(squared_norm(range(1, n + 1)), n) - 1

    def sampler(seed: int, index: int) -> np.ndarray:
        r, xs = _radial_point(stream(seed, index), n)
        return np.append(xs, branch * r ** (-n))

    return SurfaceSpec(
        name="tzitzeica",
        n=n,
        field=f,
        sampler=sampler,
        expected_invariant=tzitzeica_constant(n),
        sample_domain=f"radius in [{RADIUS_RANGE[0]}, {RADIUS_RANGE[1]}], uniform direction, "
        + ("x_(n+1) > 0" if branch > 0 else "x_(n+1) < 0"),
    )


def classical_bowl() -> SurfaceSpec:
    """``x3 (x1^2 + x2^2) = 1``."""
    f = Var(3) * squared_norm([1, 2]) - 1

    def sampler(seed: int, index: int) -> np.ndarray:
        r, xs = _radial_point(stream(seed, index), 2)
        return np.append(xs, r**-2)

    return SurfaceSpec(
        name="bowl",
        n=2,
        field=f,
        sampler=sampler,
        expected_invariant=Fraction(-4, 27),
        sample_domain=f"radius in [{RADIUS_RANGE[0]}, {RADIUS_RANGE[1]}], uniform direction",
    )


def calabi(n: int) -> SurfaceSpec:
    """``x1 x2 ... x_(n+1) = 1``."""
    n = _check_n(n)
    f = product([Var(i) for i in range(1, n + 2)]) - 1

    def sampler(seed: int, index: int) -> np.ndarray:
        xs = stream(seed, index).uniform(0.5, 2.0, size=n)
        return np.append(xs, 1.0 / float(np.prod(xs)))

    return SurfaceSpec(
        name="calabi",
        n=n,
        field=f,
        sampler=sampler,
        expected_invariant=Fraction((-1) ** n, (n + 1) ** (n + 1)),
        sample_domain="x1..xn uniform in [0.5, 2], last coordinate solved",
    )


def unit_sphere(n: int) -> SurfaceSpec:
    n = _check_n(n)
    f = squared_norm(range(1, n + 2)) - 1

    def sampler(seed: int, index: int) -> np.ndarray:
        return unit_direction(stream(seed, index), n + 1)

    return SurfaceSpec(
        name="sphere",
        n=n,
        field=f,
        sampler=sampler,
        expected_invariant=Fraction(1),
        sample_domain="uniform on the unit sphere",
    )


def _indefinite_sampler(power: int, exponent_of_x1: int, tail: int) -> Sampler:
    # Solves q^power * x1^exponent_of_x1 = 1 with q = x2^2 - (x3^2 + ...) > 0.25.
    def sampler(seed: int, index: int) -> np.ndarray:
        rng = stream(seed, index)
        q = rng.uniform(0.3, 3.0)
        rest = rng.uniform(-1.5, 1.5, size=tail)
        x2 = math.sqrt(q + float(rest @ rest))
        x1 = q ** (-power / exponent_of_x1)
        return np.concatenate(([x1, x2], rest))

    return sampler


def vrancken_surfaces() -> list[SurfaceSpec]:
    """The two indefinite examples ``(x2^2 - x3^2 - x4^2)^3 x1^2 = 1`` and
    ``(x2^2 - x3^2 - x4^2 - x5^2)^2 x1 = 1``. No target invariant is known.
    """
    q3 = Pow(Var(2), 2) - squared_norm([3, 4])
    q4 = Pow(Var(2), 2) - squared_norm([3, 4, 5])
    domain = "x2^2 - (x3^2 + ...) in [0.3, 3], x3.. uniform in [-1.5, 1.5], x1, x2 > 0"
    return [
        SurfaceSpec(
            name="vrancken3",
            n=3,
            field=Pow(q3, 3) * Pow(Var(1), 2) - 1,
            sampler=_indefinite_sampler(3, 2, 2),
            sample_domain=domain,
        ),
        SurfaceSpec(
            name="vrancken4",
            n=4,
            field=Pow(q4, 2) * Var(1) - 1,
            sampler=_indefinite_sampler(2, 1, 3),
            sample_domain=domain,
            note="commonly labelled 5-dimensional, but it is a hypersurface of R^5 (n = 4)",
        ),
    ]


def implicit_surface(
    field: Expr,
    n: int | None = None,
    name: str | None = None,
    box: float = 2.0,
    max_iter: int = 60,
) -> SurfaceSpec:
    """Spec for an arbitrary field, sampled by Newton projection from a random box point.

    Starting points are uniform in ``[-box, box]^(n+1)``; each is pushed onto
    the zero set along the gradient. Failures raise :class:`SamplingError`.
    """
    m = field.dimension if n is None else n + 1
    if m < 2 or m < field.dimension:
        raise ValueError("field needs at least two ambient coordinates")

    def sampler(seed: int, index: int) -> np.ndarray:
        p = stream(seed, index).uniform(-box, box, size=m)
        for _ in range(max_iter):
            try:
                jet = eval_jet2(field, p)
            except DomainError as exc:
                raise SamplingError(f"newton projection left the domain: {exc}") from exc
            g2 = float(jet.gradient @ jet.gradient)
            if g2 == 0.0:
                raise SamplingError("newton projection hit a critical point")
            step = jet.value / g2 * jet.gradient
            p = p - step
            if float(np.linalg.norm(step)) <= 1e-14 * max(1.0, float(np.linalg.norm(p))):
                break
        try:
            residual = abs(evaluate(field, p))
        except DomainError as exc:
            raise SamplingError(str(exc)) from exc
        if residual > 1e-12:
            raise SamplingError(f"newton projection did not converge (|F| = {residual:.2e})")
        return p

    return SurfaceSpec(
        name=name or to_text(field),
        n=m - 1,
        field=field,
        sampler=sampler,
        sample_domain=f"newton projection from uniform points in [-{box}, {box}]^{m}",
    )


def rotation_chart(params: ChartParams) -> np.ndarray:
    u = np.asarray(params.u, dtype=float)
    un = u[-1]
    head = u[:-1]
    delta = float(head @ head) + 1.0
    xs = np.concatenate((2.0 * un * head / delta, [un * (delta - 2.0) / delta]))
    height = evaluate(params.profile, [un])
    return np.append(xs, height)


def profile_field(n: int, profile: Expr) -> Expr:
    """Implicit form ``f(sqrt(x1^2 + ... + xn^2)) - x_(n+1)`` of a rotation graph.

    Even powers of the radius are rewritten as powers of the squared norm so
    that no square root appears when it is not needed.
    """
    n = _check_n(n)
    if profile.dimension > 1:
        raise ValueError("profile must be a function of x1 only")
    r2 = squared_norm(range(1, n + 1))
    f = _radial_substitute(profile, r2)
    return f - Var(n + 1)


def _radial_substitute(e: Expr, r2: Expr) -> Expr:
    if isinstance(e, Pow) and e.base == Var(1) and e.exponent % 2 == 0:
        k = e.exponent // 2
        return r2 if k == 1 else Pow(r2, k)
    if isinstance(e, Var):
        return Sqrt(r2)
    children = e.children()
    if not children:
        return e
    if isinstance(e, Pow):
        return Pow(_radial_substitute(e.base, r2), e.exponent)
    return type(e)(*(_radial_substitute(c, r2) for c in children))


def get_surface(name: str, n: int | None = None, branch: int = 1) -> SurfaceSpec:
    """Look up a catalog entry by name; parametrized families need ``n``."""
    key = name.lower()
    if key == "tzitzeica":
        return new_hypersurface(2 if n is None else n, branch=branch)
    if key == "bowl":
        return classical_bowl()
    if key == "calabi":
        return calabi(2 if n is None else n)
    if key == "sphere":
        return unit_sphere(2 if n is None else n)
    for spec in vrancken_surfaces():
        if spec.name == key:
            return spec
    raise KeyError(name)


SURFACE_NAMES = ("tzitzeica", "bowl", "calabi", "sphere", "vrancken3", "vrancken4")


def catalog_entries(ns: Sequence[int] = (2,)) -> list[SurfaceSpec]:
    """Every built-in spec, parametrized families instantiated at each ``n`` in ``ns``."""
    specs = []
    for n in ns:
        specs += [new_hypersurface(n), calabi(n), unit_sphere(n)]
    specs.append(classical_bowl())
    specs += vrancken_surfaces()
    return specs
