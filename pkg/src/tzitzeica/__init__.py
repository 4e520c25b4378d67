"""Centroaffine Tzitzeica invariant of implicit hypersurfaces in R^(n+1)."""

from .catalog import (
    ChartParams,
    SurfaceSpec,
    calabi,
    catalog_entries,
    classical_bowl,
    get_surface,
    implicit_surface,
    new_hypersurface,
    profile_field,
    rotation_chart,
    unit_sphere,
    vrancken_surfaces,
)
from .errors import (
    AllPointsDegenerate,
    DegeneratePoint,
    DomainError,
    EmptyMesh,
    NotImmersed,
    OffSurface,
    ParseError,
    SamplingError,
    TangentThroughOrigin,
    TzitzeicaError,
)
from .field import Expr, Jet2, eval_jet2, evaluate, parse_field, to_text
from .kernel import (
    InvariantSample,
    Orientation,
    Thresholds,
    bordered_hessian,
    determinant,
    gaussian_curvature,
    support_distance,
    tzitzeica_invariant,
)
from .mesh import Mesh, MeshConfig, MeshFormat, generate_mesh, write_mesh
from .verifier import (
    InvariantReport,
    condition_residual,
    ode_residual,
    solve_exponent,
    tz_closed_form,
    verify_constancy,
)

__version__ = "0.1.0"

__all__ = [
    "AllPointsDegenerate",
    "ChartParams",
    "DegeneratePoint",
    "DomainError",
    "EmptyMesh",
    "Expr",
    "InvariantReport",
    "InvariantSample",
    "Jet2",
    "Mesh",
    "MeshConfig",
    "MeshFormat",
    "NotImmersed",
    "OffSurface",
    "Orientation",
    "ParseError",
    "SamplingError",
    "SurfaceSpec",
    "TangentThroughOrigin",
    "Thresholds",
    "TzitzeicaError",
    "bordered_hessian",
    "calabi",
    "catalog_entries",
    "classical_bowl",
    "condition_residual",
    "determinant",
    "eval_jet2",
    "evaluate",
    "gaussian_curvature",
    "generate_mesh",
    "get_surface",
    "implicit_surface",
    "new_hypersurface",
    "ode_residual",
    "parse_field",
    "profile_field",
    "rotation_chart",
    "solve_exponent",
    "support_distance",
    "to_text",
    "tz_closed_form",
    "tzitzeica_invariant",
    "unit_sphere",
    "verify_constancy",
    "vrancken_surfaces",
    "write_mesh",
]
