"""Triangle mesh of the graph z = 1/(x^2 + y^2) over a rectangle, written as OBJ or CSV."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import EmptyMesh


class MeshFormat(enum.Enum):
    OBJ = "obj"
    CSV = "csv"


@dataclass(frozen=True)
class MeshConfig:
    u_range: tuple[float, float] = (-5.0, 5.0)
    v_range: tuple[float, float] = (-5.0, 5.0)
    resolution: int = 120
    z_clip: float = 10.0
    exclusion_radius: float = 0.15

    def __post_init__(self):
        if not self.u_range[0] < self.u_range[1]:
            raise ValueError(f"empty u range {self.u_range}")
        if not self.v_range[0] < self.v_range[1]:
            raise ValueError(f"empty v range {self.v_range}")
        if self.resolution < 2:
            raise ValueError("resolution must be >= 2")
        if not self.z_clip > 0:
            raise ValueError("z_clip must be positive")
        if self.exclusion_radius < 0:
            raise ValueError("exclusion_radius must be non-negative")


@dataclass(frozen=True)
class Mesh:
    vertices: np.ndarray  # (N, 3)
    triangles: np.ndarray  # (T, 3), 0-based


def generate_mesh(config: MeshConfig = MeshConfig()) -> Mesh:
    res = config.resolution
    xs = np.linspace(*config.u_range, res)
    ys = np.linspace(*config.v_range, res)
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    r2 = gx * gx + gy * gy
    keep = r2 > config.exclusion_radius**2
    keep &= r2 > 0.0
    z = np.full_like(r2, np.inf)
    z[keep] = 1.0 / r2[keep]
    keep &= z <= config.z_clip
    if not keep.any():
        raise EmptyMesh("every grid point was excluded")

    index = np.full(keep.shape, -1, dtype=np.int64)
    index[keep] = np.arange(int(keep.sum()))
    vertices = np.column_stack((gx[keep], gy[keep], z[keep]))

    a = index[:-1, :-1]
    b = index[1:, :-1]
    c = index[:-1, 1:]
    d = index[1:, 1:]
    # two triangles per grid cell, kept only when all three corners survive
    cells = np.stack((np.stack((a, b, d), -1), np.stack((a, d, c), -1)), -2)
    triangles = cells.reshape(-1, 3)
    triangles = triangles[(triangles >= 0).all(axis=1)]
    return Mesh(vertices=vertices, triangles=triangles)


def _num(v: float) -> str:
    s = repr(float(v))
    return s[:-2] if s.endswith(".0") else s


def format_obj(mesh: Mesh) -> str:
    lines = [f"v {_num(x)} {_num(y)} {_num(z)}" for x, y, z in mesh.vertices]
    lines += [f"f {i + 1} {j + 1} {k + 1}" for i, j, k in mesh.triangles]
    return "\n".join(lines) + "\n"


def format_csv(mesh: Mesh) -> str:
    lines = ["x,y,z"] + [f"{_num(x)},{_num(y)},{_num(z)}" for x, y, z in mesh.vertices]
    return "\n".join(lines) + "\n"


def write_mesh(mesh: Mesh, fmt: MeshFormat | str, destination) -> Path:
    if len(mesh.vertices) == 0:
        raise EmptyMesh("refusing to write an empty mesh")
    fmt = MeshFormat(fmt.lower()) if isinstance(fmt, str) else fmt
    text = format_obj(mesh) if fmt is MeshFormat.OBJ else format_csv(mesh)
    path = Path(destination)
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)
    return path
