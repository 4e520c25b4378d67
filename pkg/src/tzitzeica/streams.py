"""Counter-based random streams: one independent generator per (seed, index)."""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def stream(seed: int, index: int) -> np.random.Generator:
    """Philox generator keyed by ``(seed, index)``.

    Sample ``index`` only ever sees its own stream, so draws do not depend on
    evaluation order or on how work is split across workers.
    """
    if index < 0:
        raise ValueError("index must be non-negative")
    key = ((int(seed) & _MASK64) << 64) | (int(index) & _MASK64)
    return np.random.Generator(np.random.Philox(key=key))


def unit_direction(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Uniform direction on the unit sphere of R^dim (normalized Gaussian)."""
    while True:
        v = rng.standard_normal(dim)
        norm = float(np.linalg.norm(v))
        if norm > 1e-8:
            return v / norm
