"""Bundled algebra files and their known idempotent systems."""

from __future__ import annotations

from importlib import resources

import numpy as np

from ..algebra import AlgebraTable, parse_algebra
from ..spectral import IdempotentSystem, Provenance

NAMES = ("bicomplex", "efg", "hyperbolic", "dual", "complex_real")


def fixture_path(name: str):
    return resources.files(__name__).joinpath(f"{name.removesuffix('.alg')}.alg")


def load_fixture(name: str) -> AlgebraTable:
    path = fixture_path(name)
    if not path.is_file():
        raise KeyError(f"no bundled algebra named {name!r}; available: {', '.join(NAMES)}")
    return parse_algebra(path.read_bytes(), source=f"<fixture {name}>")


def known_idempotents(name: str) -> IdempotentSystem:
    """The closed-form primitive idempotents of the split fixtures."""
    if name in ("bicomplex", "hyperbolic"):
        rows = [[0.5, 0.5], [0.5, -0.5]]
    elif name == "efg":
        rows = [[1, s1, s2, s1 * s2] for s1 in (1, -1) for s2 in (1, -1)]
        rows = np.array(rows, dtype=float) / 4
    else:
        raise KeyError(f"no closed-form idempotents for {name!r}")
    dtype = np.complex128 if name == "bicomplex" else np.float64
    return IdempotentSystem(np.array(rows, dtype=dtype), Provenance.FIXTURE)
