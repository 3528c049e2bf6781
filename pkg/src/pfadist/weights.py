"""Simplex-lattice weight-vector designs.

Weight vectors have nonnegative components summing to 1. The two-layered
design concatenates a coarse outer lattice with an inner lattice shrunk
halfway toward the simplex centroid, which is how the reference-set
cardinalities used throughout the experiments are obtained.
"""

from __future__ import annotations

from math import comb

import numpy as np


def _compositions(total: int, parts: int):
    """Yield all nonnegative integer tuples of length `parts` summing to `total`,
    in ascending lexicographic order."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def simplex_lattice(m: int, H: int) -> np.ndarray:
    """Simplex-lattice design: all vectors (i1/H, ..., im/H) with ik summing to H.

    Parameters
    ----------
    m : int
        Dimension, >= 2.
    H : int
        Lattice resolution. H = 0 yields an empty (0, m) design; for
        H >= 1 the cardinality is C(H + m - 1, m - 1).

    Returns
    -------
    ndarray, shape (M, m)
        Rows in ascending lexicographic order of the integer compositions,
        so downstream tie-breaking is reproducible.
    """
    if m < 2:
        raise ValueError(f"dimension must be >= 2, got {m}")
    if H < 0:
        raise ValueError(f"lattice resolution must be >= 0, got {H}")
    if H == 0:
        return np.empty((0, m), dtype=float)
    grid = np.array(list(_compositions(H, m)), dtype=float)
    return grid / H


def two_layer_lattice(m: int, H1: int, H2: int) -> np.ndarray:
    """Two-layered simplex-lattice design.

    Outer layer is ``simplex_lattice(m, H1)``; the inner layer is
    ``simplex_lattice(m, H2)`` shrunk halfway toward the centroid,
    w -> w/2 + 1/(2m). H2 = 0 contributes no inner layer. Layers are
    concatenated (outer first), giving exactly
    C(H1+m-1, m-1) + C(H2+m-1, m-1) vectors when H2 >= 1.
    """
    if H1 < 1:
        raise ValueError(f"outer resolution must be >= 1, got {H1}")
    outer = simplex_lattice(m, H1)
    if H2 == 0:
        return outer
    inner = simplex_lattice(m, H2) / 2.0 + 1.0 / (2.0 * m)
    return np.vstack([outer, inner])


def lattice_cardinality(m: int, H1: int, H2: int) -> int:
    """Closed-form size of ``two_layer_lattice(m, H1, H2)``."""
    n = comb(H1 + m - 1, m - 1)
    if H2 >= 1:
        n += comb(H2 + m - 1, m - 1)
    return n
