"""Analytic Pareto-front generators and dense samplers.

Four built-in geometries cover the desk-scale experiments; anything else
(WFG, ZCAT, ...) is ingested from PFA files produced by external tooling.

  linear    f = w                 on the hyperplane  sum(f) = 1
  inverted  f = 1 - w             on the hyperplane  sum(f) = m - 1
  dtlz1     f = w / 2             on the hyperplane  sum(f) = 1/2
  dtlz2     f = w / ||w||_2       on the unit sphere (nonnegative orthant)
"""

from __future__ import annotations

import hashlib

import numpy as np

from .errors import DegenerateWeight
from .geometry import Pfa
from .pfafile import read_pfa

LINEAR = "linear"
INVERTED = "inverted"
DTLZ1 = "dtlz1"
DTLZ2 = "dtlz2"

FRONT_KINDS = (LINEAR, INVERTED, DTLZ1, DTLZ2)


def _map_to_front(kind: str, weights: np.ndarray) -> np.ndarray:
    if kind == LINEAR:
        return weights.copy()
    if kind == INVERTED:
        return 1.0 - weights
    if kind == DTLZ1:
        return weights / 2.0
    if kind == DTLZ2:
        norms = np.linalg.norm(weights, axis=1)
        if np.any(norms < 1e-12):
            raise DegenerateWeight("zero-norm weight cannot be projected to the sphere")
        return weights / norms[:, None]
    raise ValueError(f"unknown front kind: {kind!r}")


def structured_front(kind: str, weights: np.ndarray) -> Pfa:
    """Map a weight-vector design onto the analytic front `kind`.

    The output keeps the row order of `weights` and is flagged
    normalized, since every built-in geometry lives in [0, 1]^m.
    """
    weights = np.asarray(weights, dtype=float)
    return Pfa(_map_to_front(kind, weights), normalized=True)


def derive_seed(master_seed: int, label: str) -> int:
    """Stable per-instance seed from a master seed and a text label.

    Hash-based so the stream does not depend on generation order, which
    keeps parallel instance construction reproducible.
    """
    digest = hashlib.sha256(f"{master_seed}:{label}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def dense_sample(kind: str, m: int, count: int, seed: int) -> Pfa:
    """Sample `count` m-dimensional points from the front manifold.

    Directions are drawn uniformly on the simplex (symmetric Dirichlet,
    i.e. normalized exponential draws) and pushed through the same map
    as ``structured_front``, so every sample satisfies the manifold
    equation of its kind to machine precision. Output is bit-identical
    for a fixed (kind, m, count, seed).
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if m < 2:
        raise ValueError(f"dimension must be >= 2, got {m}")
    rng = np.random.default_rng(seed)
    draws = rng.exponential(scale=1.0, size=(count, m))
    weights = draws / draws.sum(axis=1, keepdims=True)
    return Pfa(_map_to_front(kind, weights), normalized=True)


def load_external(path) -> Pfa:
    """Ingest an externally generated front from a PFA CSV file."""
    return read_pfa(path)
