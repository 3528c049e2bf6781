"""Objective-space primitives: point sets, distances, normalization, dominance.

Point sets are plain float64 arrays of shape (N, m); the :class:`Pfa`
wrapper adds the objective count and a flag recording that coordinates
have been min-max scaled to the unit hypercube.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.distance import cdist

from .errors import DegenerateAxisWarning, DimensionError, EmptyInput

EUCLIDEAN = "euclidean"
CHEBYSHEV = "chebyshev"


@dataclass(frozen=True)
class LpQuasi:
    """L_p quasi-norm distance, (sum |a_i - b_i|^p)^(1/p).

    For p < 1 this is not a metric (no triangle inequality); p = 0.1 is
    the value used by the pure-diversity indicator.
    """

    p: float = 0.1

    def __post_init__(self):
        if not self.p > 0:
            raise ValueError(f"LpQuasi exponent must be positive, got {self.p}")


#: A distance selector: EUCLIDEAN, CHEBYSHEV, or an LpQuasi instance.
DistanceKind = str | LpQuasi


@dataclass(frozen=True)
class Pfa:
    """A Pareto-front approximation: N objective vectors in m dimensions.

    Parameters
    ----------
    points : ndarray, shape (N, m)
        Objective vectors, one per row. All values must be finite,
        N >= 1 and m >= 2. The array is frozen after construction.
    normalized : bool
        True when every coordinate lies in [0, 1] after min-max scaling.
    """

    points: np.ndarray
    normalized: bool = False
    degenerate_axes: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        pts = np.array(self.points, dtype=float, copy=True)
        if pts.ndim != 2:
            raise DimensionError(f"expected a 2-D point array, got ndim={pts.ndim}")
        n, m = pts.shape
        if n < 1:
            raise EmptyInput("a PFA needs at least one point")
        if m < 2:
            raise DimensionError(f"objective count must be >= 2, got {m}")
        if not np.all(np.isfinite(pts)):
            raise ValueError("PFA coordinates must be finite")
        if self.normalized and (pts.min() < 0.0 or pts.max() > 1.0):
            raise ValueError("normalized flag set but coordinates leave [0, 1]")
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    @property
    def m(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.points.shape[0]


def _check_same_dimension(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape} vs {b.shape}")


def distance(a, b, kind: DistanceKind = EUCLIDEAN) -> float:
    """Distance between two points under the selected kind.

    Euclidean and Chebyshev are metrics; LpQuasi(p) with p < 1 is a
    symmetric quasi-metric that still satisfies d(a, b) = 0 iff a = b.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    _check_same_dimension(a, b)
    diff = np.abs(a - b)
    if kind == EUCLIDEAN:
        return float(np.sqrt(np.sum(diff * diff)))
    if kind == CHEBYSHEV:
        return float(np.max(diff))
    if isinstance(kind, LpQuasi):
        return float(np.sum(diff ** kind.p) ** (1.0 / kind.p))
    raise ValueError(f"unknown distance kind: {kind!r}")


def pairwise_distances(points: np.ndarray, kind: DistanceKind = EUCLIDEAN) -> np.ndarray:
    """Full (N, N) distance matrix of a point array under `kind`."""
    points = np.asarray(points, dtype=float)
    if kind == EUCLIDEAN:
        return cdist(points, points, metric="euclidean")
    if kind == CHEBYSHEV:
        return cdist(points, points, metric="chebyshev")
    if isinstance(kind, LpQuasi):
        diff = np.abs(points[:, None, :] - points[None, :, :])
        return np.sum(diff ** kind.p, axis=-1) ** (1.0 / kind.p)
    raise ValueError(f"unknown distance kind: {kind!r}")


def normalize(pfa: Pfa) -> Pfa:
    """Min-max scale each objective to [0, 1].

    An objective with zero spread maps to 0 and is reported through a
    DegenerateAxisWarning plus the `degenerate_axes` field, so that dense
    samples of degenerate fronts still flow through the harness.
    """
    pts = pfa.points
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    span = hi - lo
    degenerate = np.nonzero(span <= 0.0)[0]
    safe_span = np.where(span > 0.0, span, 1.0)
    scaled = (pts - lo) / safe_span
    scaled[:, degenerate] = 0.0
    if degenerate.size:
        warnings.warn(
            f"degenerate objective axes {degenerate.tolist()} collapsed to 0",
            DegenerateAxisWarning,
            stacklevel=2,
        )
    return Pfa(scaled, normalized=True, degenerate_axes=tuple(int(i) for i in degenerate))


def dominates(x: np.ndarray, y: np.ndarray) -> bool:
    """Pareto dominance for minimization: x no worse everywhere, better somewhere."""
    return bool(np.all(x <= y) and np.any(x < y))


def nondominated_filter(pfa: Pfa) -> Pfa:
    """Drop every point that is Pareto-dominated by another member.

    Exact duplicates do not dominate each other, so they all survive.
    O(N^2 m) scan; the output is mutually non-dominated.
    """
    pts = pfa.points
    n = len(pts)
    keep = np.ones(n, dtype=bool)
    for i in range(n):
        le = np.all(pts <= pts[i], axis=1)
        lt = np.any(pts < pts[i], axis=1)
        dominated_by = le & lt
        dominated_by[i] = False
        if np.any(dominated_by & keep):
            keep[i] = False
    return Pfa(pts[keep], normalized=pfa.normalized)
