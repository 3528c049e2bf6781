"""Controlled degradation scenarios: coverage loss, uniformity loss, pathologies.

Every builder is deterministic given its inputs and seed, so scenario
instances can be rebuilt (or built in parallel) without coordination.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from .errors import DimensionError, InsufficientDense, UnsupportedFront
from .geometry import Pfa

#: Hyperplane membership tolerance for the coverage construction.
HYPERPLANE_TOL = 1e-9


@dataclass(frozen=True)
class ScenarioInstance:
    """A labeled PFA variant ready for indicator evaluation."""

    pfa: Pfa
    problem: str
    m: int
    scenario: str              # "coverage" | "uniformity" | "pathology" | "control"
    level: float | int | None  # gamma, beta percent, or pathology case
    cardinality: int
    seed: int

    @property
    def variant(self) -> str:
        if self.scenario == "control":
            return "control"
        if self.scenario == "pathology":
            return f"case{self.level}"
        if self.scenario == "coverage":
            return f"gamma={self.level:g}"
        return f"beta={self.level:g}"


def shrink_coverage(front: Pfa, gamma: float) -> Pfa:
    """Contract a constant-sum front toward its hyperplane centroid.

    Each point maps to gamma * a + (1 - gamma) * (c/m, ..., c/m) where c
    is the common coordinate sum, which is the same as scaling by gamma
    and projecting back onto the hyperplane. Pairwise distances scale
    exactly by gamma; gamma = 1 is the identity.
    """
    if not 0.0 < gamma <= 1.0:
        raise ValueError(f"gamma must be in (0, 1], got {gamma}")
    pts = front.points
    sums = pts.sum(axis=1)
    c = float(sums.mean())
    if np.max(np.abs(sums - c)) > HYPERPLANE_TOL:
        raise UnsupportedFront(
            f"points do not share a coordinate sum (spread {np.ptp(sums):.3e})"
        )
    if gamma == 1.0:
        return front
    centroid = c / front.m
    shrunk = gamma * pts + (1.0 - gamma) * centroid
    return Pfa(shrunk, normalized=front.normalized)


def asf_value(a, w, z) -> float:
    """Achievement scalarizing function: max_i w_i * |a_i - z_i|."""
    a = np.asarray(a, dtype=float)
    w = np.asarray(w, dtype=float)
    z = np.asarray(z, dtype=float)
    if not (a.shape == w.shape == z.shape):
        raise DimensionError(
            f"dimension mismatch: a{a.shape}, w{w.shape}, z{z.shape}"
        )
    return float(np.max(w * np.abs(a - z)))


def uniform_subset(dense: Pfa, weights: np.ndarray) -> Pfa:
    """Pick one dense point per weight vector by scalarization.

    For each weight w the selected point minimizes the achievement
    scalarizing function anchored at the origin with reciprocal weights
    1/max(w_i, floor); on a simplex front this makes each lattice vector
    claim the point closest to its own direction, which is what produces
    an evenly spread ground-truth subset. The floor is half the smallest
    positive component over the whole weight set, so zero components
    still pull their picks onto the boundary without flattening the
    ranking along it. A point already claimed by an earlier weight is
    replaced by the next-best candidate, ties breaking toward the lower
    point index, so the output always has exactly one point per weight
    vector.
    """
    weights = np.asarray(weights, dtype=float)
    n_dense = len(dense)
    n_w = weights.shape[0]
    if n_dense < n_w:
        raise InsufficientDense(f"need {n_w} dense points, have {n_dense}")
    positive = weights[weights > 0.0]
    floor = 0.5 * float(positive.min()) if positive.size else 1e-6
    inv_w = 1.0 / np.maximum(weights, floor)
    # scores[j, i] = ASF of dense point i under inverted weight j (z = origin)
    scores = np.max(inv_w[:, None, :] * np.abs(dense.points)[None, :, :], axis=2)
    taken = np.zeros(n_dense, dtype=bool)
    chosen = np.empty(n_w, dtype=int)
    for j in range(n_w):
        order = np.argsort(scores[j], kind="stable")
        for idx in order:
            if not taken[idx]:
                chosen[j] = idx
                taken[idx] = True
                break
    return Pfa(dense.points[chosen], normalized=dense.normalized)


def _round_half_up(x: float) -> int:
    return int(np.floor(x + 0.5))


def degrade_uniformity(uniform: Pfa, dense: Pfa, beta: int, seed: int) -> Pfa:
    """Replace (100 - beta)% of a uniform subset with random dense points.

    round-half-up(beta * N / 100) points are kept from `uniform` (drawn
    without replacement); the remainder comes from `dense` minus the kept
    points, also without replacement, so the output never contains
    duplicates. beta = 100 returns `uniform` unchanged.
    """
    if not 0 <= beta <= 100:
        raise ValueError(f"beta must be in [0, 100], got {beta}")
    if beta == 100:
        return uniform
    n = len(uniform)
    n_keep = _round_half_up(beta * n / 100.0)
    rng = np.random.default_rng(seed)
    keep_idx = rng.choice(n, size=n_keep, replace=False) if n_keep else np.empty(0, int)
    kept = uniform.points[np.sort(keep_idx)]

    # candidate pool: unique dense rows not coinciding with a kept point
    dense_pts = np.unique(dense.points, axis=0)
    if n_keep:
        matches = (dense_pts[:, None, :] == kept[None, :, :]).all(axis=2).any(axis=1)
        pool = dense_pts[~matches]
    else:
        pool = dense_pts
    n_fill = n - n_keep
    if len(pool) < n_fill:
        raise InsufficientDense(f"need {n_fill} filler points, pool has {len(pool)}")
    fill_idx = rng.choice(len(pool), size=n_fill, replace=False)
    return Pfa(np.vstack([kept, pool[fill_idx]]), normalized=uniform.normalized)


def _claim_by_centroids(dense_pts: np.ndarray, centroids: np.ndarray, n: int) -> np.ndarray:
    """Each centroid claims its quota of nearest unclaimed points, in order."""
    k = len(centroids)
    quota = int(np.ceil(n / k))
    claimed = np.zeros(len(dense_pts), dtype=bool)
    selected: list[int] = []
    for c in centroids:
        if len(selected) >= n:
            break
        want = min(quota, n - len(selected))
        dist = np.linalg.norm(dense_pts - c, axis=1)
        dist[claimed] = np.inf
        nearest = np.argsort(dist, kind="stable")[:want]
        claimed[nearest] = True
        selected.extend(int(i) for i in nearest)
    return np.array(selected, dtype=int)


def pathology(dense: Pfa, case: int, n: int, seed: int) -> Pfa:
    """Build one of the three pathological distributions from a dense sample.

    Case 1 (boundary): greedy energy-based thinning with a near-zero
    exponent (s = 0.01), repeatedly dropping the point with the largest
    summed pairwise energy until n remain; crowded interior points go
    first, so the survivors hug the manifold boundary.

    Case 2 (clustered extremes): the per-objective maximizers of the
    dense set act as centroids and each claims its ceil(n/m) nearest
    unclaimed points until n are taken.

    Case 3 (clustered): like case 2 but with k centroids drawn uniformly
    from the dense set, k itself uniform on {2, ..., 2m}.
    """
    if case not in (1, 2, 3):
        raise ValueError(f"case must be 1, 2 or 3, got {case}")
    pts = dense.points
    n0 = len(pts)
    if n0 < n:
        raise InsufficientDense(f"need {n} points, dense has {n0}")

    if case == 1:
        s = 0.01
        active = np.ones(n0, dtype=bool)
        # contributions[i] = sum_j d_ij^(-s) over active j != i
        d = cdist(pts, pts)
        np.fill_diagonal(d, 1.0)  # excluded from sums below
        energy = d ** (-s)
        np.fill_diagonal(energy, 0.0)
        contrib = energy.sum(axis=1)
        remaining = n0
        while remaining > n:
            masked = np.where(active, contrib, -np.inf)
            drop = int(np.argmax(masked))
            active[drop] = False
            contrib -= energy[:, drop]
            remaining -= 1
        return Pfa(pts[active], normalized=dense.normalized)

    if case == 2:
        extreme_idx = [int(np.argmax(pts[:, j])) for j in range(dense.m)]
        centroids = pts[extreme_idx]
    else:
        rng = np.random.default_rng(seed)
        k = int(rng.integers(2, 2 * dense.m + 1))
        centroid_idx = rng.choice(n0, size=k, replace=False)
        centroids = pts[centroid_idx]

    selected = _claim_by_centroids(pts, centroids, n)
    return Pfa(pts[selected], normalized=dense.normalized)
