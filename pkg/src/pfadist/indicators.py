"""The nine distribution indicators, each a pure scalar functional of a PFA.

Every indicator returns an :class:`IndicatorResult` carrying the scalar
value, the registered orientation (maximize or minimize), and the
parameters that produced it. ``evaluate_all`` runs the full registry and
keeps going when a single indicator rejects the input (e.g. duplicate
points), reporting the failure in the result instead of raising.

Indicator codes and orientations:

  dir  min   reference-vector coverage deviation
  pud  max   pure diversity (Weitzman recursion over L0.1 dissimilarity)
  spd  max   Solow-Polasky diversity (kernel matrix inverse mass)
  rse  min   Riesz s-energy
  eni  max   grid-entropy of the smoothed 2-D density
  cpf  max   covered fraction of reference grid cells
  unl  min   minimum pairwise Chebyshev separation
  cdi  max   agglomerative cluster count ratio
  kua  min   k-NN cluster spacing unevenness
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.distance import cdist

from .errors import (
    DuplicatePoints,
    EmptyInput,
    EmptyReference,
    PfadistError,
    SingularMatrix,
)
from .geometry import CHEBYSHEV, DistanceKind, LpQuasi, Pfa, pairwise_distances
from .numerics import invert, mean_std

MAXIMIZE = "max"
MINIMIZE = "min"

#: Canonical evaluation order and orientation registry.
ORIENTATION = {
    "dir": MINIMIZE,
    "pud": MAXIMIZE,
    "spd": MAXIMIZE,
    "rse": MINIMIZE,
    "eni": MAXIMIZE,
    "cpf": MAXIMIZE,
    "unl": MINIMIZE,
    "cdi": MAXIMIZE,
    "kua": MINIMIZE,
}
INDICATOR_ORDER = tuple(ORIENTATION)

#: Switch point between the exact Weitzman recursion and greedy accumulation.
PUD_EXACT_LIMIT = 12


@dataclass(frozen=True)
class IndicatorResult:
    """One indicator evaluation: identifier, value, orientation, parameters."""

    indicator: str
    value: float
    orientation: str
    params: dict = field(default_factory=dict, compare=False)
    error: str | None = None

    @property
    def failed(self) -> bool:
        return self.error is not None


@dataclass(frozen=True, eq=False)
class IndicatorParams:
    """Parameter bundle for ``evaluate_all``; None fields get defaults there."""

    weights: np.ndarray | None = None      # dir: reference vectors
    theta: float = 10.0                    # spd: kernel decay rate
    s: float | None = None                 # rse: energy exponent, None -> m - 1
    grid: int = 100                        # eni: cells per axis
    reference: Pfa | None = None           # cpf: reference set
    dbar: float | None = None              # cdi: merge threshold
    k: int = 3                             # kua: neighborhood size
    pud_distance: DistanceKind = LpQuasi(0.1)
    unl_distance: DistanceKind = CHEBYSHEV


def _result(code: str, value: float, **params) -> IndicatorResult:
    return IndicatorResult(code, float(value), ORIENTATION[code], params)


def _require_normalized(pfa: Pfa, code: str) -> None:
    if not pfa.normalized:
        raise ValueError(f"{code} requires a normalized PFA")


def _check_no_duplicates(dmat: np.ndarray, code: str) -> None:
    off = dmat + np.diag(np.full(len(dmat), np.inf))
    if np.min(off) == 0.0:
        raise DuplicatePoints(f"{code} is undefined on sets with coincident points")


# ---------------------------------------------------------------------------
# dir: reference-vector coverage deviation


def dir_indicator(pfa: Pfa, weights: np.ndarray) -> IndicatorResult:
    """Standard deviation of the reference-vector coverage counts.

    Each reference vector is assigned to the PFA point whose direction
    from the origin (the normalized ideal) subtends the smallest angle;
    assignment ties break toward the lower point index. The coverage
    vector counts vectors per point and the indicator is its population
    standard deviation, zero for perfectly even coverage and
    (M/N) * sqrt(N - 1) when a single point absorbs all M vectors.
    """
    _require_normalized(pfa, "dir")
    weights = np.asarray(weights, dtype=float)
    if weights.ndim != 2 or weights.shape[0] == 0:
        raise EmptyInput("dir needs a nonempty reference-vector set")
    pts = pfa.points
    n = len(pts)
    if n < 2:
        raise EmptyInput("dir needs at least two points")
    pt_norms = np.linalg.norm(pts, axis=1) + 1e-12  # guard a point at the ideal
    w_norms = np.linalg.norm(weights, axis=1)
    cos = (weights @ pts.T) / (w_norms[:, None] * pt_norms[None, :])
    assigned = np.argmax(cos, axis=1)  # max cosine == min angle; first index wins ties
    coverage = np.bincount(assigned, minlength=n)
    _, std = mean_std(coverage)
    return _result("dir", std, m=len(weights))


# ---------------------------------------------------------------------------
# pud: pure diversity


def _weitzman_exact(dmat: np.ndarray) -> float:
    """Exact recursion: W(A) = max_a W(A without a) + D(a, A without a)."""
    cache: dict[frozenset, float] = {}

    def solve(subset: frozenset) -> float:
        if len(subset) == 1:
            return 0.0
        hit = cache.get(subset)
        if hit is not None:
            return hit
        best = -math.inf
        for a in subset:
            rest = subset - {a}
            value = solve(rest) + min(dmat[a][b] for b in rest)
            if value > best:
                best = value
        cache[subset] = best
        return best

    return solve(frozenset(range(len(dmat))))


#: Relative slack when snapping near-tied comparisons to the lower index.
#: Keeps greedy/agglomerative branching stable when coordinates carry
#: rounding noise (e.g. a reflected or rescaled copy of a lattice front).
TIE_RTOL = 1e-12


def _weitzman_greedy(dmat: np.ndarray) -> float:
    """Greedy accumulation: repeatedly pull out the most dissimilar point."""
    n = len(dmat)
    work = dmat.copy()
    np.fill_diagonal(work, np.inf)
    active = np.ones(n, dtype=bool)
    total = 0.0
    for _ in range(n - 1):
        nearest = np.where(active, work[:, active].min(axis=1), -np.inf)
        top = nearest.max()
        star = int(np.argmax(nearest >= top - TIE_RTOL * abs(top)))
        total += float(nearest[star])
        active[star] = False
        work[:, star] = np.inf
    return total


def pud(pfa: Pfa, kind: DistanceKind = LpQuasi(0.1)) -> IndicatorResult:
    """Pure diversity: accumulated point-to-set dissimilarity mass.

    Dissimilarity is the minimum L0.1 quasi-norm distance to the rest of
    the set. Small sets (N <= 12) are solved by the exact memoized
    recursion; larger ones by greedy accumulation, which removes the
    currently most dissimilar point and adds its dissimilarity to the
    total. A singleton has value 0.
    """
    n = len(pfa)
    if n == 1:
        return _result("pud", 0.0, exact=True)
    dmat = pairwise_distances(pfa.points, kind)
    if n <= PUD_EXACT_LIMIT:
        return _result("pud", _weitzman_exact(dmat), exact=True)
    return _result("pud", _weitzman_greedy(dmat), exact=False)


# ---------------------------------------------------------------------------
# spd: Solow-Polasky diversity


def spd(pfa: Pfa, theta: float = 10.0) -> IndicatorResult:
    """Total mass of the inverse exponential-kernel matrix, in [1, N].

    The kernel is exp(-theta * Euclidean distance). Coincident points
    make the kernel matrix singular, which is reported as
    DuplicatePoints rather than silently jittered.
    """
    if theta <= 0:
        raise ValueError(f"theta must be positive, got {theta}")
    n = len(pfa)
    if n == 1:
        return _result("spd", 1.0, theta=theta)
    dmat = pairwise_distances(pfa.points)
    _check_no_duplicates(dmat, "spd")
    kernel = np.exp(-theta * dmat)
    try:
        inverse = invert(kernel)
    except SingularMatrix as exc:
        raise DuplicatePoints(f"spd kernel is singular: {exc}") from exc
    return _result("spd", float(inverse.sum()), theta=theta)


# ---------------------------------------------------------------------------
# rse: Riesz s-energy


def rse(pfa: Pfa, s: float) -> IndicatorResult:
    """Riesz s-energy: sum of d^(-s) over ordered point pairs.

    Lower energy means a more even configuration. The natural log of the
    value rides along in the params (key "log_value") since the raw sum
    overflows in high dimensions.
    """
    if s <= 0:
        raise ValueError(f"s must be positive, got {s}")
    if len(pfa) < 2:
        raise EmptyInput("rse needs at least two points")
    dmat = pairwise_distances(pfa.points)
    _check_no_duplicates(dmat, "rse")
    iu = np.triu_indices(len(pfa), k=1)
    value = 2.0 * float(np.sum(dmat[iu] ** (-s)))
    return _result("rse", value, s=s, log_value=math.log(value))


# ---------------------------------------------------------------------------
# eni: grid-entropy of the smoothed density


def _eni_plane(pfa: Pfa) -> np.ndarray:
    """2-D working coordinates: the first two objectives.

    Dropping to (f1, f2) keeps the entropy invariant under the
    componentwise reflection x -> 1 - x for every m, which the rotation
    experiment relies on.
    """
    return pfa.points[:, :2]


def eni(pfa: Pfa, grid: int = 100) -> IndicatorResult:
    """Shannon entropy of a Gaussian-smoothed density on a 2-D grid.

    The grid spans the per-axis range of the working coordinates with
    `grid` cells per axis (an axis with zero spread falls back to unit
    width), and each point contributes a Gaussian with fixed bandwidth
    sigma = 1/grid in normalized units to every cell center. Cell masses
    are normalized to sum 1 and entropy uses the 0 ln 0 = 0 convention,
    so the value lives in [0, ln(grid^2)], larger meaning flatter.
    """
    _require_normalized(pfa, "eni")
    if grid < 2:
        raise ValueError(f"grid must be >= 2, got {grid}")
    plane = _eni_plane(pfa)
    lo = plane.min(axis=0)
    span = plane.max(axis=0) - lo
    span = np.where(span > 0.0, span, 1.0)
    sigma = 1.0 / grid
    offsets = (np.arange(grid) + 0.5) / grid
    weight_axes = []
    for axis in range(2):
        centers = lo[axis] + offsets * span[axis]
        delta = plane[:, axis, None] - centers[None, :]
        weight_axes.append(np.exp(-(delta * delta) / (2.0 * sigma * sigma)))
    density = weight_axes[0].T @ weight_axes[1]
    rho = density / density.sum()
    positive = rho[rho > 0.0]
    return _result("eni", float(-np.sum(positive * np.log(positive))), grid=grid)


# ---------------------------------------------------------------------------
# cpf: coverage over the reference grid


def _simplex_to_hypercube(points: np.ndarray) -> np.ndarray:
    """Project onto the unit simplex, then stick-break into [0,1]^(m-1)."""
    sums = points.sum(axis=1)
    m = points.shape[1]
    safe = sums >= 1e-12
    simplex = np.where(safe[:, None], points / np.where(safe, sums, 1.0)[:, None], 1.0 / m)
    coords = np.empty((len(points), m - 1))
    remaining = np.ones(len(points))
    for j in range(m - 1):
        with np.errstate(invalid="ignore", divide="ignore"):
            q = np.where(remaining > 0.0, simplex[:, j] / remaining, 0.0)
        coords[:, j] = np.clip(q, 0.0, 1.0)
        remaining = remaining - simplex[:, j]
    return coords


def _grid_cells(coords: np.ndarray, cells_per_axis: int) -> set[tuple[int, ...]]:
    idx = np.minimum((coords * cells_per_axis).astype(int), cells_per_axis - 1)
    return set(map(tuple, idx))


def cpf(pfa: Pfa, reference: Pfa) -> IndicatorResult:
    """Fraction of reference-occupied grid cells that the PFA also occupies.

    Each PFA point is first snapped to its Euclidean-closest reference
    point (removing any convergence contribution), both sets are mapped
    through the simplex projection and stick-breaking onto the unit
    hypercube of dimension m - 1, and the score is the share of the
    reference's occupied cells covered by the snapped set. The per-axis
    cell count is max(2, floor(M^(1/(m-1)))) for a reference of size M.
    """
    _require_normalized(pfa, "cpf")
    if reference is None or len(reference) == 0:
        raise EmptyReference("cpf needs a nonempty reference set")
    ref_pts = reference.points
    m = pfa.m
    nearest = np.argmin(cdist(pfa.points, ref_pts), axis=1)
    snapped = ref_pts[nearest]
    cells_per_axis = max(2, int(len(ref_pts) ** (1.0 / (m - 1))))
    covered = _grid_cells(_simplex_to_hypercube(snapped), cells_per_axis)
    target = _grid_cells(_simplex_to_hypercube(ref_pts), cells_per_axis)
    return _result("cpf", len(covered & target) / len(target), m=len(ref_pts),
                   cells_per_axis=cells_per_axis)


# ---------------------------------------------------------------------------
# unl: minimum pairwise separation


def unl(pfa: Pfa, kind: DistanceKind = CHEBYSHEV) -> IndicatorResult:
    """Minimum pairwise distance (Chebyshev by default).

    Registered orientation is minimize; callers wanting the
    conventional larger-separation-is-better reading can flip it via
    the orientation field on the result.
    """
    if len(pfa) < 2:
        raise EmptyInput("unl needs at least two points")
    dmat = pairwise_distances(pfa.points, kind)
    iu = np.triu_indices(len(pfa), k=1)
    return _result("unl", float(dmat[iu].min()))


# ---------------------------------------------------------------------------
# cdi: agglomerative cluster count ratio


def cdi(pfa: Pfa, dbar: float) -> IndicatorResult:
    """Cluster-count ratio after centroid-linkage agglomeration.

    Starting from singleton clusters, the closest pair of cluster
    centroids is merged while their distance stays below `dbar` (the
    merged centroid is the mean of all member points). The indicator is
    the final cluster count over N: 1 when nothing merges, 1/N when
    everything collapses.
    """
    if dbar <= 0:
        raise ValueError(f"dbar must be positive, got {dbar}")
    pts = pfa.points
    centroids = [pts[i].copy() for i in range(len(pts))]
    sizes = [1] * len(pts)
    while len(centroids) > 1:
        arr = np.array(centroids)
        dmat = cdist(arr, arr)
        np.fill_diagonal(dmat, np.inf)
        dmin = dmat.min()
        # lexicographically first pair among near-ties, for stable merge order
        flat = int(np.argmax(dmat <= dmin * (1.0 + TIE_RTOL)))
        i, j = divmod(flat, len(centroids))
        if dmat[i, j] >= dbar:
            break
        if i > j:
            i, j = j, i
        total = sizes[i] + sizes[j]
        centroids[i] = (centroids[i] * sizes[i] + centroids[j] * sizes[j]) / total
        sizes[i] = total
        del centroids[j], sizes[j]
    return _result("cdi", len(centroids) / len(pts), dbar=dbar)


# ---------------------------------------------------------------------------
# kua: k-NN cluster spacing unevenness


def _clipped_neighbors(row: np.ndarray, kk: int) -> set[int]:
    """The k nearest indices, with boundary near-ties resolved by index.

    Strictly closer points always stay; the remaining slots are filled
    from the group tied (within TIE_RTOL) at the k-th distance, lowest
    index first. This keeps the neighborhood graph identical for point
    sets that differ only by coordinate rounding noise.
    """
    order = np.argsort(row, kind="stable")
    boundary_value = row[order[kk - 1]]
    tol = TIE_RTOL * boundary_value
    strict = np.nonzero(row < boundary_value - tol)[0]
    tied = np.nonzero(np.abs(row - boundary_value) <= tol)[0]
    picked = list(strict) + list(tied[: kk - len(strict)])
    return set(int(j) for j in picked)


def _mutual_knn_components(dmat: np.ndarray, k: int) -> list[list[int]]:
    n = len(dmat)
    work = dmat.copy()
    np.fill_diagonal(work, np.inf)
    kk = min(k, n - 1)
    neighbor_sets = [_clipped_neighbors(work[i], kk) for i in range(n)]
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        for j in neighbor_sets[i]:
            if i in neighbor_sets[j]:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return [groups[root] for root in sorted(groups)]


def kua(pfa: Pfa, k: int = 3) -> IndicatorResult:
    """Mean spacing unevenness over mutual k-NN clusters, in [0, 1].

    Points are clustered by the mutual k-nearest-neighbor graph (an edge
    needs both endpoints in each other's clipped neighborhood). Inside a
    cluster each member contributes its nearest-neighbor distance; with
    mean mu and population deviation sigma of those distances the
    cluster scores sigma / (mu + sigma), which is 0 for perfectly even
    spacing. Singleton clusters score 1. The indicator is the mean
    cluster score.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if len(pfa) < 2:
        raise EmptyInput("kua needs at least two points")
    dmat = pairwise_distances(pfa.points)
    scores = []
    for members in _mutual_knn_components(dmat, k):
        if len(members) == 1:
            scores.append(1.0)
            continue
        sub = dmat[np.ix_(members, members)].copy()
        np.fill_diagonal(sub, np.inf)
        nn = sub.min(axis=1)
        mu, sigma = mean_std(nn)
        scores.append(sigma / (mu + sigma) if (mu + sigma) > 0.0 else 0.0)
    return _result("kua", float(np.mean(scores)), k=k)


# ---------------------------------------------------------------------------
# registry evaluation


def _default_weights(m: int) -> np.ndarray:
    from .harness import reference_weights  # deferred: harness imports us too

    return reference_weights(m)


def _min_pairwise_distance(pfa: Pfa) -> float:
    dmat = pairwise_distances(pfa.points)
    iu = np.triu_indices(len(pfa), k=1)
    return float(dmat[iu].min())


def evaluate_all(pfa: Pfa, params: IndicatorParams | None = None) -> list[IndicatorResult]:
    """Run all nine indicators, reporting per-indicator failures in-band.

    Defaults: reference vectors from the built-in cardinality table for
    the PFA's dimension, s = m - 1, the PFA itself as CPF reference, and
    the PFA's own minimum pairwise distance as the CDI threshold (under
    which nothing merges). Failures (e.g. DuplicatePoints for spd/rse on
    coincident points) yield a result with value NaN and the error name,
    leaving the other indicators untouched.
    """
    _require_normalized(pfa, "evaluate_all")
    p = params or IndicatorParams()
    weights = p.weights if p.weights is not None else _default_weights(pfa.m)
    s = p.s if p.s is not None else float(pfa.m - 1)
    reference = p.reference if p.reference is not None else pfa
    dbar = p.dbar if p.dbar is not None else _min_pairwise_distance(pfa)

    calls = {
        "dir": lambda: dir_indicator(pfa, weights),
        "pud": lambda: pud(pfa, p.pud_distance),
        "spd": lambda: spd(pfa, p.theta),
        "rse": lambda: rse(pfa, s),
        "eni": lambda: eni(pfa, p.grid),
        "cpf": lambda: cpf(pfa, reference),
        "unl": lambda: unl(pfa, p.unl_distance),
        "cdi": lambda: cdi(pfa, dbar),
        "kua": lambda: kua(pfa, p.k),
    }
    results = []
    for code in INDICATOR_ORDER:
        try:
            results.append(calls[code]())
        except PfadistError as exc:
            results.append(
                IndicatorResult(code, math.nan, ORIENTATION[code],
                                error=type(exc).__name__)
            )
    return results
