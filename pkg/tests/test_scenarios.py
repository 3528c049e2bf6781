import numpy as np
import pytest

from pfadist import (
    DimensionError,
    InsufficientDense,
    Pfa,
    UnsupportedFront,
    asf_value,
    degrade_uniformity,
    dense_sample,
    pairwise_distances,
    pathology,
    shrink_coverage,
    simplex_lattice,
    structured_front,
    uniform_subset,
)
from pfadist.geometry import normalize


def _min_max_pairwise(pfa):
    d = pairwise_distances(pfa.points)
    iu = np.triu_indices(len(pfa), k=1)
    return d[iu].min(), d[iu].max()


# ---------------------------------------------------------------------------
# coverage shrink


def test_shrink_identity_at_one():
    front = structured_front("linear", simplex_lattice(3, 6))
    assert shrink_coverage(front, 1.0) is front


def test_shrink_hand_value():
    front = Pfa([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]], normalized=True)
    out = shrink_coverage(front, 0.4)
    assert np.allclose(out.points[0], [0.6, 0.2, 0.2], atol=1e-15)
    assert np.allclose(out.points.sum(axis=1), 1.0, atol=1e-12)


def test_shrink_preserves_sum_and_cardinality():
    front = structured_front("dtlz1", simplex_lattice(4, 5))
    for gamma in (0.2, 0.7):
        out = shrink_coverage(front, gamma)
        assert len(out) == len(front)
        assert np.allclose(out.points.sum(axis=1), 0.5, atol=1e-12)


def test_shrink_scales_pairwise_distances():
    front = structured_front("linear", simplex_lattice(3, 9))
    lo1, hi1 = _min_max_pairwise(front)
    lo, hi = _min_max_pairwise(shrink_coverage(front, 0.3))
    assert lo == pytest.approx(0.3 * lo1, rel=1e-12)
    assert hi == pytest.approx(0.3 * hi1, rel=1e-12)


def test_shrink_rejects_non_hyperplane():
    sphere = structured_front("dtlz2", simplex_lattice(3, 6))
    with pytest.raises(UnsupportedFront):
        shrink_coverage(sphere, 0.5)


def test_shrink_rejects_bad_gamma():
    front = structured_front("linear", simplex_lattice(2, 4))
    with pytest.raises(ValueError):
        shrink_coverage(front, 0.0)


# ---------------------------------------------------------------------------
# achievement scalarizing function


def test_asf_hand_values():
    assert asf_value([0.2, 0.8], [0.5, 0.5], [0.0, 0.0]) == pytest.approx(0.4)
    assert asf_value([0.3, 0.7], [0.5, 0.5], [0.3, 0.7]) == 0.0
    assert asf_value([0.3, 0.9], [1.0, 0.0], [0.0, 0.0]) == pytest.approx(0.3)


def test_asf_dimension_mismatch():
    with pytest.raises(DimensionError):
        asf_value([0.1, 0.2], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0])


# ---------------------------------------------------------------------------
# uniform subsets


def test_subset_of_matching_lattice_is_identity():
    weights = simplex_lattice(3, 7)
    dense = structured_front("linear", weights)
    out = uniform_subset(dense, weights)
    assert sorted(map(tuple, out.points)) == sorted(map(tuple, dense.points))


def test_subset_single_weight_matches_exhaustive_argmin():
    dense = dense_sample("linear", 3, 500, seed=21)
    w = np.array([[1 / 3, 1 / 3, 1 / 3]])
    out = uniform_subset(dense, w)
    # independent oracle: evaluate the scalarization over every dense point
    floor = 0.5 * w[w > 0].min()
    scores = np.max(np.abs(dense.points) / np.maximum(w[0], floor), axis=1)
    assert np.array_equal(out.points[0], dense.points[np.argmin(scores)])


def test_subset_degenerate_single_point():
    dense = Pfa([[0.4, 0.6]], normalized=True)
    out = uniform_subset(dense, np.array([[0.5, 0.5]]))
    assert np.array_equal(out.points, dense.points)


def test_subset_needs_enough_points():
    dense = Pfa([[0.4, 0.6]], normalized=True)
    with pytest.raises(InsufficientDense):
        uniform_subset(dense, simplex_lattice(2, 4))


def test_subset_distinct_points():
    dense = dense_sample("linear", 2, 800, seed=2)
    out = uniform_subset(dense, simplex_lattice(2, 49))
    assert len(np.unique(out.points, axis=0)) == len(out)


# ---------------------------------------------------------------------------
# uniformity degradation


def _uniform_and_dense(seed=5):
    dense = dense_sample("linear", 2, 600, seed=seed)
    uniform = uniform_subset(dense, simplex_lattice(2, 49))
    return uniform, dense


def test_degrade_full_beta_returns_uniform():
    uniform, dense = _uniform_and_dense()
    out = degrade_uniformity(uniform, dense, 100, seed=1)
    assert out is uniform


def test_degrade_zero_beta_all_random():
    uniform, dense = _uniform_and_dense()
    out = degrade_uniformity(uniform, dense, 0, seed=1)
    assert len(out) == len(uniform)
    dense_set = set(map(tuple, dense.points))
    assert all(tuple(p) in dense_set for p in out.points)


def test_degrade_deterministic_and_duplicate_free():
    uniform, dense = _uniform_and_dense()
    a = degrade_uniformity(uniform, dense, 40, seed=9)
    b = degrade_uniformity(uniform, dense, 40, seed=9)
    assert np.array_equal(a.points, b.points)
    assert len(np.unique(a.points, axis=0)) == len(uniform)


def test_degrade_cardinality_preserved():
    uniform, dense = _uniform_and_dense()
    for beta in (10, 30, 70, 90):
        assert len(degrade_uniformity(uniform, dense, beta, seed=3)) == len(uniform)


def test_degrade_insufficient_dense():
    uniform, _ = _uniform_and_dense()
    tiny_pool = Pfa(uniform.points[:5], normalized=True)
    with pytest.raises(InsufficientDense):
        degrade_uniformity(uniform, tiny_pool, 10, seed=0)


# ---------------------------------------------------------------------------
# pathological distributions


def test_case1_full_size_is_identity():
    dense = dense_sample("linear", 2, 60, seed=0)
    out = pathology(dense, 1, 60, seed=0)
    assert np.array_equal(np.sort(out.points, axis=0), np.sort(dense.points, axis=0))


def test_case1_concentrates_on_boundary():
    dense = normalize(dense_sample("linear", 3, 1500, seed=4))
    out = pathology(dense, 1, 90, seed=0)
    near_edge = (out.points.min(axis=1) < 0.05).mean()
    assert near_edge > 0.9


def test_case2_contains_extremes_and_matches_oracle():
    dense = dense_sample("linear", 2, 400, seed=7)
    n = 50
    out = pathology(dense, 2, n, seed=0)
    pts = dense.points
    extremes = [pts[np.argmax(pts[:, j])] for j in range(2)]
    out_set = set(map(tuple, out.points))
    for e in extremes:
        assert tuple(e) in out_set
    # independent reconstruction of the claiming loop
    expected = []
    claimed = np.zeros(len(pts), dtype=bool)
    for c in extremes:
        want = min(int(np.ceil(n / 2)), n - len(expected))
        dist = np.linalg.norm(pts - c, axis=1)
        dist[claimed] = np.inf
        take = np.argsort(dist, kind="stable")[:want]
        claimed[take] = True
        expected.extend(map(tuple, pts[take]))
    assert sorted(out_set) == sorted(set(expected))


def test_case3_deterministic():
    dense = dense_sample("dtlz1", 3, 500, seed=8)
    a = pathology(dense, 3, 60, seed=123)
    b = pathology(dense, 3, 60, seed=123)
    assert np.array_equal(a.points, b.points)
    c = pathology(dense, 3, 60, seed=124)
    assert not np.array_equal(a.points, c.points)


def test_pathology_validation():
    dense = dense_sample("linear", 2, 50, seed=0)
    with pytest.raises(ValueError):
        pathology(dense, 4, 10, seed=0)
    with pytest.raises(InsufficientDense):
        pathology(dense, 1, 51, seed=0)
