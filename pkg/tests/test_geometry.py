import numpy as np
import pytest

from pfadist import (
    CHEBYSHEV,
    EUCLIDEAN,
    DegenerateAxisWarning,
    DimensionError,
    LpQuasi,
    Pfa,
    distance,
    nondominated_filter,
    normalize,
    pairwise_distances,
)

ALL_KINDS = (EUCLIDEAN, CHEBYSHEV, LpQuasi(0.1), LpQuasi(2.0))


def test_euclidean_closed_form():
    assert distance((0, 0), (1, 1), EUCLIDEAN) == pytest.approx(np.sqrt(2), rel=1e-12)


def test_chebyshev_max_component():
    assert distance((0, 0), (0.3, 0.9), CHEBYSHEV) == pytest.approx(0.9, rel=1e-12)


def test_lp_quasi_hand_value():
    # (|1|^0.1 + |1|^0.1)^(1/0.1) = 2^10
    got = distance((0, 0), (1, 1), LpQuasi(0.1))
    assert got == pytest.approx(1024.0, rel=1e-12)
    # direct-summation cross-check
    direct = (abs(1.0) ** 0.1 + abs(1.0) ** 0.1) ** 10.0
    assert got == pytest.approx(direct, rel=1e-14)


def test_distance_dimension_mismatch():
    with pytest.raises(DimensionError):
        distance((0, 0), (1, 1, 1))


def test_lp_quasi_requires_positive_exponent():
    with pytest.raises(ValueError):
        LpQuasi(0.0)


def test_distance_symmetry_and_identity():
    rng = np.random.default_rng(0)
    for _ in range(50):
        a, b = rng.random(3), rng.random(3)
        for kind in ALL_KINDS:
            d_ab = distance(a, b, kind)
            assert d_ab == pytest.approx(distance(b, a, kind), rel=1e-12)
            assert d_ab >= 0.0
            assert distance(a, a, kind) == 0.0


def test_triangle_inequality_metric_kinds_only():
    rng = np.random.default_rng(1)
    lp_violations = 0
    for _ in range(200):
        a, b, c = rng.random(2), rng.random(2), rng.random(2)
        for kind in (EUCLIDEAN, CHEBYSHEV):
            assert distance(a, c, kind) <= (
                distance(a, b, kind) + distance(b, c, kind) + 1e-12)
        if distance(a, c, LpQuasi(0.1)) > (
                distance(a, b, LpQuasi(0.1)) + distance(b, c, LpQuasi(0.1))):
            lp_violations += 1
    # p < 1 is a quasi-norm: the triangle inequality genuinely fails
    assert lp_violations > 0


def test_reflection_isometry_exact_on_dyadic_points():
    # coordinates k/64 keep 1 - x exact, so the identity holds bitwise
    rng = np.random.default_rng(2)
    for _ in range(50):
        a = rng.integers(0, 65, size=3) / 64.0
        b = rng.integers(0, 65, size=3) / 64.0
        for kind in ALL_KINDS:
            assert distance(a, b, kind) == distance(1.0 - a, 1.0 - b, kind)


def test_pairwise_matches_scalar():
    rng = np.random.default_rng(3)
    pts = rng.random((6, 3))
    for kind in ALL_KINDS:
        mat = pairwise_distances(pts, kind)
        for i in range(6):
            for j in range(6):
                assert mat[i, j] == pytest.approx(
                    distance(pts[i], pts[j], kind), rel=1e-12, abs=1e-15)


# ---------------------------------------------------------------------------
# normalization


def test_normalize_min_max():
    out = normalize(Pfa([[2, 4], [6, 8]]))
    assert np.array_equal(out.points, [[0, 0], [1, 1]])
    assert out.normalized


def test_normalize_idempotent():
    rng = np.random.default_rng(4)
    first = normalize(Pfa(rng.random((20, 3)) * 7 - 3))
    second = normalize(first)
    assert np.array_equal(first.points, second.points)


def test_normalize_degenerate_axis_warns_and_zeroes():
    with pytest.warns(DegenerateAxisWarning):
        out = normalize(Pfa([[1, 5], [1, 9]]))
    assert np.array_equal(out.points, [[0, 0], [0, 1]])
    assert out.degenerate_axes == (0,)


# ---------------------------------------------------------------------------
# dominance


def test_filter_drops_dominated_point():
    out = nondominated_filter(Pfa([[0, 1], [1, 0], [0.5, 0.5], [0.6, 0.6]]))
    assert sorted(map(tuple, out.points)) == [(0, 1), (0.5, 0.5), (1, 0)]


def test_filter_keeps_mutually_nondominated():
    pts = [[0, 1], [ 0.3, 0.7], [1, 0]]
    out = nondominated_filter(Pfa(pts))
    assert np.array_equal(out.points, pts)


def test_filter_dominating_pair():
    out = nondominated_filter(Pfa([[0, 0], [1, 1]]))
    assert np.array_equal(out.points, [[0, 0]])


def test_filter_no_dominated_pair_remains():
    rng = np.random.default_rng(5)
    for trial in range(20):
        pts = rng.random((30, 3))
        out = nondominated_filter(Pfa(pts)).points
        for i in range(len(out)):
            for j in range(len(out)):
                if i != j:
                    assert not (np.all(out[i] <= out[j]) and np.any(out[i] < out[j]))


def test_filter_keeps_exact_duplicates():
    out = nondominated_filter(Pfa([[0.2, 0.8], [0.2, 0.8], [0.9, 0.9]]))
    assert len(out) == 2


# ---------------------------------------------------------------------------
# Pfa invariants


def test_pfa_rejects_single_objective():
    with pytest.raises(DimensionError):
        Pfa([[1.0], [2.0]])


def test_pfa_rejects_nonfinite():
    with pytest.raises(ValueError):
        Pfa([[0.0, np.nan]])


def test_pfa_normalized_flag_checks_range():
    with pytest.raises(ValueError):
        Pfa([[0.0, 1.5]], normalized=True)


def test_pfa_points_are_frozen():
    pfa = Pfa([[0.0, 1.0]])
    with pytest.raises(ValueError):
        pfa.points[0, 0] = 5.0
