import numpy as np
import pytest

from pfadist import DimensionError, EmptyInput, SingularMatrix, invert, kendall_tau, mean_std


def test_invert_identity():
    assert np.allclose(invert(np.eye(3)), np.eye(3), atol=1e-14)


def test_invert_two_by_two_closed_form():
    c = np.exp(-1.0)
    got = invert([[1.0, c], [c, 1.0]])
    expected = np.array([[1.0, -c], [-c, 1.0]]) / (1.0 - c * c)
    assert np.allclose(got, expected, rtol=1e-12)


def test_invert_singular_rank_one():
    with pytest.raises(SingularMatrix):
        invert([[1.0, 1.0], [1.0, 1.0]])


def test_invert_requires_square():
    with pytest.raises(DimensionError):
        invert(np.ones((2, 3)))


def test_invert_product_is_identity():
    rng = np.random.default_rng(0)
    for n in (2, 5, 20):
        mat = rng.random((n, n)) + n * np.eye(n)
        assert np.max(np.abs(mat @ invert(mat) - np.eye(n))) < 1e-8


def test_invert_involution():
    rng = np.random.default_rng(1)
    for _ in range(10):
        mat = rng.random((6, 6)) + 6 * np.eye(6)
        assert np.allclose(invert(invert(mat)), mat, atol=1e-6)


def test_mean_std_population_convention():
    assert mean_std([3, 2]) == (2.5, 0.5)
    assert mean_std([5, 5, 5]) == (5.0, 0.0)
    assert mean_std([0, 1]) == (0.5, 0.5)


def test_mean_std_empty():
    with pytest.raises(EmptyInput):
        mean_std([])


def test_std_zero_iff_constant():
    rng = np.random.default_rng(2)
    for _ in range(20):
        vals = rng.random(8)
        _, sd = mean_std(vals)
        assert (sd == 0.0) == bool(np.all(vals == vals[0]))


def test_kendall_tau_perfect_orders():
    assert kendall_tau([1, 2, 3], [1, 2, 3]) == 1.0
    assert kendall_tau([1, 2, 3], [3, 2, 1]) == -1.0


def test_kendall_tau_hand_counted():
    # pairs (2,3)/(3,2) discordant, remaining five concordant: (5-1)/6
    assert kendall_tau([1, 2, 3, 4], [1, 3, 2, 4]) == pytest.approx(2 / 3, rel=1e-12)


def test_kendall_tau_length_mismatch():
    with pytest.raises(DimensionError):
        kendall_tau([1, 2], [1, 2, 3])


def test_kendall_tau_antisymmetric():
    rng = np.random.default_rng(3)
    for _ in range(20):
        a, b = rng.random(10), rng.random(10)
        assert kendall_tau(a, -b) == pytest.approx(-kendall_tau(a, b), abs=1e-12)


def test_kendall_tau_constant_reports_zero():
    assert kendall_tau([1, 1, 1, 1], [1, 2, 3, 4]) == 0.0
