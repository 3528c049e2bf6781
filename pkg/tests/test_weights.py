from math import comb

import numpy as np
import pytest

from pfadist import lattice_cardinality, simplex_lattice, two_layer_lattice


def test_m2_h4_enumeration():
    got = simplex_lattice(2, 4)
    expected = [(0, 1), (0.25, 0.75), (0.5, 0.5), (0.75, 0.25), (1, 0)]
    assert [tuple(v) for v in got] == expected


def test_published_cardinalities():
    assert len(simplex_lattice(3, 13)) == 105
    assert len(simplex_lattice(2, 99)) == 100
    assert len(two_layer_lattice(7, 3, 3)) == 168
    assert len(two_layer_lattice(3, 13, 0)) == 105


def test_two_layer_binomial_arithmetic():
    assert len(two_layer_lattice(3, 3, 2)) == comb(5, 2) + comb(4, 2) == 16


def test_h_zero_is_empty():
    out = simplex_lattice(4, 0)
    assert out.shape == (0, 4)


def test_weight_invariant_holds():
    for m, h1, h2 in ((2, 6, 0), (3, 5, 3), (5, 3, 2), (7, 3, 3)):
        vecs = two_layer_lattice(m, h1, h2)
        assert np.all(vecs >= 0.0)
        assert np.max(np.abs(vecs.sum(axis=1) - 1.0)) <= 1e-12


def test_cardinality_formula_sweep():
    for m in range(2, 8):
        for h1 in range(1, 6):
            for h2 in range(0, 4):
                assert len(two_layer_lattice(m, h1, h2)) == lattice_cardinality(m, h1, h2)


def test_lexicographic_ordering():
    vecs = simplex_lattice(3, 4)
    keys = [tuple(np.round(v * 4).astype(int)) for v in vecs]
    assert keys == sorted(keys)


def test_inner_layer_shrunk_toward_centroid():
    m = 3
    outer = simplex_lattice(m, 2)
    both = two_layer_lattice(m, 2, 2)
    inner = both[len(outer):]
    assert np.allclose(inner, outer / 2.0 + 1.0 / (2 * m), atol=1e-15)


def test_invalid_arguments():
    with pytest.raises(ValueError):
        simplex_lattice(1, 4)
    with pytest.raises(ValueError):
        simplex_lattice(3, -1)
    with pytest.raises(ValueError):
        two_layer_lattice(3, 0, 2)
