import numpy as np
import pytest

from pfadist import (
    DegenerateWeight,
    EmptyInput,
    ParseError,
    dense_sample,
    load_external,
    simplex_lattice,
    structured_front,
)


def test_linear_identity_map():
    out = structured_front("linear", [[0.25, 0.75]])
    assert np.array_equal(out.points, [[0.25, 0.75]])
    assert out.points.sum() == pytest.approx(1.0, abs=1e-12)


def test_inverted_reflection():
    out = structured_front("inverted", [[1.0, 0.0, 0.0]])
    assert np.array_equal(out.points, [[0.0, 1.0, 1.0]])
    assert out.points.sum() == pytest.approx(2.0, abs=1e-12)


def test_sphere_unit_norm():
    out = structured_front("dtlz2", [[0.5, 0.5]])
    assert np.allclose(out.points, [[1 / np.sqrt(2)] * 2], rtol=1e-12)
    assert np.linalg.norm(out.points[0]) == pytest.approx(1.0, abs=1e-12)


def test_structured_fronts_on_their_manifolds():
    weights = simplex_lattice(3, 9)
    linear = structured_front("linear", weights)
    assert np.max(np.abs(linear.points.sum(axis=1) - 1.0)) <= 1e-12
    inverted = structured_front("inverted", weights)
    assert np.array_equal(inverted.points, 1.0 - linear.points)


def test_sphere_rejects_zero_weight():
    with pytest.raises(DegenerateWeight):
        structured_front("dtlz2", [[0.0, 0.0]])


def test_dense_sample_manifold_membership():
    dtlz1 = dense_sample("dtlz1", 3, 1000, seed=11)
    assert np.max(np.abs(dtlz1.points.sum(axis=1) - 0.5)) <= 1e-12
    sphere = dense_sample("dtlz2", 3, 1000, seed=11)
    assert np.max(np.abs(np.linalg.norm(sphere.points, axis=1) - 1.0)) <= 1e-12


def test_dense_sample_deterministic():
    a = dense_sample("linear", 4, 500, seed=3)
    b = dense_sample("linear", 4, 500, seed=3)
    assert np.array_equal(a.points, b.points)
    c = dense_sample("linear", 4, 500, seed=4)
    assert not np.array_equal(a.points, c.points)


def test_load_external_roundtrip(tmp_path):
    path = tmp_path / "front.csv"
    rows = ["f1,f2,f3"] + [f"0.{i},0.{9 - i},0.5" for i in range(10)]
    path.write_text("\n".join(rows) + "\n")
    out = load_external(path)
    assert out.m == 3 and len(out) == 10
    assert not out.normalized


def test_load_external_ragged_row(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("f1,f2,f3\n0.1,0.2,0.3\n0.4,0.5\n")
    with pytest.raises(ParseError) as err:
        load_external(path)
    assert err.value.line == 3


def test_load_external_nan(tmp_path):
    path = tmp_path / "nan.csv"
    path.write_text("f1,f2\n0.1,NaN\n")
    with pytest.raises(ParseError):
        load_external(path)


def test_load_external_empty(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("# only a comment\n")
    with pytest.raises(EmptyInput):
        load_external(path)
