import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from kaleidoscope.errors import DomainError, PolygonError
from kaleidoscope.norms import (
    LpNorm,
    PolygonNorm,
    StarPolygon,
    TransformedLpNorm,
    lp_score,
    norm_from_dict,
    polygon_score,
    rotation,
    sort_vectors,
    transformed_score,
)

SQUARE = StarPolygon([(1, -1), (1, 1), (-1, 1), (-1, -1)])


def point_in_polygon(pt, verts):
    # even-odd ray casting
    x, y = pt
    inside = False
    n = len(verts)
    for i in range(n):
        (x1, y1), (x2, y2) = verts[i], verts[(i + 1) % n]
        if (y1 > y) != (y2 > y):
            xc = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            if x < xc:
                inside = not inside
    return inside


def bisect_gauge(v, verts, hi=1e6):
    lo = 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if point_in_polygon(v, np.asarray(verts) * mid):
            hi = mid
        else:
            lo = mid
    return hi


def test_lp_examples():
    assert lp_score((3, 4), 2) == 5
    for p in (0.3, 1, 2, 7):
        assert lp_score((1, 0), p) == pytest.approx(1)
    assert lp_score((1, 1), 0.5) == pytest.approx(4)
    with pytest.raises(DomainError):
        lp_score((1, 1), 0)


def test_transformed_examples():
    v = np.array([[3, 4], [-2, 7], [5, 0]])
    np.testing.assert_allclose(transformed_score(v, np.eye(2), 1.5), lp_score(v, 1.5))
    assert transformed_score((1, 0), rotation(15), 2) == pytest.approx(1)
    assert transformed_score((2, 0), [[0.5, 0], [0, 1]], 2) == pytest.approx(1)
    with pytest.raises(DomainError):
        transformed_score((1, 0), [[1, 2], [2, 4]], 2)


def test_rotation_is_anticlockwise():
    np.testing.assert_allclose(rotation(90) @ [1, 0], [0, 1], atol=1e-15)


def test_polygon_examples():
    star = StarPolygon.star(4, 3.0, 1.0, phase=0.3)
    for v in star.vertices:
        assert polygon_score(v, star) == pytest.approx(1)
        assert polygon_score(2 * v, star) == pytest.approx(2)
    assert polygon_score((1, 0), SQUARE) == pytest.approx(1)
    assert polygon_score((3, 3), SQUARE) == pytest.approx(3)
    with pytest.raises(DomainError):
        polygon_score((0, 0), SQUARE)


@settings(max_examples=200, deadline=None)
@given(st.integers(-30, 30), st.integers(-30, 30), st.integers(3, 7), st.floats(0.2, 0.9))
def test_polygon_matches_bisection(x, y, points, inner):
    assume((x, y) != (0, 0))
    star = StarPolygon.star(points, 2.0, 2.0 * inner, phase=0.1)
    assert polygon_score((x, y), star) == pytest.approx(
        bisect_gauge((x, y), star.vertices), rel=1e-9
    )


def test_polygon_validation():
    with pytest.raises(PolygonError) as err:
        StarPolygon([(1, 0), (0, 1), (-1, 0), (-0.5, 0.2), (0, -1)])
    assert err.value.vertex is not None
    with pytest.raises(PolygonError):
        # clockwise
        StarPolygon([(1, 0), (0, -1), (-1, 0), (0, 1)])
    with pytest.raises(PolygonError):
        # origin outside: all vertices to the right of the origin
        StarPolygon([(1, -1), (2, 0), (1, 1)])
    with pytest.raises(PolygonError, match="wind"):
        # pentagram: every turn is anticlockwise but it circles the origin twice
        StarPolygon(StarPolygon.regular(5).vertices[[0, 2, 4, 1, 3]])


def test_central_symmetry():
    assert SQUARE.centrally_symmetric
    assert StarPolygon.star(4, 1, 0.4).centrally_symmetric
    assert not StarPolygon.star(3, 1, 0.4).centrally_symmetric


SPECS = [
    LpNorm(2),
    LpNorm(1),
    LpNorm(0.5),
    TransformedLpNorm(0.5, rotation(15)),
    TransformedLpNorm(2, [[0.5, 0], [0, 1]]),
    PolygonNorm(StarPolygon.star(4, 1.0, 0.4, phase=np.pi / 8)),
    PolygonNorm(SQUARE),
]


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: type(s).__name__)
@settings(max_examples=100, deadline=None)
@given(x=st.integers(-50, 50), y=st.integers(-50, 50), t=st.integers(1, 9))
def test_homogeneous_and_symmetric(spec, x, y, t):
    assume((x, y) != (0, 0))
    s = spec.score((x, y))
    assert s > 0
    assert spec.score((t * x, t * y)) == pytest.approx(t * s, rel=1e-12)
    assert spec.score((-x, -y)) == pytest.approx(s, rel=1e-12)


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: type(s).__name__)
def test_dict_round_trip(spec):
    back = norm_from_dict(spec.to_dict())
    v = np.array([[3, 1], [-2, 5]])
    np.testing.assert_allclose(back.score(v), spec.score(v))


def test_sort_examples():
    assert sort_vectors([(1, 0), (2, 1), (1, 1)], LpNorm(2)) == [(1, 0), (1, 1), (2, 1)]
    assert sort_vectors([(4, 7)], LpNorm(2)) == [(4, 7)]
    assert sort_vectors([(0, 1), (1, 0)], LpNorm(2)) == [(1, 0), (0, 1)]
    assert sort_vectors([], LpNorm(2)) == []
    with pytest.raises(DomainError):
        sort_vectors([(0, 0)], LpNorm(2))


@given(st.lists(st.tuples(st.integers(-20, 20), st.integers(-20, 20)), min_size=1, max_size=60))
def test_sort_is_permutation_and_squared_equivalent(vecs):
    vecs = [v for v in vecs if v != (0, 0)]
    assume(vecs)
    out = sort_vectors(vecs, LpNorm(2))
    assert sorted(out) == sorted(vecs)
    # ordering by the squared length with the same tie-break
    ref = sorted(vecs, key=lambda v: (v[0] ** 2 + v[1] ** 2, np.arctan2(v[1], v[0]), v[0], v[1]))
    assert out == ref
