import itertools
from fractions import Fraction

import pytest

from ehrhartkit import _linalg
from ehrhartkit.errors import InvalidArgumentError, UnsupportedInputError
from ehrhartkit.families import catalogue_polytope, p5, reeve, segment, CATALOGUE_PRINTED
from ehrhartkit.polytope import HRep, VPolytope, contains, facets, make_polytope, product

SQUARE = make_polytope(2, [(0, 0), (1, 0), (0, 1), (1, 1)])


def test_reeve_tetrahedron_is_simplex():
    Q = make_polytope(3, [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 13)])
    assert Q.dim == 3 and Q.is_simplex


def test_segment_and_point():
    assert make_polytope(1, [0, 7]).dim == 1
    assert make_polytope(3, [(1, 2, 3)]).dim == 0
    assert SQUARE.dim == 2 and not SQUARE.is_simplex


def test_p5_has_seven_vertices():
    P = p5()
    assert P.dim == 5 and len(P.vertices) == 7 and not P.is_simplex


def test_non_vertices_are_dropped():
    P = make_polytope(2, [(0, 0), (2, 0), (0, 2), (1, 1), (1, 0), (0, 0)])
    assert len(P.points) == 5
    assert sorted(P.vertices) == [(0, 0), (0, 2), (2, 0)]
    assert P.is_simplex


@pytest.mark.parametrize("points", [[], [(1, 2), (3,)]])
def test_invalid_points(points):
    with pytest.raises(InvalidArgumentError):
        make_polytope(2, points)


def test_non_integer_coordinates():
    with pytest.raises(InvalidArgumentError):
        make_polytope(1, [(0,), (1.5,)])


def test_facets_reeve13():
    expected = HRep(
        (),
        (((0, 0, -1), 0), ((-13, 0, 1), 0), ((0, -13, 1), 0), ((13, 13, -1), 13)),
    )
    H = facets(reeve(13))
    assert H.same_as(expected)
    for v in reeve(13).vertices:
        assert contains(H, v, 1)


def test_facets_square_and_segment():
    assert facets(SQUARE).same_as(
        HRep((), (((-1, 0), 0), ((1, 0), 1), ((0, -1), 0), ((0, 1), 1)))
    )
    assert facets(segment(5)).same_as(HRep((), (((-1,), 0), ((1,), 5))))


def test_facets_lower_dimensional():
    # a triangle inside the plane x + y + z = 1
    T = make_polytope(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    H = facets(T)
    assert T.dim == 2 and H.equalities == (((1, 1, 1), 1),)
    assert len(H.inequalities) == 3
    assert contains(H, (0, 0, 2), 2) and not contains(H, (1, 1, 1), 2)


def test_facets_of_point_unsupported():
    with pytest.raises(UnsupportedInputError):
        facets(make_polytope(2, [(1, 1)]))


def test_facet_enumeration_limit():
    pts = [(x, y) for x in range(5) for y in range(5)]
    circle = [p for p in pts if (p[0] - 2) ** 2 + (p[1] - 2) ** 2 <= 4]
    many = circle + [(x, y) for x in (10, 11, 12) for y in (10, 11, 12)]
    with pytest.raises(UnsupportedInputError):
        make_polytope(2, many)


def test_contains_examples():
    H = facets(reeve(13))
    assert contains(H, (1, 1, 13), 1)
    assert not contains(H, (1, 1, 14), 1)
    L = facets(segment(2))
    assert contains(L, (5,), 3) and not contains(L, (7,), 3)
    assert contains(L, (1,), 1, strict=True) and not contains(L, (2,), 1, strict=True)


def test_product_rectangle():
    R = product(segment(2), segment(3))
    assert sorted(R.vertices) == [(0, 0), (0, 3), (2, 0), (2, 3)]
    assert R.dim == 2 and R.ambient_dim == 2


def test_product_with_point():
    pt = make_polytope(2, [(4, 5)])
    R = product(reeve(13), pt)
    assert R.dim == 3 and R.ambient_dim == 5
    assert contains(facets(R), (1, 1, 13, 8, 10), 2)
    assert not contains(facets(R), (0, 0, 0, 4, 5), 2)


def test_product_l10_l10_q100():
    P = catalogue_polytope(5, (2, 3))
    assert P.dim == 5 and len(P.vertices) == 16
    assert [f.describe() for f in P.factors] == ["l_10", "l_10", "Q_100"]


def _catalogue():
    return [catalogue_polytope(*key) for key in CATALOGUE_PRINTED] + [reeve(13), p5()]


@pytest.mark.parametrize("P", _catalogue(), ids=lambda P: P.describe())
def test_facets_are_valid_and_tight(P):
    H = facets(P)
    for v in P.vertices:
        assert contains(H, v, 1)
    for a, b in H.inequalities:
        tight = [v for v in P.vertices if sum(x * y for x, y in zip(a, v)) == b]
        diffs = [[x - y for x, y in zip(v, tight[0])] for v in tight[1:]]
        # a facet carries d affinely independent vertices
        assert _linalg.rank(diffs) == P.dim - 1


def test_product_dimension_and_vertex_count():
    items = [segment(3), reeve(12), p5(), SQUARE]
    for P, Q in itertools.product(items, repeat=2):
        R = product(P, Q)
        assert R.dim == P.dim + Q.dim
        assert len(R.vertices) == len(P.vertices) * len(Q.vertices)


def test_dilation_consistency():
    P = make_polytope(2, [(0, 0), (3, 1), (1, 2)])
    H = facets(P)
    n = 3
    for z in itertools.product(range(-1, 11), repeat=2):
        rational = [Fraction(c, n) for c in z]
        inside = all(sum(x * y for x, y in zip(a, rational)) <= b for a, b in H.inequalities)
        assert contains(H, z, n) == inside


def test_polytope_json_round_trip():
    P = catalogue_polytope(6, (2, 3))
    Q = VPolytope.from_json(P.to_json())
    assert Q == P and Q.is_product and len(Q.factors) == 4
    assert HRep.from_json(facets(P).to_json()) == facets(P)
    plain = VPolytope.from_json({"ambient_dim": 3, "points": [[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 13]]})
    assert plain == reeve(13)


def test_polytope_json_rejects_mismatched_factors():
    data = product(segment(2), segment(3)).to_json()
    data["points"][0] = [9, 9]
    with pytest.raises(InvalidArgumentError):
        VPolytope.from_json(data)
