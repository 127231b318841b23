"""Polygon model: loading, containment, reflex structure, triangulation."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridguards.generate import (
    blocking_fixture,
    channel,
    comb,
    concurrent_pairs,
    counterexample_polygon,
    random_polygon,
    triple_pairs,
)
from gridguards.geometry import Point, orient, polygon_area, pt
from gridguards.polygon import (
    CollinearTripleConsecutive,
    DuplicateVertex,
    NonPositiveCoordinates,
    NotSimple,
    PolygonError,
    check_general_position,
    extensions,
    load_polygon,
    opposite_reflex_pairs,
    point_in_polygon,
    reflex_vertices,
    segment_in_polygon,
    triangulate,
)

from oracles import winding_inside


def square():
    return load_polygon([(1, 1), (5, 1), (5, 5), (1, 5)])


def test_load_polygon_basic():
    m = square()
    assert m.n == 4
    assert m.M == 5
    assert m.L == 100


def test_load_polygon_rescales_rationals():
    m = load_polygon([(Fraction(1, 2), Fraction(1, 2)),
                      (Fraction(5, 2), Fraction(1, 2)),
                      (Fraction(5, 2), Fraction(5, 2))])
    # denominators cleared by the lcm scale
    assert all(v.x.denominator == 1 and v.y.denominator == 1
               for v in m.vertices)
    assert m.M == 5


def test_load_polygon_orients_ccw():
    cw = [(1, 1), (1, 5), (5, 5), (5, 1)]
    m = load_polygon(cw)
    assert orient(m.vertices[0], m.vertices[1], m.vertices[2]) > 0


def test_load_polygon_rejections():
    with pytest.raises(PolygonError):
        load_polygon([(1, 1), (2, 2)])
    with pytest.raises(NonPositiveCoordinates):
        load_polygon([(0, 1), (5, 1), (5, 5)])
    with pytest.raises(DuplicateVertex):
        load_polygon([(1, 1), (5, 1), (5, 5), (1, 1)])
    with pytest.raises(CollinearTripleConsecutive):
        load_polygon([(1, 1), (3, 1), (5, 1), (5, 5)])
    with pytest.raises(NotSimple):
        load_polygon([(1, 1), (5, 5), (5, 1), (1, 5)])


coords = st.integers(min_value=1, max_value=40)
inner = st.fractions(min_value=Fraction(1), max_value=Fraction(40),
                     max_denominator=8)


@given(st.builds(Point, inner, inner))
@settings(max_examples=60)
def test_point_in_polygon_matches_winding_oracle(p):
    m = channel()
    assert point_in_polygon(m, p) == winding_inside(list(m.vertices), p)


def test_point_in_polygon_boundary_and_outside():
    m = square()
    assert point_in_polygon(m, pt(3, 3))
    assert point_in_polygon(m, pt(1, 3))       # edge
    assert point_in_polygon(m, pt(5, 5))       # vertex
    assert not point_in_polygon(m, pt(6, 3))
    assert not point_in_polygon(m, pt(3, Fraction(1, 2)))


def test_segment_in_polygon_cases():
    m = load_polygon([(1, 1), (7, 1), (7, 7), (4, 4), (1, 7)])  # notch at top
    assert segment_in_polygon(m, pt(2, 2), pt(6, 2))
    assert not segment_in_polygon(m, pt(2, 6), pt(6, 6))  # crosses the notch
    assert segment_in_polygon(m, pt(1, 1), pt(7, 1))      # along an edge


def test_reflex_vertices_known():
    assert reflex_vertices(square()) == []
    m = load_polygon([(1, 1), (7, 1), (7, 7), (4, 4), (1, 7)])
    assert reflex_vertices(m) == [3]
    assert len(reflex_vertices(comb(3))) == 4


def test_extensions_deduplicated():
    m = square()
    exts = extensions(m)
    # 4 choose 2 = 6 vertex pairs, all on distinct lines here
    assert len(exts) == 6
    keys = set()
    for e in exts:
        a, b = e.defining_vertices
        assert a < b
        keys.add((e.line.a, e.line.b))
    assert len(keys) == 6


def test_opposite_pairs_channel():
    m = channel()
    pairs = opposite_reflex_pairs(m)
    assert [(p.r1, p.r2) for p in pairs] == [(2, 7)]


def test_opposite_pairs_counterexample():
    m = counterexample_polygon()
    pairs = opposite_reflex_pairs(m)
    assert [(p.r1, p.r2) for p in pairs] == [(2, 7)]


def test_opposite_pairs_triple_fixture():
    assert len(opposite_reflex_pairs(triple_pairs())) == 8
    assert len(opposite_reflex_pairs(concurrent_pairs())) == 9


def test_general_position_fixtures():
    assert check_general_position(triple_pairs()).ok
    rep = check_general_position(concurrent_pairs())
    assert not rep.ok
    # the three spike-pair lines are concurrent at one interior point
    pts = [p for p, _ in rep.concurrent_extension_triples]
    assert pt(105, 20) in pts


def test_general_position_collinear_detected():
    # vertices 0, 2 and 3 sit on y = x: (1,1), (9,9), (5,5)
    m = load_polygon([(1, 1), (5, 1), (9, 9), (5, 5), (1, 9)])
    rep = check_general_position(m)
    assert (0, 2, 3) in rep.collinear_triples


def test_triangulate_partitions_area():
    for m in (square(), channel(), comb(4), counterexample_polygon(),
              triple_pairs(), blocking_fixture()[0]):
        tris = triangulate(m)
        assert len(tris) == m.n - 2
        total = sum(polygon_area([a, b, c]) for a, b, c in tris)
        assert total == polygon_area(list(m.vertices))


@given(st.integers(min_value=0, max_value=30))
@settings(max_examples=10, deadline=None)
def test_random_polygon_is_valid(seed):
    m = random_polygon(8, 30, seed=seed)
    assert m.n == 8
    assert m.M <= 30
    # determinism under the seed
    m2 = random_polygon(8, 30, seed=seed)
    assert m.vertices == m2.vertices


def test_comb_needs_k_guards_structure():
    m = comb(5)
    assert m.n == 4 * 5
    assert len(reflex_vertices(m)) == 2 * 5 - 2
