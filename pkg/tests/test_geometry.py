"""Exact-arithmetic geometric primitives: unit cases and properties."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gridguards.geometry import (
    DirectedLine,
    IDENTICAL,
    IdenticalDirectionError,
    PARALLEL,
    Point,
    clip_convex_by_halfplane,
    convex_intersection,
    dist_sq,
    dist_sq_point_line,
    line_intersection,
    orient,
    point_on_segment,
    polygon_area,
    polygon_signed_area2,
    primitive_direction,
    pt,
    ray_segment_params,
    segment_intersection_point,
    segments_intersect,
    sort_directions_ccw,
    sqrt_lower_bound,
    tan_angle_between_cmp,
)

coords = st.fractions(min_value=-50, max_value=50, max_denominator=8)
points = st.builds(Point, coords, coords)


@given(points, points, points)
def test_orient_antisymmetric(p, q, r):
    assert orient(p, q, r) == -orient(p, r, q)


@given(points, points, points, points)
def test_orient_translation_invariant(p, q, r, t):
    assert orient(p, q, r) == orient(p + t, q + t, r + t)


@given(points, points)
def test_dist_sq_positive_definite(p, q):
    d = dist_sq(p, q)
    assert d >= 0
    assert (d == 0) == (p == q)


def test_line_intersection_cases():
    l1 = DirectedLine(pt(0, 0), pt(2, 2))
    l2 = DirectedLine(pt(0, 2), pt(2, 0))
    assert line_intersection(l1, l2) == pt(1, 1)
    l3 = DirectedLine(pt(0, 1), pt(2, 3))
    assert line_intersection(l1, l3) is PARALLEL
    l4 = DirectedLine(pt(5, 5), pt(7, 7))
    assert line_intersection(l1, l4) is IDENTICAL


@given(points, points, points, points)
def test_line_intersection_on_both_lines(a, b, c, d):
    if a == b or c == d:
        return
    l1, l2 = DirectedLine(a, b), DirectedLine(c, d)
    p = line_intersection(l1, l2)
    if isinstance(p, Point):
        assert orient(a, b, p) == 0
        assert orient(c, d, p) == 0


def test_tan_angle_cmp_perpendicular_is_greater():
    l1 = DirectedLine(pt(0, 0), pt(1, 0))
    l2 = DirectedLine(pt(0, 0), pt(0, 1))
    assert tan_angle_between_cmp(l1, l2, Fraction(10 ** 9)) == 1


def test_tan_angle_cmp_exact_threshold():
    l1 = DirectedLine(pt(0, 0), pt(1, 0))
    l2 = DirectedLine(pt(0, 0), pt(3, 1))  # tan = 1/3
    assert tan_angle_between_cmp(l1, l2, Fraction(1, 3)) == 0
    assert tan_angle_between_cmp(l1, l2, Fraction(1, 4)) == 1
    assert tan_angle_between_cmp(l1, l2, Fraction(1, 2)) == -1


def test_tan_angle_cmp_identical_direction_raises():
    l1 = DirectedLine(pt(0, 0), pt(1, 1))
    l2 = DirectedLine(pt(5, 0), pt(6, 1))
    with pytest.raises(IdenticalDirectionError):
        tan_angle_between_cmp(l1, l2, Fraction(1))


@given(points, points, st.fractions(min_value=0, max_value=1,
                                    max_denominator=16))
def test_point_on_segment_parameterized(a, b, t):
    p = a + (b - a).scaled(t)
    assert point_on_segment(p, a, b)


def test_segments_intersect_cases():
    # proper crossing, shared endpoint, collinear overlap, disjoint
    assert segments_intersect(pt(0, 0), pt(2, 2), pt(0, 2), pt(2, 0))
    assert segments_intersect(pt(0, 0), pt(1, 0), pt(1, 0), pt(2, 5))
    assert segments_intersect(pt(0, 0), pt(3, 0), pt(1, 0), pt(5, 0))
    assert not segments_intersect(pt(0, 0), pt(1, 0), pt(0, 1), pt(1, 1))


@given(points, points, points, points)
def test_segment_intersection_point_lies_on_both(a, b, c, d):
    p = segment_intersection_point(a, b, c, d)
    if p is not None:
        assert point_on_segment(p, a, b)
        assert point_on_segment(p, c, d)


def test_ray_segment_params_cases():
    # crossing, miss, collinear overlap clipped at the apex
    assert ray_segment_params(pt(0, 0), pt(1, 0), pt(2, -1), pt(2, 1)) == [2]
    assert ray_segment_params(pt(0, 0), pt(1, 0), pt(-1, -1), pt(-1, 1)) == []
    assert ray_segment_params(pt(0, 0), pt(1, 0), pt(-2, 0), pt(3, 0)) == [3]


def test_polygon_area_square():
    sq = [pt(0, 0), pt(4, 0), pt(4, 4), pt(0, 4)]
    assert polygon_signed_area2(sq) == 32
    assert polygon_area(sq) == 16
    assert polygon_signed_area2(list(reversed(sq))) == -32


@given(points, points)
def test_clip_square_by_halfplane(a, b):
    if a == b:
        return
    sq = [pt(-60, -60), pt(60, -60), pt(60, 60), pt(-60, 60)]
    ell = DirectedLine(a, b)
    for side in (-1, 1):
        out = clip_convex_by_halfplane(sq, ell, side)
        assert polygon_area(out) <= polygon_area(sq) if len(out) >= 3 else True
        for p in out:
            assert side * ell.side_of(p) >= 0


def test_convex_intersection_squares():
    a = [pt(0, 0), pt(4, 0), pt(4, 4), pt(0, 4)]
    b = [pt(2, 2), pt(6, 2), pt(6, 6), pt(2, 6)]
    inter = convex_intersection(a, b)
    assert polygon_area(inter) == 4


@given(st.integers(-20, 20), st.integers(-20, 20))
def test_primitive_direction(x, y):
    if x == 0 and y == 0:
        return
    px, py = primitive_direction(pt(x, y))
    from math import gcd
    assert gcd(abs(px), abs(py)) == 1
    # positive multiple of the input
    assert px * y == py * x
    assert px * x + py * y > 0


def test_sort_directions_ccw_order():
    dirs = [(0, 1), (1, 0), (-1, 0), (0, -1), (1, 1), (-2, 1)]
    out = sort_directions_ccw(dirs)
    assert out == [(1, 0), (1, 1), (0, 1), (-2, 1), (-1, 0), (0, -1)]


@given(st.fractions(min_value=0, max_value=10 ** 6, max_denominator=10 ** 6))
def test_sqrt_lower_bound(q):
    b = sqrt_lower_bound(q)
    assert b * b <= q
    if q > 0:
        assert b > 0


def test_sqrt_lower_bound_tiny():
    q = Fraction(1, 10 ** 30)
    b = sqrt_lower_bound(q)
    assert 0 < b and b * b <= q


@given(points, points, points)
def test_dist_sq_point_line_zero_iff_on_line(a, b, v):
    if a == b:
        return
    ell = DirectedLine(a, b)
    d = dist_sq_point_line(v, ell)
    assert d >= 0
    assert (d == 0) == (orient(a, b, v) == 0)
