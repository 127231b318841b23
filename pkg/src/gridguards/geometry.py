"""Exact rational planar primitives and predicates.

Every predicate in this module is decided exactly over arbitrary-precision
rationals (``fractions.Fraction``).  Distances are kept squared so that no
square root is ever taken; angle comparisons use cross/dot ratios for the
same reason.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence, Tuple, Union

Scalar = Fraction
CoordLike = Union[int, str, Fraction]


class GeometryError(Exception):
    """Base class for geometric construction errors."""


class IdenticalDirectionError(GeometryError):
    """Two lines share a direction, so the angle between them is zero."""


class DegenerateConeError(GeometryError):
    """Cone construction from collinear apex and boundary points."""


@dataclass(frozen=True)
class Point:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def scaled(self, t: Scalar) -> "Point":
        return Point(self.x * t, self.y * t)

    def key(self) -> Tuple[Fraction, Fraction]:
        """Lexicographic sort key (x first, then y)."""
        return (self.x, self.y)

    def __repr__(self):
        return f"Point({self.x}, {self.y})"


def pt(x: CoordLike, y: CoordLike) -> Point:
    """Build a Point, coercing ints, strings like '1/3', or Fractions."""
    return Point(Fraction(x), Fraction(y))


ORIGIN = pt(0, 0)


def cross(u: Point, v: Point) -> Scalar:
    return u.x * v.y - u.y * v.x


def dot(u: Point, v: Point) -> Scalar:
    return u.x * v.x + u.y * v.y


def orient(p: Point, q: Point, r: Point) -> int:
    """Sign of the cross product (q-p) x (r-p): +1 left turn, -1 right, 0 collinear."""
    c = cross(q - p, r - p)
    return (c > 0) - (c < 0)


def dist_sq(p: Point, q: Point) -> Scalar:
    dx = p.x - q.x
    dy = p.y - q.y
    return dx * dx + dy * dy


@dataclass(frozen=True)
class DirectedLine:
    """Infinite line oriented from ``a`` to ``b``; the right half-plane is 'plus'."""

    a: Point
    b: Point

    def __post_init__(self):
        if self.a == self.b:
            raise GeometryError("degenerate line: endpoints coincide")

    def direction(self) -> Point:
        return self.b - self.a

    def side_of(self, p: Point) -> int:
        """+1 if p is left of the oriented line, -1 right, 0 on the line."""
        return orient(self.a, self.b, p)

    def contains(self, p: Point) -> bool:
        return self.side_of(p) == 0


@dataclass(frozen=True)
class Segment:
    a: Point
    b: Point

    def __post_init__(self):
        if self.a == self.b:
            raise GeometryError("degenerate segment: endpoints coincide")

    def line(self) -> DirectedLine:
        return DirectedLine(self.a, self.b)

    def midpoint(self) -> Point:
        return Point((self.a.x + self.b.x) / 2, (self.a.y + self.b.y) / 2)


@dataclass(frozen=True)
class Ray:
    apex: Point
    through: Point

    def __post_init__(self):
        if self.apex == self.through:
            raise GeometryError("degenerate ray: apex equals through-point")

    def direction(self) -> Point:
        return self.through - self.apex

    def contains(self, p: Point) -> bool:
        v = p - self.apex
        d = self.direction()
        return cross(d, v) == 0 and dot(d, v) >= 0


class Parallel:
    """Classification result: distinct parallel lines."""

    def __repr__(self):
        return "Parallel"


class Identical:
    """Classification result: the two lines coincide as point sets."""

    def __repr__(self):
        return "Identical"


PARALLEL = Parallel()
IDENTICAL = Identical()

LineMeet = Union[Point, Parallel, Identical]


def dist_sq_point_line(v: Point, ell: DirectedLine) -> Scalar:
    """Exact squared distance from v to the infinite line (cross^2 / |d|^2)."""
    d = ell.direction()
    c = cross(d, v - ell.a)
    return (c * c) / dot(d, d)


def line_intersection(l1: DirectedLine, l2: DirectedLine) -> LineMeet:
    """Unique intersection point, or the Parallel / Identical classification.

    Solved by Cramer's rule on the 2x2 system of line equations.
    """
    d1 = l1.direction()
    d2 = l2.direction()
    denom = cross(d1, d2)
    if denom == 0:
        return IDENTICAL if l1.contains(l2.a) else PARALLEL
    t = cross(l2.a - l1.a, d2) / denom
    return l1.a + d1.scaled(t)


def tan_angle_between_cmp(l1: DirectedLine, l2: DirectedLine,
                          threshold: Scalar) -> int:
    """Compare tan of the smaller angle between two lines against a threshold.

    Returns -1 / 0 / +1 for less / equal / greater.  A zero dot product means
    the angle is pi/2 and tan is infinite, so the result is +1 for any finite
    threshold.  Lines with identical direction have no angle between them.
    """
    d1 = l1.direction()
    d2 = l2.direction()
    c = cross(d1, d2)
    if c == 0:
        raise IdenticalDirectionError("lines share a direction")
    dp = dot(d1, d2)
    if dp == 0:
        return 1
    tan = abs(c) / abs(dp)
    t = Fraction(threshold)
    return (tan > t) - (tan < t)


@dataclass(frozen=True)
class Cone:
    """Closed convex cone (interior angle < pi) with apex and two boundary rays.

    Normalized so that boundary_ray_1 -> boundary_ray_2 turns counterclockwise.
    """

    apex: Point
    boundary_ray_1: Ray
    boundary_ray_2: Ray

    def __post_init__(self):
        r1, r2 = self.boundary_ray_1, self.boundary_ray_2
        if r1.apex != self.apex or r2.apex != self.apex:
            raise GeometryError("cone rays must share the apex")
        c = cross(r1.direction(), r2.direction())
        if c < 0:
            object.__setattr__(self, "boundary_ray_1", r2)
            object.__setattr__(self, "boundary_ray_2", r1)
        elif c == 0 and dot(r1.direction(), r2.direction()) < 0:
            raise DegenerateConeError("cone spans an angle of exactly pi")

    def contains(self, p: Point) -> bool:
        v = p - self.apex
        if v == ORIGIN:
            return True
        d1 = self.boundary_ray_1.direction()
        d2 = self.boundary_ray_2.direction()
        return cross(d1, v) >= 0 and cross(v, d2) >= 0


def point_in_cone(p: Point, c: Cone) -> bool:
    return c.contains(p)


# ---------------------------------------------------------------------------
# segment predicates and constructions


def point_on_segment(p: Point, a: Point, b: Point) -> bool:
    """True iff p lies on the closed segment ab."""
    if orient(a, b, p) != 0:
        return False
    return (min(a.x, b.x) <= p.x <= max(a.x, b.x)
            and min(a.y, b.y) <= p.y <= max(a.y, b.y))


def segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True iff closed segments ab and cd share at least one point."""
    o1 = orient(a, b, c)
    o2 = orient(a, b, d)
    o3 = orient(c, d, a)
    o4 = orient(c, d, b)
    if o1 != o2 and o3 != o4:
        return True
    if o1 == 0 and point_on_segment(c, a, b):
        return True
    if o2 == 0 and point_on_segment(d, a, b):
        return True
    if o3 == 0 and point_on_segment(a, c, d):
        return True
    if o4 == 0 and point_on_segment(b, c, d):
        return True
    return False


def segment_intersection_point(a: Point, b: Point, c: Point,
                               d: Point) -> Optional[Point]:
    """Intersection point of segments ab and cd when it is unique, else None.

    Collinear overlaps (non-unique intersection) return None.
    """
    d1 = b - a
    d2 = d - c
    denom = cross(d1, d2)
    if denom == 0:
        return None
    t = cross(c - a, d2) / denom
    u = cross(c - a, d1) / denom
    if 0 <= t <= 1 and 0 <= u <= 1:
        return a + d1.scaled(t)
    return None


def ray_segment_params(apex: Point, direction: Point, a: Point,
                       b: Point) -> list:
    """Parameters t >= 0 where apex + t*direction meets segment ab.

    Returns at most two values; collinear overlap contributes both overlap
    endpoints' parameters.
    """
    d2 = b - a
    denom = cross(direction, d2)
    if denom == 0:
        if cross(direction, a - apex) != 0:
            return []
        # collinear: project endpoints onto the ray
        dd = dot(direction, direction)
        ts = [dot(a - apex, direction) / dd, dot(b - apex, direction) / dd]
        return sorted(t for t in ts if t >= 0)
    t = cross(a - apex, d2) / denom
    u = cross(a - apex, direction) / denom
    if t >= 0 and 0 <= u <= 1:
        return [t]
    return []


def polygon_signed_area2(vertices: Sequence[Point]) -> Scalar:
    """Twice the signed (shoelace) area; positive for counterclockwise."""
    total = Fraction(0)
    n = len(vertices)
    for i in range(n):
        p, q = vertices[i], vertices[(i + 1) % n]
        total += p.x * q.y - q.x * p.y
    return total


def polygon_area(vertices: Sequence[Point]) -> Scalar:
    return abs(polygon_signed_area2(vertices)) / 2


def clip_convex_by_halfplane(poly: Sequence[Point], ell: DirectedLine,
                             keep_side: int) -> list:
    """Sutherland-Hodgman clip of a convex polygon by one closed half-plane.

    ``keep_side`` is the orient() sign to keep (points with side 0 are kept).
    """
    out: list = []
    n = len(poly)
    for i in range(n):
        cur, nxt = poly[i], poly[(i + 1) % n]
        s_cur = ell.side_of(cur)
        s_nxt = ell.side_of(nxt)
        if s_cur == keep_side or s_cur == 0:
            out.append(cur)
        if s_cur != 0 and s_nxt != 0 and s_cur != s_nxt:
            meet = line_intersection(DirectedLine(cur, nxt), ell)
            assert isinstance(meet, Point)
            out.append(meet)
    # drop consecutive duplicates
    dedup: list = []
    for p in out:
        if not dedup or dedup[-1] != p:
            dedup.append(p)
    if len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    return dedup


def convex_intersection(poly_a: Sequence[Point],
                        poly_b: Sequence[Point]) -> list:
    """Intersection of two convex CCW polygons (possibly empty / degenerate)."""
    result = list(poly_a)
    n = len(poly_b)
    for i in range(n):
        if len(result) < 3:
            return []
        ell = DirectedLine(poly_b[i], poly_b[(i + 1) % n])
        result = clip_convex_by_halfplane(result, ell, +1)
    return result if len(result) >= 3 else []


def primitive_direction(v: Point) -> Tuple[int, int]:
    """Canonical primitive integer vector with the same direction as v."""
    if v == ORIGIN:
        raise GeometryError("zero vector has no direction")
    # clear denominators, then divide by gcd
    den = v.x.denominator * v.y.denominator
    nx = v.x.numerator * v.y.denominator
    ny = v.y.numerator * v.x.denominator
    g = gcd(abs(nx), abs(ny))
    return (nx // g, ny // g)


def angle_cmp_key(origin_half=None):
    """cmp_to_key-compatible comparator sorting vectors CCW from (1, 0)."""
    def half(v: Tuple[int, int]) -> int:
        x, y = v
        return 0 if (y > 0 or (y == 0 and x > 0)) else 1

    def cmp(u: Tuple[int, int], v: Tuple[int, int]) -> int:
        hu, hv = half(u), half(v)
        if hu != hv:
            return -1 if hu < hv else 1
        c = u[0] * v[1] - u[1] * v[0]
        return (c < 0) - (c > 0)  # positive cross => u before v

    return cmp


def sort_directions_ccw(dirs: Iterable[Tuple[int, int]]) -> list:
    """Sort primitive integer direction vectors counterclockwise from (1, 0)."""
    from functools import cmp_to_key
    return sorted(set(dirs), key=cmp_to_key(angle_cmp_key()))


def sqrt_lower_bound(q: Scalar) -> Scalar:
    """A rational lower bound on sqrt(q) for q >= 0, positive whenever q > 0."""
    from math import isqrt
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative input")
    if q == 0:
        return Fraction(0)
    scale = 1
    while True:
        n = q.numerator * q.denominator * scale * scale
        s = isqrt(n)
        if s > 0:
            return Fraction(s, q.denominator * scale)
        scale *= 2 ** 16
