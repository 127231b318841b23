"""Independent test oracles.

Everything here is deliberately written against the raw vertex lists with
its own predicates (winding-number containment, per-edge clip visibility)
so that library results are checked by a second, structurally different
computation.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Tuple

from gridguards.geometry import Point, cross, dot, pt


def on_segment(p: Point, a: Point, b: Point) -> bool:
    if cross(b - a, p - a) != 0:
        return False
    return min(a.x, b.x) <= p.x <= max(a.x, b.x) and (
        min(a.y, b.y) <= p.y <= max(a.y, b.y))


def winding_inside(verts, p: Point) -> bool:
    """Closed containment via winding number (boundary counts as inside)."""
    n = len(verts)
    for i in range(n):
        if on_segment(p, verts[i], verts[(i + 1) % n]):
            return True
    winding = 0
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        if a.y <= p.y:
            if b.y > p.y and cross(b - a, p - a) > 0:
                winding += 1
        elif b.y <= p.y and cross(b - a, p - a) < 0:
            winding -= 1
    return winding != 0


def naive_sees(verts, x: Point, y: Point) -> bool:
    """Segment visibility by exhaustive breakpoint-midpoint containment."""
    if x == y:
        return winding_inside(verts, x)
    d = y - x
    params = [Fraction(0), Fraction(1)]
    n = len(verts)
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        e = b - a
        denom = cross(d, e)
        if denom != 0:
            t = cross(a - x, e) / denom
            u = cross(a - x, d) / denom
            if 0 <= t <= 1 and 0 <= u <= 1:
                params.append(t)
        else:
            # parallel: project collinear endpoints onto the segment
            if cross(e, a - x) == 0:
                dd = dot(d, d)
                for q in (a, b):
                    t = dot(q - x, d) / dd
                    if 0 <= t <= 1:
                        params.append(t)
    params = sorted(set(params))
    for t0, t1 in zip(params, params[1:]):
        mid = x + d.scaled((t0 + t1) / 2)
        if not winding_inside(verts, mid):
            return False
    return True


def visibility_area_oracle(verts, x: Point) -> Fraction:
    """Exact area of the region of the polygon visible from x.

    The visible region is star-shaped around x and its boundary lies on
    polygon edges or on chords subtended from x, so it is the disjoint fan
    of triangles over the visible sub-pieces of the polygon edges.  Each
    edge is cut at every projection of a vertex from x and each sub-piece
    is classified by one midpoint visibility test.
    """
    n = len(verts)
    area = Fraction(0)
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        e = b - a
        cuts = [Fraction(0), Fraction(1)]
        for w in verts:
            dw = w - x
            denom = cross(dw, e)
            if denom == 0:
                continue
            t = cross(a - x, e) / denom
            if t <= 0:
                continue  # w is behind x relative to this edge direction
            u = cross(a - x, dw) / denom
            if 0 < u < 1:
                cuts.append(u)
        cuts = sorted(set(cuts))
        for u0, u1 in zip(cuts, cuts[1:]):
            mid = a + e.scaled((u0 + u1) / 2)
            if not naive_sees(verts, x, mid):
                continue
            p0 = a + e.scaled(u0)
            p1 = a + e.scaled(u1)
            area += abs(cross(p0 - x, p1 - x)) / 2
    return area
