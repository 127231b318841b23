"""Fixture generators: combs, channels, spike-pair polygons, random polygons.

All generators return validated PolygonModel instances with positive integer
coordinates.  Random generation is seeded and untangles a random vertex
permutation with 2-opt moves until the polygon is simple.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List, Optional, Tuple

from .geometry import Point, pt, segments_intersect, orient
from .polygon import PolygonModel, PolygonError, load_polygon


class GenerationBudgetExceeded(Exception):
    pass


def comb(prongs: int, height: int = 6) -> PolygonModel:
    """Comb with ``prongs`` upward towers of width 1 over a base strip.

    Any guard set needs one guard per tower, so the optimum is ``prongs``.
    """
    if prongs < 1:
        raise ValueError("need at least one prong")
    if height < 3:
        raise ValueError("height must leave room above the base strip")
    k = prongs
    verts: List[Tuple[int, int]] = [(1, 1), (2 * k, 1), (2 * k, height)]
    for i in range(k - 1, 0, -1):
        verts += [(2 * i + 1, height), (2 * i + 1, 2),
                  (2 * i, 2), (2 * i, height)]
    verts.append((1, height))
    return load_polygon(verts)


def channel() -> PolygonModel:
    """Wide room with one leaning spike pair forming a single opposite pair.

    The supporting line of the pair is x = 6; the bottom spike leans right
    and the top spike leans left, so the incident edges separate strictly.
    """
    return load_polygon([
        (1, 1), (7, 1), (6, 3), (8, 1), (12, 1),
        (12, 10), (5, 10), (6, 8), (4, 10), (1, 10)])


def counterexample_polygon() -> PolygonModel:
    """Two leaning spikes forming a pinhole at height y = 6.

    The bottom spike apex (11, 6) and top spike apex (13, 6) are an opposite
    reflex pair; the left wall x = 1 is visible from the right part only
    through the slit between the apexes.
    """
    return load_polygon([
        (1, 1), (10, 1), (11, 6), (12, 1), (21, 1),
        (21, 11), (14, 11), (13, 6), (12, 11), (1, 11)])


def spike_pairs(apexes: List[Tuple[Tuple[int, int], Tuple[int, int]]],
                box: Tuple[int, int, int, int]) -> PolygonModel:
    """Rectangle with one leaning spike pair per ((bx, by), (tx, ty)) entry.

    Bottom spikes grow from the bottom edge leaning right (apex at (bx, by),
    base at x in [bx+1, bx+2]); top spikes grow from the top edge leaning
    left (base at x in [tx-2, tx-1]).  Apexes must be given left to right.
    """
    x0, y0, x1, y1 = box
    verts: List[Tuple[int, int]] = [(x0, y0)]
    for (bx, by), _ in apexes:
        verts += [(bx + 1, y0), (bx, by), (bx + 2, y0)]
    verts += [(x1, y0), (x1, y1)]
    for _, (tx, ty) in reversed(apexes):
        verts += [(tx - 1, y1), (tx, ty), (tx - 2, y1)]
    verts.append((x0, y1))
    return load_polygon(verts)


def triple_pairs() -> PolygonModel:
    """Jittered three-spike-pair room in general position with 8 pairs.

    Coordinates were searched so that no three vertices are collinear and
    no three extensions are concurrent at an interior non-vertex point
    while keeping at least three opposite reflex pairs.
    """
    return load_polygon([
        (16, 6), (82, 10), (79, 73), (86, 9), (202, 8), (201, 71),
        (206, 14), (322, 17), (322, 66), (326, 10), (411, 17), (403, 206),
        (318, 214), (319, 146), (314, 213), (198, 201), (200, 153),
        (194, 214), (78, 203), (79, 150), (74, 212), (11, 211)])


def concurrent_pairs() -> PolygonModel:
    """Three spike pairs whose supporting lines all pass through (105, 20).

    Deliberately violates general position: the pair lines x = 105,
    y = 2x - 190 and y = -2x + 230 are concurrent at an interior
    non-vertex point beyond the bottom apexes, so all three bad regions
    overlap there once the slope is inflated.
    """
    return spike_pairs(
        [((100, 30), (80, 70)), ((105, 30), (105, 70)),
         ((110, 30), (130, 70))],
        box=(1, 1, 160, 100))


def blocking_fixture() -> Tuple[PolygonModel, Point]:
    """Pinhole polygon with a third reflex vertex plus a tuned viewpoint.

    The extra spike apex q = (3, 8) lies just outside the visibility cone
    of the returned point x through the pinhole (11,6)-(13,6) but inside
    the cone of the grid point below x at grid width L^-3, so q blocks a
    sliver of that grid point's view near the apex (13, 6).
    """
    m = load_polygon([
        (1, 1), (10, 1), (11, 6), (12, 1), (21, 1), (21, 11), (14, 11),
        (13, 6), (12, 11), (4, 11), (3, 8), (2, 11), (1, 11)])
    w = Fraction(1, m.L ** 3)
    # x sits w/10 above the line through q and (13, 6); the grid rounds
    # its neighborhood to the grid point 3w/10 below, past that line
    x = Point(17 - w, Fraction(26, 5) + 3 * w / 10)
    return m, x


def random_points(rng: random.Random, n: int, m: int) -> List[Tuple[int, int]]:
    pts = set()
    while len(pts) < n:
        pts.add((rng.randint(1, m), rng.randint(1, m)))
    return sorted(pts)


def _is_simple(verts: List[Point]) -> bool:
    n = len(verts)
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        if a == b:
            return False
        for j in range(i + 1, n):
            if j == i or (j + 1) % n == i or (i + 1) % n == j:
                continue
            if segments_intersect(a, b, verts[j], verts[(j + 1) % n]):
                return False
    return True


def random_polygon(n: int, m: int, seed: int,
                   budget: int = 20000,
                   require_general_position: bool = False) -> PolygonModel:
    """Random simple polygon with n vertices in [1, m]^2 via 2-opt untangling.

    With ``require_general_position`` the sample is rejected until no three
    vertices are collinear (extension concurrency is not filtered here).
    """
    if n < 3:
        raise ValueError("need at least 3 vertices")
    rng = random.Random(seed)
    spent = 0
    while True:
        spent += 1
        if spent > budget:
            raise GenerationBudgetExceeded(
                f"no valid polygon after {budget} attempts")
        raw = random_points(rng, n, m)
        if require_general_position and _any_collinear_triple(raw):
            continue
        verts = [pt(x, y) for x, y in raw]
        rng.shuffle(verts)
        if not _untangle(verts, rng, budget):
            continue
        try:
            model = load_polygon(verts)
        except PolygonError:
            continue
        return model


def _any_collinear_triple(points) -> bool:
    ps = [pt(x, y) for x, y in points]
    n = len(ps)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                if orient(ps[i], ps[j], ps[k]) == 0:
                    return True
    return False


def _untangle(verts: List[Point], rng: random.Random, budget: int) -> bool:
    """2-opt: reverse the span between any two crossing edges."""
    n = len(verts)
    for _ in range(budget):
        crossing = None
        for i in range(n):
            a, b = verts[i], verts[(i + 1) % n]
            for j in range(i + 1, n):
                if j == i or (j + 1) % n == i or (i + 1) % n == j:
                    continue
                if segments_intersect(a, b, verts[j], verts[(j + 1) % n]):
                    crossing = (i, j)
                    break
            if crossing:
                break
        if crossing is None:
            return _is_simple(verts)
        i, j = crossing
        lo, hi = i + 1, j
        verts[lo:hi + 1] = reversed(verts[lo:hi + 1])
    return False
