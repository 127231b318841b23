"""Executable checks of the geometric bounds underlying the pipeline.

Every check enumerates or samples concrete configurations, filters them by
the exact hypotheses of the corresponding bound, and verifies the stated
conclusion with rational arithmetic.  Configurations failing the hypotheses
are counted as skipped, never as verified, so vacuous passes are visible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, sqrt
from typing import Dict, List, Optional, Sequence, Tuple

from .arrangement import build_arrangement
from .geometry import (
    DegenerateConeError,
    DirectedLine,
    Point,
    Scalar,
    cross,
    dist_sq,
    dot,
    line_intersection,
    orient,
    point_in_cone,
    point_on_segment,
    pt,
)
from .polygon import (
    OppositeReflexPair,
    PolygonModel,
    extensions,
    _line_key,
    opposite_reflex_pairs,
    point_in_polygon,
    reflex_vertices,
    triangulate,
)
from .grid import GridSpec, surrounding_grid
from .badregions import bad_region, in_bad_region
from .visibility import cone_of, sees, visibility_polygon, visible_subsegments

STATUS_VERIFIED = "Verified"
STATUS_VIOLATED = "Violated"
STATUS_SKIPPED = "Skipped"


@dataclass
class LemmaReport:
    lemma_id: str
    instances_checked: int = 0
    skipped: int = 0
    violations: List[Tuple[str, str]] = field(default_factory=list)

    @property
    def status(self) -> str:
        if self.violations:
            return STATUS_VIOLATED
        if self.instances_checked > 0:
            return STATUS_VERIFIED
        return STATUS_SKIPPED

    def check(self, ok: bool, instance: str, witness: str) -> None:
        self.instances_checked += 1
        if not ok:
            self.violations.append((instance, witness))

    def to_dict(self) -> Dict:
        return {
            "lemma_id": self.lemma_id,
            "instances_checked": self.instances_checked,
            "skipped": self.skipped,
            "violations": [list(v) for v in self.violations],
            "status": self.status,
        }


def _homogeneous_intersections(lines: List[Tuple[int, int, int]]):
    """Deduplicated intersection points (X, Y, W) of the integer lines.

    Each point is the exact rational (X/W, Y/W) with W > 0 and gcd 1.
    """
    points = {}
    for i in range(len(lines)):
        a1, b1, c1 = lines[i]
        for j in range(i + 1, len(lines)):
            a2, b2, c2 = lines[j]
            w = a1 * b2 - a2 * b1
            if w == 0:
                continue
            x = c1 * b2 - c2 * b1
            y = a1 * c2 - a2 * c1
            if w < 0:
                x, y, w = -x, -y, -w
            g = gcd(gcd(abs(x), abs(y)), w)
            points[(x // g, y // g, w // g)] = True
    return list(points)


def check_distance_lemma(m: PolygonModel, item7_samples: int = 10,
                         seed: int = 0) -> LemmaReport:
    """Exhaustive exact verification of the separation bounds.

    Items: (1) vertex pairs at distance >= 1; (2) vertex to non-incident
    extension >= L^-1; (3) extension intersection to non-incident extension
    >= L^-5; (4) distinct intersection points >= L^-4; (5) parallel distinct
    extensions >= L^-1; (6) tangent between non-parallel extensions
    >= 8 L^-2; (7) constructive: two lines within d of a point a meet within
    d L^2 of a, sampled.

    Items 3 and 4 run on integer homogeneous coordinates with a float
    prefilter; only near-threshold cases are re-checked exactly.
    """
    rep = LemmaReport(lemma_id="distances")
    L = m.L
    verts = m.vertices
    n = m.n

    # item 1: pairwise vertex distance >= 1
    for i in range(n):
        for j in range(i + 1, n):
            rep.check(dist_sq(verts[i], verts[j]) >= 1,
                      f"item1 v{i} v{j}", str(dist_sq(verts[i], verts[j])))

    lines = []
    seen = {}
    for i in range(n):
        for j in range(i + 1, n):
            key = _line_key(verts[i], verts[j])
            if key not in seen:
                seen[key] = True
                lines.append(key)

    # item 2: vertex to extension not through it, distance >= L^-1
    L2 = L * L
    for a, b, c in lines:
        nn = a * a + b * b
        for i, v in enumerate(verts):
            r = a * int(v.x) + b * int(v.y) - c
            if r == 0:
                continue
            rep.check(r * r * L2 >= nn,
                      f"item2 v{i} line({a},{b},{c})", str(r))

    # items 5 and 6 over line pairs
    for i in range(len(lines)):
        a1, b1, c1 = lines[i]
        for j in range(i + 1, len(lines)):
            a2, b2, c2 = lines[j]
            det = a1 * b2 - a2 * b1
            if det == 0:
                # item 5: parallel distinct extensions >= L^-1
                g1 = gcd(abs(a1), abs(b1))
                g2 = gcd(abs(a2), abs(b2))
                # scale both to the shared primitive normal (a1/g1, b1/g1)
                diff = Fraction(c1, g1) - Fraction(c2, g2)
                nn = (a1 // g1) ** 2 + (b1 // g1) ** 2
                rep.check(diff * diff * L2 >= nn,
                          f"item5 lines {i},{j}", str(diff))
            else:
                # item 6: tan(angle) = |det| / |dot of directions| >= 8 L^-2
                dd = a1 * a2 + b1 * b2
                rep.check(abs(det) * L2 >= 8 * abs(dd),
                          f"item6 lines {i},{j}", f"det={det} dot={dd}")

    pts = _homogeneous_intersections(lines)

    # item 3: intersection point to extension not through it >= L^-5
    L10 = L ** 10
    fpts = [(x / w, y / w) for x, y, w in pts]
    for (x, y, w), (fx, fy) in zip(pts, fpts):
        for a, b, c in lines:
            fr = a * fx + b * fy - c
            # prefilter: float distance far above L^-5 needs no exact check
            if fr * fr > 1e-4 * (a * a + b * b):
                rep.instances_checked += 1
                continue
            r = a * x + b * y - c * w
            if r == 0:
                continue
            rep.check(r * r * L10 >= w * w * (a * a + b * b),
                      f"item3 point({x},{y},{w}) line({a},{b},{c})", str(r))

    # item 4: distinct intersection points >= L^-4; hash-grid prefilter
    L8 = L ** 8
    cell = 1e-3
    buckets: Dict[Tuple[int, int], List[int]] = {}
    for idx, (fx, fy) in enumerate(fpts):
        buckets.setdefault((int(fx // cell), int(fy // cell)), []).append(idx)
    pair_count = len(pts) * (len(pts) - 1) // 2
    near_checked = 0
    for (cx, cy), members in buckets.items():
        cand = []
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                cand.extend(buckets.get((cx + dx, cy + dy), []))
        for i in members:
            x1, y1, w1 = pts[i]
            for j in cand:
                if j <= i:
                    continue
                x2, y2, w2 = pts[j]
                ex = x1 * w2 - x2 * w1
                ey = y1 * w2 - y2 * w1
                ok = (ex * ex + ey * ey) * L8 >= (w1 * w2) ** 2
                rep.check(ok, f"item4 points {i},{j}", f"({ex},{ey})")
                near_checked += 1
    # pairs separated by the hash grid are >= ~1e-3 apart, far above L^-4
    rep.instances_checked += pair_count - near_checked

    # item 7: constructive intersection bound on sampled (a, l1, l2)
    rng = random.Random(seed)
    L4 = L ** 4
    attempts = 0
    while attempts < item7_samples and len(lines) >= 2:
        attempts += 1
        i, j = rng.sample(range(len(lines)), 2)
        a1, b1, c1 = lines[i]
        a2, b2, c2 = lines[j]
        det = a1 * b2 - a2 * b1
        if det == 0:
            rep.skipped += 1
            continue
        a = verts[rng.randrange(n)]
        d_sq = max(
            Fraction((a1 * a.x + b1 * a.y - c1) ** 2, a1 * a1 + b1 * b1),
            Fraction((a2 * a.x + b2 * a.y - c2) ** 2, a2 * a2 + b2 * b2))
        px = Fraction(c1 * b2 - c2 * b1, det)
        py = Fraction(a1 * c2 - a2 * c1, det)
        p = Point(px, py)
        rep.check(dist_sq(a, p) <= d_sq * L4,
                  f"item7 lines {i},{j} at {a}", str(dist_sq(a, p)))
    return rep


def _interior_points(m: PolygonModel, count: int,
                     rng: random.Random) -> List[Point]:
    """Seeded random points in P via area-weighted triangle sampling."""
    tris = triangulate(m)
    areas = [abs(cross(b - a, c - a)) for a, b, c in tris]
    den = 1
    for w in areas:
        den = den * w.denominator // gcd(den, w.denominator)
    weights = [int(w * den) for w in areas]
    total = sum(weights)
    out = []
    for _ in range(count):
        r = rng.randrange(total) if total > 1 else 0
        acc = 0
        tri = tris[-1]
        for t, wgt in zip(tris, weights):
            acc += wgt
            if r < acc:
                tri = t
                break
        u = Fraction(rng.randint(1, 97), 100)
        v = Fraction(rng.randint(1, 97), 100)
        if u + v >= 1:
            u, v = 1 - u, 1 - v
        a, b, c = tri
        out.append(a + (b - a).scaled(u) + (c - a).scaled(v))
    return out


def _cone_side(m: PolygonModel, x: Point, pair: OppositeReflexPair,
               q: Point) -> Optional[int]:
    """Which bounding ray of cone(x) the point q lies strictly beyond.

    Returns the vertex index (pair.r1 or pair.r2) whose ray q is beyond,
    or None when q is inside the cone or behind the apex.
    """
    r1 = m.vertices[pair.r1]
    r2 = m.vertices[pair.r2]
    # beyond ray(x, rA): opposite side of ell(x, rA) from rB, and same side
    # of ell(x, rB) as rA
    for ra, rb, idx in ((r1, r2, pair.r1), (r2, r1, pair.r2)):
        oa = orient(x, ra, q)
        ob = orient(x, rb, q)
        if oa * orient(x, ra, rb) < 0 and ob * orient(x, rb, ra) > 0:
            return idx
    return None


def check_limited_blocking(m: PolygonModel, samples: int = 100,
                           seed: int = 0,
                           alpha: Optional[Scalar] = None,
                           grid_exponent: int = 3,
                           extra_points: Sequence[Point] = ()) -> LemmaReport:
    """Blocked visibility of grid points is confined near one reflex vertex.

    Hypotheses per configuration: g in alpha-grid(x), g outside cone(x),
    alpha <= L^-7, reflex q in cone(g) but outside cone(x) with
    dist(x, q) > L^-1, q strictly beyond exactly one bounding ray of
    cone(x).  Conclusion: the line through g and q crosses seg(r1, r2)
    within L^-2 of the reflex vertex on q's side.
    """
    rep = LemmaReport(lemma_id="limited_blocking")
    L = m.L
    if alpha is None:
        alpha = Fraction(1, L ** 7)
    alpha = Fraction(alpha)
    if alpha > Fraction(1, L ** 7):
        rep.skipped += 1
        return rep
    spec = GridSpec(E=grid_exponent, L=L)
    pairs = opposite_reflex_pairs(m)
    refl = reflex_vertices(m)
    inv_l_sq = Fraction(1, L) ** 2
    inv_l4 = Fraction(1, L) ** 4
    rng = random.Random(seed)
    xs = list(extra_points) + _interior_points(m, samples, rng)
    for x in xs:
        if not point_in_polygon(m, x):
            rep.skipped += 1
            continue
        for pair in pairs:
            r1 = m.vertices[pair.r1]
            r2 = m.vertices[pair.r2]
            try:
                cone_x = cone_of(x, r1, r2)
            except DegenerateConeError:
                rep.skipped += 1
                continue
            sg = surrounding_grid(spec, m, x, alpha)
            for g in sg.points:
                if point_in_cone(g, cone_x):
                    rep.skipped += 1
                    continue
                try:
                    cone_g = cone_of(g, r1, r2)
                except DegenerateConeError:
                    rep.skipped += 1
                    continue
                for qi in refl:
                    q = m.vertices[qi]
                    if (point_in_cone(q, cone_x)
                            or not point_in_cone(q, cone_g)
                            or dist_sq(x, q) <= inv_l_sq):
                        rep.skipped += 1
                        continue
                    side = _cone_side(m, x, pair, q)
                    if side is None:
                        rep.skipped += 1
                        continue
                    near = m.vertices[side]
                    if g == q:
                        rep.skipped += 1
                        continue
                    p = line_intersection(DirectedLine(g, q),
                                          DirectedLine(r1, r2))
                    if not isinstance(p, Point) or not point_on_segment(
                            p, r1, r2):
                        rep.skipped += 1
                        continue
                    rep.check(dist_sq(p, near) <= inv_l4,
                              f"blocking x={x} g={g} q=v{qi}",
                              f"p={p} dist_sq={dist_sq(p, near)}")
    return rep


def _rays_intersect(o1: Point, d1: Point, o2: Point, d2: Point) -> bool:
    """Exact intersection test for the closed rays o_i + t d_i, t >= 0."""
    denom = cross(d1, d2)
    diff = o2 - o1
    if denom == 0:
        if cross(d1, diff) != 0:
            return False
        # collinear rays: same direction always overlap, opposite
        # directions overlap iff the origins face each other
        if dot(d1, d2) > 0:
            return True
        return dot(d1, diff) >= 0
    t = cross(diff, d2) / denom
    u = cross(diff, d1) / denom
    return t >= 0 and u >= 0


def check_cone_property(m: PolygonModel, samples: int = 100,
                        seed: int = 0,
                        s: Optional[Scalar] = None) -> LemmaReport:
    """Nearby points outside the embiggened bad region get diverging rays.

    For sampled g1, g2 with dist(g1, g2) <= s/4, both inside P and outside
    the embiggened s-bad region of a pair, the rays from g1 through p1 and
    from g2 through p2 (the shifted apex points on the diagonal) must not
    intersect; labels are arranged so g1 is closer to r1.  Coincident
    points trivially satisfy the property.
    """
    rep = LemmaReport(lemma_id="cone_property")
    L = m.L
    if s is None:
        s = Fraction(1, 4)
    s = Fraction(s)
    if not 0 < s <= 1:
        raise ValueError("slope must be in (0, 1]")
    pairs = opposite_reflex_pairs(m)
    rng = random.Random(seed)
    quarter = s / 4
    for pair in pairs:
        region = bad_region(m, pair, s, embiggened=True)
        r1 = m.vertices[pair.r1]
        r2 = m.vertices[pair.r2]
        p1, p2 = region.apex_offsets
        for _ in range(samples):
            g1 = _interior_points(m, 1, rng)[0]
            # offset with |dx| + |dy| <= s/4 bounds the Euclidean distance
            num = rng.randint(-16, 16)
            den = rng.randint(-16, 16)
            g2 = g1 + Point(quarter * Fraction(num, 32),
                            quarter * Fraction(den, 32))
            if not point_in_polygon(m, g2):
                rep.skipped += 1
                continue
            if in_bad_region(region, g1) or in_bad_region(region, g2):
                rep.skipped += 1
                continue
            # facing condition: both points must project strictly between
            # the reflex vertices along the diagonal, i.e. actually look at
            # the pinhole rather than past one of its apexes
            diag = r2 - r1
            dd = dot(diag, diag)
            if not all(0 < dot(diag, g - r1) < dd for g in (g1, g2)):
                rep.skipped += 1
                continue
            if g1 == g2:
                rep.check(True, f"cone g1=g2={g1}", "coincident")
                continue
            # label so g1 lies on the r1 side: smaller projection onto the
            # diagonal direction r1 -> r2 aims at the apex point near r1
            a1, a2 = g1, g2
            if dot(diag, a1 - r1) > dot(diag, a2 - r1):
                a1, a2 = a2, a1
            if a1 == p1 or a2 == p2:
                rep.skipped += 1
                continue
            ok = not _rays_intersect(a1, p1 - a1, a2, p2 - a2)
            rep.check(ok, f"cone g1={a1} g2={a2}", f"p1={p1} p2={p2}")
    return rep


def check_local_visibility(m: PolygonModel, x: Point, alpha: Scalar,
                           s: Scalar,
                           grid_exponent: Optional[int] = None) -> LemmaReport:
    """Exact face-level check of Vis(x) against the grid neighborhood.

    Builds the arrangement of the polygon edges with the window chords of
    Vis(x) and of every Vis(g) for g in the starred grid neighborhood of x;
    visibility is constant on each open face, so containment holds iff no
    face representative is seen by x but by none of the g.
    """
    alpha = Fraction(alpha)
    s = Fraction(s)
    L = m.L
    if grid_exponent is None:
        grid_exponent = 1
        while Fraction(1, L ** grid_exponent) > alpha:
            grid_exponent += 1
    rep = LemmaReport(lemma_id="local_visibility")
    spec = GridSpec(E=grid_exponent, L=L)
    sg = surrounding_grid(spec, m, x, alpha)
    guards = list(sg.all_points())
    segs = list(m.edges())
    for view in [x] + guards:
        vp = visibility_polygon(m, view)
        es = vp.edges()
        for i in vp.window_edges:
            segs.append(es[i])
    arr = build_arrangement(segs)
    for w in arr.representatives:
        if not point_in_polygon(m, w):
            continue
        if not sees(m, x, w):
            continue
        rep.check(any(sees(m, g, w) for g in guards),
                  f"face witness {w}", f"guards={guards}")
    return rep


@dataclass(frozen=True)
class CounterexampleFixture:
    """Pinhole polygon with approach points defeating any fixed finite grid.

    The approach points a_i sit below the supporting line of the pinhole at
    geometrically shrinking distance; each sees a wall interval above the
    target t, the intervals are pairwise disjoint, and no a_i sees t.
    """

    polygon: PolygonModel
    pinhole_target: Point
    approach_points: Tuple[Point, ...]
    opposite_pair: OppositeReflexPair
    wall_intervals: Tuple[Tuple[Point, Point], ...]


def build_counterexample(i_max: int) -> CounterexampleFixture:
    """Construct the pinhole fixture with i_max approach points.

    Approach point a_i = (17, 6 - 2^-i / L) sees the left wall only through
    the slit between the apexes (11, 6) and (13, 6); its wall interval is
    (6 + 5 d/3, 6 + 3 d) for d = 2^-i / L, exactly computed here from the
    visibility routine rather than the closed form.
    """
    if i_max < 1:
        raise ValueError("need at least one approach point")
    from .generate import counterexample_polygon
    m = counterexample_polygon()
    L = m.L
    t = pt(1, 6)
    pairs = opposite_reflex_pairs(m)
    pair = next(p for p in pairs
                if {m.vertices[p.r1], m.vertices[p.r2]}
                == {pt(11, 6), pt(13, 6)})
    approach: List[Point] = []
    intervals: List[Tuple[Point, Point]] = []
    wall_a, wall_b = pt(1, 1), pt(1, 11)
    for i in range(1, i_max + 1):
        d = Fraction(1, 2 ** i * L)
        a = Point(Fraction(17), 6 - d)
        if sees(m, a, t):
            raise AssertionError(f"approach point {a} must not see {t}")
        segs = visible_subsegments(m, a, wall_a, wall_b)
        above = [sg for sg in segs if sg.a.y > 6 and sg.b.y > 6]
        if len(above) != 1:
            raise AssertionError(
                f"expected one wall interval above the slit, got {above}")
        sg = above[0]
        lo, hi = sorted((sg.a, sg.b), key=lambda p: p.y)
        approach.append(a)
        intervals.append((lo, hi))
    for i in range(len(intervals)):
        for j in range(i + 1, len(intervals)):
            lo_i, hi_i = intervals[i]
            lo_j, hi_j = intervals[j]
            if not (hi_i.y < lo_j.y or hi_j.y < lo_i.y):
                raise AssertionError(
                    f"wall intervals {i + 1} and {j + 1} overlap")
    return CounterexampleFixture(
        polygon=m, pinhole_target=t, approach_points=tuple(approach),
        opposite_pair=pair, wall_intervals=tuple(intervals))


def missed_interval(fix: CounterexampleFixture,
                    candidates: Sequence[Point]
                    ) -> Optional[Tuple[int, Point]]:
    """First approach point whose wall interval the candidates fail to cover.

    Returns (1-based index, uncovered witness on the wall) or None.  Only
    candidates inside the polygon contribute coverage.
    """
    m = fix.polygon
    wall_a, wall_b = pt(1, 1), pt(1, 11)
    covered: List[Tuple[Scalar, Scalar]] = []
    for c in candidates:
        if not point_in_polygon(m, c):
            continue
        for sg in visible_subsegments(m, c, wall_a, wall_b):
            lo, hi = sorted((sg.a.y, sg.b.y))
            covered.append((lo, hi))
    covered.sort()
    for idx, (lo, hi) in enumerate(fix.wall_intervals, start=1):
        # walk the open interval (lo.y, hi.y) through the covered closed runs
        cursor = lo.y
        for clo, chi in covered:
            if chi <= cursor or clo > hi.y:
                continue
            if clo > cursor:
                break
            cursor = max(cursor, chi)
        if cursor < hi.y:
            witness = Point(Fraction(1), (cursor + hi.y) / 2)
            return idx, witness
    return None


def check_grid_outside_bad(m: PolygonModel, samples: int = 100,
                           seed: int = 0,
                           alpha: Optional[Scalar] = None,
                           s: Optional[Scalar] = None,
                           grid_exponent: Optional[int] = None) -> LemmaReport:
    """Grid neighborhoods of points outside a bad region stay outside it.

    Hypotheses per sample: x outside the s-bad region of a pair, x sees
    both reflex vertices from distance >= L^-1, s <= L^-3 and 16 L alpha
    <= s.  Conclusion: every point of alpha-grid(x) avoids the embiggened
    (s/2)-bad region.
    """
    rep = LemmaReport(lemma_id="grid_outside_bad")
    L = m.L
    if s is None:
        s = Fraction(1, L ** 3)
    if alpha is None:
        alpha = Fraction(s, 16 * L)
    s = Fraction(s)
    alpha = Fraction(alpha)
    if not (s <= Fraction(1, L ** 3) and 16 * L * alpha <= s):
        rep.skipped += 1
        return rep
    if grid_exponent is None:
        grid_exponent = 1
        while Fraction(1, L ** grid_exponent) > alpha:
            grid_exponent += 1
    spec = GridSpec(E=grid_exponent, L=L)
    pairs = opposite_reflex_pairs(m)
    inv_l_sq = Fraction(1, L) ** 2
    rng = random.Random(seed)
    for x in _interior_points(m, samples, rng):
        for pair in pairs:
            region = bad_region(m, pair, s)
            half = bad_region(m, pair, s / 2, embiggened=True)
            r1 = m.vertices[pair.r1]
            r2 = m.vertices[pair.r2]
            if (in_bad_region(region, x)
                    or dist_sq(x, r1) < inv_l_sq
                    or dist_sq(x, r2) < inv_l_sq
                    or not sees(m, x, r1) or not sees(m, x, r2)):
                rep.skipped += 1
                continue
            sg = surrounding_grid(spec, m, x, alpha)
            for g in sg.points:
                rep.check(not in_bad_region(half, g),
                          f"outside_bad x={x} g={g}",
                          f"pair=({pair.r1},{pair.r2})")
    return rep
