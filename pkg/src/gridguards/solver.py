"""Guard-placement solvers over grid candidates and arrangement witnesses.

Covering a finite witness set (one point per face of the overlay of the
polygon with all candidate visibility boundaries) is equivalent to covering
the whole polygon with those candidates, so every solver below reduces to
finite set cover and is certified afterwards by an independent
verify_coverage run.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .arrangement import build_arrangement
from .geometry import Point, pt
from .grid import (
    Covered,
    GridSpec,
    GuardSet,
    PROV_SOLVER_GREEDY,
    coverage_segments,
    verify_coverage,
)
from .polygon import PolygonModel, point_in_polygon
from .visibility import sees


class InfeasibleWitness(Exception):
    """Some witness point is seen by no candidate."""


class RoundLimitExceeded(Exception):
    def __init__(self, message: str, best: Optional["SolveResult"] = None):
        super().__init__(message)
        self.best = best


class CombinatoricsBudgetExceeded(Exception):
    pass


class NoneWithin:
    """brute_force_optimum found no cover within the size limit."""

    def __repr__(self):
        return "NoneWithin"


NONE_WITHIN = NoneWithin()

STRATEGY_FULL = "FullCellSample"
STRATEGY_ADAPTIVE = "AdaptiveRefine"


@dataclass(frozen=True)
class WitnessSet:
    points: Tuple[Point, ...]
    provenance: str = "ArrangementFace"

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class SolveConfig:
    grid_exponent: int = 2
    candidate_strategy: str = STRATEGY_FULL
    max_rounds: int = 200
    rng_seed: int = 0
    weight_doubling_cap: int = 10 ** 6


@dataclass(frozen=True)
class SolveResult:
    guards: GuardSet
    witness_count: int
    rounds: int
    certified: bool
    size_bound_log: float


def build_witnesses(m: PolygonModel,
                    candidates: Sequence[Point]) -> WitnessSet:
    """One representative per face of the candidate visibility overlay."""
    arr = build_arrangement(coverage_segments(m, list(candidates)))
    points = tuple(p for p in arr.representatives if point_in_polygon(m, p))
    return WitnessSet(points=points)


def _vision_masks(m: PolygonModel, candidates: Sequence[Point],
                  witnesses: WitnessSet) -> List[int]:
    """Per-candidate bitmask of the witnesses it sees."""
    masks = []
    for c in candidates:
        mask = 0
        for i, w in enumerate(witnesses.points):
            if sees(m, c, w):
                mask |= 1 << i
        masks.append(mask)
    return masks


def greedy_cover(m: PolygonModel, candidates: Sequence[Point],
                 witnesses: WitnessSet) -> SolveResult:
    """Classic greedy set cover; ties broken by lexicographic point order."""
    cands = sorted(set(candidates), key=Point.key)
    masks = _vision_masks(m, cands, witnesses)
    full = (1 << len(witnesses)) - 1
    seen_any = 0
    for mk in masks:
        seen_any |= mk
    if seen_any != full:
        missing = next(i for i in range(len(witnesses))
                       if not (seen_any >> i) & 1)
        raise InfeasibleWitness(
            f"witness {witnesses.points[missing]} seen by no candidate")
    chosen: List[Point] = []
    covered = 0
    rounds = 0
    while covered != full:
        rounds += 1
        best_i = max(range(len(cands)),
                     key=lambda i: (bin(masks[i] & ~covered).count("1"),),
                     default=None)
        # max() keeps the first of equal keys; cands are pre-sorted, so the
        # tie goes to the lexicographically smallest candidate
        gain = masks[best_i] & ~covered
        if gain == 0:
            raise InfeasibleWitness("greedy stalled with uncovered witnesses")
        chosen.append(cands[best_i])
        covered |= masks[best_i]
    gs = GuardSet(guards=tuple(chosen),
                  provenance=(PROV_SOLVER_GREEDY,) * len(chosen))
    certified = isinstance(verify_coverage(m, gs), Covered)
    w = max(1, len(witnesses))
    return SolveResult(guards=gs, witness_count=len(witnesses),
                       rounds=rounds, certified=certified,
                       size_bound_log=1.0 + math.log(w))


def brute_force_optimum(m: PolygonModel, candidates: Sequence[Point],
                        witnesses: WitnessSet, k_max: int):
    """Smallest covering subset of the candidates, or NoneWithin."""
    from itertools import combinations
    cands = sorted(set(candidates), key=Point.key)
    n = len(cands)
    total = sum(math.comb(n, k) for k in range(1, k_max + 1))
    if total > 10 ** 7:
        raise CombinatoricsBudgetExceeded(
            f"{total} subsets exceed the 1e7 budget")
    masks = _vision_masks(m, cands, witnesses)
    full = (1 << len(witnesses)) - 1
    for k in range(1, k_max + 1):
        for combo in combinations(range(n), k):
            acc = 0
            for i in combo:
                acc |= masks[i]
            if acc == full:
                points = tuple(cands[i] for i in combo)
                return GuardSet(guards=points,
                                provenance=(PROV_SOLVER_GREEDY,) * k)
    return NONE_WITHIN


def default_candidates(m: PolygonModel) -> List[Point]:
    """Unit-cell center grid points inside P plus all polygon vertices.

    Cell centers are on the grid for every exponent since L = 20M is even.
    """
    out = list(m.vertices)
    xs = [int(v.x) for v in m.vertices]
    ys = [int(v.y) for v in m.vertices]
    half = Fraction(1, 2)
    for i in range(min(xs), max(xs) + 1):
        for j in range(min(ys), max(ys) + 1):
            c = Point(i + half, j + half)
            if point_in_polygon(m, c):
                out.append(c)
    return sorted(set(out), key=Point.key)


def _prune(chosen: List[int], masks: List[int], full: int) -> List[int]:
    """Drop redundant guards, scanning in deterministic order."""
    kept = list(chosen)
    changed = True
    while changed:
        changed = False
        for i in list(kept):
            rest = 0
            for j in kept:
                if j != i:
                    rest |= masks[j]
            if rest == full:
                kept.remove(i)
                changed = True
                break
    return kept


def eh_solve(m: PolygonModel, cfg: SolveConfig,
             candidates: Optional[Sequence[Point]] = None) -> SolveResult:
    """Iterative-reweighting set cover over grid candidates.

    Guess-and-double on the cover size k; each round samples a weighted net
    of O(k log k) candidates and doubles the weights of every candidate
    seeing the first uncovered witness.  The certified result is the smaller
    of the pruned net cover and the greedy baseline.
    """
    if candidates is None:
        if cfg.candidate_strategy == STRATEGY_FULL:
            cands = default_candidates(m)
        else:
            cands = sorted(set(m.vertices), key=Point.key)
    else:
        cands = sorted(set(candidates), key=Point.key)
    witnesses = build_witnesses(m, cands)
    masks = _vision_masks(m, cands, witnesses)
    full = (1 << len(witnesses)) - 1
    n = len(cands)
    seen_any = 0
    for mk in masks:
        seen_any |= mk
    if seen_any != full:
        raise InfeasibleWitness("candidate set cannot cover the polygon")

    rng = random.Random(cfg.rng_seed)
    rounds = 0
    solution: Optional[List[int]] = None
    k = 1
    while solution is None and k <= n:
        weights = [1] * n
        net_size = max(1, min(n, 4 * k * max(1, math.ceil(math.log2(k + 1)))))
        attempts = max(1, 8 * k * max(1, math.ceil(math.log2(n + 1))))
        for _ in range(attempts):
            if rounds >= cfg.max_rounds:
                raise RoundLimitExceeded(
                    f"round budget {cfg.max_rounds} exhausted at k={k}",
                    best=None)
            rounds += 1
            if net_size >= n:
                net = list(range(n))
            else:
                net = _weighted_sample(rng, weights, net_size)
            acc = 0
            for i in net:
                acc |= masks[i]
            if acc == full:
                solution = sorted(set(net))
                break
            uncovered = next(i for i in range(len(witnesses))
                             if not (acc >> i) & 1)
            bit = 1 << uncovered
            for i in range(n):
                if masks[i] & bit and weights[i] < cfg.weight_doubling_cap:
                    weights[i] *= 2
        else:
            k *= 2

    if solution is None:
        raise RoundLimitExceeded("no covering net found", best=None)

    solution = _prune(solution, masks, full)
    # greedy polish: keep whichever certified cover is smaller
    greedy = greedy_cover(m, cands, witnesses)
    if len(greedy.guards) < len(solution):
        chosen_points = list(greedy.guards.guards)
    else:
        chosen_points = [cands[i] for i in solution]
    gs = GuardSet(guards=tuple(chosen_points),
                  provenance=(PROV_SOLVER_GREEDY,) * len(chosen_points))
    certified = isinstance(verify_coverage(m, gs), Covered)
    w = max(1, len(witnesses))
    return SolveResult(guards=gs, witness_count=len(witnesses),
                       rounds=rounds, certified=certified,
                       size_bound_log=1.0 + math.log(w))


def _weighted_sample(rng: random.Random, weights: List[int],
                     size: int) -> List[int]:
    """Sample candidate indices with probability proportional to weight."""
    total = sum(weights)
    out = []
    for _ in range(size):
        r = rng.randrange(total)
        acc = 0
        for i, wgt in enumerate(weights):
            acc += wgt
            if r < acc:
                out.append(i)
                break
    return out
