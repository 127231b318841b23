"""Command-line entry point: solve, verify-lemmas, analyze, generate.

Exit codes: 0 success, 2 input or validation error, 3 budget exhausted,
4 lemma violation detected.  All outputs are deterministic under a fixed
seed.  Theory mode forces the full-precision exponents (E = 11, alpha =
L^-11, s just below L^-9) and refuses the FullCellSample candidate
strategy, whose grid is not enumerable at that width; humane mode requires
explicit exponents.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import List, Optional

from .generate import (
    GenerationBudgetExceeded,
    blocking_fixture,
    channel,
    comb,
    concurrent_pairs,
    counterexample_polygon,
    random_polygon,
    triple_pairs,
)
from .grid import GridSpec
from .lemmas import (
    LemmaReport,
    build_counterexample,
    check_cone_property,
    check_distance_lemma,
    check_grid_outside_bad,
    check_limited_blocking,
    check_local_visibility,
)
from .badregions import check_no_triple_intersection
from .persistence import (
    FORMAT_JSON,
    FORMAT_TEXT,
    ParseError,
    IoError,
    SceneRender,
    read_polygon,
    write_polygon,
    write_svg,
)
from .polygon import (
    PolygonError,
    check_general_position,
    extensions,
    opposite_reflex_pairs,
    reflex_vertices,
)
from .solver import (
    STRATEGY_ADAPTIVE,
    STRATEGY_FULL,
    InfeasibleWitness,
    RoundLimitExceeded,
    SolveConfig,
    eh_solve,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_VIOLATION = 4

MODE_THEORY = "theory"
MODE_HUMANE = "humane"

_FIXTURES = {
    "channel": channel,
    "deshpande": counterexample_polygon,
    "triple-pairs": triple_pairs,
    "concurrent-pairs": concurrent_pairs,
    "comb3": lambda: comb(3),
    "blocking": lambda: blocking_fixture()[0],
}


def _threads() -> int:
    """Worker cap from GG_THREADS; the orchestration is single-process."""
    try:
        return max(1, int(os.environ.get("GG_THREADS", "1")))
    except ValueError:
        return 1


def _scalar_str(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else (
        f"{f.numerator}/{f.denominator}")


def _emit_json(doc, path: Optional[str]) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_solve(args) -> int:
    try:
        m = read_polygon(args.input)
    except (ParseError, IoError, PolygonError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    strategy = args.strategy
    if args.mode == MODE_THEORY:
        if strategy == STRATEGY_FULL:
            print("error: theory mode cannot enumerate the full grid; "
                  "use AdaptiveRefine", file=sys.stderr)
            return EXIT_INPUT
        strategy = STRATEGY_ADAPTIVE
    elif strategy is None:
        strategy = STRATEGY_FULL
    cfg = SolveConfig(
        grid_exponent=(11 if args.mode == MODE_THEORY
                       else (args.grid_exponent or 2)),
        candidate_strategy=strategy,
        max_rounds=args.max_rounds,
        rng_seed=args.seed)
    try:
        result = eh_solve(m, cfg)
    except RoundLimitExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except InfeasibleWitness as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    doc = {
        "guards": [[_scalar_str(g.x), _scalar_str(g.y)]
                   for g in result.guards.guards],
        "provenance": list(result.guards.provenance),
        "certified": result.certified,
        "witness_count": result.witness_count,
        "rounds": result.rounds,
        "seed": args.seed,
        "strategy": strategy,
    }
    _emit_json(doc, args.output)
    if args.svg:
        write_svg(SceneRender(polygon=m, guards=result.guards.guards),
                  args.svg)
    return EXIT_OK if result.certified else EXIT_BUDGET


def _lemma_reports(m, args) -> Optional[List[LemmaReport]]:
    L = m.L
    which = args.check
    reports: List[LemmaReport] = []
    if which in ("all", "distances"):
        reports.append(check_distance_lemma(m, seed=args.seed))
    if which in ("all", "limited-blocking"):
        reports.append(check_limited_blocking(m, samples=args.samples,
                                              seed=args.seed))
    if which in ("all", "cone-property"):
        reports.append(check_cone_property(m, samples=args.samples,
                                           seed=args.seed))
    if which in ("all", "grid-outside-bad"):
        reports.append(check_grid_outside_bad(m, samples=args.samples,
                                              seed=args.seed))
    if which in ("all", "local-visibility"):
        if args.at == "bad-region":
            # the expected-failure probe of the pinhole counterexample
            fix = build_counterexample(3)
            a3 = fix.approach_points[2]
            fl = fix.polygon.L
            s = Fraction(1, 20 * fl)
            reports.append(check_local_visibility(
                fix.polygon, a3, s / (16 * fl), s, grid_exponent=1))
        else:
            s = Fraction(1, L ** 3)
            x = m.vertices[0]
            reports.append(check_local_visibility(m, x, s / (16 * L), s))
    return reports


def cmd_verify_lemmas(args) -> int:
    if args.fixture:
        maker = _FIXTURES.get(args.fixture)
        if maker is None:
            print(f"error: unknown fixture {args.fixture!r}",
                  file=sys.stderr)
            return EXIT_INPUT
        m = maker()
    else:
        if not args.input:
            print("error: need a polygon file or --fixture",
                  file=sys.stderr)
            return EXIT_INPUT
        try:
            m = read_polygon(args.input)
        except (ParseError, IoError, PolygonError) as e:
            print(f"error: {e}", file=sys.stderr)
            return EXIT_INPUT
    reports = _lemma_reports(m, args)
    doc = [r.to_dict() for r in reports]
    _emit_json(doc, args.output)
    if any(r.status == "Violated" for r in reports):
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_analyze(args) -> int:
    try:
        m = read_polygon(args.input)
    except (ParseError, IoError, PolygonError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    s = Fraction(1, m.L ** args.s_exponent) if args.s_exponent else Fraction(
        1, m.L ** 3)
    pairs = opposite_reflex_pairs(m)
    gp = check_general_position(m)
    triple = check_no_triple_intersection(m, s)
    doc = {
        "n": m.n,
        "M": m.M,
        "L": m.L,
        "reflex_vertices": reflex_vertices(m),
        "opposite_pairs": [[p.r1, p.r2] for p in pairs],
        "extension_count": len(extensions(m)),
        "general_position": {
            "collinear_triples": [list(t) for t in gp.collinear_triples],
            "concurrent_extension_triples": [
                [_scalar_str(p.x), _scalar_str(p.y), list(idxs)]
                for p, idxs in gp.concurrent_extension_triples],
        },
        "s": _scalar_str(s),
        "bad_region_triples": [list(t) for t in triple.triples],
    }
    _emit_json(doc, args.output)
    if args.svg:
        from .badregions import bad_region
        regions = tuple(bad_region(m, p, s) for p in pairs)
        write_svg(SceneRender(polygon=m, bad_regions=regions), args.svg)
    return EXIT_OK


def cmd_generate(args) -> int:
    try:
        if args.shape == "comb":
            m = comb(args.prongs)
        elif args.shape == "channel":
            m = channel()
        elif args.shape == "random":
            if args.n < 3:
                print("error: need at least 3 vertices", file=sys.stderr)
                return EXIT_INPUT
            m = random_polygon(args.n, args.M, seed=args.seed)
        else:
            print(f"error: unknown shape {args.shape!r}", file=sys.stderr)
            return EXIT_INPUT
    except GenerationBudgetExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, PolygonError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    fmt = FORMAT_JSON if args.emit == "json" else FORMAT_TEXT
    if args.output:
        write_polygon(m, args.output, fmt)
    else:
        write_polygon(m, sys.stdout, fmt)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="gridguards",
        description="Exact-arithmetic point-guard placement toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--mode", choices=[MODE_THEORY, MODE_HUMANE],
                       default=MODE_HUMANE)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("-E", "--grid-exponent", type=int, default=None)
        p.add_argument("--alpha-exponent", type=int, default=None)
        p.add_argument("--s-exponent", type=int, default=None)
        p.add_argument("-o", "--output", default=None)
        p.add_argument("--svg", default=None,
                       help="also write an SVG rendering to this path")

    ps = sub.add_parser("solve", help="compute a certified guard set")
    common(ps)
    ps.add_argument("input")
    ps.add_argument("--strategy",
                    choices=[STRATEGY_FULL, STRATEGY_ADAPTIVE],
                    default=None)
    ps.add_argument("--max-rounds", type=int, default=200)
    ps.set_defaults(func=cmd_solve)

    pv = sub.add_parser("verify-lemmas", help="run the lemma checks")
    common(pv)
    pv.add_argument("input", nargs="?", default=None)
    pv.add_argument("--fixture", choices=sorted(_FIXTURES), default=None)
    pv.add_argument("--check", default="all",
                    choices=["all", "distances", "limited-blocking",
                             "cone-property", "grid-outside-bad",
                             "local-visibility"])
    pv.add_argument("--at", choices=["bad-region"], default=None)
    pv.add_argument("--samples", type=int, default=50)
    pv.set_defaults(func=cmd_verify_lemmas)

    pa = sub.add_parser("analyze", help="report structure of a polygon")
    common(pa)
    pa.add_argument("input")
    pa.set_defaults(func=cmd_analyze)

    pg = sub.add_parser("generate", help="emit a fixture polygon")
    common(pg)
    pg.add_argument("--shape", choices=["comb", "channel", "random"],
                    required=True)
    pg.add_argument("--prongs", type=int, default=3)
    pg.add_argument("--n", type=int, default=10)
    pg.add_argument("--M", type=int, default=30)
    pg.add_argument("--emit", choices=["text", "json"], default="text")
    pg.set_defaults(func=cmd_generate)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    _threads()  # validated; orchestration is single-process
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
