"""Polygon file formats and SVG scene rendering.

Two polygon formats: plain text with one "x y" pair per line ('#' starts a
comment, rationals written "p/q") and JSON {"vertices": [[x, y], ...]}.
Both round-trip exactly.  SVG output serializes exact coordinates at fixed
decimal precision and embeds the exact rationals in a comment for audit;
the bytes are deterministic for identical scenes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, IO, List, Optional, Sequence, Tuple, Union

from .badregions import BadRegion, _wedge_clip_box
from .geometry import Point, Scalar
from .polygon import PolygonModel, load_polygon
from .visibility import VisibilityPolygon

FORMAT_TEXT = "PlainText"
FORMAT_JSON = "Json"


class ParseError(Exception):
    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class IoError(Exception):
    pass


def _parse_scalar(token: str, line: int) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad coordinate {token!r}", line)


def _read_text(text: str) -> List[Tuple[Fraction, Fraction]]:
    verts = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        parts = body.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'x y', got {body!r}", lineno)
        verts.append((_parse_scalar(parts[0], lineno),
                      _parse_scalar(parts[1], lineno)))
    if not verts:
        raise ParseError("no vertices found", 1)
    return verts


def _read_json(text: str) -> List[Tuple[Fraction, Fraction]]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno)
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise ParseError("missing 'vertices' key", 1)
    verts = []
    for entry in doc["vertices"]:
        if not isinstance(entry, (list, tuple)) or len(entry) != 2:
            raise ParseError(f"bad vertex entry {entry!r}", 1)
        pair = []
        for c in entry:
            if isinstance(c, bool) or not isinstance(c, (int, str)):
                raise ParseError(f"bad coordinate {c!r}", 1)
            pair.append(_parse_scalar(str(c), 1))
        verts.append((pair[0], pair[1]))
    if not verts:
        raise ParseError("no vertices found", 1)
    return verts


def read_polygon(source: Union[str, IO[str]]) -> PolygonModel:
    """Load a polygon from a path or text stream in either format."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        try:
            with open(source, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise IoError(str(e))
    stripped = text.lstrip()
    if stripped.startswith("{"):
        verts = _read_json(text)
    else:
        verts = _read_text(text)
    return load_polygon(verts)


def _scalar_token(x: Scalar) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def write_polygon(m: PolygonModel, target: Union[str, IO[str]],
                  fmt: str = FORMAT_TEXT) -> None:
    """Serialize the polygon's exact coordinates to a path or stream."""
    if fmt == FORMAT_TEXT:
        lines = [f"{_scalar_token(v.x)} {_scalar_token(v.y)}"
                 for v in m.vertices]
        text = "\n".join(lines) + "\n"
    elif fmt == FORMAT_JSON:
        verts = []
        for v in m.vertices:
            verts.append([
                int(v.x) if v.x.denominator == 1 else _scalar_token(v.x),
                int(v.y) if v.y.denominator == 1 else _scalar_token(v.y)])
        text = json.dumps({"vertices": verts}, separators=(",", ":")) + "\n"
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if hasattr(target, "write"):
        target.write(text)
    else:
        try:
            with open(target, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as e:
            raise IoError(str(e))


@dataclass
class SceneRender:
    """Layered scene over one polygon; all geometry is exact until render."""

    polygon: PolygonModel
    guards: Tuple[Point, ...] = ()
    visibility_regions: Tuple[VisibilityPolygon, ...] = ()
    bad_regions: Tuple[BadRegion, ...] = ()
    grid_sample: Tuple[Point, ...] = ()
    witnesses: Tuple[Point, ...] = ()
    precision: int = 6
    style: Dict[str, str] = field(default_factory=dict)


_DEFAULT_STYLE = {
    "polygon": "fill:none;stroke:#202020;stroke-width:0.5%",
    "visibility": "fill:#4477aa;fill-opacity:0.25;stroke:none",
    "window": "stroke:#4477aa;stroke-dasharray:2,2;fill:none",
    "bad": "fill:#cc3311;fill-opacity:0.35;stroke:none",
    "grid": "fill:#009988",
    "witness": "fill:#ee7733",
    "guard": "fill:#000000;stroke:#ffffff",
}


def write_svg(scene: SceneRender, target: Union[str, IO[str]]) -> None:
    """Render the scene as standalone SVG 1.1 with deterministic bytes."""
    m = scene.polygon
    p = scene.precision
    style = dict(_DEFAULT_STYLE)
    style.update(scene.style)
    xs = [v.x for v in m.vertices]
    ys = [v.y for v in m.vertices]
    pad = max(1, (max(xs) - min(xs)) // 20)
    x0, y0 = min(xs) - pad, min(ys) - pad
    x1, y1 = max(xs) + pad, max(ys) + pad
    flip = y0 + y1

    def fx(v: Scalar) -> str:
        return f"{float(v):.{p}f}"

    def fy(v: Scalar) -> str:
        return f"{float(flip - v):.{p}f}"

    def path(points: Sequence[Point], close: bool = True) -> str:
        cmds = [f"M {fx(points[0].x)} {fy(points[0].y)}"]
        for q in points[1:]:
            cmds.append(f"L {fx(q.x)} {fy(q.y)}")
        if close:
            cmds.append("Z")
        return " ".join(cmds)

    r_guard = float(max(x1 - x0, y1 - y0)) / 100
    out: List[str] = []
    out.append('<?xml version="1.0" encoding="UTF-8"?>')
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{fx(x0)} {fx(Fraction(0))} {fx(x1 - x0)} {fx(y1 - y0)}">')
    audit = "exact: " + "; ".join(
        f"{_scalar_token(v.x)},{_scalar_token(v.y)}" for v in m.vertices)
    out.append(f"<!-- {audit} -->")
    out.append(f'<path d="{path(list(m.vertices))}" style="{style["polygon"]}"/>')
    for vp in scene.visibility_regions:
        out.append(f'<path d="{path(list(vp.boundary))}" '
                   f'style="{style["visibility"]}"/>')
        es = vp.edges()
        for i in vp.window_edges:
            a, b = es[i]
            out.append(
                f'<line x1="{fx(a.x)}" y1="{fy(a.y)}" x2="{fx(b.x)}" '
                f'y2="{fy(b.y)}" style="{style["window"]}"/>')
    for region in scene.bad_regions:
        for w in region.wedges:
            poly = _wedge_clip_box(m, w)
            if len(poly) >= 3:
                out.append(f'<path d="{path(poly)}" style="{style["bad"]}"/>')
    for q in scene.grid_sample:
        out.append(f'<circle cx="{fx(q.x)}" cy="{fy(q.y)}" '
                   f'r="{r_guard / 2:.{p}f}" style="{style["grid"]}"/>')
    for q in scene.witnesses:
        out.append(f'<circle cx="{fx(q.x)}" cy="{fy(q.y)}" '
                   f'r="{r_guard / 2:.{p}f}" style="{style["witness"]}"/>')
    for q in scene.guards:
        out.append(f'<circle cx="{fx(q.x)}" cy="{fy(q.y)}" '
                   f'r="{r_guard:.{p}f}" style="{style["guard"]}"/>')
    out.append("</svg>")
    text = "\n".join(out) + "\n"
    if hasattr(target, "write"):
        target.write(text)
    else:
        try:
            with open(target, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as e:
            raise IoError(str(e))
