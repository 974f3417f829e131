"""Snapshot export/import (JSON, CSV) and SVG rendering of the origami structure."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .construction import AngleSet, Box, OrigamiSnapshot
from .errors import EmptyRender
from .numeric import DEFAULT_TOL, Tolerance, angle_cos_sin, angle_from_json, angle_to_json

DEFAULT_PALETTE = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e",
                   "#17becf", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22")


@dataclass(frozen=True)
class RenderStyle:
    stroke_width: float = 1.0
    point_radius: float = 2.5
    palette: tuple[str, ...] = DEFAULT_PALETTE
    point_color: str = "#000000"
    width_px: int = 800
    height_px: int = 800

    def __post_init__(self):
        if self.stroke_width <= 0 or self.point_radius <= 0:
            raise ValueError("stroke_width and point_radius must be positive")
        if self.width_px < 64 or self.height_px < 64:
            raise ValueError("pixel dimensions must be at least 64")
        if not self.palette:
            raise ValueError("palette must not be empty")

    def color(self, i: int) -> str:
        return self.palette[i % len(self.palette)]


# -- export --------------------------------------------------------------------

def _sorted_records(snapshot: OrigamiSnapshot) -> list[tuple[float, float, int]]:
    pts = snapshot.points
    order = np.lexsort((pts.imag, pts.real, snapshot.depth_found))
    return [(float(pts[i].real) + 0.0, float(pts[i].imag) + 0.0, int(snapshot.depth_found[i]))
            for i in order]


def snapshot_to_dict(snapshot: OrigamiSnapshot) -> dict:
    return {
        "angle_set": [angle_to_json(a) for a in snapshot.angle_set],
        "depth": snapshot.depth,
        "truncated": bool(snapshot.truncated),
        "points": [{"re": re_, "im": im_, "depth_found": d}
                   for re_, im_, d in _sorted_records(snapshot)],
    }


def export_points(snapshot: OrigamiSnapshot, fmt: str = "json") -> str:
    """Points sorted by (depth_found, re, im) as JSON or CSV text."""
    if fmt == "json":
        return json.dumps(snapshot_to_dict(snapshot), indent=1) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["re", "im", "depth_found"])
        for re_, im_, d in _sorted_records(snapshot):
            w.writerow([repr(re_), repr(im_), d])
        return buf.getvalue()
    raise ValueError(f"unknown format {fmt!r}; use json or csv")


def snapshot_from_records(angle_set: AngleSet, depth: int, records, truncated: bool = False,
                          tol: Tolerance = DEFAULT_TOL) -> OrigamiSnapshot:
    records = list(records)
    pts = np.array([complex(r, i) for r, i, _ in records], dtype=complex)
    depths = np.array([d for _, _, d in records], dtype=np.int64)
    return OrigamiSnapshot(angle_set, depth, pts, depths, None, truncated, tol)


def load_snapshot_json(text: str, tol: Tolerance = DEFAULT_TOL) -> OrigamiSnapshot:
    doc = json.loads(text)
    U = AngleSet.of([angle_from_json(a) for a in doc["angle_set"]], tol)
    records = [(float(p["re"]), float(p["im"]), int(p["depth_found"])) for p in doc["points"]]
    return snapshot_from_records(U, int(doc["depth"]), records, bool(doc["truncated"]), tol)


def read_points_csv(text: str) -> list[tuple[float, float, int]]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != ["re", "im", "depth_found"]:
        raise ValueError("missing re,im,depth_found header")
    return [(float(r), float(i), int(d)) for r, i, d in rows[1:]]


# -- rendering -----------------------------------------------------------------

def _clip(base: complex, c: float, s: float, box: Box) -> Optional[tuple[complex, complex]]:
    """Liang-Barsky clip of the infinite line ``base + t (c, s)`` to ``box``."""
    t0, t1 = -math.inf, math.inf
    for p0, d, lo, hi in ((base.real, c, box.xmin, box.xmax), (base.imag, s, box.ymin, box.ymax)):
        if d == 0.0:
            if p0 < lo or p0 > hi:
                return None
            continue
        a, b = (lo - p0) / d, (hi - p0) / d
        t0, t1 = max(t0, min(a, b)), min(t1, max(a, b))
    if not t0 < t1:
        return None
    return base + t0 * complex(c, s), base + t1 * complex(c, s)


def structure_lines(snapshot: OrigamiSnapshot, tol: Tolerance = DEFAULT_TOL):
    """Distinct lines ``(angle index, offset)`` through the snapshot's points, sorted."""
    out = []
    pts = snapshot.points
    for i, a in enumerate(snapshot.angle_set):
        c, s = angle_cos_sin(a)
        offs = np.sort(-s * pts.real + c * pts.imag)
        kept: list[float] = []
        for v in offs:
            if not kept or v - kept[-1] > tol.eps_scalar:
                kept.append(float(v))
        out.extend((i, v) for v in kept)
    return out


def _fmt(v: float) -> str:
    return f"{round(v, 3) + 0.0:.3f}"


def render_svg(snapshot: OrigamiSnapshot, bbox: Box, style: RenderStyle = RenderStyle(),
               tol: Tolerance = DEFAULT_TOL) -> str:
    """SVG of all structure lines and points clipped to ``bbox`` (imaginary axis up)."""
    if len(snapshot) == 0:
        raise EmptyRender("snapshot has no points")
    if bbox.area <= 0:
        raise ValueError("bbox must have positive area")
    W, H = style.width_px, style.height_px
    sx = W / (bbox.xmax - bbox.xmin)
    sy = H / (bbox.ymax - bbox.ymin)

    def px(z: complex) -> tuple[str, str]:
        return _fmt((z.real - bbox.xmin) * sx), _fmt((bbox.ymax - z.imag) * sy)

    body = []
    for i, off in structure_lines(snapshot, tol):
        c, s = angle_cos_sin(snapshot.angle_set[i])
        seg = _clip(complex(-s * off, c * off), c, s, bbox)
        if seg is None:
            continue
        (x1, y1), (x2, y2) = px(seg[0]), px(seg[1])
        body.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                    f'stroke="{style.color(i)}" stroke-width="{style.stroke_width:g}"/>')
    inside = snapshot.points[bbox.contains(snapshot.points)]
    for z in sorted(inside, key=lambda z: (z.real, z.imag)):
        cx, cy = px(z)
        body.append(f'<circle cx="{cx}" cy="{cy}" r="{style.point_radius:g}" '
                    f'fill="{style.point_color}"/>')
    head = ('<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{W}" height="{H}" viewBox="0 0 {W} {H}">\n')
    return head + "".join(line + "\n" for line in body) + "</svg>\n"
