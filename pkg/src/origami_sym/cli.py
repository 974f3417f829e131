"""Command-line interface.

Exit codes: 0 ok, 2 usage or input error, 3 domain error, 4 resource guard.
Settings come from built-in defaults, then the JSON file named by
``--config`` or ``$ORIGAMI_SYM_CONFIG``, then command-line flags.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, fields, replace
from typing import Optional

from .algebra import chebyshev_u
from .construction import AngleSet, Box, generate, ring_description
from .errors import InvalidAngle, OrigamiError
from .io_render import RenderStyle, export_points, render_svg
from .numeric import Tolerance, angle_to_json, parse_angle_list
from .symmetry import DEFAULT_MAX_DEPTH, classify, inverse_construct, parse_group

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_GUARD = 0, 2, 3, 4
CONFIG_ENV = "ORIGAMI_SYM_CONFIG"


class UsageError(Exception):
    pass


class GuardError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    eps_angle: float = 1e-10
    eps_point: float = 1e-9
    eps_scalar: float = 1e-9
    depth: int = 2
    max_depth: int = DEFAULT_MAX_DEPTH
    cap: Optional[int] = None
    bbox: Optional[tuple[float, float, float, float]] = None
    render_bbox: tuple[float, float, float, float] = (-1.0, 2.0, -1.0, 2.0)
    out: Optional[str] = None

    @classmethod
    def from_dict(cls, data: dict) -> "CliConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        data = dict(data)
        for key in ("bbox", "render_bbox"):
            if data.get(key) is not None:
                data[key] = _bbox_tuple(data[key])
        return replace(cls(), **data).validated()

    def validated(self) -> "CliConfig":
        try:
            Tolerance(self.eps_angle, self.eps_point, self.eps_scalar)
        except (TypeError, ValueError) as exc:
            raise UsageError(str(exc)) from exc
        for name in ("depth", "max_depth"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise UsageError(f"{name} must be a positive integer, got {v!r}")
        if self.cap is not None and (not isinstance(self.cap, int) or self.cap < 1):
            raise UsageError(f"cap must be a positive integer, got {self.cap!r}")
        for key in ("bbox", "render_bbox"):
            b = getattr(self, key)
            if b is not None:
                _make_box(b)
        return self

    @property
    def tol(self) -> Tolerance:
        return Tolerance(self.eps_angle, self.eps_point, self.eps_scalar)


def _bbox_tuple(value) -> tuple[float, float, float, float]:
    if isinstance(value, str):
        value = value.split(",")
    try:
        vals = tuple(float(v) for v in value)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad bbox {value!r}") from exc
    if len(vals) != 4:
        raise UsageError("bbox needs four numbers: xmin,xmax,ymin,ymax")
    return vals  # type: ignore[return-value]


def _make_box(vals) -> Box:
    try:
        return Box(*vals)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def load_config(path: Optional[str]) -> CliConfig:
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return CliConfig()
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError("config file must hold a JSON object")
    return CliConfig.from_dict(data)


def _layer(cfg: CliConfig, args: argparse.Namespace) -> CliConfig:
    overrides = {}
    for f in fields(CliConfig):
        v = getattr(args, f.name, None)
        if v is not None:
            overrides[f.name] = _bbox_tuple(v) if f.name in ("bbox", "render_bbox") else v
    return replace(cfg, **overrides).validated()


def _angles(args, cfg: CliConfig) -> AngleSet:
    try:
        U = AngleSet.of(parse_angle_list(args.angles), cfg.tol)
    except InvalidAngle as exc:
        raise UsageError(str(exc)) from exc
    if len(U) < 3:
        raise UsageError(f"need at least 3 distinct angles, got {len(U)}")
    return U


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
        print(f"wrote {out}", file=sys.stderr)
    else:
        sys.stdout.write(text)


def cmd_classify(args, cfg: CliConfig) -> int:
    U = _angles(args, cfg)
    result = classify(U, cfg.max_depth, cfg.tol)
    if result.ambiguous:
        print("warning: triangle angles compared close to eps_angle", file=sys.stderr)
    _emit(json.dumps(result.to_json()) + "\n", cfg.out)
    return EXIT_OK


def _snapshot(U: AngleSet, cfg: CliConfig, bbox: Optional[Box]):
    if len(U) > 3 and bbox is None and cfg.cap is None:
        raise GuardError(f"{len(U)} angles give a dense set; pass --bbox or --cap")
    return generate(U, cfg.depth, bbox, cfg.cap, cfg.tol)


def cmd_generate(args, cfg: CliConfig) -> int:
    U = _angles(args, cfg)
    bbox = _make_box(cfg.bbox) if cfg.bbox else None
    snap = _snapshot(U, cfg, bbox)
    if snap.truncated:
        print(f"note: snapshot truncated ({len(snap)} points)", file=sys.stderr)
    _emit(export_points(snap, args.format), cfg.out)
    return EXIT_OK


def cmd_render(args, cfg: CliConfig) -> int:
    U = _angles(args, cfg)
    view = _make_box(cfg.bbox or cfg.render_bbox)
    # lattices are cheap to build unclipped; dense sets are clipped to the view
    snap = _snapshot(U, cfg, None if len(U) == 3 else view)
    style = RenderStyle(width_px=args.width, height_px=args.height)
    _emit(render_svg(snap, view, style, cfg.tol), cfg.out)
    return EXIT_OK


def cmd_project(args, cfg: CliConfig) -> int:
    U = _angles(args, cfg)
    ring = ring_description(U, cfg.tol)
    doc = {
        "input": [angle_to_json(a) for a in U],
        "initial_intersections": [{"re": z.real, "im": z.imag} for z in ring.initial_intersections],
        "projections": list(ring.projections),
    }
    _emit(json.dumps(doc) + "\n", cfg.out)
    return EXIT_OK


def cmd_chebyshev(args, cfg: CliConfig) -> int:
    if args.k < 0:
        raise UsageError("k must be non-negative")
    ks = [args.k] if args.only else range(args.k + 1)
    lines = ["k,coefficients,polynomial"]
    for k in ks:
        p = chebyshev_u(k)
        lines.append(f"{k},{' '.join(str(c) for c in p.coeffs)},{p}")
    _emit("\n".join(lines) + "\n", cfg.out)
    return EXIT_OK


def cmd_construct(args, cfg: CliConfig) -> int:
    try:
        target = parse_group(args.group)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    U = inverse_construct(target)
    doc = {"target": target.label, "angle_set": [angle_to_json(a) for a in U],
           "angles": [str(a) for a in U]}
    _emit(json.dumps(doc) + "\n", cfg.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="origami-sym", description=__doc__.splitlines()[0])
    p.add_argument("--config", help=f"JSON config file (default: ${CONFIG_ENV})")
    p.add_argument("--eps-angle", dest="eps_angle", type=float)
    p.add_argument("--eps-point", dest="eps_point", type=float)
    p.add_argument("--eps-scalar", dest="eps_scalar", type=float)
    sub = p.add_subparsers(dest="command", required=True)

    def with_angles(sp):
        sp.add_argument("--angles", required=True,
                        help="comma list, e.g. 0,pi/3,2pi/3 or 0,rad:1.1071487,pi/2")
        sp.add_argument("--out", help="write to this file instead of stdout")
        return sp

    c = with_angles(sub.add_parser("classify", help="wallpaper or point group of U"))
    c.add_argument("--max-depth", dest="max_depth", type=int)
    c.set_defaults(func=cmd_classify)

    g = with_angles(sub.add_parser("generate", help="points of M_k(U)"))
    g.add_argument("--depth", type=int)
    g.add_argument("--bbox", help="xmin,xmax,ymin,ymax")
    g.add_argument("--cap", type=int)
    g.add_argument("--format", choices=("json", "csv"), default="json")
    g.set_defaults(func=cmd_generate)

    r = with_angles(sub.add_parser("render", help="SVG of the origami structure"))
    r.add_argument("--depth", type=int)
    r.add_argument("--bbox", help="xmin,xmax,ymin,ymax (view and clip box)")
    r.add_argument("--cap", type=int)
    r.add_argument("--width", type=int, default=800)
    r.add_argument("--height", type=int, default=800)
    r.set_defaults(func=cmd_render)

    pr = with_angles(sub.add_parser("project", help="initial intersections and real projections"))
    pr.set_defaults(func=cmd_project)

    ch = sub.add_parser("chebyshev", help="table of U_k coefficients as CSV")
    ch.add_argument("--k", type=int, required=True)
    ch.add_argument("--only", action="store_true", help="emit only row k")
    ch.add_argument("--out")
    ch.set_defaults(func=cmd_chebyshev)

    co = sub.add_parser("construct", help="angle set realising a point group")
    co.add_argument("group", help="C2xC2, C<n> or D<n>")
    co.add_argument("--out")
    co.set_defaults(func=cmd_construct)
    return p


def _join_bbox(argv: list[str]) -> list[str]:
    # "--bbox -1,2,-1,2" would otherwise read as an unknown option
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--bbox" and i + 1 < len(argv):
            out.append(f"--bbox={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = _join_bbox(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _layer(load_config(args.config), args)
        return args.func(args, cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GuardError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except OrigamiError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
