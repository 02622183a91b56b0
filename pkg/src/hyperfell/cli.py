"""Command-line front end."""

from __future__ import annotations

import argparse
import ast
import json
import math
import re
import sys
from datetime import datetime, timezone
from typing import Sequence

import numpy as np

from . import __version__
from .constants import ALPHA0, RESOLUTION, SEED, TAIL_LENGTH
from .order import INCONCLUSIVE as BOUND_INCONCLUSIVE
from .order import MEET, join_brute, join_ex35, meet_brute, meet_ex42
from .scene import ParseError, Scene, load_scene, parse_scene, print_scene

EXIT_OK, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3, 4

#: flags whose value is a point and may start with a minus sign
POINT_FLAGS = ("--point", "--from", "--x", "--y")
_NUMBER_LIST = re.compile(r"^\(?\s*-[\d.eE+\-,\s]*\)?$")


class UsageError(Exception):
    """Bad flags or arguments (exit code 3)."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------------------
# argument helpers

def parse_point(text: str, dim: int | None = None) -> np.ndarray:
    """``"a,b,c"`` or ``"(a, b, c)"`` to a float vector."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    try:
        vals = [float(t) for t in body.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"not a point: {text!r}") from None
    if not vals or (dim is not None and len(vals) != dim):
        raise UsageError(f"point {text!r} needs {dim} coordinates")
    return np.array(vals)


def parse_radii(text: str) -> list[float]:
    try:
        radii = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"not a radius list: {text!r}") from None
    if len(radii) < 3 or any(r <= 0 for r in radii) or sorted(radii) != radii:
        raise UsageError("--windows needs at least three increasing positive radii")
    return radii


_SET_RE = re.compile(r"^\s*(curve:)?([A-Za-z_][A-Za-z_0-9]*)\s*(?:\((.*)\))?\s*$", re.S)


def _set_args(inner: str | None) -> list:
    if inner is None or not inner.strip():
        return []
    try:
        val = ast.literal_eval(f"({inner},)")
    except (ValueError, SyntaxError):
        raise UsageError(f"cannot read arguments {inner!r}") from None
    out = []
    for v in val:
        if isinstance(v, (int, float)) and not isinstance(v, bool):
            out.append(float(v))
        elif isinstance(v, tuple) and all(isinstance(c, (int, float)) for c in v):
            out.append(np.array(v, dtype=float))
        else:
            raise UsageError(f"unsupported argument {v!r}")
    return out


def _points_from(args: list, n: int, count: int, extra_scalars: int = 0):
    """Split arguments into ``count`` points of dimension ``n`` plus trailing scalars."""
    if all(isinstance(a, float) for a in args) and len(args) == count * n + extra_scalars:
        flat = np.array(args)
        pts = [flat[i * n:(i + 1) * n] for i in range(count)]
        return pts, list(flat[count * n:])
    pts = [a for a in args if isinstance(a, np.ndarray)]
    scal = [a for a in args if isinstance(a, float)]
    if len(pts) != count or len(scal) != extra_scalars or any(len(p) != n for p in pts):
        raise UsageError(f"expected {count} point(s) of dimension {n} and {extra_scalars} number(s)")
    return pts, scal


CURVES = ("ex42_vietoris", "ex42_edge", "ex41_segment", "segment")


def parse_set(expr: str, scene: Scene):
    """Resolve the set micro-syntax against ``scene``.

    ``ideal(p)``, ``filter(p)``, ``interval(b, a)``, ``ball(c, r)``, ``box(lo, hi)``,
    ``scene`` and ``curve:<name>(...)`` with names ``ex42_vietoris``, ``ex42_edge``,
    ``ex41_segment`` and ``segment``.
    """
    from . import repro, setrep

    m = _SET_RE.match(expr)
    if not m:
        raise UsageError(f"cannot parse set expression {expr!r}")
    curve, name, inner = m.group(1), m.group(2), m.group(3)
    args = _set_args(inner)
    n = scene.dim
    try:
        if curve:
            if name == "ex42_vietoris":
                (p,), _ = _points_from(args, 3, 1)
                return repro.ex42_vietoris_curve(p)
            if name == "ex42_edge":
                (p,), _ = _points_from(args, 3, 1)
                edge = repro.ex42_right_top_edge(p)
                return setrep.ImplicitClosedSet(3, lambda q, tol: edge.residual(q) <= tol,
                                                f"edge{setrep._tag(p)}", edge.sample)
            if name == "ex41_segment":
                (p,), _ = _points_from(args, 2, 1)
                return repro.ex41_segment(p)
            if name == "segment":
                (a, b), _ = _points_from(args, n, 2)
                return setrep.segment(a, b).as_set()
            raise UsageError(f"unknown curve {name!r}; choose from {', '.join(CURVES)}")
        if name == "scene" and not args:
            return setrep.scene_set(scene)
        if name in ("ideal", "filter"):
            (p,), _ = _points_from(args, n, 1)
            return setrep.ideal(scene, p) if name == "ideal" else setrep.filter_set(scene, p)
        if name == "interval":
            (b, a), _ = _points_from(args, n, 2)
            return setrep.order_interval(scene, b, a)
        if name == "ball":
            (c,), (r,) = _points_from(args, n, 1, 1)
            return setrep.ball(scene, c, r)
        if name == "box":
            (lo, hi), _ = _points_from(args, n, 2)
            return setrep.box(scene, lo, hi)
    except ValueError as exc:
        raise UsageError(f"{expr}: {exc}") from None
    raise UsageError(f"unknown set {name!r}")


# ---------------------------------------------------------------------------
# output

def _clean(obj):
    """JSON-safe copy: numpy scalars and arrays unwrapped, non-finite floats to null."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, np.generic):
        return _clean(obj.item())
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    return obj


def _scalar(v) -> str:
    if isinstance(v, float):
        return f"{v:.6g}"
    if v is None:
        return "-"
    return str(v)


def render_text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines: list[str] = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}{k}:")
                lines.extend(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}-")
                lines.extend(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_inline(v)}")
    else:
        lines.append(pad + _scalar(obj))
    return lines


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) or _flat_list(x) for x in v)


def _inline(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_inline(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{}"
    return _scalar(v)


def _emit(args, command: str, status: str, code: int, result: dict) -> int:
    doc = {"tool": "hyperfell", "version": __version__, "command": command, "status": status,
           "exit_code": code}
    if not args.no_timestamp:
        doc["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    doc["result"] = result
    doc = _clean(doc)
    if args.format == "json":
        sys.stdout.write(json.dumps(doc, indent=2, allow_nan=False) + "\n")
    else:
        sys.stdout.write("\n".join(render_text(doc)) + "\n")
    return code


def _code_for(status: str, expect: str | None, ok: Sequence[str], fail: Sequence[str] = ()) -> int:
    if expect is not None:
        return EXIT_OK if status == expect else EXIT_FAIL
    if status in ok:
        return EXIT_OK
    if status in fail:
        return EXIT_FAIL
    return EXIT_INCONCLUSIVE


def _write(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror}") from None


# ---------------------------------------------------------------------------
# scene loading

def _scene(args) -> Scene:
    if (args.builtin is None) == (args.scene is None):
        raise UsageError("give exactly one of --builtin or --scene")
    if args.builtin:
        scene = load_scene(builtin=args.builtin)
    else:
        try:
            scene = load_scene(path=args.scene)
        except ParseError as exc:
            exc.source = args.scene
            raise
    if getattr(args, "resolution", None):
        scene = scene.with_window(scene.window.with_resolution(args.resolution))
    return scene


def _landmarks(scene: Scene) -> list[dict]:
    return [{"name": lm.name, "point": list(lm.point), "exterior": lm.exterior} for lm in scene.landmarks]


# ---------------------------------------------------------------------------
# subcommands

def cmd_scene_check(args) -> int:
    from .setrep import sample, scene_set

    if args.path is not None:
        if args.scene is not None or args.builtin is not None:
            raise UsageError("give the scene file once")
        args.scene = args.path
    scene = _scene(args)
    text = print_scene(scene)
    result = {"name": scene.name, "dim": scene.dim, "order": scene.order.to_text(),
              "window": scene.window.to_json(), "closed": scene.closed_in_rn,
              "landmarks": _landmarks(scene), "canonical": text,
              "round_trip": parse_scene(text) == scene}
    if args.plot_csv:
        _write(args.plot_csv, sample(scene_set(scene), scene.window).to_csv())
    return _emit(args, "scene check", "OK" if result["round_trip"] else "MISMATCH",
                 EXIT_OK if result["round_trip"] else EXIT_FAIL, result)


def cmd_hausdorff(args) -> int:
    from .setrep import hausdorff_windowed
    from .window import expanded_windows, growing_windows

    scene = _scene(args)
    a = parse_set(args.set_a, scene)
    b = parse_set(args.set_b, scene)
    windows = expanded_windows(scene.window, parse_radii(args.windows)) if args.windows \
        else growing_windows(scene.window)
    rep = hausdorff_windowed(a, b, windows)
    result = {**rep.to_json(), "set_a": a.tag, "set_b": b.tag, "windows": [w.to_json() for w in windows]}
    if args.plot_csv:
        lines = ["radius,value"] + [f"{r!r},{'' if v is None else repr(v)}" for r, v in zip(rep.radii, rep.values)]
        _write(args.plot_csv, "\n".join(lines) + "\n")
    code = _code_for(rep.verdict, args.expect, ("DIVERGENT", "BOUNDED"))
    return _emit(args, "hausdorff", rep.verdict, code, result)


def cmd_meet(args) -> int:
    scene = _scene(args)
    x = parse_point(args.x, scene.dim)
    y = parse_point(args.y, scene.dim)
    op = "join" if args.join else "meet"
    res = (join_brute if args.join else meet_brute)(x, y, scene)
    closed = None
    try:
        if op == "meet" and scene.name == "ex42":
            closed = meet_ex42(x, y)
        elif op == "join" and scene.name == "ex35":
            closed = join_ex35(x, y)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    agree = None
    if closed is not None and res.point is not None:
        agree = bool(np.linalg.norm(closed - res.point) <= scene.window.max_pitch)
    result = {"operation": op, "x": x, "y": y, "brute": res.to_json(),
              "closed_form": closed, "agree": agree}
    code = _code_for(res.status, args.expect, (MEET,), ("NO_MEET", "NOT_SEMILATTICE_AT_RESOLUTION"))
    if agree is False and args.expect is None:
        code = EXIT_FAIL
    status = res.status if res.status != BOUND_INCONCLUSIVE else "INCONCLUSIVE"
    return _emit(args, op, status, code, result)


def cmd_classify(args) -> int:
    from .props import classify_point

    scene = _scene(args)
    x = parse_point(args.point, scene.dim)
    cls = classify_point(scene, x)
    code = _code_for(cls.status, args.expect, ("UPPER_SINGULAR", "UPPER_COMPACT_BOUNDED", "NEITHER"))
    return _emit(args, "classify", cls.status, code, {"point": x, **cls.to_json()})


def _default_partner(scene: Scene, x0: np.ndarray) -> np.ndarray:
    d = scene.order.interior_direction(scene.dim)
    step = 0.25 * scene.window.extent * d / np.linalg.norm(d)
    for cand in (x0 - step, x0 + step):
        if scene.contains(cand):
            return cand
    return x0 - step


def cmd_probe(args) -> int:
    from .hyperspace import HitSet, MissSet, PathSpec, fell_probe, hausdorff_probe, vietoris_probe
    from .window import expanded_windows, growing_windows

    scene = _scene(args)
    x0 = parse_point(args.point, scene.dim)
    if not scene.contains(x0):
        raise UsageError(f"--point {args.point} is not in the scene")
    x1 = parse_point(args.__dict__["from"], scene.dim) if args.__dict__["from"] else _default_partner(scene, x0)
    path = PathSpec.linear(x1, x0, alpha0=args.alpha0, tail=args.tail)
    if args.topology == "hausdorff":
        windows = expanded_windows(scene.window, parse_radii(args.windows)) if args.windows else None
        v = hausdorff_probe(scene, path, windows)
    else:
        hits = [HitSet(parse_set(e, scene), e) for e in args.hit] if args.hit or args.miss else None
        misses = None
        if args.hit or args.miss:
            misses = []
            for e in args.miss:
                s = parse_set(e, scene)
                if args.topology == "fell":
                    misses.append(MissSet.certified(s, scene, growing_windows(scene.window, (1.0, 2.0)), e))
                else:
                    misses.append(MissSet(s, e))
        probe = fell_probe if args.topology == "fell" else vietoris_probe
        try:
            v = probe(scene, path, hits, misses, seed=args.seed)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if args.plot_csv:
        pts = path.points()
        lines = ["m,alpha," + ",".join(f"x{i + 1}" for i in range(scene.dim))]
        lines += [f"{m},{a!r}," + ",".join(repr(float(c)) for c in p)
                  for m, (a, p) in enumerate(zip(path.alphas(), pts))]
        _write(args.plot_csv, "\n".join(lines) + "\n")
    code = _code_for(v.status, args.expect, ("CONVERGES_AT_RESOLUTION", "DIVERGES"))
    return _emit(args, f"probe {args.topology}", v.status, code, v.to_json())


PREDICATES = ("decreasing-continuous", "proper-inclusion", "dense-boundaries", "all")


def cmd_props(args) -> int:
    from .props import (FALSIFIED, PASSED, check_decreasing_continuous, check_dense_boundaries,
                        check_proper_inclusion, seeded_points)

    scene = _scene(args)
    if args.point:
        pts = np.array([parse_point(p, scene.dim) for p in args.point])
    else:
        pts = seeded_points(scene, args.points, args.seed)
    wanted = PREDICATES[:3] if args.predicate == "all" else (args.predicate,)
    reports = []
    try:
        for name in wanted:
            if name == "decreasing-continuous":
                reports.append(check_decreasing_continuous(scene, pts, seed=args.seed))
            elif name == "proper-inclusion":
                reports.append(check_proper_inclusion(scene, seed=args.seed))
            else:
                reports.append(check_dense_boundaries(scene, pts, strict=args.dense_boundaries_strict,
                                                      seed=args.seed))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    statuses = [r.status for r in reports]
    if FALSIFIED in statuses:
        status = FALSIFIED
    elif all(s == PASSED for s in statuses):
        status = PASSED
    else:
        status = "INCONCLUSIVE"
    code = _code_for(status, args.expect, (PASSED,), (FALSIFIED,))
    return _emit(args, "props", status, code, {"reports": [r.to_json() for r in reports]})


def cmd_repro(args) -> int:
    from .repro import EXAMPLE_IDS, MATCH, ReproConfig, run_repro

    ids = EXAMPLE_IDS if args.example == "all" else (args.example,)
    if args.example != "all" and args.example not in EXAMPLE_IDS:
        raise UsageError(f"unknown example {args.example!r}; choose from all, {', '.join(EXAMPLE_IDS)}")
    config = ReproConfig.from_env(seed=args.seed, points=args.points, plot_dir=args.plot_csv,
                                  u_branch=args.u_branch)
    reports = [run_repro(e, config).to_json() for e in ids]
    ok = all(r["status"] == MATCH for r in reports)
    status = MATCH if ok else "MISMATCH"
    code = EXIT_OK if ok else EXIT_FAIL
    return _emit(args, "repro", status, code, {"reports": reports})


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--no-timestamp", action="store_true", help="omit the timestamp field")
    common.add_argument("--seed", type=int, default=SEED)

    scene_src = _Parser(add_help=False)
    scene_src.add_argument("--builtin", help="ex25, ex35, ex36, ex41, ex42, open_box or open_box:N")
    scene_src.add_argument("--scene", help="scene file in the region DSL")
    scene_src.add_argument("--resolution", type=int, help=f"grid points per axis (default {RESOLUTION})")

    p = _Parser(prog="hyperfell", description="Numerical checks of hyperspace embeddings of ordered sets.")
    p.add_argument("--version", action="version", version=f"hyperfell {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sc = sub.add_parser("scene", help="scene utilities")
    scsub = sc.add_subparsers(dest="scene_command", required=True, parser_class=_Parser)
    chk = scsub.add_parser("check", parents=[common, scene_src], help="parse, validate and echo a scene")
    chk.add_argument("path", nargs="?", help="scene file")
    chk.add_argument("--plot-csv", help="write the sampled scene to this CSV file")
    chk.set_defaults(func=cmd_scene_check)

    h = sub.add_parser("hausdorff", parents=[common, scene_src], help="windowed Hausdorff growth of two sets")
    h.add_argument("--set-a", required=True)
    h.add_argument("--set-b", required=True)
    h.add_argument("--windows", help="comma-separated window radii, at least three")
    h.add_argument("--plot-csv", help="write per-window values to this CSV file")
    h.add_argument("--expect")
    h.set_defaults(func=cmd_hausdorff)

    m = sub.add_parser("meet", parents=[common, scene_src], help="grid meet (or join) of two points")
    m.add_argument("--x", required=True)
    m.add_argument("--y", required=True)
    m.add_argument("--join", action="store_true")
    m.add_argument("--expect")
    m.set_defaults(func=cmd_meet)

    c = sub.add_parser("classify", parents=[common, scene_src], help="upper singular / compact bounded test")
    c.add_argument("--point", required=True)
    c.add_argument("--expect")
    c.set_defaults(func=cmd_classify)

    pr = sub.add_parser("probe", parents=[common, scene_src], help="continuity probe of x -> x↓")
    pr.add_argument("topology", choices=("fell", "vietoris", "hausdorff"))
    pr.add_argument("--point", required=True, help="limit point x0")
    pr.add_argument("--from", help="path start x1 (path α x1 + (1-α) x0)")
    pr.add_argument("--hit", action="append", default=[], help="hit set expression (repeatable)")
    pr.add_argument("--miss", action="append", default=[], help="miss set expression (repeatable)")
    pr.add_argument("--windows", help="window radii for the hausdorff probe")
    pr.add_argument("--alpha0", type=float, default=ALPHA0)
    pr.add_argument("--tail", type=int, default=TAIL_LENGTH, help="path length M")
    pr.add_argument("--plot-csv", help="write the path points to this CSV file")
    pr.add_argument("--expect")
    pr.set_defaults(func=cmd_probe)

    pp = sub.add_parser("props", parents=[common, scene_src], help="order predicate checkers")
    pp.add_argument("predicate", choices=PREDICATES)
    pp.add_argument("--point", action="append", default=[], help="sample point (repeatable)")
    pp.add_argument("--points", type=int, default=5, help="number of seeded points")
    pp.add_argument("--dense-boundaries-strict", action="store_true")
    pp.add_argument("--expect")
    pp.set_defaults(func=cmd_props)

    rp = sub.add_parser("repro", parents=[common], help="reproduce a worked example")
    rp.add_argument("example", help="ex25, ex35, ex36, ex41, ex42, thm34 or all")
    rp.add_argument("--points", type=int, default=5)
    rp.add_argument("--plot-csv", help="directory for plot CSV files")
    rp.add_argument("--u-branch", action="store_true", help="also run the symmetric u-branch curve")
    rp.set_defaults(func=cmd_repro)
    return p


def _glue_points(argv: list[str]) -> list[str]:
    """Let point flags take values that start with a minus sign."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in POINT_FLAGS and i + 1 < len(argv) and _NUMBER_LIST.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_glue_points(argv))
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        where = getattr(exc, "source", None) or "scene"
        print(f"{where}:{exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
