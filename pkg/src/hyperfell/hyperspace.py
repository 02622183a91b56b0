"""Hit-and-miss tests and convergence probes for the map ``x -> x↓``."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.spatial import cKDTree

from hyperfell.constants import ALPHA0, HYSTERESIS, SEED, TAIL_LENGTH, TAU_MEM, TAU_SEP
from hyperfell.order import as_point
from hyperfell.setrep import (
    BOUNDED,
    COMPACT,
    DIVERGENT,
    CompactnessReport,
    near_members,
    ImplicitClosedSet,
    ball,
    box,
    compactness_probe,
    hausdorff_windowed,
    ideal,
    sample,
)
from hyperfell.window import Window, growing_windows

CONVERGES = "CONVERGES_AT_RESOLUTION"
DIVERGES = "DIVERGES"
INCONCLUSIVE = "INCONCLUSIVE"

CONTINUOUS_WITNESS = "CONTINUOUS_WITNESS"
NOT_CONTINUOUS = "NOT_CONTINUOUS"


class InconclusiveError(RuntimeError):
    """A test set produced no samples, so hit/miss cannot be decided."""


@dataclass(frozen=True, eq=False)
class HitSet:
    set: ImplicitClosedSet
    tag: str = ""

    def __post_init__(self):
        if not self.tag:
            object.__setattr__(self, "tag", self.set.tag)


@dataclass(frozen=True, eq=False)
class MissSet:
    set: ImplicitClosedSet
    tag: str = ""
    certificate: CompactnessReport | None = None

    def __post_init__(self):
        if not self.tag:
            object.__setattr__(self, "tag", self.set.tag)

    @property
    def compact(self) -> bool:
        return self.certificate is not None and self.certificate.status == COMPACT

    @classmethod
    def certified(cls, s: ImplicitClosedSet, scene, windows: Sequence[Window], tag: str = "") -> "MissSet":
        return cls(s, tag, compactness_probe(s, scene, windows))


def _points(s: ImplicitClosedSet, window: Window) -> np.ndarray:
    pts = sample(s, window).points
    if len(pts) == 0:
        raise InconclusiveError(f"test set {s.tag} has no samples in the window")
    return pts


def hits(a: ImplicitClosedSet, o: HitSet, window: Window) -> bool:
    """``A ∩ O ≠ ∅`` at resolution: some sample of ``O`` is a member of ``A``."""
    return bool(a.predicate(_points(o.set, window), TAU_MEM).any())


def misses(a: ImplicitClosedSet, d: MissSet, window: Window) -> bool:
    """``A ∩ D = ∅`` at resolution: no sample of ``D`` lies within ``τ_sep`` of ``A``."""
    return not bool(near_members(a, _points(d.set, window), TAU_SEP).any())


@dataclass(frozen=True, eq=False)
class PathSpec:
    """``α -> x(α)`` sampled on ``α_m = α0·2^-m`` for ``m = 0..M``."""

    fn: Callable[[float], np.ndarray]
    x0: tuple[float, ...]
    alpha0: float = ALPHA0
    tail: int = TAIL_LENGTH
    tag: str = "path"

    @classmethod
    def linear(cls, x1, x0, **kw) -> "PathSpec":
        a = np.asarray(x1, dtype=float)
        b = np.asarray(x0, dtype=float)
        kw.setdefault("tag", "segment")
        return cls(lambda t: t * a + (1 - t) * b, tuple(b), **kw)

    @classmethod
    def constant(cls, x0, **kw) -> "PathSpec":
        b = np.asarray(x0, dtype=float)
        kw.setdefault("tag", "constant")
        return cls(lambda t: b.copy(), tuple(b), **kw)

    def alphas(self) -> np.ndarray:
        return self.alpha0 * 2.0 ** -np.arange(self.tail + 1)

    def points(self) -> np.ndarray:
        return np.array([np.asarray(self.fn(a), dtype=float) for a in self.alphas()])

    def to_json(self) -> dict:
        return {"tag": self.tag, "x0": [float(c) for c in self.x0], "alpha0": self.alpha0, "M": self.tail}


@dataclass
class ProbeVerdict:
    probe: str
    scene: str
    status: str
    path: dict
    tests: list[dict] = field(default_factory=list)
    witness: dict | None = None
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"scene": self.scene, "probe": self.probe, "path": self.path, "tests": self.tests,
                "status": self.status, "witness": self.witness, "notes": self.notes}


def tail_outcome(per_index: Sequence[bool | None], tail: int, band: int = HYSTERESIS) -> str:
    """``holds`` if true from some ``k <= M-band`` on, ``fails`` if false on ``m >= M-band``."""
    idx = [m for m, v in enumerate(per_index) if v is not None]
    late = [per_index[m] for m in idx if m >= tail - band]
    if not late:
        return "unknown"
    for k in range(0, tail - band + 1):
        vals = [per_index[m] for m in idx if m >= k]
        if vals and all(vals):
            return "holds"
    if not any(late):
        return "fails"
    return "mixed"


def _nearest(pts: np.ndarray, x: np.ndarray) -> np.ndarray:
    return pts[int(np.argmin(np.linalg.norm(pts - x, axis=1)))]


def _refined_window(pts: np.ndarray, window: Window, cap: int | None = None) -> Window:
    """Window around ``pts`` on the parent grid, with half the pitch."""
    lo0 = np.array(window.lower)
    pitch = window.pitch
    first = np.floor((pts.min(0) - lo0) / pitch + 1e-9) - 1
    last = np.ceil((pts.max(0) - lo0) / pitch - 1e-9) + 1
    cap = cap or min(129, int(round(3e5 ** (1 / window.dim))))
    cells = int(max((last - first).max(), 1))
    cells = min(cells, (cap - 1) // 2)
    lo = lo0 + first * pitch
    hi = lo + cells * pitch
    return Window(tuple(lo), tuple(hi), 2 * cells + 1)


def _revalidate(kind: str, a: ImplicitClosedSet, test, window: Window, point: np.ndarray | None,
                base_pts: np.ndarray) -> bool:
    if kind == "miss":
        return bool(near_members(a, point[None, :], TAU_SEP)[0]) and bool(test.set.predicate(point[None, :], TAU_MEM)[0])
    fine = sample(test.set, _refined_window(base_pts, window)).points
    return len(fine) > 0 and not a.predicate(fine, TAU_MEM).any()


def _run_probe(name: str, scene, path: PathSpec, hit_sets, miss_sets, window: Window,
               mapping: Callable, require_compact: bool) -> ProbeVerdict:
    x0 = as_point(path.x0, scene.dim)
    a0 = mapping(scene, x0)
    notes: list[str] = []
    tests = []
    for kind, family in (("hit", hit_sets), ("miss", miss_sets)):
        for t in family:
            if kind == "miss" and require_compact and not t.compact:
                raise ValueError(f"miss set {t.tag} lacks a compactness certificate")
            try:
                pts = _points(t.set, window)
            except InconclusiveError as exc:
                notes.append(f"dropped {kind} set {t.tag}: {exc}")
                continue
            ok = bool(a0.predicate(pts, TAU_MEM).any()) if kind == "hit" else not near_members(a0, pts, TAU_SEP).any()
            if not ok:
                notes.append(f"dropped {kind} set {t.tag}: not a neighborhood of the limit ideal "
                             f"(the limit ideal {'misses' if kind == 'hit' else 'meets'} it)")
                continue
            tests.append((kind, t, pts))
    if not tests:
        raise ValueError("empty retained test family")

    pts_path = path.points()
    rows = [[] for _ in tests]
    for m, xm in enumerate(pts_path):
        if not scene.contains(xm):
            for r in rows:
                r.append(None)
            continue
        am = mapping(scene, xm)
        for r, (kind, t, pts) in zip(rows, tests):
            if kind == "hit":
                r.append(bool(am.predicate(pts, TAU_MEM).any()))
            else:
                r.append(not bool(near_members(am, pts, TAU_SEP).any()))
    if any(v is None for v in rows[0]):
        notes.append("path points outside the scene are skipped (null entries)")

    trace = []
    witness = None
    outcomes = []
    for r, (kind, t, pts) in zip(rows, tests):
        out = tail_outcome(r, path.tail)
        outcomes.append(out)
        trace.append({"tag": t.tag, "kind": kind, "per_index": r, "outcome": out})
        if out == "fails" and witness is None:
            m = max(i for i, v in enumerate(r) if v is False)
            xm = pts_path[m]
            am = mapping(scene, xm)
            if kind == "miss":
                inside = pts[near_members(am, pts, TAU_SEP)]
                point = _nearest(inside, xm)
            else:
                point = _nearest(pts, xm)
            witness = {"test": t.tag, "kind": kind, "index": m, "path_point": xm.tolist(),
                       "sample_point": point.tolist(),
                       "revalidated": _revalidate(kind, am, t, window, point, pts)}
    if "fails" in outcomes:
        status = DIVERGES
    elif all(o == "holds" for o in outcomes):
        status = CONVERGES
    else:
        status = INCONCLUSIVE
    return ProbeVerdict(name, scene.name, status, path.to_json(), trace, witness, notes)


def fell_probe(scene, path: PathSpec, hit_sets=None, miss_sets=None, window: Window | None = None,
               mapping: Callable = ideal, seed: int = SEED) -> ProbeVerdict:
    window = window or scene.window
    if hit_sets is None and miss_sets is None:
        hit_sets, miss_sets = default_family(scene, path.x0, window, seed)
    return _run_probe("fell", scene, path, list(hit_sets or []), list(miss_sets or []), window, mapping, True)


def vietoris_probe(scene, path: PathSpec, hit_sets=None, miss_sets=None, window: Window | None = None,
                   mapping: Callable = ideal, seed: int = SEED) -> ProbeVerdict:
    window = window or scene.window
    if hit_sets is None and miss_sets is None:
        hit_sets, miss_sets = default_family(scene, path.x0, window, seed)
    return _run_probe("vietoris", scene, path, list(hit_sets or []), list(miss_sets or []), window, mapping, False)


def default_family(scene, x0, window: Window, seed: int = SEED, n_boxes: int = 3, tries: int = 60):
    """Seeded hit balls centered on ``x0↓`` samples and compact miss boxes away from it."""
    rng = np.random.default_rng(seed)
    x0 = as_point(x0, scene.dim)
    cloud = sample(ideal(scene, x0), window).points
    hit_sets = []
    if len(cloud):
        for frac in (0.05, 0.1, 0.2):
            c = cloud[rng.integers(len(cloud))]
            hit_sets.append(HitSet(ball(scene, c, frac * window.extent)))
    miss_sets = []
    if len(cloud) == 0:
        return hit_sets, miss_sets
    tree = cKDTree(cloud)
    gap = 2 * window.max_pitch
    lo, hi = np.array(window.lower), np.array(window.upper)
    half = 0.1 * (hi - lo)
    cert_windows = growing_windows(window, (1.0, 2.0))
    for _ in range(tries):
        if len(miss_sets) >= n_boxes:
            break
        c = lo + rng.random(scene.dim) * (hi - lo)
        b = box(scene, c - half, c + half)
        pts = sample(b, window).points
        if len(pts) == 0 or tree.query(pts)[0].min() < gap:
            continue
        cert = compactness_probe(b, scene, cert_windows)
        if cert.status == COMPACT:
            miss_sets.append(MissSet(b, certificate=cert))
    return hit_sets, miss_sets


def hausdorff_probe(scene, path: PathSpec, windows: Sequence[Window] | None = None,
                    mapping: Callable = ideal, band_only: bool = False) -> ProbeVerdict:
    """Windowed Hausdorff growth along the path; ``band_only`` skips indices the verdict ignores."""
    windows = list(windows) if windows is not None else growing_windows(scene.window)
    x0 = as_point(path.x0, scene.dim)
    a0 = mapping(scene, x0)
    cache: dict = {}
    per_index, values, verdicts, notes = [], [], [], []
    if band_only:
        notes.append(f"indices below M - {HYSTERESIS} not evaluated (null entries)")
    for m, xm in enumerate(path.points()):
        if (band_only and m < path.tail - HYSTERESIS) or not scene.contains(xm):
            per_index.append(None)
            values.append(None)
            verdicts.append(None)
            continue
        rep = hausdorff_windowed(mapping(scene, xm), a0, windows, b_cache=cache)
        verdicts.append(rep.verdict)
        per_index.append(rep.verdict)
        values.append(rep.values)
        if rep.note:
            notes.append(f"m={m}: {rep.note}")
    tail = [v for m, v in enumerate(verdicts) if m >= path.tail - HYSTERESIS and v is not None]
    pitch = windows[0].max_pitch
    last = next((v for v in reversed(values) if v), None)
    if tail and all(v == DIVERGENT for v in tail):
        status = DIVERGES
    elif tail and all(v == BOUNDED for v in tail) and last is not None and last[-1] < pitch:
        status = CONVERGES
    else:
        status = INCONCLUSIVE
    test = {"tag": "hausdorff", "kind": "hausdorff", "per_index": per_index, "values": values,
            "radii": [w.radius for w in windows]}
    witness = None
    if status == DIVERGES:
        m = max(i for i, v in enumerate(verdicts) if v == DIVERGENT)
        witness = {"test": "hausdorff", "kind": "hausdorff", "index": m,
                   "path_point": path.points()[m].tolist(), "values": values[m]}
    return ProbeVerdict("hausdorff", scene.name, status, path.to_json(), [test], witness, notes)


# ---------------------------------------------------------------------------
# inverse map y↓ -> y

@dataclass
class InverseReport:
    status: str
    scene: str
    x0: list[float]
    candidates: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"scene": self.scene, "probe": "inverse", "x0": self.x0, "status": self.status,
                "candidates": self.candidates, "notes": self.notes}


def _dominates_any(ys: np.ndarray, pts: np.ndarray, scene, tol: float, chunk: int = 2048) -> np.ndarray:
    """For each y: is some row of ``pts`` below ``y``?"""
    from hyperfell.order import _maximal

    if len(pts) > 1:
        pts = pts[np.sort(_maximal(-pts, scene.order, 0.0))]
    nm = scene.order.matrix(scene.dim)
    cy = ys @ nm.T
    cp = pts @ nm.T
    out = np.zeros(len(ys), dtype=bool)
    for i in range(0, len(ys), chunk):
        blk = cy[i:i + chunk]
        out[i:i + chunk] = (cp[None, :, :] <= blk[:, None, :] + tol).all(axis=2).any(axis=1)
    return out


def inverse_probe(scene, x0, v: HitSet, candidates=None, window: Window | None = None,
                  scan_windows: Sequence[Window] | None = None, classification=None) -> InverseReport:
    """Search for ``y`` outside ``V`` whose ideal lies in a basic Fell neighborhood of ``x0↓``.

    ``candidates`` is a list of ``(O1, E)`` pairs (``E`` may be None); by default
    they are built from the point classification of ``x0``.
    """
    x0 = as_point(x0, scene.dim)
    if not scene.contains(x0):
        raise ValueError("x0 is not in the scene")
    window = window or scene.window
    scan = list(scan_windows) if scan_windows else [window]
    notes = []
    ys_all = [w.grid()[scene.contains(w.grid())] for w in scan]
    ys = np.vstack(ys_all) if ys_all else np.empty((0, scene.dim))
    outside_v = ~v.set.predicate(ys, TAU_MEM) if len(ys) else np.zeros(0, dtype=bool)
    if not outside_v.any():
        return InverseReport(CONTINUOUS_WITNESS, scene.name, x0.tolist(),
                             [{"tag": "whole", "escape": None}], ["V contains every scanned scene point"])
    if candidates is None:
        from hyperfell.props import NEITHER, UPPER_SINGULAR, candidate_neighborhood, classify_point

        cls = classification if classification is not None else classify_point(scene, x0)
        if cls.status == NEITHER or cls.status not in (UPPER_SINGULAR, "UPPER_COMPACT_BOUNDED"):
            return InverseReport(INCONCLUSIVE, scene.name, x0.tolist(), [],
                                 [f"classification {cls.status}: no basic neighborhood construction applies"])
        candidates = [candidate_neighborhood(scene, x0, cls, v, window)]
        if candidates[0] is None:
            return InverseReport(INCONCLUSIVE, scene.name, x0.tolist(), [],
                                 ["could not build a neighborhood inside V"])
    cand_out = []
    y_out = ys[outside_v]
    for o1, e in candidates:
        o_pts = sample(o1.set, window).points
        if len(o_pts) == 0 or not ideal(scene, x0).predicate(o_pts, TAU_MEM).any():
            notes.append(f"candidate {o1.tag}: limit ideal does not hit O1")
        hit = _dominates_any(y_out, o_pts, scene, TAU_MEM) if len(o_pts) else np.zeros(len(y_out), bool)
        ok = hit.copy()
        if e is not None:
            e_pts = sample(e.set, window).points
            if len(e_pts) and ok.any():
                ok[ok] = ~_dominates_any(y_out[ok], e_pts, scene, TAU_SEP)
        esc = y_out[ok]
        entry = {"o1": o1.tag, "e": e.tag if e is not None else None, "scanned": int(len(y_out)),
                 "escapes": int(len(esc)), "escape": None}
        if len(esc):
            y = esc[int(np.argmax(np.linalg.norm(esc - x0, axis=1)))]
            entry["escape"] = y.tolist()
        cand_out.append(entry)
    status = NOT_CONTINUOUS if all(c["escape"] is not None for c in cand_out) else CONTINUOUS_WITNESS
    return InverseReport(status, scene.name, x0.tolist(), cand_out, notes)


def separating_hit_set(scene, x, y, window: Window | None = None) -> HitSet | None:
    """A small ball meeting exactly one of ``x↓`` and ``y↓``."""
    window = window or scene.window
    for p, q in ((x, y), (y, x)):
        ip = sample(ideal(scene, p), window).points
        iq = sample(ideal(scene, q), window).points
        if len(ip) == 0:
            continue
        only = ip[~ideal(scene, q).predicate(ip, TAU_MEM)]
        if len(only) == 0:
            continue
        if len(iq):
            d, _ = cKDTree(iq).query(only)
            k = int(np.argmax(d))
            r = 0.5 * d[k]
        else:
            k, r = 0, window.extent
        if r <= 0:
            continue
        return HitSet(ball(scene, only[k], r))
    return None
