"""Checkers for order-topological point and space properties, and the box lemmas."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from hyperfell.constants import BISECTION_STEPS, SEED, TAU_MEM
from hyperfell.order import ConeOrder, _maximal, as_point
from hyperfell.setrep import (
    COMPACT,
    ImplicitClosedSet,
    _stencil,
    ball,
    compactness_probe,
    ideal,
    interval_rim,
    open_interval,
    order_interval,
    sample,
)
from hyperfell.window import Window, growing_windows

PASSED = "PASSED_AT_RESOLUTION"
FALSIFIED = "FALSIFIED"
INCONCLUSIVE = "INCONCLUSIVE"

UPPER_SINGULAR = "UPPER_SINGULAR"
UPPER_COMPACT_BOUNDED = "UPPER_COMPACT_BOUNDED"
NEITHER = "NEITHER"

OK = "OK"
FAIL = "FAIL"
BOUNDED = "BOUNDED"
UNBOUNDED_EVIDENCE = "UNBOUNDED_EVIDENCE"


@dataclass
class PredicateReport:
    predicate: str
    status: str
    tested: int
    witness: dict | None = None
    resolution: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"predicate": self.predicate, "status": self.status, "tested": self.tested,
                "witness": self.witness, "resolution": self.resolution, "notes": self.notes}


@dataclass
class Classification:
    status: str
    witness: dict | None = None
    branches: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"status": self.status, "witness": self.witness, "branches": self.branches}


def _res(window: Window) -> dict:
    return {"window": window.to_json(), "pitch": window.max_pitch}


# ---------------------------------------------------------------------------
# helpers

def seeded_points(scene, k: int = 5, seed: int = SEED, window: Window | None = None,
                  margin: float = 3.0, max_tries: int = 100_000) -> np.ndarray:
    """``k`` seeded points of the scene, each with a ``margin``-pitch stencil ball inside it."""
    window = window or scene.window
    rng = np.random.default_rng(seed)
    lo, hi = np.array(window.lower), np.array(window.upper)
    steps = _stencil(scene.dim) * window.max_pitch * margin
    out = []
    tries = 0
    while len(out) < k and tries < max_tries:
        cand = lo + rng.random((256, scene.dim)) * (hi - lo)
        tries += 256
        ok = scene.contains(cand)
        for p in cand[ok]:
            if scene.contains(p + steps).all():
                out.append(p)
                if len(out) == k:
                    break
    if len(out) < k:
        raise ValueError(f"could not place {k} interior points in scene {scene.name}")
    return np.array(out)


def interior_at(scene, member_pred, pts: np.ndarray, pitch: float, tol: float = TAU_MEM) -> np.ndarray:
    """Relative interiority: every stencil neighbor in the scene satisfies ``member_pred``."""
    pts = np.atleast_2d(pts)
    steps = _stencil(scene.dim) * pitch
    q = (pts[:, None, :] + steps[None, :, :]).reshape(-1, scene.dim)
    in_y = scene.contains(q, tol)
    good = ~in_y | member_pred(q, tol)
    return member_pred(pts, tol) & good.reshape(len(pts), len(steps)).all(axis=1)


def _dominated_by(ys: np.ndarray, pts: np.ndarray, order: ConeOrder, tol: float, chunk: int = 2048):
    """Per ``y``: index of a row of ``pts`` below it, or -1."""
    if len(pts) == 0:
        return np.full(len(ys), -1)
    keep = np.sort(_maximal(-pts, order, 0.0)) if len(pts) > 1 else np.arange(len(pts))
    cp = order.coordinates(pts[keep])
    cy = order.coordinates(ys)
    out = np.full(len(ys), -1)
    for i in range(0, len(ys), chunk):
        le = (cp[None, :, :] <= cy[i:i + chunk, None, :] + tol).all(axis=2)
        hit = le.any(axis=1)
        out[i:i + chunk][hit] = keep[le[hit].argmax(axis=1)]
    return out


# ---------------------------------------------------------------------------
# constructive order-interval lemmas

def lemma31_bound(a, order: ConeOrder, windows: Sequence[Window] | None = None) -> dict:
    """Sampled bound of ``a↓ ∩ (-a)↑`` in the ambient space."""
    a = as_point(a)
    n = len(a)
    if not order.in_cone(a[None, :])[0]:
        raise ValueError("a is not in the cone")
    if windows is None:
        h = 1.5 * max(float(np.linalg.norm(a)), 1.0)
        windows = growing_windows(Window((-h,) * n, (h,) * n), (1.0, 2.0, 4.0))
    windows = list(windows)

    def pred(p, tol):
        return order.leq_many(p, a, tol) & order.leq_many(-a, p, tol)

    s = ImplicitClosedSet(n, pred, "lemma31", lambda w: np.vstack([a, -a]))
    clouds = [sample(s, w).points for w in windows]
    shell = []
    for c, w in zip(clouds, windows):
        lo, hi = np.array(w.lower), np.array(w.upper)
        shell.append(bool(len(c)) and bool(((c - lo < 2 * w.pitch) | (hi - c < 2 * w.pitch)).any()))
    radii = [float(np.linalg.norm(c, axis=1).max()) if len(c) else 0.0 for c in clouds]
    if all(shell):
        return {"status": UNBOUNDED_EVIDENCE, "R": radii[-1], "radii": radii}
    return {"status": BOUNDED, "R": radii[-1], "radii": radii, "pitch": windows[-1].max_pitch}


@dataclass
class BoxResult:
    status: str
    a: list[float] | None = None
    b: list[float] | None = None
    t0: float | None = None
    steps: int = 0
    note: str = ""

    def to_json(self) -> dict:
        return {"status": self.status, "a": self.a, "b": self.b, "t0": self.t0,
                "steps": self.steps, "note": self.note}


def _interval_window(scene, a: np.ndarray, b: np.ndarray, res: int = 17) -> Window:
    if scene.order.exact:
        # exact comparisons: grid ends must sit on the corners, not outside them
        return Window(tuple(b), tuple(a), res)
    # the interval of a pointed cone lies within a ball around its center
    c = (a + b) / 2
    r = 4 * np.linalg.norm(a - b)
    lo, hi = c - r, c + r
    span = np.maximum(hi - lo, 1e-12)
    return Window(tuple(lo - 1e-9 * span), tuple(hi + 1e-9 * span), res)


def lemma32_box(scene, x, u: ImplicitClosedSet, t_start: float | None = None,
                window: Window | None = None, steps: int = BISECTION_STEPS) -> BoxResult:
    """Shrink ``t`` until ``b = x - t d``, ``a = x + t d`` give an order box inside ``u``."""
    x = as_point(x, scene.dim)
    window = window or scene.window
    if not scene.contains(x):
        raise ValueError("x is not in the scene")
    d = scene.order.interior_direction(scene.dim)
    pitch = window.max_pitch
    t = t_start if t_start is not None else window.extent / 4
    reason = "no admissible box"
    for k in range(steps + 1):
        a, b = x + t * d, x - t * d
        box_pts = np.vstack([a, b])
        if not (scene.contains(box_pts).all() and u.predicate(box_pts, TAU_MEM).all()):
            reason = "box corners leave the scene or U"
        else:
            iv = order_interval(scene, b, a)
            smp = sample(iv, _interval_window(scene, a, b)).points
            if len(smp) and not u.predicate(smp, TAU_MEM).all():
                reason = "sampled interval leaves U"
            elif not interior_at(scene, iv.predicate, x[None, :], pitch)[0]:
                reason = "x is not interior to the box at one pitch"
                if t * np.linalg.norm(d) < pitch:
                    break
            else:
                return BoxResult(OK, a.tolist(), b.tolist(), float(t), k)
        t /= 2
    return BoxResult(FAIL, None, None, None, steps, reason)


@dataclass
class BoundaryPoint:
    u: list[float]
    t_in: float
    t_out: float
    flip_length: float
    segment_length: float

    def to_json(self) -> dict:
        return {"u": self.u, "t_in": self.t_in, "t_out": self.t_out,
                "flip_length": self.flip_length, "segment_length": self.segment_length}


def lemma33_boundary_point(c, x, a, b, scene=None, order: ConeOrder | None = None,
                           steps: int = BISECTION_STEPS) -> BoundaryPoint:
    """Bisect the segment from ``x`` (inside ``b↑ ∩ a↓``) to ``c`` (outside) for the boundary."""
    c, x, a, b = (as_point(v) for v in (c, x, a, b))
    order = order or (scene.order if scene is not None else ConeOrder.coordinatewise())

    def inside(p):
        p = np.atleast_2d(p)
        return order.leq_many(p, a, 0.0) & order.leq_many(b, p, 0.0)

    if inside(c)[0] or not inside(x)[0]:
        raise ValueError("need x inside the interval and c outside")
    if not (order.leq_many(c[None], x[None], 0.0)[0] or order.leq_many(x[None], c[None], 0.0)[0]):
        raise ValueError("c and x are not comparable")
    # integer numerators keep the bracket exact where float t would stall at one ulp
    lo, hi, den = 0, 1 << steps, 1 << steps
    for _ in range(steps):
        mid = (lo + hi) // 2
        if inside(x + (mid / den) * (c - x))[0]:
            lo = mid
        else:
            hi = mid
    t_in, t_out = lo / den, hi / den
    u = x + t_in * (c - x)
    u = np.clip(u, np.minimum(x, c), np.maximum(x, c))
    length = float(np.linalg.norm(c - x))
    return BoundaryPoint(u.tolist(), t_in, t_out, (hi - lo) / den * length, length)


# ---------------------------------------------------------------------------
# predicate checkers

def _ball_samples(scene, center, radius, window) -> np.ndarray:
    return sample(ball(scene, center, radius), window).points


def default_open_sets(scene, x, window: Window, rng) -> list[ImplicitClosedSet]:
    cloud = sample(ideal(scene, x), window).points
    if len(cloud) == 0:
        return []
    return [ball(scene, cloud[rng.integers(len(cloud))], f * window.extent) for f in (0.05, 0.1, 0.2)]


def check_decreasing_continuous(scene, points=None, open_sets=None, window: Window | None = None,
                                seed: int = SEED, levels: int = 3) -> PredicateReport:
    """Nearby ideals keep hitting every open set the ideal of ``x`` hits."""
    window = window or scene.window
    rng = np.random.default_rng(seed)
    points = seeded_points(scene, 5, seed, window) if points is None else np.atleast_2d(points)
    grid = window.grid()
    base = window.max_pitch * np.sqrt(scene.dim)
    tested = 0
    for x in points:
        if not scene.contains(x):
            raise ValueError(f"sample point {x.tolist()} is not in the scene")
        sets = default_open_sets(scene, x, window, rng) if open_sets is None else open_sets
        for o in sets:
            o_pts = sample(o, window).points
            if len(o_pts) == 0 or _dominated_by(x[None], o_pts, scene.order, TAU_MEM)[0] < 0:
                continue
            tested += 1
            for j in range(levels, -1, -1):
                delta = base * 2.0 ** j
                near = grid[np.linalg.norm(grid - x, axis=1) <= delta + 1e-12]
                near = near[scene.contains(near)]
                bad = _dominated_by(near, o_pts, scene.order, TAU_MEM) < 0
                if not bad.any():
                    break
                if j == 0:
                    y = near[bad][np.argmin(np.linalg.norm(near[bad] - x, axis=1))]
                    fine = sample(o, window.with_resolution(2 * window.resolution - 1)).points \
                        if scene.dim < 3 else _fine_samples(o, o_pts, window)
                    reval = _dominated_by(y[None], fine, scene.order, TAU_MEM)[0] < 0
                    return PredicateReport("decreasing_continuous", FALSIFIED, tested,
                                           {"x": x.tolist(), "open_set": o.tag, "y": y.tolist(),
                                            "delta": delta, "revalidated": bool(reval)}, _res(window))
    if tested == 0:
        return PredicateReport("decreasing_continuous", INCONCLUSIVE, 0, None, _res(window),
                               ["no (x, O) pair with x↓ meeting O"])
    return PredicateReport("decreasing_continuous", PASSED, tested, None, _res(window))


def _fine_samples(o, o_pts, window):
    from hyperfell.hyperspace import _refined_window

    return sample(o, _refined_window(o_pts, window)).points


def default_pairs(scene, window: Window, k: int = 5, seed: int = SEED) -> list[tuple[np.ndarray, np.ndarray]]:
    """Pairs ``(x, y)`` with ``y`` drawn from the ideal of ``x``."""
    rng = np.random.default_rng(seed + 1)
    pairs = []
    for x in seeded_points(scene, k, seed, window):
        cloud = sample(ideal(scene, x), window).points
        cloud = cloud[np.linalg.norm(cloud - x, axis=1) > 0]
        if len(cloud):
            pairs.append((x, cloud[rng.integers(len(cloud))]))
    return pairs


def check_proper_inclusion(scene, pairs=None, window: Window | None = None, seed: int = SEED) -> PredicateReport:
    """``y ∈ int x↓ ⇒ y↓ ⊆ int x↓`` and the dual statement for filters."""
    from hyperfell.setrep import filter_set

    window = window or scene.window
    pairs = default_pairs(scene, window, 5, seed) if pairs is None else pairs
    pitch = window.max_pitch
    tested = 0
    for x, y in pairs:
        x, y = as_point(x, scene.dim), as_point(y, scene.dim)
        for kind, big, small in (("ideal", ideal(scene, x), ideal(scene, y)),
                                 ("filter", filter_set(scene, y), filter_set(scene, x))):
            probe_pt = y if kind == "ideal" else x
            if not interior_at(scene, big.predicate, probe_pt[None], pitch)[0]:
                continue
            tested += 1
            pts = sample(small, window).points
            inner = interior_at(scene, big.predicate, pts, pitch)
            if not inner.all():
                bad = pts[~inner][0]
                fine = window.with_resolution(2 * window.resolution - 1).max_pitch
                reval = not interior_at(scene, big.predicate, bad[None], pitch)[0] and \
                    not interior_at(scene, big.predicate, bad[None], fine)[0]
                return PredicateReport("proper_inclusion", FALSIFIED, tested,
                                       {"x": x.tolist(), "y": y.tolist(), "kind": kind,
                                        "non_interior": bad.tolist(), "revalidated": bool(reval)}, _res(window))
    if tested == 0:
        return PredicateReport("proper_inclusion", INCONCLUSIVE, 0, None, _res(window),
                               ["no pair with y interior to the ideal of x"])
    return PredicateReport("proper_inclusion", PASSED, tested, None, _res(window))


def _cone_vectors(order: ConeOrder, dim: int, rng, k: int) -> np.ndarray:
    d = order.interior_direction(dim)
    if order.exact:
        v = rng.random((k, dim)) + 0.1
    else:
        v = d[None, :] * (1 + rng.random((k, 1))) + 0.1 * rng.standard_normal((k, dim))
        v = v[order.in_cone(v, 0.0)]
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def check_dense_boundaries(scene, points=None, window: Window | None = None, strict: bool = False,
                           seed: int = SEED, pairs_per_point: int = 8) -> PredicateReport:
    """Comparable ``y ∉ b↑∩a↓`` and interior ``z`` are separated by a boundary point.

    ``strict`` builds the box inside a small ball ``O`` around each point; the
    default builds it inside the window-scale ball.
    """
    window = window or scene.window
    rng = np.random.default_rng(seed + 2)
    points = seeded_points(scene, 5, seed, window) if points is None else np.atleast_2d(points)
    radius = (0.05 if strict else 0.25) * window.extent
    tested = 0
    notes = []
    for x in points:
        res = lemma32_box(scene, x, ball(scene, x, radius), window=window)
        if res.status != OK:
            notes.append(f"no box at {np.round(x, 6).tolist()}: {res.note}")
            continue
        a, b = np.array(res.a), np.array(res.b)
        iv = order_interval(scene, b, a)
        inner = open_interval(scene, b, a)
        span = np.linalg.norm(a - b)
        dirs = _cone_vectors(scene.order, scene.dim, rng, pairs_per_point)
        for v in dirs:
            z = b + (a - b) * (0.25 + 0.5 * rng.random())
            if not inner.contains(z):
                continue
            sgn = 1.0 if rng.random() < 0.5 else -1.0
            y = z + sgn * v * span * (1 + rng.random())
            if not scene.contains(y) or iv.contains(y):
                continue
            tested += 1
            bp = lemma33_boundary_point(y, z, a, b, order=scene.order)
            u = np.array(bp.u)
            lo_pt, hi_pt = (y, z) if sgn < 0 else (z, y)
            ok = bool(scene.order.leq_many(lo_pt[None], u[None], TAU_MEM)[0]
                      and scene.order.leq_many(u[None], hi_pt[None], TAU_MEM)[0])
            if not ok or not scene.contains(u):
                return PredicateReport("dense_boundaries", FALSIFIED, tested,
                                       {"x": x.tolist(), "a": a.tolist(), "b": b.tolist(), "y": y.tolist(),
                                        "z": z.tolist(), "u": bp.u, "revalidated": True}, _res(window))
    if tested == 0:
        return PredicateReport("dense_boundaries", INCONCLUSIVE, 0, None, _res(window),
                               notes + ["no comparable (y, z) pairs"])
    return PredicateReport("dense_boundaries", PASSED, tested, None, _res(window), notes)


# ---------------------------------------------------------------------------
# point classification

def _singular_branch(scene, x, radii, window: Window) -> dict:
    """Each ball needs a sub-ball no point outside of which dominates a point inside."""
    grid = window.grid()
    ys = grid[scene.contains(grid)]
    lms = np.array([lm.point for lm in scene.landmarks if not lm.exterior], dtype=float).reshape(-1, scene.dim)
    for r in radii:
        found = None
        r1 = r
        evidence = None
        while r1 >= 2 * window.max_pitch:
            o1 = ball(scene, x, r1)
            pts = sample(o1, window).points
            for cand in (lms, ys):
                outside = cand[~o1.predicate(cand, TAU_MEM)] if len(cand) else cand
                idx = _dominated_by(outside, pts, scene.order, TAU_MEM) if len(outside) else np.zeros(0, int)
                if (idx >= 0).any():
                    k = int(np.flatnonzero(idx >= 0)[0])
                    y = outside[k]
                    below = pts[scene.order.leq_many(pts, np.broadcast_to(y, pts.shape), TAU_MEM)]
                    away = below[np.linalg.norm(below - x, axis=1) > 0]
                    pool = away if len(away) else below
                    u = pool[np.argmin(np.linalg.norm(pool - x, axis=1))]
                    evidence = {"u": u.tolist(), "y": y.tolist(), "O1_radius": r1}
                    break
            else:
                found = r1
                break
            r1 /= 2
        if found is None:
            return {"holds": False, "O_radius": r, "evidence": evidence}
    return {"holds": True, "O1_radius": found}


def _compact_bounded_branch(scene, x, radii, window: Window) -> dict:
    eps = 0.25 * window.max_pitch
    witness = None
    for r in radii:
        res = lemma32_box(scene, x, ball(scene, x, r), window=window)
        if res.status != OK:
            return {"holds": False, "O_radius": r, "evidence": res.to_json()}
        a, b = np.array(res.a), np.array(res.b)
        rim = interval_rim(scene, b, a, eps)
        if len(sample(rim, window)) == 0:
            return {"holds": False, "O_radius": r, "evidence": {"a": res.a, "b": res.b, "E1": "empty"}}
        cert = compactness_probe(rim, scene, growing_windows(window, (1.0, 2.0)))
        if cert.status != COMPACT:
            return {"holds": False, "O_radius": r,
                    "evidence": {"a": res.a, "b": res.b, "E1": cert.to_json()}}
        if witness is None:
            witness = {"a": res.a, "b": res.b, "t0": res.t0, "E1": cert.to_json(), "O_radius": r}
    return {"holds": True, **witness}


def classify_point(scene, x, neighborhoods: Sequence[float] | None = None,
                   window: Window | None = None) -> Classification:
    """Upper singular / upper compact bounded test over a list of ball radii."""
    window = window or scene.window
    x = as_point(x, scene.dim)
    if not scene.contains(x):
        raise ValueError("x is not in the scene")
    if neighborhoods is None:
        # radii below 2·sqrt(n) pitches cannot hold a box with an interior point at resolution
        floor = 2 * np.sqrt(scene.dim) * window.max_pitch
        radii = [r for r in (0.25 * window.extent * 2.0 ** -k for k in range(3)) if r >= floor] \
            or [0.25 * window.extent]
    else:
        radii = list(neighborhoods)
    sing = _singular_branch(scene, x, radii, window)
    if sing["holds"]:
        return Classification(UPPER_SINGULAR, {"O1_radius": sing["O1_radius"]}, {"singular": sing})
    comp = _compact_bounded_branch(scene, x, radii, window)
    branches = {"singular": sing, "compact_bounded": comp}
    if comp["holds"]:
        wit = {k: comp[k] for k in ("a", "b", "t0", "E1", "O_radius")}
        return Classification(UPPER_COMPACT_BOUNDED, wit, branches)
    return Classification(NEITHER, None, branches)


def candidate_neighborhood(scene, x0, cls: Classification, v, window: Window):
    """A basic Fell neighborhood ``O1⁻ ∩ (X \\ E1)⁺`` of ``x0↓`` built inside ``V``."""
    from hyperfell.hyperspace import HitSet, MissSet

    x0 = as_point(x0, scene.dim)
    if cls.status == UPPER_SINGULAR:
        return HitSet(ball(scene, x0, cls.witness["O1_radius"])), None
    res = lemma32_box(scene, x0, v.set, window=window)
    if res.status != OK:
        return None
    a, b = np.array(res.a), np.array(res.b)
    rim = interval_rim(scene, b, a, 0.25 * window.max_pitch)
    e1 = MissSet.certified(rim, scene, growing_windows(window, (1.0, 2.0)))
    return HitSet(open_interval(scene, b, a)), e1
