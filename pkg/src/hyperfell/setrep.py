"""Closed sets given by membership predicates, sampled on window grids."""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.spatial import cKDTree

from hyperfell.constants import BISECTION_STEPS, C_DIV, H_DIV, TAU_MEM, TAU_SEP
from hyperfell.order import as_point
from hyperfell.window import Window

Predicate = Callable[[np.ndarray, float], np.ndarray]
PointSampler = Callable[[Window], np.ndarray]


@dataclass(frozen=True, eq=False)
class ImplicitClosedSet:
    """A set known through ``predicate(points, tol) -> bool array``.

    ``sampler`` adds points the grid would miss (curves, faces, isolated points);
    they are kept only if they pass the predicate.
    """

    dim: int
    predicate: Predicate
    tag: str
    sampler: PointSampler | None = None
    #: optional ``(lower, upper)`` box known to contain the set
    bounds: tuple[np.ndarray, np.ndarray] | None = None

    def contains(self, points, tol: float = TAU_MEM):
        arr = np.asarray(points, dtype=float)
        out = self.predicate(np.atleast_2d(arr), tol)
        return bool(out[0]) if arr.ndim == 1 else out

    def extra(self, window: Window, tol: float = TAU_MEM) -> np.ndarray:
        if self.sampler is None:
            return np.empty((0, self.dim))
        pts = np.asarray(self.sampler(window), dtype=float).reshape(-1, self.dim)
        if len(pts) == 0:
            return pts
        slack = 1e-12 * max(window.extent, 1.0)
        pts = pts[window.contains(pts, slack)]
        return pts[self.predicate(pts, tol)] if len(pts) else pts

    def __and__(self, other: "ImplicitClosedSet") -> "ImplicitClosedSet":
        return intersection(self, other)


@dataclass(frozen=True, eq=False)
class PointCloud:
    points: np.ndarray
    tag: str
    window: Window | None = None

    def __len__(self) -> int:
        return len(self.points)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def to_csv(self) -> str:
        buf = io.StringIO()
        header = ",".join(f"x{i + 1}" for i in range(self.dim))
        np.savetxt(buf, self.points, delimiter=",", header=header, comments="", fmt="%.17g")
        return buf.getvalue()


def _as_cloud(a) -> np.ndarray:
    pts = a.points if isinstance(a, PointCloud) else np.asarray(a, dtype=float)
    return np.atleast_2d(pts) if pts.size else pts.reshape(0, -1 if pts.ndim > 1 else 0)


# ---------------------------------------------------------------------------
# sampling

def grid_mask(s: ImplicitClosedSet, window: Window, tol: float = TAU_MEM) -> np.ndarray:
    grid = window.grid()
    if s.bounds is None:
        return s.predicate(grid, tol)
    slack = tol + 1e-12 * max(window.extent, 1.0)
    ranges = []
    for ax, lo, hi in zip(window.axes(), *s.bounds):
        ranges.append(np.arange(np.searchsorted(ax, lo - slack, "left"), np.searchsorted(ax, hi + slack, "right")))
    mask = np.zeros(len(grid), dtype=bool)
    if any(len(r) == 0 for r in ranges):
        return mask
    idx = np.ravel_multi_index(np.meshgrid(*ranges, indexing="ij"), (window.resolution,) * window.dim).ravel()
    mask[idx] = s.predicate(grid[idx], tol)
    return mask


def _bounds(lo, hi) -> tuple[np.ndarray, np.ndarray]:
    return np.asarray(lo, dtype=float), np.asarray(hi, dtype=float)


def sample(s: ImplicitClosedSet, window: Window) -> PointCloud:
    """Grid members in grid-index order, then the sorted off-grid sampler points."""
    if window.dim != s.dim:
        raise ValueError(f"window has dim {window.dim}, set has dim {s.dim}")
    grid = window.grid()
    pts = grid[grid_mask(s, window)]
    extra = s.extra(window)
    if len(extra):
        extra = np.unique(extra, axis=0)
        extra = extra[~_on_grid(extra, window)]
        pts = np.vstack([pts, extra])
    return PointCloud(np.ascontiguousarray(pts), s.tag, window)


def _on_grid(pts: np.ndarray, window: Window) -> np.ndarray:
    """Rows that coincide exactly with a grid node (already present in the grid part)."""
    lo = np.array(window.lower)
    idx = np.rint((pts - lo) / window.pitch)
    ok = ((idx >= 0) & (idx <= window.resolution - 1)).all(axis=1)
    axes = window.axes()
    out = np.zeros(len(pts), dtype=bool)
    for k in np.flatnonzero(ok):
        out[k] = all(axes[i][int(idx[k, i])] == pts[k, i] for i in range(window.dim))
    return out


def distance_to_cloud(z, a) -> float:
    pts = _as_cloud(a)
    if len(pts) == 0:
        raise ValueError("distance to an empty cloud is undefined")
    d, _ = cKDTree(pts).query(np.asarray(z, dtype=float))
    return float(d)


def directed_hausdorff(a, b) -> float:
    pa, pb = _as_cloud(a), _as_cloud(b)
    if len(pa) == 0 or len(pb) == 0:
        raise ValueError("Hausdorff distance needs two nonempty clouds")
    d, _ = cKDTree(pb).query(pa)
    return float(d.max())


def hausdorff_distance(a, b) -> float:
    return max(directed_hausdorff(a, b), directed_hausdorff(b, a))


# ---------------------------------------------------------------------------
# windowed Hausdorff with divergence detection

DIVERGENT = "DIVERGENT"
BOUNDED = "BOUNDED"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass
class DivergenceReport:
    verdict: str
    radii: list[float]
    values: list[float]
    slope: float | None = None
    note: str = ""

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "radii": self.radii, "values": self.values,
                "slope": self.slope, "note": self.note}


def _windowed_value(a: ImplicitClosedSet, b: ImplicitClosedSet, w: Window, b_cache=None):
    grid = w.grid()
    ma = grid_mask(a, w)
    mb = b_cache[0] if b_cache else grid_mask(b, w)
    ea = a.extra(w)
    eb = b_cache[1] if b_cache else b.extra(w)
    if not (ma.any() or len(ea)) or not (mb.any() or len(eb)):
        return None
    pa = np.vstack([grid[ma], ea])
    pb = np.vstack([grid[mb], eb])
    # grid nodes in both sets contribute zero to either directed term
    qa = np.vstack([grid[ma & ~mb], ea])
    qb = np.vstack([grid[mb & ~ma], eb])
    d1 = cKDTree(pb).query(qa)[0].max() if len(qa) else 0.0
    d2 = cKDTree(pa).query(qb)[0].max() if len(qb) else 0.0
    return float(max(d1, d2))


def classify_growth(radii: Sequence[float], values: Sequence[float],
                    h_div: float = H_DIV, c_div: float = C_DIV) -> tuple[str, float | None]:
    v = np.asarray(values, dtype=float)
    r = np.asarray(radii, dtype=float)
    if (v > h_div).any():
        return DIVERGENT, None
    if v.max() <= 1e-12:
        return BOUNDED, 0.0
    if abs(v[-1] - v[-2]) <= 0.01 * max(abs(v[-1]), abs(v[-2])):
        return BOUNDED, None
    if (v <= 0).any():
        return INCONCLUSIVE, None
    slope = float(np.polyfit(np.log(r), np.log(v), 1)[0])
    return (DIVERGENT if slope >= c_div else INCONCLUSIVE), slope


def hausdorff_windowed(a: ImplicitClosedSet, b: ImplicitClosedSet, windows: Sequence[Window],
                       h_div: float = H_DIV, c_div: float = C_DIV, b_cache: dict | None = None) -> DivergenceReport:
    """Hausdorff distances of the truncations ``A ∩ W_k, B ∩ W_k`` and a growth verdict.

    Stabilization (last two values within 1%) is tested before growth; growth
    is the least-squares slope of log value against log window radius.
    """
    windows = list(windows)
    if len(windows) < 3:
        raise ValueError("need at least 3 windows")
    ext = [w.extent for w in windows]
    if any(e2 <= e1 for e1, e2 in zip(ext, ext[1:])):
        raise ValueError("windows must have strictly growing extent")
    radii = [w.radius for w in windows]
    values: list[float] = []
    for w in windows:
        cached = None
        if b_cache is not None:
            if w not in b_cache:
                b_cache[w] = (grid_mask(b, w), b.extra(w))
            cached = b_cache[w]
        val = _windowed_value(a, b, w, cached)
        if val is None:
            return DivergenceReport(INCONCLUSIVE, radii, values, None,
                                    f"empty intersection with window of radius {w.radius:g}")
        values.append(val)
    verdict, slope = classify_growth(radii, values, h_div, c_div)
    return DivergenceReport(verdict, radii, values, slope)


# ---------------------------------------------------------------------------
# boundaries and compactness

def boundary_cloud(s: ImplicitClosedSet, scene, window: Window) -> PointCloud:
    """Centers of cells whose corners inside the scene disagree on membership."""
    shape = (window.resolution,) * window.dim
    grid = window.grid()
    in_y = scene.contains(grid).reshape(shape)
    in_s = (s.predicate(grid, TAU_MEM).reshape(shape)) & in_y
    out_s = in_y & ~in_s
    r = window.resolution
    any_in = np.zeros((r - 1,) * window.dim, dtype=bool)
    any_out = np.zeros_like(any_in)
    for corner in np.ndindex(*(2,) * window.dim):
        sl = tuple(slice(c, r - 1 + c) for c in corner)
        any_in |= in_s[sl]
        any_out |= out_s[sl]
    idx = np.argwhere(any_in & any_out)
    centers = np.array(window.lower) + (idx + 0.5) * window.pitch
    return PointCloud(centers.reshape(-1, window.dim), f"boundary({s.tag})", window)


COMPACT = "COMPACT_AT_RESOLUTION"
UNBOUNDED = "UNBOUNDED"
CLOSURE_ESCAPE = "CLOSURE_ESCAPE"


@dataclass
class CompactnessReport:
    status: str
    witness: dict | None = None
    note: str = ""

    def to_json(self) -> dict:
        return {"status": self.status, "witness": self.witness, "note": self.note}


def _stencil(dim: int) -> np.ndarray:
    eye = np.eye(dim)
    diag = np.ones((1, dim)) / np.sqrt(dim)
    return np.vstack([eye, -eye, diag, -diag])


def near_members(s: ImplicitClosedSet, points: np.ndarray, tau: float = TAU_SEP) -> np.ndarray:
    """Rows within ``tau`` of a member: the row itself or a ``tau`` stencil step is in ``s``."""
    points = np.atleast_2d(points)
    out = s.predicate(points, TAU_MEM)
    for step in _stencil(s.dim) * tau:
        rest = ~out
        if not rest.any():
            break
        out[rest] = s.predicate(points[rest] + step, TAU_MEM)
    return out


def _bisect(pred, inside: np.ndarray, outside: np.ndarray, steps: int = BISECTION_STEPS):
    lo, hi = inside.copy(), outside.copy()
    for _ in range(steps):
        mid = (lo + hi) / 2
        ok = pred(mid)
        lo[ok] = mid[ok]
        hi[~ok] = mid[~ok]
    return lo, hi


def _touches_shell(pts: np.ndarray, w: Window) -> bool:
    if len(pts) == 0:
        return False
    shell = 2 * w.pitch
    lo, hi = np.array(w.lower), np.array(w.upper)
    return bool(((pts - lo < shell) | (hi - pts < shell)).any())


def compactness_probe(s: ImplicitClosedSet, scene, windows: Sequence[Window],
                      zoom_levels: int = 6, max_candidates: int = 64) -> CompactnessReport:
    windows = list(windows)
    if len(windows) < 2:
        raise ValueError("need at least 2 windows")
    clouds = [sample(s, w).points for w in windows]
    if all(len(c) == 0 for c in clouds):
        return CompactnessReport(COMPACT, None, "empty set")
    if all(_touches_shell(c, w) for c, w in zip(clouds, windows)):
        far = clouds[-1][np.argmax(np.linalg.norm(clouds[-1], axis=1))]
        return CompactnessReport(UNBOUNDED, {"point": far.tolist(), "window_radius": windows[-1].radius},
                                 "samples reach the outer shell of every window")
    esc = closure_escape(s, scene, windows[0], clouds[0], zoom_levels, max_candidates)
    if esc is not None:
        return CompactnessReport(CLOSURE_ESCAPE, esc, "member samples accumulate at a point outside the scene")
    return CompactnessReport(COMPACT)


def closure_escape(s: ImplicitClosedSet, scene, window: Window, cloud: np.ndarray,
                   zoom_levels: int = 6, max_candidates: int = 64) -> dict | None:
    """Find a non-member of the scene that member samples of ``s`` accumulate at."""
    if len(cloud) == 0:
        return None
    steps = _stencil(s.dim) * window.pitch
    nbr = (cloud[:, None, :] + steps[None, :, :]).reshape(-1, s.dim)
    out_y = ~scene.contains(nbr, TAU_SEP)
    not_s = ~s.predicate(nbr, TAU_MEM)
    pick = np.flatnonzero(out_y & not_s)
    if len(pick) == 0:
        return None
    if len(pick) > max_candidates:
        pick = pick[np.linspace(0, len(pick) - 1, max_candidates).astype(int)]
    src = cloud[pick // len(steps)]
    dst = nbr[pick]
    _, p_out = _bisect(lambda q: s.predicate(q, TAU_MEM), src, dst)
    bad = ~scene.contains(p_out, TAU_SEP)
    for p in p_out[bad]:
        member = _zoom_members(s, p, window.max_pitch, zoom_levels)
        if member is not None:
            return {"limit": p.tolist(), "member": member.tolist(),
                    "distance": float(np.linalg.norm(member - p))}
    return None


def _zoom_members(s: ImplicitClosedSet, p: np.ndarray, pitch: float, levels: int):
    best = None
    for k in range(1, levels + 1):
        zw = Window.around(p, pitch * 2.0 ** -k, resolution=8)
        pts = sample(s, zw).points
        if len(pts) == 0:
            return None
        best = pts[np.argmin(np.linalg.norm(pts - p, axis=1))]
    if best is None or np.linalg.norm(best - p) > 1e-3:
        return None
    return best


# ---------------------------------------------------------------------------
# constructors

def _stack(*parts) -> np.ndarray:
    parts = [np.asarray(p, dtype=float) for p in parts if p is not None and np.size(p)]
    return np.vstack([np.atleast_2d(p) for p in parts]) if parts else np.empty((0, 0))


def scene_set(scene) -> ImplicitClosedSet:
    return ImplicitClosedSet(scene.dim, lambda p, tol: scene.contains(p, tol), scene.name,
                             lambda w: scene.extra_points())


def ideal(scene, x) -> ImplicitClosedSet:
    x = as_point(x, scene.dim)

    def pred(p, tol):
        return scene.contains(p, tol) & scene.order.leq_many(p, x, tol)

    def smp(w):
        edge = scene.ideal_sampler(x, w) if scene.ideal_sampler is not None else None
        return _stack(x, scene.extra_points(), edge).reshape(-1, scene.dim)

    bounds = _bounds(np.full(scene.dim, -np.inf), x) if scene.order.exact else None
    return ImplicitClosedSet(scene.dim, pred, f"ideal{_tag(x)}", smp, bounds)


def filter_set(scene, x) -> ImplicitClosedSet:
    x = as_point(x, scene.dim)

    def pred(p, tol):
        return scene.contains(p, tol) & scene.order.leq_many(x, p, tol)

    return ImplicitClosedSet(scene.dim, pred, f"filter{_tag(x)}",
                             lambda w: _stack(x, scene.extra_points()).reshape(-1, scene.dim))


def _face_points(scene, anchors: Sequence[np.ndarray], window: Window) -> np.ndarray:
    """Grid nodes moved onto the hyperplanes bounding ``anchor - K``."""
    n = scene.dim
    nm = scene.order.matrix(n)
    out = []
    if scene.order.exact:
        axes = window.axes()
        for a in anchors:
            for i in range(n):
                if not (window.lower[i] - 1e-12 <= a[i] <= window.upper[i] + 1e-12):
                    continue
                ax = list(axes)
                ax[i] = np.array([a[i]])
                mesh = np.meshgrid(*ax, indexing="ij")
                out.append(np.stack([m.ravel() for m in mesh], axis=1))
    else:
        grid = window.grid()
        for a in anchors:
            for row in nm:
                shift = (grid @ row - a @ row) / (row @ row)
                out.append(grid - shift[:, None] * row[None, :])
    return np.vstack(out) if out else np.empty((0, n))


def order_interval(scene, b, a) -> ImplicitClosedSet:
    """Closed interval ``b↑ ∩ a↓`` in the scene."""
    a = as_point(a, scene.dim)
    b = as_point(b, scene.dim)

    def pred(p, tol):
        lq = scene.order.leq_many
        return scene.contains(p, tol) & lq(p, a, tol) & lq(b, p, tol)

    def smp(w):
        return _stack(a, b, scene.extra_points(), _face_points(scene, [a, b], w)).reshape(-1, scene.dim)

    bounds = _bounds(b, a) if scene.order.exact else None
    return ImplicitClosedSet(scene.dim, pred, f"interval{_tag(b)}{_tag(a)}", smp, bounds)


def open_interval(scene, b, a) -> ImplicitClosedSet:
    """Interior of ``b↑ ∩ a↓`` (strict cone inequalities, within the scene)."""
    a = as_point(a, scene.dim)
    b = as_point(b, scene.dim)
    nm = scene.order.matrix(scene.dim)

    def pred(p, tol):
        up = ((a - p) @ nm.T > 0).all(axis=1)
        dn = ((p - b) @ nm.T > 0).all(axis=1)
        return up & dn & scene.contains(p, tol)

    bounds = _bounds(b, a) if scene.order.exact else None
    return ImplicitClosedSet(scene.dim, pred, f"open_interval{_tag(b)}{_tag(a)}", None, bounds)


def not_interior_of_ideal(scene, a, eps: float, p: np.ndarray, tol: float) -> np.ndarray:
    """True where some scene point within ``eps`` of ``p`` is not below ``a``."""
    steps = _stencil(scene.dim) * eps
    q = (p[:, None, :] + steps[None, :, :]).reshape(-1, scene.dim)
    esc = scene.contains(q, tol) & ~scene.order.leq_many(q, a, tol)
    return esc.reshape(len(p), len(steps)).any(axis=1)


def interval_rim(scene, b, a, eps: float) -> ImplicitClosedSet:
    """``(b↑ ∩ a↓) \\ int(a↓)`` with interiority tested at radius ``eps``."""
    a = as_point(a, scene.dim)
    box = order_interval(scene, b, a)

    def pred(p, tol):
        out = box.predicate(p, tol)
        if out.any():
            out[out] = not_interior_of_ideal(scene, a, eps, p[out], tol)
        return out

    return ImplicitClosedSet(scene.dim, pred, f"rim{_tag(as_point(b, scene.dim))}{_tag(a)}", box.sampler)


def ball(scene, center, radius: float, closed: bool = False) -> ImplicitClosedSet:
    c = as_point(center, scene.dim)

    def pred(p, tol):
        d = np.linalg.norm(p - c, axis=1)
        near = d <= radius + tol if closed else d < radius
        return near & scene.contains(p, tol)

    return ImplicitClosedSet(scene.dim, pred, f"ball{_tag(c)}r{radius:g}",
                             lambda w: _stack(c, scene.extra_points()).reshape(-1, scene.dim),
                             _bounds(c - radius, c + radius))


def box(scene, lower, upper, open_lower=(), open_upper=()) -> ImplicitClosedSet:
    """Axis box within the scene; listed axes use strict inequalities."""
    lo = as_point(lower, scene.dim)
    hi = as_point(upper, scene.dim)
    olo = np.zeros(scene.dim, dtype=bool)
    ohi = np.zeros(scene.dim, dtype=bool)
    olo[list(open_lower)] = True
    ohi[list(open_upper)] = True

    def pred(p, tol):
        above = np.where(olo, p > lo, p >= lo - tol)
        below = np.where(ohi, p < hi, p <= hi + tol)
        return above.all(axis=1) & below.all(axis=1) & scene.contains(p, tol)

    def smp(w):
        corners = np.array(np.meshgrid(*zip(lo, hi), indexing="ij")).reshape(scene.dim, -1).T
        return _stack(corners, (lo + hi) / 2, scene.extra_points()).reshape(-1, scene.dim)

    return ImplicitClosedSet(scene.dim, pred, f"box{_tag(lo)}{_tag(hi)}", smp, _bounds(lo, hi))


def intersection(*sets: ImplicitClosedSet) -> ImplicitClosedSet:
    dim = sets[0].dim

    def pred(p, tol):
        out = np.ones(len(p), dtype=bool)
        for s in sets:
            if out.any():
                out[out] = s.predicate(p[out], tol)
        return out

    def smp(w):
        parts = [s.sampler(w) for s in sets if s.sampler is not None]
        return _stack(*parts).reshape(-1, dim)

    known = [s.bounds for s in sets if s.bounds is not None]
    bounds = _bounds(np.max([k[0] for k in known], axis=0), np.min([k[1] for k in known], axis=0)) if known else None
    return ImplicitClosedSet(dim, pred, " & ".join(s.tag for s in sets), smp, bounds)


def finite_set(points, tag: str = "points") -> ImplicitClosedSet:
    pts = np.atleast_2d(np.asarray(points, dtype=float))

    def pred(p, tol):
        d = np.abs(p[:, None, :] - pts[None, :, :]).max(axis=2)
        return (d <= tol).any(axis=1)

    return ImplicitClosedSet(pts.shape[1], pred, tag, lambda w: pts)


# ---------------------------------------------------------------------------
# parametric curves

@dataclass(frozen=True, eq=False)
class Curve:
    """Closed-form curve ``t -> fn(t)`` on ``[lo, hi]``.

    ``residual(points)`` is zero on the curve; ``refine`` lists parameter ends
    (``"lo"``/``"hi"``) approached geometrically when sampling.
    """

    dim: int
    fn: Callable[[np.ndarray], np.ndarray]
    lo: float
    hi: float
    residual: Callable[[np.ndarray], np.ndarray]
    tag: str
    refine: tuple[str, ...] = field(default=())

    def params(self) -> np.ndarray:
        span = self.hi - self.lo
        parts = [np.linspace(self.lo, self.hi, 1025)]
        g = 2.0 ** -np.arange(1, 61)
        if "lo" in self.refine:
            parts.append(self.lo + span * g)
        if "hi" in self.refine:
            parts.append(self.hi - span * g)
        t = np.unique(np.concatenate(parts))
        return t[(t >= self.lo) & (t <= self.hi)]

    def sample(self, window: Window, spacing: float = 0.5, max_points: int = 400_000) -> np.ndarray:
        """Points about ``spacing`` pitches apart (max-norm in pitch units) inside ``window``."""
        pitch = window.pitch
        slack = window.max_pitch
        t = self.params()
        for _ in range(40):
            p = self.fn(t)
            inw = window.contains(p, slack)
            step = (np.abs(np.diff(p, axis=0)) / pitch).max(axis=1)
            bad = (step > spacing) & (inw[:-1] | inw[1:])
            if not bad.any() or len(t) > max_points:
                break
            t = np.unique(np.concatenate([t, (t[:-1][bad] + t[1:][bad]) / 2]))
        p = self.fn(t)
        inw = window.contains(p, 1e-12 * max(window.extent, 1.0))
        if not inw.any():
            return np.empty((0, self.dim))
        step = np.concatenate([[0.0], (np.abs(np.diff(p, axis=0)) / pitch).max(axis=1)])
        step[~inw] = 0.0
        cells = np.floor(np.cumsum(step) / spacing)
        keep = np.concatenate([[True], cells[1:] != cells[:-1]]) & inw
        edges = inw & ~np.concatenate([[False], inw[:-1]]) | inw & ~np.concatenate([inw[1:], [False]])
        return p[keep | edges]

    def as_set(self) -> ImplicitClosedSet:
        return ImplicitClosedSet(self.dim, lambda p, tol: self.residual(p) <= tol, self.tag, self.sample)


def segment(a, b, tag: str = "segment", lo: float = 0.0, hi: float = 1.0) -> Curve:
    """Piece ``a + t(b - a)``, ``lo <= t <= hi``; trimmed ends are sampled geometrically."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    d = b - a

    def fn(t):
        return a[None, :] + np.asarray(t, dtype=float)[:, None] * d[None, :]

    def residual(p):
        t = np.clip(((p - a) @ d) / (d @ d), lo, hi)
        return np.linalg.norm(p - fn(t), axis=1)

    refine = tuple(e for e, on in (("lo", lo > 0.0), ("hi", hi < 1.0)) if on)
    return Curve(len(a), fn, lo, hi, residual, tag, refine)


def _tag(x) -> str:
    return "(" + ",".join(f"{v:g}" for v in np.asarray(x).ravel()) + ")"
