"""Cone orders on R^n, principal ideals and filters, meets and joins."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Sequence

import numpy as np

from hyperfell.constants import TAU_MEM
from hyperfell.window import Window

if TYPE_CHECKING:
    from hyperfell.scene import Scene

COORDINATEWISE = "coordinatewise"
HALFSPACES = "halfspaces"


def as_point(x, dim: int | None = None) -> np.ndarray:
    p = np.asarray(x, dtype=float)
    if p.ndim != 1:
        raise ValueError(f"expected a point, got shape {p.shape}")
    if not np.all(np.isfinite(p)):
        raise ValueError(f"point has non-finite entries: {p}")
    if dim is not None and p.shape[0] != dim:
        raise ValueError(f"dimension mismatch: expected {dim}, got {p.shape[0]}")
    return p


@dataclass(frozen=True)
class ConeOrder:
    """Partial order ``x <= y`` iff ``y - x`` lies in a closed convex cone.

    The coordinatewise order uses the nonnegative orthant and is compared
    exactly.  A halfspace cone is ``{v : <n_i, v> >= 0 for all i}`` and is
    compared with slack ``TAU_MEM`` so the cone stays closed under rounding.
    """

    kind: str = COORDINATEWISE
    normals: tuple[tuple[float, ...], ...] = field(default=())

    def __post_init__(self):
        if self.kind not in (COORDINATEWISE, HALFSPACES):
            raise ValueError(f"unknown order kind {self.kind!r}")
        normals = tuple(tuple(float(c) for c in row) for row in self.normals)
        object.__setattr__(self, "normals", normals)
        if self.kind == HALFSPACES:
            if not normals:
                raise ValueError("halfspace order needs at least one normal")
            if len({len(r) for r in normals}) != 1:
                raise ValueError("halfspace normals must share one dimension")
        elif normals:
            raise ValueError("coordinatewise order takes no normals")

    @classmethod
    def coordinatewise(cls) -> "ConeOrder":
        return cls(COORDINATEWISE)

    @classmethod
    def halfspaces(cls, normals: Sequence[Sequence[float]]) -> "ConeOrder":
        return cls(HALFSPACES, tuple(tuple(r) for r in normals))

    @property
    def exact(self) -> bool:
        return self.kind == COORDINATEWISE

    def matrix(self, dim: int) -> np.ndarray:
        if self.kind == COORDINATEWISE:
            return np.eye(dim)
        m = np.array(self.normals, dtype=float)
        if m.shape[1] != dim:
            raise ValueError(f"dimension mismatch: order has normals of length {m.shape[1]}, points have {dim}")
        return m

    def in_cone(self, v: np.ndarray, tol: float = TAU_MEM) -> np.ndarray:
        """Row-wise membership of vectors in the cone."""
        v = np.atleast_2d(np.asarray(v, dtype=float))
        if self.kind == COORDINATEWISE:
            return np.all(v >= 0, axis=1)
        return np.all(v @ self.matrix(v.shape[1]).T >= -tol, axis=1)

    def leq_many(self, xs, ys, tol: float = TAU_MEM) -> np.ndarray:
        """``xs[i] <= ys[i]`` row-wise; either side may be a single point."""
        xs = np.atleast_2d(np.asarray(xs, dtype=float))
        ys = np.atleast_2d(np.asarray(ys, dtype=float))
        if xs.shape[1] != ys.shape[1]:
            raise ValueError(f"dimension mismatch: {xs.shape[1]} vs {ys.shape[1]}")
        if self.kind == COORDINATEWISE:
            return np.all(xs <= ys, axis=1)
        return self.in_cone(ys - xs, tol)

    def coordinates(self, points: np.ndarray) -> np.ndarray:
        """Linear image in which the order becomes coordinatewise."""
        points = np.atleast_2d(points)
        if self.kind == COORDINATEWISE:
            return points
        return points @ self.matrix(points.shape[1]).T

    def interior_direction(self, dim: int) -> np.ndarray:
        """A vector in the interior of the cone."""
        if self.kind == COORDINATEWISE:
            return np.ones(dim)
        m = self.matrix(dim)
        unit = m / np.linalg.norm(m, axis=1, keepdims=True)
        d = unit.sum(axis=0)
        if np.all(m @ d > 1e-12):
            return d / np.linalg.norm(d)
        from scipy.optimize import linprog

        # maximize s subject to <n_i, d> >= s, -1 <= d <= 1
        k = m.shape[0]
        c = np.zeros(dim + 1)
        c[-1] = -1.0
        a_ub = np.hstack([-unit, np.ones((k, 1))])
        res = linprog(c, A_ub=a_ub, b_ub=np.zeros(k), bounds=[(-1, 1)] * dim + [(None, 1)])
        if not res.success or res.x[-1] <= 1e-12:
            raise ValueError("cone has empty interior")
        d = res.x[:dim]
        return d / np.linalg.norm(d)

    def to_text(self) -> str:
        if self.kind == COORDINATEWISE:
            return COORDINATEWISE
        rows = "; ".join(", ".join(_fmt(c) for c in row) for row in self.normals)
        return f"halfspaces [ {rows} ]"


def _fmt(c: float) -> str:
    if float(c).is_integer() and abs(c) < 1e15:
        return str(int(c))
    return repr(float(c))


def leq(x, y, order: ConeOrder) -> bool:
    x, y = as_point(x), as_point(y)
    if x.shape != y.shape:
        raise ValueError(f"dimension mismatch: {x.shape[0]} vs {y.shape[0]}")
    return bool(order.leq_many(x, y)[0])


def ideal_membership(u, x, scene: "Scene") -> bool:
    u, x = as_point(u, scene.dim), as_point(x, scene.dim)
    return bool(scene.contains(u)) and leq(u, x, scene.order)


def filter_membership(u, x, scene: "Scene") -> bool:
    u, x = as_point(u, scene.dim), as_point(x, scene.dim)
    return bool(scene.contains(u)) and leq(x, u, scene.order)


def down_closure_membership(u, points, scene: "Scene") -> bool:
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.size == 0:
        raise ValueError("down closure of an empty set")
    u = as_point(u, scene.dim)
    return bool(scene.contains(u)) and bool(scene.order.leq_many(u, pts).any())


def up_closure_membership(u, points, scene: "Scene") -> bool:
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.size == 0:
        raise ValueError("up closure of an empty set")
    u = as_point(u, scene.dim)
    return bool(scene.contains(u)) and bool(scene.order.leq_many(pts, u).any())


# ---------------------------------------------------------------------------
# brute-force meets and joins on a grid


MEET = "MEET"
NO_MEET = "NO_MEET"
NOT_SEMILATTICE = "NOT_SEMILATTICE_AT_RESOLUTION"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass
class BoundResult:
    status: str
    point: np.ndarray | None
    candidates: np.ndarray
    pitch: np.ndarray
    note: str = ""

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "point": None if self.point is None else [float(c) for c in self.point],
            "candidates": [[float(c) for c in p] for p in self.candidates[:16]],
            "pitch": [float(p) for p in self.pitch],
            "note": self.note,
        }


def _maximal(points: np.ndarray, order: ConeOrder, tol: float) -> np.ndarray:
    """Indices of the order-maximal rows of ``points``."""
    z = order.coordinates(points)
    if len(z) == 0:
        return np.zeros(0, dtype=int)
    # within a column of equal leading coordinates only the top survives
    keys = np.round(z[:, :-1], 12)
    order_idx = np.lexsort(np.vstack([-z[:, -1], keys.T[::-1]]))
    first = np.ones(len(order_idx), dtype=bool)
    sk = keys[order_idx]
    first[1:] = np.any(sk[1:] != sk[:-1], axis=1)
    cand = order_idx[first]
    cz = z[cand]
    # sweep in decreasing coordinate sum; a row can only be beaten by earlier rows
    sweep = np.argsort(-cz.sum(axis=1), kind="stable")
    kept: list[int] = []
    kept_z = np.empty_like(cz)
    for i in sweep:
        row = cz[i]
        if kept:
            kz = kept_z[: len(kept)]
            if np.any(np.all(kz >= row - tol, axis=1)):
                continue
        kept_z[len(kept)] = row
        kept.append(i)
    return cand[np.array(kept, dtype=int)]


def _polish(points: np.ndarray, valid, pitch: np.ndarray, up: bool, steps: int = 24) -> np.ndarray:
    """Coordinate ascent (or descent) by at most one pitch per axis and sweep.

    ``valid`` maps an (m, n) array to a boolean mask.  Only moves that keep a
    row valid are accepted, so the result still satisfies the constraint.
    """
    p = points.copy()
    sign = 1.0 if up else -1.0
    n = p.shape[1]
    for _ in range(2 * n):
        moved = False
        for i in range(n):
            lo = np.zeros(len(p))
            hi = np.full(len(p), pitch[i])
            for _ in range(steps):
                mid = (lo + hi) / 2
                q = p.copy()
                q[:, i] += sign * mid
                ok = valid(q)
                lo = np.where(ok, mid, lo)
                hi = np.where(ok, hi, mid)
            if np.any(lo > 0):
                moved = True
            p[:, i] += sign * lo
        if not moved:
            break
    return p


def _bound_brute(x, y, scene: "Scene", grid: Window, lower: bool) -> BoundResult:
    order = scene.order
    x, y = as_point(x, scene.dim), as_point(y, scene.dim)
    if grid.dim != scene.dim:
        raise ValueError("grid dimension does not match scene")
    pitch = grid.pitch
    nodes = grid.grid()
    if lower:
        pre = order.leq_many(nodes, x) & order.leq_many(nodes, y)
    else:
        pre = order.leq_many(x, nodes) & order.leq_many(y, nodes)
    pool = np.vstack([nodes[pre], x, y])

    def valid(q):
        if lower:
            ok = order.leq_many(q, x) & order.leq_many(q, y)
        else:
            ok = order.leq_many(x, q) & order.leq_many(y, q)
        return ok & scene.contains(q)

    members = pool[valid(pool)]
    if len(members) == 0:
        return _empty_bound(x, y, scene, pitch, lower)

    z = members if lower else -members
    idx = _maximal(z, order, TAU_MEM)
    cands = members[idx]
    cands = _polish(cands, valid, pitch, up=lower)
    z2 = cands if lower else -cands
    cands = cands[_maximal(z2, order, 1e-9)]
    lex = np.lexsort(cands.T[::-1])
    best = cands[lex[-1]] if lower else cands[lex[0]]
    if len(cands) == 1:
        return BoundResult(MEET, best, cands, pitch)
    spread = float(np.max((cands.max(axis=0) - cands.min(axis=0)) / pitch))
    if spread <= 1 + 1e-9:
        return BoundResult(MEET, best, cands, pitch)
    return BoundResult(
        NOT_SEMILATTICE, None, cands, pitch,
        note=f"{len(cands)} incomparable extremal bounds spread {spread:.2f} pitches",
    )


def _empty_bound(x, y, scene: "Scene", pitch, lower: bool) -> BoundResult:
    d = scene.order.interior_direction(scene.dim)
    sign = -1.0 if lower else 1.0
    bases = [x, y]
    if scene.order.exact:
        bases.append(np.minimum(x, y) if lower else np.maximum(x, y))
    dirs = [d, *np.eye(scene.dim)] if scene.order.exact else [d]
    for t in (1.0, 10.0, 100.0, 1000.0, 1e4):
        for base, e in itertools.product(bases, dirs):
            p = base + sign * t * e
            ok = scene.order.leq_many(p, x)[0] and scene.order.leq_many(p, y)[0] if lower else (
                scene.order.leq_many(x, p)[0] and scene.order.leq_many(y, p)[0]
            )
            if ok and scene.contains(p):
                return BoundResult(
                    INCONCLUSIVE, None, np.empty((0, scene.dim)), pitch,
                    note=f"window excludes the bounds (e.g. {p.tolist()}); enlarge the window",
                )
    return BoundResult(NO_MEET, None, np.empty((0, scene.dim)), pitch, note="bound set empty on grid")


def meet_brute(x, y, scene: "Scene", grid: Window | None = None) -> BoundResult:
    """Greatest grid lower bound of ``x`` and ``y`` inside the scene.

    Grid candidates are pushed upward along each axis by bisection (at most
    one pitch per sweep) while they stay lower bounds in the scene; this
    keeps the oracle independent of any closed form while removing most of
    the grid-quantisation error on sloped faces.
    """
    return _bound_brute(x, y, scene, grid or scene.window, lower=True)


def join_brute(x, y, scene: "Scene", grid: Window | None = None) -> BoundResult:
    return _bound_brute(x, y, scene, grid or scene.window, lower=False)


# ---------------------------------------------------------------------------
# closed forms


def _in_ex42(p: np.ndarray, tol: float = TAU_MEM) -> bool:
    u, v, w = p
    return bool(u <= tol and v <= tol and w <= tol and u * v + w - 1 <= tol)


def meet_ex42(x, y) -> np.ndarray:
    """Meet in ``{u, v, w <= 0, uv + w - 1 <= 0}`` with the coordinatewise order."""
    x, y = as_point(x, 3), as_point(y, 3)
    for p in (x, y):
        if not _in_ex42(p):
            raise ValueError(f"{p.tolist()} is outside the solid uv + w - 1 <= 0")
    m = np.minimum(x, y)
    u, v, w = m
    if u * v + w - 1 <= 0:
        return m
    return np.array([u, v, 1 - u * v])


def _in_t1(p, tol=TAU_MEM) -> bool:
    u, v, w = p
    return abs(w) <= tol and -1 - tol <= v <= u + tol and u <= tol


def _in_t2(p, tol=TAU_MEM) -> bool:
    u, v, w = p
    return abs(u - v) <= tol and -1 - tol <= u <= w + tol and w <= tol


def join_ex35(x, y) -> np.ndarray:
    """Join in the union of the two triangles T1 (w = 0) and T2 (u = v)."""
    x, y = as_point(x, 3), as_point(y, 3)
    for p in (x, y):
        if not (_in_t1(p) or _in_t2(p)):
            raise ValueError(f"{p.tolist()} is outside T1 u T2")
    m = np.maximum(x, y)
    if (_in_t1(x) and _in_t1(y)) or (_in_t2(x) and _in_t2(y)):
        return m
    return np.array([m[0], m[1], 0.0])
