"""Reference implementations written independently of the package."""

from __future__ import annotations

import itertools
import math

import numpy as np


def hausdorff_naive(a, b) -> float:
    """Double-loop Hausdorff distance between two finite point lists."""
    a = [tuple(map(float, p)) for p in a]
    b = [tuple(map(float, p)) for p in b]

    def directed(xs, ys):
        worst = 0.0
        for x in xs:
            best = math.inf
            for y in ys:
                d = math.dist(x, y)
                if d < best:
                    best = d
            if best > worst:
                worst = best
        return worst

    return max(directed(a, b), directed(b, a))


def point_line_distance(p, q0, q1) -> float:
    """Distance from ``p`` to the infinite line through ``q0`` and ``q1``."""
    p, q0, q1 = (np.asarray(v, dtype=float) for v in (p, q0, q1))
    d = q1 - q0
    t = float(np.dot(p - q0, d) / np.dot(d, d))
    return float(np.linalg.norm(p - (q0 + t * d)))


# hand-coded membership for the built-in scenes

def in_ex25(p) -> bool:
    u, v = p
    return u * v > 0 or (u == 0 and v == 0)


def in_ex35(p) -> bool:
    u, v, w = p
    t1 = w == 0 and -1 <= v <= u <= 0
    t2 = u == v and -1 <= u <= w <= 0
    return t1 or t2


def in_ex36(p) -> bool:
    u, v = p
    return (u > 0 and u * v >= 4) or u * u + v * v <= 1


def in_ex41(p) -> bool:
    u, v = p
    return 0 < u < 1 and 0 < v < 1


def in_ex42(p) -> bool:
    u, v, w = p
    return u <= 0 and v <= 0 and w <= 0 and u * v + w <= 1


HAND_CODED = {"ex25": in_ex25, "ex35": in_ex35, "ex36": in_ex36, "ex41": in_ex41, "ex42": in_ex42}


# order-theoretic grid brute force for coordinatewise orders

def grid_nodes(lower, upper, res: int) -> np.ndarray:
    axes = [np.linspace(lo, hi, res) for lo, hi in zip(lower, upper)]
    return np.array(list(itertools.product(*axes)))


def grid_extremal_bound(nodes_in_set: np.ndarray, x, y, lower: bool) -> np.ndarray | None:
    """Coordinatewise max of the common lower bounds (or min of the upper bounds) among ``nodes``."""
    x, y = np.asarray(x, float), np.asarray(y, float)
    if lower:
        m = np.all(nodes_in_set <= np.minimum(x, y), axis=1)
        return nodes_in_set[m].max(axis=0) if m.any() else None
    m = np.all(nodes_in_set >= np.maximum(x, y), axis=1)
    return nodes_in_set[m].min(axis=0) if m.any() else None


def ex42_meet_formula(x, y) -> np.ndarray:
    """Greatest point of X below both: take the coordinatewise min and drop w onto the saddle."""
    u, v, w = np.minimum(np.asarray(x, float), np.asarray(y, float))
    return np.array([u, v, min(w, 1.0 - u * v)])


def ex35_join_formula(x, y) -> np.ndarray:
    """Least upper bound in the two-triangle scene, derived case by case."""
    m = np.maximum(np.asarray(x, float), np.asarray(y, float))
    u, v, w = m
    # T1 candidate: (max(u, v), v, 0) is the least point of T1 above m
    t1 = np.array([max(u, v), v, 0.0])
    # T2 candidate: (s, s, max(s, w)) with s = max(u, v)
    s = max(u, v)
    t2 = np.array([s, s, max(s, w)])
    cands = [c for c in (t1, t2) if np.all(c >= m)]
    best = [c for c in cands if all(np.all(c <= d) for d in cands)]
    return best[0]


def in_ex42_many(p: np.ndarray) -> np.ndarray:
    u, v, w = p.T
    return (u <= 0) & (v <= 0) & (w <= 0) & (u * v + w <= 1)


def in_ex35_many(p: np.ndarray) -> np.ndarray:
    u, v, w = p.T
    t1 = (w == 0) & (-1 <= v) & (v <= u) & (u <= 0)
    t2 = (u == v) & (-1 <= u) & (u <= w) & (w <= 0)
    return t1 | t2


def grid_bound(member, x, y, lower_corner, upper_corner, res: int, lower: bool) -> np.ndarray | None:
    """Extremal common bound over grid nodes whose axes also carry the input coordinates."""
    x, y = np.asarray(x, float), np.asarray(y, float)
    axes = [np.union1d(np.linspace(lo, hi, res), [a, b])
            for lo, hi, a, b in zip(lower_corner, upper_corner, x, y)]
    nodes = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(x))
    nodes = nodes[member(nodes)]
    return grid_extremal_bound(nodes, x, y, lower)
