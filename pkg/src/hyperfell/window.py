"""Axis-aligned sampling boxes and their grids."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from hyperfell.constants import RESOLUTION


@dataclass(frozen=True)
class Window:
    """Axis-aligned box sampled on a regular grid.

    ``resolution`` counts grid nodes per axis, so the pitch along axis ``i``
    is ``(upper[i] - lower[i]) / (resolution - 1)``.
    """

    lower: tuple[float, ...]
    upper: tuple[float, ...]
    resolution: int = RESOLUTION

    def __post_init__(self):
        lower = tuple(float(v) for v in self.lower)
        upper = tuple(float(v) for v in self.upper)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        if len(lower) != len(upper) or not lower:
            raise ValueError("window bounds must have the same nonzero length")
        if not all(np.isfinite(lower + upper)):
            raise ValueError("window bounds must be finite")
        if any(lo >= hi for lo, hi in zip(lower, upper)):
            raise ValueError(f"window lower must be < upper per axis: {lower} vs {upper}")
        if self.resolution < 2:
            raise ValueError("resolution must be >= 2")

    @classmethod
    def box(cls, lower: Sequence[float], upper: Sequence[float], resolution: int = RESOLUTION) -> "Window":
        return cls(tuple(lower), tuple(upper), resolution)

    @classmethod
    def around(cls, center: Sequence[float], half_width: float, resolution: int = RESOLUTION) -> "Window":
        c = np.asarray(center, dtype=float)
        return cls(tuple(c - half_width), tuple(c + half_width), resolution)

    @property
    def dim(self) -> int:
        return len(self.lower)

    @property
    def pitch(self) -> np.ndarray:
        lo, hi = np.array(self.lower), np.array(self.upper)
        return (hi - lo) / (self.resolution - 1)

    @property
    def max_pitch(self) -> float:
        return float(self.pitch.max())

    @property
    def extent(self) -> float:
        return float(max(hi - lo for lo, hi in zip(self.lower, self.upper)))

    @property
    def radius(self) -> float:
        """Largest absolute coordinate reached by the box."""
        return float(max(max(abs(lo), abs(hi)) for lo, hi in zip(self.lower, self.upper)))

    @property
    def center(self) -> np.ndarray:
        return (np.array(self.lower) + np.array(self.upper)) / 2

    def axes(self) -> list[np.ndarray]:
        return [np.linspace(lo, hi, self.resolution) for lo, hi in zip(self.lower, self.upper)]

    def grid(self) -> np.ndarray:
        """All grid nodes in C order of their index tuple (read-only)."""
        return _grid(self)

    def contains(self, points: np.ndarray, slack: float = 0.0) -> np.ndarray:
        p = np.atleast_2d(points)
        lo, hi = np.array(self.lower) - slack, np.array(self.upper) + slack
        return np.all((p >= lo) & (p <= hi), axis=1)

    def with_resolution(self, resolution: int) -> "Window":
        return Window(self.lower, self.upper, resolution)

    def scaled(self, factor: float) -> "Window":
        c = self.center
        lo = c + (np.array(self.lower) - c) * factor
        hi = c + (np.array(self.upper) - c) * factor
        return Window(tuple(lo), tuple(hi), self.resolution)

    def to_json(self) -> dict:
        return {"lower": list(self.lower), "upper": list(self.upper), "resolution": self.resolution}


@lru_cache(maxsize=32)
def _grid(window: Window) -> np.ndarray:
    mesh = np.meshgrid(*window.axes(), indexing="ij")
    pts = np.stack([m.ravel() for m in mesh], axis=1)
    pts.setflags(write=False)
    return pts


def growing_windows(base: Window, factors: Sequence[float] = (1.0, 2.0, 4.0)) -> list[Window]:
    return [base.scaled(f) for f in factors]


def expanded_windows(base: Window, radii: Sequence[float], resolution: int | None = None) -> list[Window]:
    """Push every axis of ``base`` that reaches past zero out to ``+-R``.

    Axes whose default range stays on one side of the origin keep that side's
    bound, so a scene living in the negative octant gets boxes ``[-R, 0]^n``.
    """
    res = resolution or base.resolution
    out = []
    for r in radii:
        lo = [-r if l < 0 else l for l in base.lower]
        hi = [r if h > 0 else h for h in base.upper]
        out.append(Window(tuple(lo), tuple(hi), res))
    return out
