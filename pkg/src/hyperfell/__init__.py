"""Partially ordered subspaces of R^n and hit-and-miss probes on their hyperspaces."""

from hyperfell.order import ConeOrder, leq, meet_ex42, join_ex35
from hyperfell.scene import Scene, builtin_scene, parse_scene, print_scene

__all__ = [
    "ConeOrder",
    "Scene",
    "builtin_scene",
    "join_ex35",
    "leq",
    "meet_ex42",
    "parse_scene",
    "print_scene",
]

__version__ = "0.1.0"
