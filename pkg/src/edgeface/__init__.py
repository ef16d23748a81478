"""Edge-face colouring of plane graphs with maximum degree at most 8."""

from .colouring import EdgeFaceColouring, oracle_colour, validate
from .configs import detect_all
from .discharge import apply_rules, audit
from .embed import PlaneGraph, build_from_rotations
from .solver import colour, colour_with_stats

__all__ = [
    "EdgeFaceColouring",
    "PlaneGraph",
    "apply_rules",
    "audit",
    "build_from_rotations",
    "colour",
    "colour_with_stats",
    "detect_all",
    "oracle_colour",
    "validate",
]
