"""Text formats, generators, the small-graph enumerator and the CLI."""

from .enumerate import enumerate_small
from .formats import parse_colouring, parse_graph, serialise_colouring, serialise_graph
from .generators import InfeasibleParameters, generate

__all__ = [
    "InfeasibleParameters",
    "enumerate_small",
    "generate",
    "parse_colouring",
    "parse_graph",
    "serialise_colouring",
    "serialise_graph",
]
