"""Line-oriented text formats for plane graphs and colourings.

Graph documents list one vertex per line with its neighbours in clockwise
order::

    # planegraph v1
    vertex 0: 1 2
    vertex 1: 2 0
    vertex 2: 0 1

Colouring documents hold ``edge u v c`` and ``face id c`` lines.  Anything
after ``#`` on a line is a comment.
"""

from __future__ import annotations

import re

from ..colouring import NUM_COLOURS, EdgeFaceColouring
from ..embed import PlaneGraph, build_from_rotations, edge_key
from ..exceptions import DocumentSyntaxError, EmbeddingError, SemanticError

GRAPH_HEADER = "# planegraph v1"
COLOURING_HEADER = "# colouring v1"

_INT = re.compile(r"\d+")


def _content(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def _ints(text: str, lineno: int, offset: int) -> list[int]:
    out = []
    pos = 0
    for tok in text.split():
        start = text.index(tok, pos)
        pos = start + len(tok)
        if not _INT.fullmatch(tok):
            raise DocumentSyntaxError(f"expected a non-negative integer, got {tok!r}", lineno, offset + start + 1)
        out.append(int(tok))
    return out


def parse_rotation(text: str) -> dict[int, list[int]]:
    """Parse a graph document into clockwise neighbour lists without
    building the embedding."""
    rot: dict[int, list[int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _content(raw)
        if not line.strip():
            continue
        head, sep, rest = line.partition(":")
        words = head.split()
        if not sep or len(words) != 2 or words[0] != "vertex":
            col = len(line) - len(line.lstrip()) + 1
            raise DocumentSyntaxError("expected 'vertex <id>: <neighbours>'", lineno, col)
        if not _INT.fullmatch(words[1]):
            raise DocumentSyntaxError(f"bad vertex id {words[1]!r}", lineno, head.index(words[1]) + 1)
        v = int(words[1])
        if v in rot:
            raise SemanticError(f"line {lineno}: vertex {v} listed twice")
        rot[v] = _ints(rest, lineno, len(head) + 1)
    return rot


def parse_graph(text: str) -> PlaneGraph:
    rot = parse_rotation(text)
    try:
        return build_from_rotations(rot)
    except EmbeddingError as exc:
        raise SemanticError(f"{type(exc).__name__}: {exc}") from exc


def serialise_graph(G: PlaneGraph, comments: list[str] | None = None) -> str:
    """Canonical document: vertices ascending, each rotation starting at its
    smallest neighbour."""
    lines = [GRAPH_HEADER]
    lines += [f"# {c}" for c in comments or []]
    for v in sorted(G.vertices):
        nbrs = list(G.neighbours(v))
        if nbrs:
            i = nbrs.index(min(nbrs))
            nbrs = nbrs[i:] + nbrs[:i]
        body = " ".join(map(str, nbrs))
        lines.append(f"vertex {v}:" + (f" {body}" if body else ""))
    return "\n".join(lines) + "\n"


def parse_colouring(text: str, G: PlaneGraph | None = None) -> EdgeFaceColouring:
    """Parse a colouring document; with ``G`` given, element ids are checked."""
    lam = EdgeFaceColouring()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _content(raw)
        if not line.strip():
            continue
        words = line.split()
        kind = words[0]
        col = line.index(kind) + 1
        if kind == "edge" and len(words) == 4:
            nums = _ints(line[col + 3:], lineno, col + 3)
            u, v, c = nums
            key = edge_key(u, v)
            if G is not None and not G.has_edge(u, v):
                raise SemanticError(f"line {lineno}: edge {u}-{v} not in graph")
            if key in lam.edges:
                raise SemanticError(f"line {lineno}: edge {u}-{v} coloured twice")
            lam.edges[key] = c
        elif kind == "face" and len(words) == 3:
            f, c = _ints(line[col + 3:], lineno, col + 3)
            if G is not None and not 0 <= f < G.num_faces:
                raise SemanticError(f"line {lineno}: face {f} not in graph")
            if f in lam.faces:
                raise SemanticError(f"line {lineno}: face {f} coloured twice")
            lam.faces[f] = c
        else:
            raise DocumentSyntaxError("expected 'edge <u> <v> <colour>' or 'face <id> <colour>'", lineno, col)
        if not 1 <= c <= NUM_COLOURS:
            raise SemanticError(f"line {lineno}: colour {c} outside 1..{NUM_COLOURS}")
    return lam


def serialise_colouring(lam: EdgeFaceColouring) -> str:
    lines = [COLOURING_HEADER]
    lines += [f"edge {u} {v} {c}" for (u, v), c in sorted(lam.edges.items())]
    lines += [f"face {f} {c}" for f, c in sorted(lam.faces.items())]
    return "\n".join(lines) + "\n"
