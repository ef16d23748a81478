"""Detection of reducible configurations and the local predicates behind them.

Every configuration is described by a candidate generator, which proposes
role bindings, and a predicate, which decides from the bindings alone whether
the configuration is present.  Keeping the predicate independent of the
generator is what lets :func:`check_match` re-validate any reported match.

Edge-side conventions: an edge is *incident to an (<=4)-face* when at least
one of its two sides bounds a face of degree at most 4; it is *incident to
two (<=4)-faces* when both sides do and the two side faces are distinct.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Callable, Iterable, Iterator

from .colouring import SMALL_FACE
from .embed import Edge, PlaneGraph, edge_key
from .exceptions import DegreeTooLow, FaceTooSmall, PreconditionViolated

MAX_DEGREE = 8

CONFIG_IDS = (
    "A0", "A1", "A2", "A3",
    "B1", "B2", "B3", "B4",
    "C1", "C2", "C3", "C4", "C5",
    "D1", "D2", "D3", "D4",
    "E1", "E2", "E3", "E4",
    "LN", "LNN",
)
_RANK = {c: i for i, c in enumerate(CONFIG_IDS)}

FAMILIES = {
    "A": ("A0", "A1", "A2", "A3"),
    "B": ("B1", "B2", "B3", "B4"),
    "C": ("C1", "C2", "C3", "C4", "C5"),
    "D": ("D1", "D2", "D3", "D4"),
    "E": ("E1", "E2", "E3", "E4"),
    "LN": ("LN",),
    "LNN": ("LNN",),
}


@dataclass(frozen=True)
class Reduction:
    """What the solver removes to shrink the graph.

    kind is one of ``"remove_leaf"`` (delete the vertex ``vertex`` and its
    edge), ``"delete"`` (delete ``edges``), ``"contract"`` (merge the
    2-vertex ``vertex`` into its neighbour ``keep``), ``"delete_loose"``
    (delete the loose edges ``edges`` of ``face``) or ``"redirect"`` (the
    configuration has no direct reduction here; ``edges`` names an edge the
    solver may delete before handing extension to the exhaustive fallback).
    """

    kind: str
    edges: tuple[Edge, ...] = ()
    vertex: int | None = None
    keep: int | None = None
    face: int | None = None

    def describe(self) -> str:
        es = ",".join(f"{u}-{v}" for u, v in self.edges)
        if self.kind == "remove_leaf":
            return f"remove_leaf {self.vertex}"
        if self.kind == "contract":
            return f"contract {self.vertex}->{self.keep}"
        if self.kind == "delete_loose":
            return f"delete_loose f{self.face} {es}"
        return f"{self.kind} {es}"


@dataclass(frozen=True)
class ConfigurationMatch:
    config_id: str
    bindings: tuple[tuple[str, int], ...]
    reduction: Reduction

    def __getitem__(self, role: str) -> int:
        for r, x in self.bindings:
            if r == role:
                return x
        raise KeyError(role)

    def as_dict(self) -> dict[str, int]:
        return dict(self.bindings)

    def sort_key(self):
        return (_RANK[self.config_id], tuple(x for _, x in self.bindings))

    def __str__(self) -> str:
        return f"{self.config_id} " + " ".join(f"{r}={x}" for r, x in self.bindings)


@dataclass(frozen=True)
class FaceLooseStats:
    face: int
    d: int
    x: int
    q: int

    @property
    def violation(self) -> bool:
        return self.x >= 1 and 2 * self.d - self.q - self.x < 9


# local predicates


def is_loose(G: PlaneGraph, e) -> bool:
    u, v = G.check_edge(e)
    return G.degree(u) + G.degree(v) <= 8


def small_sides(G: PlaneGraph, e) -> int:
    """Number of sides of ``e`` bounding an (<=4)-face, counted per side."""
    return sum(1 for f in G.side_faces(e) if G.face_degree(f) <= SMALL_FACE)


def is_tight(G: PlaneGraph, e) -> tuple[bool, int]:
    u, v = G.check_edge(e)
    s = small_sides(G, e)
    return G.degree(u) + G.degree(v) - s == 9, s


def on_small_face(G: PlaneGraph, u: int, v: int) -> bool:
    return G.has_edge(u, v) and small_sides(G, (u, v)) >= 1


def on_two_small_faces(G: PlaneGraph, u: int, v: int) -> bool:
    if not G.has_edge(u, v):
        return False
    f, g = G.side_faces((u, v))
    return f != g and G.face_degree(f) <= SMALL_FACE and G.face_degree(g) <= SMALL_FACE


def triangle_face(G: PlaneGraph, a: int, b: int, c: int) -> int | None:
    """Id of a triangular face with corners ``a, b, c``, if one exists."""
    if not (G.has_edge(a, b) and G.has_edge(b, c) and G.has_edge(a, c)):
        return None
    for f in sorted(set(G.side_faces((a, b)))):
        if G.face_degree(f) == 3 and set(G.face(f).vertices) == {a, b, c}:
            return f
    return None


def _is_triangle(G: PlaneGraph, f: int, verts: Iterable[int]) -> bool:
    return 0 <= f < G.num_faces and G.face_degree(f) == 3 and set(G.face(f).vertices) == set(verts)


def special_faces(G: PlaneGraph, v: int) -> list[tuple[int, int]]:
    """(>=5)-faces incident to a 2-neighbour of ``v``, with the number of
    times ``v`` itself lies on each."""
    if G.degree(v) < 7:
        raise DegreeTooLow(f"vertex {v} has degree {G.degree(v)} < 7")
    return sorted(special_face_counts(G, v).items())


def special_face_counts(G: PlaneGraph, v: int) -> dict[int, int]:
    twos = {w for w in G.neighbours(v) if G.degree(w) == 2}
    counts: dict[int, int] = {}
    if not twos:
        return counts
    for f, _, _ in G.corners(v):
        if G.face_degree(f) >= 5 and twos.intersection(G.face(f).vertices):
            counts[f] = counts.get(f, 0) + 1
    return counts


_EXCEPTIONAL = {(2, 3), (3, 2)}


def exceptional_corners(G: PlaneGraph, v: int) -> list[tuple[int, int]]:
    """``(face, position)`` for each corner of ``v`` on a 6-face whose two
    walk positions following ``v`` (or preceding it) hold a 2-vertex and a
    3-vertex, in either order."""
    out = []
    for f in sorted({c[0] for c in G.corners(v)}):
        walk = G.face(f).vertices
        if len(walk) != 6:
            continue
        for i, x in enumerate(walk):
            if x != v:
                continue
            fwd = (G.degree(walk[(i + 1) % 6]), G.degree(walk[(i + 2) % 6]))
            back = (G.degree(walk[(i - 1) % 6]), G.degree(walk[(i - 2) % 6]))
            if fwd in _EXCEPTIONAL or back in _EXCEPTIONAL:
                out.append((f, i))
    return out


def exceptional_faces(G: PlaneGraph, v: int) -> list[int]:
    if G.degree(v) < 6:
        raise DegreeTooLow(f"vertex {v} has degree {G.degree(v)} < 6")
    if G.degree(v) != 6:
        raise DegreeTooLow(f"vertex {v} has degree {G.degree(v)}; exceptional faces need degree 6")
    return [f for f, _ in exceptional_corners(G, v)]


def face_loose_stats(G: PlaneGraph, f: int) -> FaceLooseStats:
    walk = G.face(f)
    x = sum(1 for d in walk.darts if G.degree(d[0]) + G.degree(d[1]) <= 8)
    q = sum(1 for w in walk.vertices if G.degree(w) == 2)
    return FaceLooseStats(f, walk.degree, x, q)


def check_lemma_new(G: PlaneGraph, f: int) -> FaceLooseStats:
    """Loose-edge statistics of a (>=5)-face; ``violation`` marks reducibility."""
    if G.face_degree(f) < 5:
        raise FaceTooSmall(f"face {f} has degree {G.face_degree(f)} < 5")
    return face_loose_stats(G, f)


def check_lemma_newnew(G: PlaneGraph) -> list[ConfigurationMatch]:
    return sorted(_matches(G, "LNN"), key=ConfigurationMatch.sort_key)


# configuration catalogue

Bindings = dict[str, int]


def _deg(G, x):
    return G.degree(x)


def _triangles(G: PlaneGraph) -> Iterator[tuple[int, tuple[int, int, int]]]:
    for f in G.faces:
        if f.degree == 3:
            yield f.id, f.vertices


def _ordered_triangles(G):
    """(f, (a, b, c)) for every triangle and every ordering of its corners."""
    for f, verts in _triangles(G):
        for p in permutations(verts):
            yield f, p


# A


def _cand_A0(G):
    for v in G.vertices:
        if G.degree(v) == 1:
            yield {"v": v, "u": G.neighbours(v)[0]}


def _holds_A0(G, b):
    return G.has_edge(b["u"], b["v"]) and _deg(G, b["v"]) == 1


def _red_A0(G, b):
    return Reduction("remove_leaf", (edge_key(b["u"], b["v"]),), vertex=b["v"])


def _cand_A1(G):
    for f, verts in _triangles(G):
        for v in verts:
            if G.degree(v) == 2:
                u, w = sorted(x for x in verts if x != v)
                yield {"u": u, "v": v, "w": w, "f": f}


def _holds_A1(G, b):
    return _is_triangle(G, b["f"], (b["u"], b["v"], b["w"])) and _deg(G, b["v"]) == 2


def _red_A1(G, b):
    return Reduction("delete", (edge_key(b["u"], b["v"]),))


def _cand_A2(G):
    for f in G.faces:
        if f.degree != 4:
            continue
        walk = f.vertices
        for i, v in enumerate(walk):
            if G.degree(v) != 2:
                continue
            u, w, x = walk[(i - 1) % 4], walk[(i + 1) % 4], walk[(i + 2) % 4]
            if u > w:
                u, w = w, u
            yield {"u": u, "v": v, "w": w, "x": x, "f": f.id}


def _holds_A2(G, b):
    f = b["f"]
    if not (0 <= f < G.num_faces) or G.face_degree(f) != 4 or _deg(G, b["v"]) != 2:
        return False
    walk = G.face(f).vertices
    if b["v"] not in walk or {b["u"], b["w"], b["x"]} - set(walk):
        return False
    return any(_deg(G, y) <= 3 for y in set(walk) - {b["v"]})


def _red_A2(G, b):
    u, v, w, x = b["u"], b["v"], b["w"], b["x"]
    if x != v and _deg(G, x) <= 3 and u != w:
        return Reduction("delete", (edge_key(u, v),))
    low = u if _deg(G, u) <= 3 else w
    return Reduction("delete", (edge_key(low, v),))


def _cand_A3(G):
    for v in G.vertices:
        if G.degree(v) != 2:
            continue
        a, c = G.neighbours(v)
        for u, w in ((a, c), (c, a)):
            if G.degree(u) == 3 and G.degree(w) <= 5:
                yield {"u": u, "v": v, "w": w}


def _holds_A3(G, b):
    u, v, w = b["u"], b["v"], b["w"]
    return (_deg(G, v) == 2 and G.has_edge(u, v) and G.has_edge(v, w) and u != w
            and _deg(G, u) == 3 and _deg(G, w) <= 5)


def _red_A3(G, b):
    u, v, w = b["u"], b["v"], b["w"]
    if not G.has_edge(u, w):
        return Reduction("contract", (edge_key(u, v),), vertex=v, keep=u)
    return Reduction("redirect", (edge_key(u, v),))


# B


def _cand_B1(G):
    for u, v in G.edges:
        if G.degree(u) + G.degree(v) <= 9:
            small = sorted(f for f in set(G.side_faces((u, v))) if G.face_degree(f) <= SMALL_FACE)
            if small:
                yield {"u": u, "v": v, "f": small[0]}


def _holds_B1(G, b):
    u, v = b["u"], b["v"]
    return on_small_face(G, u, v) and _deg(G, u) + _deg(G, v) <= 9


def _del_uv(G, b):
    return Reduction("delete", (edge_key(b["u"], b["v"]),))


def _cand_tri_symmetric(G, wdeg: Callable[[int], bool]):
    for f, verts in _triangles(G):
        for w in verts:
            if wdeg(G.degree(w)):
                u, v = sorted(x for x in verts if x != w)
                yield {"u": u, "v": v, "w": w, "f": f}


def _cand_tri_ordered(G, wdeg: Callable[[int], bool]):
    for f, (u, v, w) in _ordered_triangles(G):
        if wdeg(G.degree(w)):
            yield {"u": u, "v": v, "w": w, "f": f}


def _tri_ok(G, b):
    return _is_triangle(G, b["f"], (b["u"], b["v"], b["w"]))


def _cand_B2(G):
    return _cand_tri_symmetric(G, lambda d: d == 6)


def _holds_B2(G, b):
    return _tri_ok(G, b) and _deg(G, b["u"]) + _deg(G, b["v"]) <= 10 and _deg(G, b["w"]) == 6


def _cand_B3(G):
    return _cand_tri_ordered(G, lambda d: d == 7)


def _holds_B3(G, b):
    u, v, w = b["u"], b["v"], b["w"]
    return (_tri_ok(G, b) and on_two_small_faces(G, u, w)
            and _deg(G, u) + _deg(G, v) <= 10 and _deg(G, w) == 7)


def _cand_B4(G):
    return _cand_tri_symmetric(G, lambda d: True)


def _holds_B4(G, b):
    u, v, w = b["u"], b["v"], b["w"]
    return (_tri_ok(G, b) and on_two_small_faces(G, u, w) and on_two_small_faces(G, v, w)
            and _deg(G, u) + _deg(G, v) <= 10)


# C


def _cand_C1(G):
    for u, v in G.edges:
        if G.degree(u) + G.degree(v) <= 10 and on_two_small_faces(G, u, v):
            f, g = sorted(G.side_faces((u, v)))
            yield {"u": u, "v": v, "f": f, "g": g}


def _holds_C1(G, b):
    u, v = b["u"], b["v"]
    return on_two_small_faces(G, u, v) and _deg(G, u) + _deg(G, v) <= 10


def _cand_C2(G):
    return _cand_tri_symmetric(G, lambda d: d == 6)


def _holds_C2(G, b):
    u, v, w = b["u"], b["v"], b["w"]
    return (_tri_ok(G, b) and on_two_small_faces(G, u, v)
            and _deg(G, u) + _deg(G, v) <= 11 and _deg(G, w) == 6)


def _cand_C3(G):
    return _cand_tri_ordered(G, lambda d: d == 7)


def _holds_C3(G, b):
    u, v, w = b["u"], b["v"], b["w"]
    return (_tri_ok(G, b) and on_two_small_faces(G, u, v) and on_two_small_faces(G, u, w)
            and _deg(G, u) + _deg(G, v) <= 11 and _deg(G, w) == 7)


def _cand_double_triangle(G):
    """Triangles uvw and vwx sharing the edge vw, with x != u."""
    for f, (u, v, w) in _ordered_triangles(G):
        for g in set(G.side_faces((v, w))):
            if g == f or G.face_degree(g) != 3:
                continue
            (x,) = set(G.face(g).vertices) - {v, w}
            if x != u:
                yield {"u": u, "v": v, "w": w, "x": x, "f": f, "g": g}


def _double_ok(G, b):
    u, v, w, x = b["u"], b["v"], b["w"], b["x"]
    return (len({u, v, w, x}) == 4 and _is_triangle(G, b["f"], (u, v, w))
            and _is_triangle(G, b["g"], (v, w, x)) and b["g"] in G.side_faces((v, w))
            and b["f"] in G.side_faces((v, w)) and on_two_small_faces(G, w, x))


def _holds_C4(G, b):
    return _double_ok(G, b) and _deg(G, b["u"]) == 3 and _deg(G, b["x"]) == 3


def _red_C4(G, b):
    return Reduction("delete", (edge_key(b["w"], b["x"]),))


def _holds_C5(G, b):
    u, v, x = b["u"], b["v"], b["x"]
    return _double_ok(G, b) and _deg(G, u) + _deg(G, v) <= 10 and _deg(G, v) + _deg(G, x) <= 11


# D


def _cand_two_path(G):
    """u - v - w with vwx a triangle face and u outside {w, x}."""
    for f, (v, w, x) in _ordered_triangles(G):
        for u in G.neighbours(v):
            if u not in (w, x):
                yield {"u": u, "v": v, "w": w, "x": x, "f": f}


def _path_ok(G, b):
    u, v, w, x = b["u"], b["v"], b["w"], b["x"]
    return len({u, v, w, x}) == 4 and G.has_edge(u, v) and _is_triangle(G, b["f"], (v, w, x))


def _holds_D1(G, b):
    u, v, w, x = b["u"], b["v"], b["w"], b["x"]
    return (_path_ok(G, b) and on_small_face(G, u, v) and on_two_small_faces(G, v, w)
            and on_two_small_faces(G, v, x)
            and _deg(G, u) + _deg(G, v) <= 10 and _deg(G, v) + _deg(G, w) <= 11)


def _holds_D2(G, b):
    u, v, w, x = b["u"], b["v"], b["w"], b["x"]
    return (_path_ok(G, b) and on_two_small_faces(G, u, v) and on_two_small_faces(G, v, w)
            and on_two_small_faces(G, v, x)
            and _deg(G, u) + _deg(G, v) <= 11 and _deg(G, v) + _deg(G, w) <= 11)


def _holds_D3(G, b):
    u, v, w, x = b["u"], b["v"], b["w"], b["x"]
    return (_path_ok(G, b) and on_two_small_faces(G, v, x)
            and _deg(G, u) == 2 and _deg(G, v) == 7 and _deg(G, w) == 3)


def _holds_D4(G, b):
    u, v, w, x = b["u"], b["v"], b["w"], b["x"]
    return (_path_ok(G, b) and on_two_small_faces(G, v, w) and on_two_small_faces(G, v, x)
            and _deg(G, u) == 2 and _deg(G, v) == 7 and _deg(G, w) == 4)


def _red_vw(G, b):
    return Reduction("delete", (edge_key(b["v"], b["w"]),))


# E


def _consecutive_fans(G, length: int):
    """Runs ``n_0..n_{length-1}`` of consecutive neighbours of ``z`` (in
    both rotational directions) where each consecutive pair spans a
    triangular face with ``z``."""
    for z in G.vertices:
        nbrs = G.neighbours(z)
        d = len(nbrs)
        if d < length:
            continue
        # tri[i]: corner between nbrs[i] and nbrs[i+1] is a triangle
        tri = [G.face_degree(G.face_of((nbrs[i], z))) == 3 for i in range(d)]
        for i in range(d):
            if all(tri[(i + j) % d] for j in range(length - 1)):
                run = [nbrs[(i + j) % d] for j in range(length)]
                yield z, run
                yield z, run[::-1]


def _cand_E12(G):
    for z, (u, v, w, x, y) in _consecutive_fans(G, 5):
        yield {"z": z, "u": u, "v": v, "w": w, "x": x, "y": y}


def _fan_ok(G, b):
    z = b["z"]
    path = [b["u"], b["v"], b["w"], b["x"], b["y"]]
    if len(set(path) | {z}) != 6:
        return False
    return all(
        G.has_edge(a, c) and triangle_face(G, a, c, z) is not None for a, c in zip(path, path[1:])
    )


def _holds_E1(G, b):
    return (_fan_ok(G, b) and on_two_small_faces(G, b["y"], b["z"])
            and _deg(G, b["v"]) == 3 and _deg(G, b["x"]) == 4)


def _holds_E2(G, b):
    return (_fan_ok(G, b) and _deg(G, b["v"]) == 3 and _deg(G, b["x"]) == 4
            and _deg(G, b["y"]) == 6)


def _red_E12(G, b):
    return Reduction("delete", (edge_key(b["z"], b["v"]),))


def _triangulated(G, v):
    return all(G.face_degree(f) == 3 for f, _, _ in G.corners(v))


def _cand_E3(G):
    for v in G.vertices:
        if G.degree(v) != 8 or not _triangulated(G, v):
            continue
        threes = [w for w in G.neighbours(v) if G.degree(w) == 3]
        fours = [w for w in G.neighbours(v) if G.degree(w) == 4]
        for a in sorted(threes):
            for c in sorted(fours):
                yield {"v": v, "a": a, "b": c}


def _holds_E3(G, b):
    v = b["v"]
    return (_deg(G, v) == 8 and _triangulated(G, v) and G.has_edge(v, b["a"])
            and G.has_edge(v, b["b"]) and _deg(G, b["a"]) == 3 and _deg(G, b["b"]) == 4)


def _red_E3(G, b):
    return Reduction("delete", (edge_key(b["v"], b["a"]),))


def _cand_E4(G):
    for w in G.vertices:
        if G.degree(w) != 2:
            continue
        a, c = G.neighbours(w)
        for v, x in ((a, c), (c, a)):
            if G.degree(v) != 6 or G.degree(x) != 3:
                continue
            for u in G.neighbours(v):
                if u not in (w, x) and G.degree(u) <= 5 and on_small_face(G, u, v):
                    yield {"u": u, "v": v, "w": w, "x": x}


def _holds_E4(G, b):
    u, v, w, x = b["u"], b["v"], b["w"], b["x"]
    return (len({u, v, w, x}) == 4 and G.has_edge(u, v) and G.has_edge(v, w) and G.has_edge(w, x)
            and on_small_face(G, u, v) and _deg(G, u) <= 5 and _deg(G, v) == 6
            and _deg(G, w) == 2 and _deg(G, x) == 3)


def _red_E4(G, b):
    v, w, x = b["v"], b["w"], b["x"]
    if not G.has_edge(v, x):
        return Reduction("contract", (edge_key(v, w),), vertex=w, keep=v)
    return Reduction("delete", (edge_key(b["u"], v),))


# loose-edge lemmas


def _cand_LN(G):
    for f in G.faces:
        if f.degree >= 5 and face_loose_stats(G, f.id).violation:
            yield {"f": f.id}


def _holds_LN(G, b):
    f = b["f"]
    return 0 <= f < G.num_faces and G.face_degree(f) >= 5 and face_loose_stats(G, f).violation


def _red_LN(G, b):
    f = b["f"]
    loose = sorted({edge_key(*d) for d in G.face(f).darts if G.degree(d[0]) + G.degree(d[1]) <= 8})
    return Reduction("delete_loose", tuple(loose), face=f)


def _other(G, v, u):
    a, c = G.neighbours(v)
    return c if a == u else a


def _cand_LNN(G):
    for u, v in G.edges:
        if G.degree(u) == 2 and G.degree(v) == 2:
            yield {"u": u, "v": v}


def _holds_LNN(G, b):
    u, v = b["u"], b["v"]
    if not (G.has_edge(u, v) and _deg(G, u) == 2 and _deg(G, v) == 2):
        return False
    up, vp = _other(G, u, v), _other(G, v, u)
    return not (up == vp and _deg(G, up) == 8)


def _red_LNN(G, b):
    u, v = b["u"], b["v"]
    up, vp = _other(G, u, v), _other(G, v, u)
    if up != vp:
        return Reduction("contract", (edge_key(u, v),), vertex=u, keep=v)
    return Reduction("redirect", (edge_key(u, v),))


@dataclass(frozen=True)
class _Entry:
    roles: tuple[str, ...]
    candidates: Callable[[PlaneGraph], Iterable[Bindings]]
    holds: Callable[[PlaneGraph, Bindings], bool]
    reduce: Callable[[PlaneGraph, Bindings], Reduction]


_UVWF = ("u", "v", "w", "f")
_DOUBLE = ("u", "v", "w", "x", "f", "g")
_PATH = ("u", "v", "w", "x", "f")
_FAN = ("z", "u", "v", "w", "x", "y")

CATALOGUE: dict[str, _Entry] = {
    "A0": _Entry(("v", "u"), _cand_A0, _holds_A0, _red_A0),
    "A1": _Entry(_UVWF, _cand_A1, _holds_A1, _red_A1),
    "A2": _Entry(("u", "v", "w", "x", "f"), _cand_A2, _holds_A2, _red_A2),
    "A3": _Entry(("u", "v", "w"), _cand_A3, _holds_A3, _red_A3),
    "B1": _Entry(("u", "v", "f"), _cand_B1, _holds_B1, _del_uv),
    "B2": _Entry(_UVWF, _cand_B2, _holds_B2, _del_uv),
    "B3": _Entry(_UVWF, _cand_B3, _holds_B3, _del_uv),
    "B4": _Entry(_UVWF, _cand_B4, _holds_B4, _del_uv),
    "C1": _Entry(("u", "v", "f", "g"), _cand_C1, _holds_C1, _del_uv),
    "C2": _Entry(_UVWF, _cand_C2, _holds_C2, _del_uv),
    "C3": _Entry(_UVWF, _cand_C3, _holds_C3, _del_uv),
    "C4": _Entry(_DOUBLE, _cand_double_triangle, _holds_C4, _red_C4),
    "C5": _Entry(_DOUBLE, _cand_double_triangle, _holds_C5, _del_uv),
    "D1": _Entry(_PATH, _cand_two_path, _holds_D1, _red_vw),
    "D2": _Entry(_PATH, _cand_two_path, _holds_D2, _red_vw),
    "D3": _Entry(_PATH, _cand_two_path, _holds_D3, _red_vw),
    "D4": _Entry(_PATH, _cand_two_path, _holds_D4, _red_vw),
    "E1": _Entry(_FAN, _cand_E12, _holds_E1, _red_E12),
    "E2": _Entry(_FAN, _cand_E12, _holds_E2, _red_E12),
    "E3": _Entry(("v", "a", "b"), _cand_E3, _holds_E3, _red_E3),
    "E4": _Entry(("u", "v", "w", "x"), _cand_E4, _holds_E4, _red_E4),
    "LN": _Entry(("f",), _cand_LN, _holds_LN, _red_LN),
    "LNN": _Entry(("u", "v"), _cand_LNN, _holds_LNN, _red_LNN),
}


def _make(G, cid, b) -> ConfigurationMatch:
    spec = CATALOGUE[cid]
    return ConfigurationMatch(cid, tuple((r, b[r]) for r in spec.roles), spec.reduce(G, b))


def _matches(G: PlaneGraph, cid: str) -> list[ConfigurationMatch]:
    spec = CATALOGUE[cid]
    seen = set()
    out = []
    for b in spec.candidates(G):
        key = tuple(b[r] for r in spec.roles)
        if key in seen or not spec.holds(G, b):
            continue
        seen.add(key)
        out.append(_make(G, cid, b))
    return out


def check_preconditions(G: PlaneGraph) -> None:
    if G.max_degree() > MAX_DEGREE:
        raise PreconditionViolated(f"maximum degree {G.max_degree()} exceeds {MAX_DEGREE}")
    if not G.is_connected():
        raise PreconditionViolated("graph is disconnected")


def detect(G: PlaneGraph, config_ids: Iterable[str]) -> list[ConfigurationMatch]:
    """Every occurrence of the given configurations in canonical order."""
    check_preconditions(G)
    out = []
    for cid in config_ids:
        if cid not in CATALOGUE:
            raise KeyError(f"unknown configuration {cid}")
        out.extend(_matches(G, cid))
    return sorted(out, key=ConfigurationMatch.sort_key)


def detect_all(G: PlaneGraph, family: str | None = None) -> list[ConfigurationMatch]:
    ids = CONFIG_IDS if family is None else FAMILIES[family]
    return detect(G, ids)


def first_match(G: PlaneGraph, priority: Iterable[str]) -> ConfigurationMatch | None:
    """Some match of the first configuration in ``priority`` that occurs.

    Stops at the first candidate that passes, so the match returned is
    deterministic but not necessarily the canonically smallest.
    """
    for cid in priority:
        spec = CATALOGUE[cid]
        for b in spec.candidates(G):
            if spec.holds(G, b):
                return _make(G, cid, b)
    return None


def check_match(G: PlaneGraph, m: ConfigurationMatch) -> bool:
    """Re-validate a match against its configuration predicate."""
    spec = CATALOGUE[m.config_id]
    b = m.as_dict()
    try:
        return set(b) == set(spec.roles) and spec.holds(G, b)
    except (KeyError, ValueError, IndexError):
        return False
