"""Combinatorial plane embeddings stored as rotation systems.

A :class:`PlaneGraph` keeps, for every vertex, the clockwise cyclic order of
its neighbours.  Darts are ordered vertex pairs ``(tail, head)`` and edges are
sorted pairs ``(u, v)`` with ``u < v``.  Faces are the orbits of the
face-successor permutation

    face_next((u, v)) = (v, w),  w = clockwise successor of u around v,

and receive canonical ids in the order in which a sweep over the darts,
sorted lexicographically, first meets them.  Graphs are immutable; every
surgery operation returns a new graph and re-checks all invariants.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .exceptions import (
    BridgeDeletion,
    InconsistentAdjacency,
    LoopOrMultiEdge,
    NonPlanarEmbedding,
    NotEligibleCutVertex,
    UnknownEdge,
    WouldCreateMultiEdge,
)

Dart = tuple[int, int]
Edge = tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class FacialWalk:
    """Closed boundary walk of one face."""

    id: int
    darts: tuple[Dart, ...]
    # vertices in walk order, one entry per corner
    vertices: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(d[0] for d in self.darts))

    @property
    def degree(self) -> int:
        return len(self.darts)


class PlaneGraph:
    """A simple graph together with a fixed plane embedding.

    Args:
        rotation: maps each vertex to its neighbours in clockwise order.

    Raises:
        InconsistentAdjacency: ``u`` lists ``v`` but not the other way round.
        LoopOrMultiEdge: a vertex lists itself or a neighbour twice.
        NonPlanarEmbedding: a connected component violates ``V - E + F = 2``.
    """

    def __init__(self, rotation: Mapping[int, Sequence[int]]):
        rot: dict[int, tuple[int, ...]] = {}
        for v, nbrs in rotation.items():
            v = int(v)
            nbrs = tuple(int(w) for w in nbrs)
            if v < 0:
                raise InconsistentAdjacency(f"negative vertex id {v}")
            if v in nbrs:
                raise LoopOrMultiEdge(f"loop at vertex {v}")
            if len(set(nbrs)) != len(nbrs):
                raise LoopOrMultiEdge(f"repeated neighbour at vertex {v}")
            rot[v] = nbrs
        index: dict[Dart, int] = {}
        for v, nbrs in rot.items():
            for i, w in enumerate(nbrs):
                if w not in rot:
                    raise InconsistentAdjacency(f"vertex {v} lists unknown vertex {w}")
                index[(v, w)] = i
        for (v, w) in index:
            if (w, v) not in index:
                raise InconsistentAdjacency(f"{v} lists {w} but {w} does not list {v}")
        self._rot = rot
        self._index = index
        self.vertices: tuple[int, ...] = tuple(sorted(rot))
        self.edges: tuple[Edge, ...] = tuple(sorted(d for d in index if d[0] < d[1]))
        self._trace()
        self._check_euler()

    # construction helpers

    def _trace(self) -> None:
        face_of: dict[Dart, int] = {}
        faces = []
        for start in sorted(self._index):
            if start in face_of:
                continue
            fid = len(faces)
            walk = []
            d = start
            while d not in face_of:
                face_of[d] = fid
                walk.append(d)
                d = self.face_next(d)
            faces.append(FacialWalk(fid, tuple(walk)))
        self.faces: tuple[FacialWalk, ...] = tuple(faces)
        self._face_of = face_of

    def _check_euler(self) -> None:
        for comp in self.components():
            if len(comp) == 1:
                continue
            n_edges = sum(len(self._rot[v]) for v in comp) // 2
            n_faces = len({self._face_of[(v, w)] for v in comp for w in self._rot[v]})
            if len(comp) - n_edges + n_faces != 2:
                raise NonPlanarEmbedding(
                    f"component with V={len(comp)}, E={n_edges}, F={n_faces} has positive genus"
                )

    # basic queries

    def __repr__(self) -> str:
        return f"PlaneGraph(V={self.num_vertices}, E={self.num_edges}, F={self.num_faces})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PlaneGraph) and self._canonical_rot() == other._canonical_rot()

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._canonical_rot().items())))

    def _canonical_rot(self) -> dict[int, tuple[int, ...]]:
        out = {}
        for v, nbrs in self._rot.items():
            if nbrs:
                i = nbrs.index(min(nbrs))
                nbrs = nbrs[i:] + nbrs[:i]
            out[v] = nbrs
        return out

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def num_faces(self) -> int:
        return len(self.faces)

    def rotation(self) -> dict[int, list[int]]:
        """Clockwise neighbour lists, each starting at its smallest neighbour."""
        return {v: list(n) for v, n in sorted(self._canonical_rot().items())}

    def neighbours(self, v: int) -> tuple[int, ...]:
        return self._rot[v]

    def degree(self, v: int) -> int:
        return len(self._rot[v])

    def max_degree(self) -> int:
        return max((len(n) for n in self._rot.values()), default=0)

    def min_degree(self) -> int:
        return min((len(n) for n in self._rot.values()), default=0)

    def has_vertex(self, v: int) -> bool:
        return v in self._rot

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._index

    def check_edge(self, e: Sequence[int]) -> Edge:
        u, v = e
        if (u, v) not in self._index:
            raise UnknownEdge(f"no edge {u}-{v}")
        return edge_key(u, v)

    def darts(self) -> list[Dart]:
        return sorted(self._index)

    def rot_next(self, d: Dart) -> Dart:
        """Next dart clockwise around the tail of ``d``."""
        u, v = d
        nbrs = self._rot[u]
        return (u, nbrs[(self._index[d] + 1) % len(nbrs)])

    def rot_prev(self, d: Dart) -> Dart:
        u, v = d
        nbrs = self._rot[u]
        return (u, nbrs[(self._index[d] - 1) % len(nbrs)])

    def face_next(self, d: Dart) -> Dart:
        u, v = d
        return (v, self._cw_after(v, u))

    def _cw_after(self, v: int, u: int) -> int:
        nbrs = self._rot[v]
        return nbrs[(self._index[(v, u)] + 1) % len(nbrs)]

    def face_of(self, d: Dart) -> int:
        return self._face_of[d]

    def face(self, fid: int) -> FacialWalk:
        return self.faces[fid]

    def face_degree(self, fid: int) -> int:
        return len(self.faces[fid].darts)

    def side_faces(self, e: Sequence[int]) -> tuple[int, int]:
        """Faces on the two sides of edge ``e``; equal for a bridge."""
        u, v = self.check_edge(e)
        return self._face_of[(u, v)], self._face_of[(v, u)]

    def corners(self, v: int) -> list[tuple[int, int, int]]:
        """Vertex-face incidences at ``v`` as ``(face, prev, next)`` triples.

        One triple per corner, in clockwise order of the outgoing dart; this
        is the dart-level multiplicity used by the discharging rules.
        """
        out = []
        for w in self._rot[v]:
            # the face entering v along (p, v) leaves along (v, w)
            p = self.rot_prev((v, w))[1]
            out.append((self._face_of[(p, v)], p, w))
        return out

    def face_edges(self, fid: int) -> list[Edge]:
        """Edges on the boundary of a face, one entry per boundary dart."""
        return [edge_key(*d) for d in self.faces[fid].darts]

    def adjacent_faces(self, fid: int) -> set[int]:
        """Faces sharing an edge with ``fid``, excluding ``fid`` itself."""
        out = {self._face_of[(v, u)] for (u, v) in self.faces[fid].darts}
        out.discard(fid)
        return out

    def components(self) -> list[list[int]]:
        seen: set[int] = set()
        comps = []
        for s in self.vertices:
            if s in seen:
                continue
            seen.add(s)
            comp = [s]
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in self._rot[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        queue.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return g


# operations


def build_from_rotations(adjacency: Mapping[int, Sequence[int]]) -> PlaneGraph:
    """Build a plane graph from clockwise neighbour lists."""
    return PlaneGraph(adjacency)


def trace_faces(G: PlaneGraph) -> list[FacialWalk]:
    return list(G.faces)


def is_bridge(G: PlaneGraph, e: Sequence[int]) -> bool:
    f, g = G.side_faces(e)
    return f == g


def _without_edges(G: PlaneGraph, edges: Iterable[Edge]) -> dict[int, list[int]]:
    rot = {v: list(n) for v, n in G._rot.items()}
    for u, v in edges:
        rot[u].remove(v)
        rot[v].remove(u)
    return rot


def delete_edge(G: PlaneGraph, e: Sequence[int]) -> PlaneGraph:
    """Remove a non-bridge edge; its two side faces merge into one."""
    e = G.check_edge(e)
    if is_bridge(G, e):
        raise BridgeDeletion(f"edge {e} is a bridge")
    H = PlaneGraph(_without_edges(G, [e]))
    assert H.num_faces == G.num_faces - 1
    return H


def delete_edges(G: PlaneGraph, edges: Iterable[Sequence[int]]) -> PlaneGraph:
    """Remove several edges at once; the result may be disconnected."""
    keys = sorted({G.check_edge(e) for e in edges})
    return PlaneGraph(_without_edges(G, keys))


def delete_vertex(G: PlaneGraph, v: int) -> PlaneGraph:
    if not G.has_vertex(v):
        raise KeyError(v)
    rot = {w: [x for x in n if x != v] for w, n in G._rot.items() if w != v}
    return PlaneGraph(rot)


@dataclass(frozen=True)
class EdgeSlot:
    """Where an edge sits in the rotations of its endpoints.

    ``after_u`` is the neighbour of ``u`` preceding ``v`` clockwise (``None``
    when ``u`` has no other neighbour) and symmetrically for ``after_v``.
    """

    u: int
    v: int
    after_u: int | None
    after_v: int | None


def edge_slot(G: PlaneGraph, e: Sequence[int]) -> EdgeSlot:
    u, v = G.check_edge(e)
    pu = G.rot_prev((u, v))[1]
    pv = G.rot_prev((v, u))[1]
    return EdgeSlot(u, v, None if pu == v else pu, None if pv == u else pv)


def insert_edge(G: PlaneGraph, slot: EdgeSlot) -> PlaneGraph:
    """Inverse of :func:`delete_edge` given the slot recorded before deletion."""
    if G.has_edge(slot.u, slot.v):
        raise WouldCreateMultiEdge(f"edge {slot.u}-{slot.v} already present")
    rot = {v: list(n) for v, n in G._rot.items()}
    for a, b, after in ((slot.u, slot.v, slot.after_u), (slot.v, slot.u, slot.after_v)):
        nbrs = rot.setdefault(a, [])
        if after is None:
            nbrs.append(b)
        else:
            nbrs.insert(nbrs.index(after) + 1, b)
    return PlaneGraph(rot)


def contract_edge(G: PlaneGraph, e: Sequence[int], keep: int | None = None) -> PlaneGraph:
    """Contract edge ``e``; the endpoint ``keep`` (default: smaller id) survives.

    The surviving vertex's rotation has the removed endpoint replaced by that
    endpoint's other neighbours, in their clockwise order.
    """
    u, v = G.check_edge(e)
    if keep is None:
        keep = u
    if keep not in (u, v):
        raise ValueError(f"{keep} is not an endpoint of {e}")
    gone = v if keep == u else u
    common = (set(G.neighbours(keep)) & set(G.neighbours(gone)))
    if common:
        raise WouldCreateMultiEdge(f"endpoints of {e} share neighbours {sorted(common)}")
    gone_nbrs = list(G.neighbours(gone))
    i = gone_nbrs.index(keep)
    spliced = gone_nbrs[i + 1:] + gone_nbrs[:i]
    rot: dict[int, list[int]] = {}
    for w, nbrs in G._rot.items():
        if w == gone:
            continue
        if w == keep:
            j = nbrs.index(gone)
            rot[w] = list(nbrs[:j]) + spliced + list(nbrs[j + 1:])
        else:
            rot[w] = [keep if x == gone else x for x in nbrs]
    return PlaneGraph(rot)


@dataclass(frozen=True)
class CutRecord:
    """Bookkeeping for re-gluing the two sides of a cut-vertex split.

    Attributes:
        vertex: the cut vertex.
        inner: neighbours of ``vertex`` inside the split-off component, in
            clockwise order (one or two of them).
        f1_dart: a dart of the first piece lying on its face that faces the
            second piece.
        f2_dart: a dart of the second piece lying on its face that faces the
            first piece.
    """

    vertex: int
    inner: tuple[int, ...]
    f1_dart: Dart
    f2_dart: Dart


def _block_order(G: PlaneGraph, v: int, inner: set[int]) -> tuple[int, ...] | None:
    """Return inner neighbours as a clockwise-consecutive pair, else None."""
    if len(inner) == 1:
        return tuple(inner)
    if len(inner) != 2:
        return None
    a, b = sorted(inner)
    if G.rot_next((v, a))[1] == b:
        return (a, b)
    if G.rot_next((v, b))[1] == a:
        return (b, a)
    return None


def split_at_cut_vertex(G: PlaneGraph, v: int, C: Iterable[int]) -> tuple[PlaneGraph, PlaneGraph, CutRecord]:
    """Split off the component ``C`` of ``G - v`` together with ``v``.

    ``C`` must attach to ``v`` through at most two clockwise-consecutive
    neighbours.  Returns ``(G1, G2, record)`` where ``G1`` is spanned by
    ``C + {v}`` and ``G2`` by the remaining vertices.
    """
    C = set(C)
    if v in C or not C:
        raise NotEligibleCutVertex("component must be non-empty and exclude the cut vertex")
    inner = {w for w in G.neighbours(v) if w in C}
    outer = [w for w in G.neighbours(v) if w not in C]
    if not inner or not outer:
        raise NotEligibleCutVertex(f"{v} does not separate the given component")
    # C must be a union of whole components of G - v; check it is closed
    for x in C:
        for y in G.neighbours(x):
            if y != v and y not in C:
                raise NotEligibleCutVertex("given vertex set is not a component of G - v")
    order = _block_order(G, v, inner)
    if order is None:
        raise NotEligibleCutVertex(f"component attaches to {v} at non-consecutive neighbours")
    rot1 = {x: list(G.neighbours(x)) for x in C}
    rot1[v] = [w for w in G.neighbours(v) if w in C]
    rot2 = {x: list(G.neighbours(x)) for x in G.vertices if x not in C and x != v}
    rot2[v] = outer
    G1 = PlaneGraph(rot1)
    G2 = PlaneGraph(rot2)
    last_inner = order[-1]
    first_inner = order[0]
    g_last = G.rot_prev((v, first_inner))[1]
    record = CutRecord(vertex=v, inner=order, f1_dart=(last_inner, v), f2_dart=(g_last, v))
    return G1, G2, record


def eligible_cut_vertices(G: PlaneGraph) -> list[tuple[int, list[int]]]:
    """All ``(v, C)`` with ``C`` a component of ``G - v`` attached to ``v``
    through at most two clockwise-consecutive neighbours."""
    out = []
    if G.num_edges == 0:
        return out
    nxg = G.to_networkx()
    for v in sorted(nx.articulation_points(nxg)):
        rest = nxg.subgraph([x for x in G.vertices if x != v])
        for comp in sorted((sorted(c) for c in nx.connected_components(rest))):
            inner = {w for w in G.neighbours(v) if w in set(comp)}
            if _block_order(G, v, inner) is not None:
                out.append((v, comp))
    return out
