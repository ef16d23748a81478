"""Exhaustive enumeration of small connected plane graphs.

Abstract graphs come from the networkx graph atlas (one representative per
isomorphism class).  For each, every rotation system is tried and the genus-0
ones are kept.  Embeddings are identified when an orientation-preserving
relabelling maps one onto the other; mirror images count as distinct.
"""

from __future__ import annotations

from itertools import permutations, product
from typing import Iterator

import networkx as nx

from ..embed import PlaneGraph, build_from_rotations

MAX_VERTICES = 6


def _cyclic_orders(items: list[int]) -> list[tuple[int, ...]]:
    if len(items) <= 2:
        return [tuple(items)]
    first, rest = items[0], items[1:]
    return [(first,) + p for p in permutations(rest)]


def _num_faces(rot: dict[int, tuple[int, ...]]) -> int:
    pos = {v: {w: i for i, w in enumerate(r)} for v, r in rot.items()}
    seen = set()
    faces = 0
    for u, r in rot.items():
        for v in r:
            if (u, v) in seen:
                continue
            faces += 1
            d = (u, v)
            while d not in seen:
                seen.add(d)
                t, h = d
                rh = rot[h]
                d = (h, rh[(pos[h][t] + 1) % len(rh)])
    return faces


def canonical_code(rot: dict[int, tuple[int, ...]]) -> tuple[tuple[int, ...], dict[int, int]]:
    """Smallest breadth-first relabelling code over all starting darts.

    From a starting dart ``(u, v)`` vertices are numbered in discovery
    order; each vertex's rotation is read clockwise starting at the
    neighbour it was discovered from (at ``v`` for the root).
    """
    best = None
    best_map: dict[int, int] = {}
    for root in rot:
        for start in rot[root] or (None,):
            label = {root: 0}
            entry = {root: start}
            queue = [root]
            code: list[int] = []
            i = 0
            while i < len(queue):
                x = queue[i]
                i += 1
                r = rot[x]
                k = r.index(entry[x]) if r else 0
                for w in r[k:] + r[:k]:
                    if w not in label:
                        label[w] = len(label)
                        entry[w] = x
                        queue.append(w)
                    code.append(label[w])
                code.append(-1)
            key = tuple(code)
            if best is None or key < best:
                best, best_map = key, label
    return best, best_map


def embeddings(g: nx.Graph) -> Iterator[dict[int, tuple[int, ...]]]:
    """Every genus-0 rotation system of a connected graph."""
    nodes = sorted(g)
    choices = [_cyclic_orders(sorted(g[v])) for v in nodes]
    V, E = g.number_of_nodes(), g.number_of_edges()
    for combo in product(*choices):
        rot = dict(zip(nodes, combo))
        if V - E + _num_faces(rot) == 2:
            yield rot


def enumerate_small(max_vertices: int, min_vertices: int = 2) -> Iterator[PlaneGraph]:
    """All connected simple plane graphs on ``min_vertices..max_vertices``
    vertices, one per embedding class, in canonical-code order per vertex
    count."""
    if max_vertices > MAX_VERTICES:
        raise ValueError(f"enumeration is limited to {MAX_VERTICES} vertices")
    by_size: dict[int, dict[tuple, dict[int, list[int]]]] = {}
    for g in nx.graph_atlas_g():
        n = g.number_of_nodes()
        if n < min_vertices or n > max_vertices or not nx.is_connected(g):
            continue
        if n >= 3 and g.number_of_edges() > 3 * n - 6:
            continue
        found = by_size.setdefault(n, {})
        for rot in embeddings(g):
            code, label = canonical_code(rot)
            if code not in found:
                found[code] = {label[v]: [label[w] for w in r] for v, r in rot.items()}
    for n in sorted(by_size):
        for code in sorted(by_size[n]):
            yield build_from_rotations(by_size[n][code])
