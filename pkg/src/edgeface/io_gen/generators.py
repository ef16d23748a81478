"""Seeded generators of plane graphs.

All randomness comes from :class:`random.Random` (Mersenne Twister), so a
given seed produces the same graph on every platform and Python version.
"""

from __future__ import annotations

import math
import random
from itertools import combinations, product

from ..embed import PlaneGraph, build_from_rotations, delete_edge, is_bridge
from ..exceptions import EdgeFaceError

KINDS = ("tree", "star", "cycle", "platonic", "triangulation", "subgraph")
PLATONIC = ("tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron")


class InfeasibleParameters(EdgeFaceError, ValueError):
    pass


def star(n: int, max_degree: int = 8) -> PlaneGraph:
    if n < 2:
        raise InfeasibleParameters("a star needs at least 2 vertices")
    if n - 1 > max_degree:
        raise InfeasibleParameters(f"star on {n} vertices has centre degree {n - 1} > {max_degree}")
    rot = {0: list(range(1, n))}
    rot.update({i: [0] for i in range(1, n)})
    return build_from_rotations(rot)


def cycle(n: int) -> PlaneGraph:
    if n < 3:
        raise InfeasibleParameters("a cycle needs at least 3 vertices")
    return build_from_rotations({i: [(i + 1) % n, (i - 1) % n] for i in range(n)})


def tree(n: int, max_degree: int = 8, seed: int = 0) -> PlaneGraph:
    if n < 1:
        raise InfeasibleParameters("a tree needs at least 1 vertex")
    if max_degree < 2 and n > 2:
        raise InfeasibleParameters("trees on more than 2 vertices need max degree >= 2")
    rng = random.Random(seed)
    rot: dict[int, list[int]] = {0: []}
    for v in range(1, n):
        parent = rng.choice([u for u in rot if len(rot[u]) < max_degree])
        rot[parent].insert(rng.randrange(len(rot[parent]) + 1), v)
        rot[v] = [parent]
    return build_from_rotations(rot)


# platonic solids


def _platonic_points(name: str) -> list[tuple[float, float, float]]:
    phi = (1 + math.sqrt(5)) / 2
    if name == "tetrahedron":
        return [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
    if name == "cube":
        return list(product((-1, 1), repeat=3))
    if name == "octahedron":
        return [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    if name == "icosahedron":
        pts = []
        for a, b in product((-1, 1), repeat=2):
            pts += [(0, a, b * phi), (a, b * phi, 0), (b * phi, 0, a)]
        return pts
    if name == "dodecahedron":
        pts = list(product((-1, 1), repeat=3))
        for a, b in product((-1, 1), repeat=2):
            pts += [(0, a / phi, b * phi), (a / phi, b * phi, 0), (b * phi, 0, a / phi)]
        return pts
    raise InfeasibleParameters(f"unknown platonic solid {name!r}; choose from {', '.join(PLATONIC)}")


def _sub(p, q):
    return (p[0] - q[0], p[1] - q[1], p[2] - q[2])


def _dot(p, q):
    return p[0] * q[0] + p[1] * q[1] + p[2] * q[2]


def _cross(p, q):
    return (p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0])


def platonic(name: str) -> PlaneGraph:
    """Skeleton of a platonic solid, embedded as seen from outside."""
    pts = sorted(_platonic_points(name))
    dist = {(i, j): _dot(_sub(pts[i], pts[j]), _sub(pts[i], pts[j])) for i, j in combinations(range(len(pts)), 2)}
    shortest = min(dist.values())
    nbrs = {i: [] for i in range(len(pts))}
    for (i, j), d in dist.items():
        if abs(d - shortest) < 1e-9:
            nbrs[i].append(j)
            nbrs[j].append(i)
    rot = {}
    for i, p in enumerate(pts):
        # tangent frame at p with e1 x e2 pointing outwards
        ref = _sub(pts[nbrs[i][0]], p)
        e1 = _sub(ref, tuple(_dot(ref, p) / _dot(p, p) * c for c in p))
        e2 = _cross(p, e1)

        def angle(j):
            d = _sub(pts[j], p)
            return math.atan2(_dot(d, e2), _dot(d, e1))

        # decreasing angle = clockwise when viewed from outside
        rot[i] = sorted(nbrs[i], key=angle, reverse=True)
    return build_from_rotations(rot)


# triangulations


def _insert_in_face(rot: dict[int, list[int]], a: int, b: int, c: int, x: int) -> None:
    """Put a new vertex ``x`` inside the face whose walk is a -> b -> c."""
    for p, q in ((a, c), (b, a), (c, b)):
        # at vertex p, the face's successor is clockwise right after q
        r = rot[p]
        r.insert(r.index(q) + 1, x)
    rot[x] = [c, b, a]


def _faces_of(rot: dict[int, list[int]]) -> list[tuple[int, ...]]:
    seen = set()
    faces = []
    for u in sorted(rot):
        for v in rot[u]:
            if (u, v) in seen:
                continue
            walk = []
            d = (u, v)
            while d not in seen:
                seen.add(d)
                walk.append(d[0])
                t, h = d
                r = rot[h]
                d = (h, r[(r.index(t) + 1) % len(r)])
            faces.append(tuple(walk))
    return faces


def _try_flip(rot: dict[int, list[int]], a: int, b: int, cap: int) -> bool:
    """Flip the edge ab of a triangulation if it keeps the graph simple and
    within the degree cap."""
    ra, rb = rot[a], rot[b]
    if len(ra) <= 3 or len(rb) <= 3:
        return False
    # third corners of the faces on either side of ab
    c = rb[(rb.index(a) + 1) % len(rb)]  # face a -> b -> c
    d = ra[(ra.index(b) + 1) % len(ra)]  # face b -> a -> d
    if c == d or d in rot[c] or len(rot[c]) >= cap or len(rot[d]) >= cap:
        return False
    rc, rd = rot[c], rot[d]
    if rc[(rc.index(b) + 1) % len(rc)] != a or rd[(rd.index(a) + 1) % len(rd)] != b:
        return False
    ra.remove(b)
    rb.remove(a)
    # in face a -> b -> c, c sees a right after b; d goes between them
    rc.insert(rc.index(b) + 1, d)
    # in face b -> a -> d, d sees b right after a; c goes between them
    rd.insert(rd.index(a) + 1, c)
    return True


def triangulation(n: int, max_degree: int = 8, seed: int = 0, flips: int | None = None) -> PlaneGraph:
    """Random plane triangulation on ``n`` vertices with degrees capped.

    Starts from a triangle and repeatedly inserts a vertex into a random
    face all of whose corners are below the cap; random edge flips mix the
    result.  Attempts that get stuck are restarted from a derived seed.
    """
    if n < 3:
        raise InfeasibleParameters("a triangulation needs at least 3 vertices")
    if max_degree < 3 and n > 3:
        raise InfeasibleParameters("triangulations on more than 3 vertices need max degree >= 3")
    rng = random.Random(seed)
    for _ in range(100):
        rot = _grow(n, max_degree, rng, n if flips is None else flips)
        if rot is not None:
            return build_from_rotations(rot)
    raise InfeasibleParameters(f"could not build a triangulation on {n} vertices with max degree {max_degree}")


def _grow(n, cap, rng, flips):
    rot = {0: [1, 2], 1: [2, 0], 2: [0, 1]}
    for x in range(3, n):
        faces = [f for f in _faces_of(rot) if all(len(rot[v]) < cap for v in f)]
        if not faces:
            return None
        a, b, c = rng.choice(faces)
        _insert_in_face(rot, a, b, c, x)
        for _ in range(flips // max(n, 1) + 1):
            u = rng.randrange(x + 1)
            _try_flip(rot, u, rng.choice(rot[u]), cap)
    return rot


def subgraph(n: int, max_degree: int = 8, seed: int = 0, keep: float | None = None) -> PlaneGraph:
    """Random connected spanning subgraph of a random triangulation.

    ``keep`` is the expected fraction of non-tree edges retained; by default
    it is itself drawn at random so that sparse and dense outputs both occur.
    """
    rng = random.Random(seed)
    if n < 3:
        return tree(n, max_degree, rng.randrange(2**31))
    G = triangulation(n, max_degree, rng.randrange(2**31))
    if keep is None:
        keep = rng.random()
    edges = list(G.edges)
    rng.shuffle(edges)
    for e in edges:
        if rng.random() < keep or not G.has_edge(*e) or is_bridge(G, e):
            continue
        G = delete_edge(G, e)
    return G


def generate(kind: str, n: int = 0, max_degree: int = 8, seed: int = 0, name: str | None = None) -> PlaneGraph:
    if kind == "tree":
        return tree(n, max_degree, seed)
    if kind == "star":
        return star(n, max_degree)
    if kind == "cycle":
        return cycle(n)
    if kind == "platonic":
        return platonic(name or "tetrahedron")
    if kind == "triangulation":
        return triangulation(n, max_degree, seed)
    if kind == "subgraph":
        return subgraph(n, max_degree, seed)
    raise InfeasibleParameters(f"unknown kind {kind!r}; choose from {', '.join(KINDS)}")
