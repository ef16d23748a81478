"""Constructive edge-face 9-colouring of plane graphs with maximum degree 8.

The solver repeatedly shrinks the graph and then undoes the shrinking:

* a pendant vertex is removed (A0);
* a cut vertex whose split-off side hangs on one or two consecutive
  neighbours is split into two smaller plane graphs, coloured separately
  and glued back by permuting colours;
* otherwise a reducible configuration is located and its edge(s) deleted or
  its 2-vertex contracted.

On the way back up, the child colouring is lifted to the parent by following
darts, every (<=4)-face is uncoloured, and the few missing elements are
filled in: greedily if possible, then by the configuration's recolouring
script, then by generic shift moves, and finally by an exhaustive local
search around the reinserted material.  Small faces are completed last.
"""

from __future__ import annotations

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .colouring import (
    NUM_COLOURS,
    SMALL_FACE,
    EdgeFaceColouring,
    Element,
    greedy_complete,
    is_face,
    neighbourhood,
    smallest_free,
    solve_constraints,
    validate,
)
from .configs import CATALOGUE, ConfigurationMatch, Reduction, check_preconditions
from .embed import (
    Dart,
    Edge,
    PlaneGraph,
    contract_edge,
    delete_edges,
    delete_vertex,
    edge_key,
    eligible_cut_vertices,
    is_bridge,
    split_at_cut_vertex,
)
from .exceptions import (
    InternalExtensionFailure,
    ScriptBlocked,
    SurgeryPreconditionFailed,
    WouldCreateMultiEdge,
)

log = logging.getLogger(__name__)

PRIORITY = (
    "LNN", "A3", "A1", "A2", "B1", "C1", "LN",
    "B2", "B3", "B4", "C2", "C3", "C4", "C5",
    "D1", "D2", "D3", "D4", "E1", "E2", "E3", "E4",
)

FALLBACK_RADII = (1, 2, 3, 4)
FALLBACK_BUDGET = 200_000


# bookkeeping


@dataclass
class SolverStats:
    """Per-class outcome counters.

    ``outcomes[cls][how]`` counts extensions of class ``cls`` (a
    configuration id, ``"cut"`` or ``"none"``) completed by ``how``, one of
    ``"lift"``, ``"greedy"``, ``"script"``, ``"shift"`` or ``"fallback"``.
    """

    outcomes: dict[str, Counter] = field(default_factory=lambda: defaultdict(Counter))
    blocked: list[tuple[str, str]] = field(default_factory=list)
    missing_configuration: int = 0

    def record(self, cls: str, how: str) -> None:
        self.outcomes[cls][how] += 1

    def merge(self, other: "SolverStats") -> None:
        for cls, c in other.outcomes.items():
            self.outcomes[cls].update(c)
        self.blocked.extend(other.blocked)
        self.missing_configuration += other.missing_configuration

    def fallback_count(self) -> int:
        return sum(c["fallback"] for c in self.outcomes.values())

    def summary(self) -> str:
        lines = []
        for cls in sorted(self.outcomes):
            parts = " ".join(f"{k}={v}" for k, v in sorted(self.outcomes[cls].items()))
            lines.append(f"{cls}: {parts}")
        return "\n".join(lines)


@dataclass
class ReductionStep:
    """One shrinking step and what is needed to lift a colouring back.

    ``children`` are the smaller plane graphs.  ``dart_map`` sends a dart of
    the parent to ``(child index, child dart)``, or to ``None`` when the dart
    disappeared.  ``face_anchor`` lists, per child, a child dart whose face
    must receive colour 1 after normalising (used when the pieces of one
    parent face are spread over several children).  For a cut, the edges at
    the cut vertex on either side are kept in ``cut_inner`` and ``cut_outer``.
    """

    kind: str  # "leaf", "cut", "delete" or "contract"
    config_id: str
    match: ConfigurationMatch | None
    children: list[PlaneGraph]
    dart_map: Callable[[Dart], tuple[int, Dart] | None]
    pending: list[Element] = field(default_factory=list)
    face_anchor: list[Dart | None] = field(default_factory=list)
    cut_inner: tuple[Edge, ...] = ()
    cut_outer: tuple[Edge, ...] = ()


# reductions


def _identity_map(children: list[PlaneGraph]):
    owner: dict[Dart, int] = {}
    for i, H in enumerate(children):
        for d in H.darts():
            owner[d] = i

    def fmap(d: Dart):
        i = owner.get(d)
        return None if i is None else (i, d)

    return fmap


def _split_components(H: PlaneGraph) -> list[PlaneGraph]:
    comps = H.components()
    if len(comps) == 1:
        return [H] if H.num_edges else []
    rot = H.rotation()
    out = []
    for comp in comps:
        if len(comp) == 1 and not rot[comp[0]]:
            continue  # isolated vertex: nothing to colour
        out.append(PlaneGraph({v: rot[v] for v in comp}))
    return out


def decompose(G: PlaneGraph) -> ReductionStep | None:
    """Split at the first eligible cut vertex, or ``None`` if there is none."""
    cands = eligible_cut_vertices(G)
    if not cands:
        return None
    v, comp = cands[0]
    G1, G2, rec = split_at_cut_vertex(G, v, comp)
    inner = tuple(edge_key(v, w) for w in rec.inner)
    outer = tuple(edge_key(v, w) for w in G2.neighbours(v))
    return ReductionStep(
        "cut", "cut", None, [G1, G2], _identity_map([G1, G2]),
        face_anchor=[rec.f1_dart, rec.f2_dart], cut_inner=inner, cut_outer=outer,
    )


def _leaf_step(G: PlaneGraph, v: int, match: ConfigurationMatch | None) -> ReductionStep:
    (u,) = G.neighbours(v)
    H = delete_vertex(G, v)
    children = [H] if H.num_edges else []
    return ReductionStep("leaf", "A0", match, children, _identity_map(children), pending=[edge_key(u, v)])


def _all_leaves_step(G: PlaneGraph) -> ReductionStep | None:
    """Remove every pendant vertex at once (one endpoint of an isolated edge).

    Each pendant edge sees at most seven other edges and one face, so the
    greedy pass always re-colours all of them.
    """
    leaves: set[int] = set()
    for v in G.vertices:
        if G.degree(v) == 1 and G.neighbours(v)[0] not in leaves:
            leaves.add(v)
    if not leaves:
        return None
    if len(leaves) == 1:
        return _leaf_step(G, next(iter(leaves)), None)
    rot = {w: [x for x in G.neighbours(w) if x not in leaves] for w in G.vertices if w not in leaves}
    H = PlaneGraph(rot)
    children = [H] if H.num_edges else []
    pending = sorted(edge_key(v, G.neighbours(v)[0]) for v in leaves)
    return ReductionStep("leaf", "A0", None, children, _identity_map(children), pending=pending)


def reduce(G: PlaneGraph, match: ConfigurationMatch) -> ReductionStep:
    """Apply the surgery named by ``match.reduction``."""
    red: Reduction = match.reduction
    if red.kind == "remove_leaf":
        return _leaf_step(G, red.vertex, match)
    if red.kind == "contract":
        gone, keep = red.vertex, red.keep
        try:
            H = contract_edge(G, (gone, keep), keep=keep)
        except WouldCreateMultiEdge as exc:
            raise SurgeryPreconditionFailed(str(exc)) from exc

        def fmap(d: Dart):
            a, b = d
            if {a, b} == {gone, keep}:
                return None
            if a == gone:
                return (0, (keep, b))
            if b == gone:
                return (0, (a, keep))
            return (0, d)

        return ReductionStep("contract", match.config_id, match, [H], fmap, pending=[edge_key(gone, keep)])
    # deletions
    edges = list(red.edges)
    for e in edges:
        if red.kind != "delete_loose" and is_bridge(G, e):
            raise SurgeryPreconditionFailed(f"edge {e} is a bridge")
    H = delete_edges(G, edges)
    children = _split_components(H)
    pending: list[Element] = []
    if red.kind == "delete_loose":
        pending.append(red.face)
    pending += edges
    step = ReductionStep("delete", match.config_id, match, children, _identity_map(children), pending=pending)
    if len(children) > 1:
        step.face_anchor = _merged_face_anchors(G, edges, children)
    return step


def _merged_face_anchors(G: PlaneGraph, edges: list[Edge], children: list[PlaneGraph]) -> list[Dart | None]:
    """Per child, a dart on the face that the deleted edges opened up.

    At an endpoint ``x`` of a deleted edge ``xy``, the first surviving
    neighbour ``s`` clockwise after ``y`` gives the dart ``(x, s)``, which
    leaves ``x`` through the corner where ``xy`` used to be.
    """
    gone = set(edges)
    anchors: list[Dart | None] = [None] * len(children)
    owner = {v: i for i, c in enumerate(children) for v in c.vertices}
    for x, y in sorted(d for e in edges for d in (e, e[::-1])):
        i = owner.get(x)
        if i is None or anchors[i] is not None:
            continue
        d = (x, y)
        for _ in range(G.degree(x)):
            d = G.rot_next(d)
            if edge_key(*d) not in gone:
                anchors[i] = d
                break
    return anchors


# lifting


def _permutation(fixed: dict[int, int]) -> dict[int, int]:
    """Extend a partial injective colour map to a permutation of 1..9."""
    used = set(fixed.values())
    free_targets = [c for c in range(1, NUM_COLOURS + 1) if c not in used]
    perm = dict(fixed)
    for c in range(1, NUM_COLOURS + 1):
        if c not in perm:
            perm[c] = free_targets.pop(0)
    return perm


def _recolour(lam: EdgeFaceColouring, perm: dict[int, int]) -> EdgeFaceColouring:
    return EdgeFaceColouring(
        {e: perm[c] for e, c in lam.edges.items()}, {f: perm[c] for f, c in lam.faces.items()}
    )


def _normalise_children(step: ReductionStep, results: list[EdgeFaceColouring]) -> list[EdgeFaceColouring]:
    if step.kind == "cut":
        G1, G2 = step.children
        l1, l2 = results
        f1 = G1.face_of(step.face_anchor[0])
        f2 = G2.face_of(step.face_anchor[1])
        m1 = {l1.faces[f1]: 1}
        for e, target in zip(step.cut_inner, (9, 8)):
            m1[l1.edges[e]] = target
        m2 = {l2.faces[f2]: 1}
        targets = [c for c in range(2, NUM_COLOURS + 1) if c not in set(m1.values())]
        for e in step.cut_outer:
            c = l2.edges[e]
            if c not in m2:
                m2[c] = targets.pop(0)
        return [_recolour(l1, _permutation(m1)), _recolour(l2, _permutation(m2))]
    if step.face_anchor:
        out = []
        for H, lam, d in zip(step.children, results, step.face_anchor):
            if d is None:
                out.append(lam)
                continue
            f = H.face_of(d)
            out.append(_recolour(lam, _permutation({lam.faces[f]: 1})))
        return out
    return results


def lift(G: PlaneGraph, step: ReductionStep, results: list[EdgeFaceColouring]) -> EdgeFaceColouring:
    """Carry child colourings over to ``G``; small faces are left open."""
    results = _normalise_children(step, results)
    lam = EdgeFaceColouring()
    for e in G.edges:
        img = step.dart_map(e)
        if img is not None:
            i, d = img
            c = results[i].edges.get(edge_key(*d))
            if c is not None:
                lam.edges[e] = c
    for f in G.faces:
        if f.degree <= SMALL_FACE:
            continue
        seen = set()
        for d in f.darts:
            img = step.dart_map(d)
            if img is not None:
                i, cd = img
                seen.add(results[i].faces.get(step.children[i].face_of(cd)))
        if len(seen) == 1 and None not in seen:
            lam.faces[f.id] = seen.pop()
    for x in step.pending:
        lam.set(x, None)
    return lam


def _repair_conflicts(G: PlaneGraph, lam: EdgeFaceColouring, step: ReductionStep) -> list[Element]:
    """Uncolour faces left in conflict by lifting; returns them.

    Only faces that merged on the way down can clash, and each of those is
    a side face of a reinserted edge, so the check stays local.
    """
    suspects = sorted({f for e in step.pending if not is_face(e) for f in G.side_faces(e)})
    freed: list[Element] = []
    for f in suspects:
        c = lam.faces.get(f)
        if c is not None and any(lam.get(y) == c for y in neighbourhood(G, f)):
            del lam.faces[f]
            freed.append(f)
    return freed


# extension


def _locally_valid(G: PlaneGraph, lam: EdgeFaceColouring, touched: Iterable[Element]) -> bool:
    for x in touched:
        c = lam.get(x)
        if c is None:
            continue
        if not 1 <= c <= NUM_COLOURS:
            return False
        for y in neighbourhood(G, x):
            if lam.get(y) == c:
                return False
    return True


def _open_elements(G: PlaneGraph, lam: EdgeFaceColouring) -> list[Element]:
    """Uncoloured edges and (>=5)-faces, faces first."""
    faces = [f.id for f in G.faces if f.degree > SMALL_FACE and f.id not in lam.faces]
    edges = [e for e in G.edges if e not in lam.edges]
    return faces + edges


def _greedy(G: PlaneGraph, lam: EdgeFaceColouring, order: list[Element]) -> bool:
    for x in order:
        if lam.get(x) is not None:
            continue
        c = smallest_free(G, lam, x)
        if c is None:
            return False
        lam.set(x, c)
    return True


Move = tuple


def run_script(G: PlaneGraph, lam: EdgeFaceColouring, moves: list[Move]) -> EdgeFaceColouring | None:
    """Execute recolouring moves on a copy of ``lam``.

    Moves: ``("with", x, y)`` gives ``x`` the current colour of ``y``;
    ``("free", x)`` recolours ``x`` with its smallest free colour;
    ``("swap", x, y)`` exchanges two colours; ``("uncolour", x)``;
    ``("greedy", (x, ...))`` colours the listed elements in order.  A script
    succeeds when every edge and (>=5)-face ends coloured and every touched
    element is in conflict with nothing.
    """
    out = lam.copy()
    touched: set[Element] = set()
    for mv in moves:
        op = mv[0]
        if op == "with":
            c = out.get(mv[2])
            if c is None:
                return None
            out.set(mv[1], c)
            touched.add(mv[1])
        elif op == "free":
            x = mv[1]
            out.set(x, None)
            c = smallest_free(G, out, x)
            if c is None:
                return None
            out.set(x, c)
            touched.add(x)
        elif op == "swap":
            a, b = mv[1], mv[2]
            ca, cb = out.get(a), out.get(b)
            if ca is None or cb is None:
                return None
            out.set(a, cb)
            out.set(b, ca)
            touched.update((a, b))
        elif op == "uncolour":
            out.set(mv[1], None)
        elif op == "greedy":
            for x in mv[1]:
                if out.get(x) is None:
                    c = smallest_free(G, out, x)
                    if c is None:
                        return None
                    out.set(x, c)
                    touched.add(x)
        else:
            raise ValueError(f"unknown move {op!r}")
    rest = _open_elements(G, out)
    if not _greedy(G, out, rest):
        return None
    touched.update(rest)
    if _open_elements(G, out) or not _locally_valid(G, out, touched):
        return None
    return out


def _other_face(G: PlaneGraph, e: Edge, f: int) -> int:
    a, b = G.side_faces(e)
    return b if a == f else a


def _third(G: PlaneGraph, x: int, exclude: Iterable[int]) -> int | None:
    ex = set(exclude)
    rest = [y for y in G.neighbours(x) if y not in ex]
    return rest[0] if len(rest) == 1 else None


def lemma_scripts(G: PlaneGraph, match: ConfigurationMatch) -> list[list[Move]]:
    """Move sequences transcribing the configuration's extension argument."""
    cid = match.config_id
    b = match.as_dict()
    E = edge_key
    seqs: list[list[Move]] = []

    def shift(e0, y):
        return [("with", e0, y), ("free", y)]

    if cid == "A1":
        u, v, w, f = b["u"], b["v"], b["w"], b["f"]
        uv = E(u, v)
        f1 = _other_face(G, uv, f)
        seqs += [[("with", uv, E(u, w)), ("with", E(u, w), f1)], shift(uv, E(v, w))]
    elif cid == "A2":
        (e0,) = match.reduction.edges
        v = b["v"]
        a = e0[0] if e0[1] == v else e0[1]
        walk = G.face(b["f"]).vertices
        i = walk.index(v)
        nb = walk[(i + 1) % 4] if walk[(i - 1) % 4] == a else walk[(i - 1) % 4]
        xo = walk[(i + 2) % 4]
        alpha = _other_face(G, e0, b["f"])
        seqs += [
            [("with", e0, E(v, nb)), ("swap", E(v, nb), E(xo, nb))],
            shift(e0, E(v, nb)),
            [("with", e0, E(a, xo)), ("with", E(a, xo), alpha)],
        ]
    elif cid in ("B2", "B3", "B4", "C2", "C3"):
        u, v, w = b["u"], b["v"], b["w"]
        uv = E(u, v)
        seqs += [shift(uv, E(v, w)), shift(uv, E(u, w))]
    elif cid == "C4":
        u, v, w, x = b["u"], b["v"], b["w"], b["x"]
        wx, vw, vx, uw, uv = E(w, x), E(v, w), E(v, x), E(u, w), E(u, v)
        xp = _third(G, x, (v, w))
        for pre in ([], [("swap", vw, vx)]):
            if xp is not None:
                seqs.append(pre + [("with", wx, vw), ("with", vw, E(x, xp))])
            seqs.append(pre + shift(wx, vx))
            seqs.append(pre + [("with", wx, uw), ("with", uw, vx)])
            seqs.append(pre + [("with", uv, vx), ("with", wx, vx), ("uncolour", vx), ("greedy", (vx,))])
            if xp is not None:
                seqs.append(pre + [("with", uv, vx), ("with", wx, vx), ("with", vx, vw), ("with", vw, E(x, xp))])
    elif cid == "C5":
        u, v, w, x = b["u"], b["v"], b["w"], b["x"]
        uv, vw, uw, vx, wx = E(u, v), E(v, w), E(u, w), E(v, x), E(w, x)
        for pre in ([], [("swap", uw, vw)]):
            seqs.append(pre + shift(uv, vw))
            seqs.append(pre + shift(uv, uw))
            seqs.append(pre + shift(uv, vx))
            seqs.append(pre + [("with", uv, vx), ("with", vx, wx), ("free", wx)])
    elif cid in ("D1", "D2", "D3", "D4"):
        u, v, w, x = b["u"], b["v"], b["w"], b["x"]
        vw, uv, vx, wx = E(v, w), E(u, v), E(v, x), E(w, x)
        for pre in ([], [("swap", vx, wx)]):
            seqs.append(pre + shift(vw, vx))
            seqs.append(pre + shift(vw, wx))
            seqs.append(pre + [("with", vw, uv), ("with", uv, vx), ("swap", vx, wx)])
    elif cid in ("E1", "E2"):
        z, v, w, x, y = b["z"], b["v"], b["w"], b["x"], b["y"]
        zv, zw, zx, zy, wv, xw, yx = E(z, v), E(z, w), E(z, x), E(z, y), E(w, v), E(x, w), E(y, x)
        for pre in ([], [("swap", zw, wv)]):
            seqs.append(pre + shift(zv, wv))
            seqs.append(pre + shift(zv, zw))
            seqs.append(pre + shift(zv, zx))
            seqs.append(pre + [("with", zv, zx), ("with", zx, yx), ("free", yx)])
            seqs.append(pre + [("with", zv, zx), ("swap", zx, yx)])
            seqs.append(pre + [("with", zv, zy), ("swap", zy, yx)])
    elif cid == "E3":
        v, a, bb = b["v"], b["a"], b["b"]
        va, vb = E(v, a), E(v, bb)
        for t in (G.rot_next((v, a))[1], G.rot_prev((v, a))[1]):
            vt, at = E(v, t), E(a, t)
            if G.has_edge(a, t):
                seqs.append([("with", va, vb), ("with", vb, vt), ("swap", vt, at)])
                seqs.append(shift(va, at))
            seqs.append(shift(va, vt))
    elif cid == "E4" and match.reduction.kind == "delete":
        u, v, w, x = b["u"], b["v"], b["w"], b["x"]
        seqs.append([("uncolour", E(v, w)), ("uncolour", E(v, x)), ("greedy", (E(u, v), E(v, x), E(v, w)))])
    return seqs


def generic_shifts(G: PlaneGraph, lam: EdgeFaceColouring, targets: list[Element]) -> list[list[Move]]:
    """Give an open edge the colour of a neighbour, then move that neighbour
    to a free colour, to the colour of one of its own neighbours, or swap
    it with one of them."""
    seqs: list[list[Move]] = []
    for e0 in targets:
        if is_face(e0):
            continue
        first = [y for y in neighbourhood(G, e0) if lam.get(y) is not None]
        for y in first:
            seqs.append([("with", e0, y), ("free", y)])
        for y in first:
            for z in neighbourhood(G, y):
                if z == e0 or lam.get(z) is None:
                    continue
                seqs.append([("with", e0, y), ("with", y, z), ("free", z)])
                seqs.append([("with", e0, y), ("swap", y, z)])
    return seqs


def extend(G: PlaneGraph, step: ReductionStep, lam: EdgeFaceColouring, stats: SolverStats | None = None):
    """Complete the lifted colouring ``lam`` of ``G``.

    Returns ``(colouring, how)``.  Raises :class:`ScriptBlocked` when none
    of greedy, the lemma script or the generic shifts succeeds.
    """
    open_ = _open_elements(G, lam)
    if not open_:
        return greedy_complete(G, lam), "lift"
    trial = lam.copy()
    order = [x for x in step.pending if x in open_] + [x for x in open_ if x not in step.pending]
    order = [x for x in order if is_face(x)] + [x for x in order if not is_face(x)]
    if _greedy(G, trial, order) and _locally_valid(G, trial, order):
        return greedy_complete(G, trial), "greedy"
    if step.match is not None:
        for moves in lemma_scripts(G, step.match):
            out = run_script(G, lam, moves)
            if out is not None:
                return greedy_complete(G, out), "script"
    # colour open faces first so shifts only need to place edges
    base = lam.copy()
    _greedy(G, base, [x for x in open_ if is_face(x)])
    for moves in generic_shifts(G, base, [x for x in _open_elements(G, base)]):
        out = run_script(G, base, moves)
        if out is not None:
            return greedy_complete(G, out), "shift"
    raise ScriptBlocked(step.config_id, f"open elements {open_}")


def _ball(G: PlaneGraph, seeds: Iterable[Element], radius: int) -> list[Element]:
    seen = {x: 0 for x in seeds}
    frontier = list(seen)
    for r in range(radius):
        nxt = []
        for x in frontier:
            for y in neighbourhood(G, x):
                if y not in seen:
                    seen[y] = r + 1
                    nxt.append(y)
        frontier = nxt
    return list(seen)


def fallback_extend(G: PlaneGraph, step: ReductionStep, lam: EdgeFaceColouring) -> EdgeFaceColouring:
    """Exhaustive recolouring of growing neighbourhoods of the open
    elements; the last attempt recolours the whole graph."""
    seeds = _open_elements(G, lam)
    all_elems = list(G.edges) + [f.id for f in G.faces]
    radii: list[int | None] = list(FALLBACK_RADII) + [None]
    for r in radii:
        region = all_elems if r is None else _ball(G, seeds, r)
        region = [x for x in region if not (is_face(x) and G.face_degree(x) <= SMALL_FACE)]
        rset = set(region)
        fixed: dict[Element, int] = {}
        for e, c in lam.edges.items():
            if e not in rset:
                fixed[e] = c
        for f, c in lam.faces.items():
            if f not in rset and G.face_degree(f) > SMALL_FACE:
                fixed[f] = c
        nbrs = {x: neighbourhood(G, x) for x in region}
        budget = None if r is None else FALLBACK_BUDGET
        status, assign, _ = solve_constraints(region, nbrs, fixed, NUM_COLOURS, budget)
        if status == "feasible":
            out = EdgeFaceColouring()
            for x, c in fixed.items():
                out.set(x, c)
            for x, c in assign.items():
                out.set(x, c)
            return greedy_complete(G, out)
    raise InternalExtensionFailure(
        f"no extension for {step.config_id} on a graph with {G.num_edges} edges", graph=G
    )


# driver


def _base_colouring(G: PlaneGraph) -> EdgeFaceColouring | None:
    if G.num_edges == 0:
        return EdgeFaceColouring({}, {f.id: 1 for f in G.faces})
    return None


def _iter_matches(G: PlaneGraph, cid: str):
    spec = CATALOGUE[cid]
    for b in spec.candidates(G):
        if spec.holds(G, b):
            roles = tuple((r, b[r]) for r in spec.roles)
            yield ConfigurationMatch(cid, roles, spec.reduce(G, b))


def choose_step(G: PlaneGraph, stats: SolverStats | None = None) -> ReductionStep:
    """Pick the next reduction: pendant vertex, then cut vertex, then the
    first configuration in priority order (direct reductions before
    redirects)."""
    step = _all_leaves_step(G)
    if step is not None:
        return step
    step = decompose(G)
    if step is not None:
        return step
    redirect = None
    for cid in PRIORITY:
        for m in _iter_matches(G, cid):
            if m.reduction.kind == "redirect":
                if redirect is None:
                    redirect = m
                continue
            try:
                return reduce(G, m)
            except SurgeryPreconditionFailed:
                continue
    if redirect is not None:
        (e,) = redirect.reduction.edges
        m = ConfigurationMatch(redirect.config_id, redirect.bindings, Reduction("delete", (e,)))
        return reduce(G, m)
    # the configuration catalogue should make this unreachable
    if stats is not None:
        stats.missing_configuration += 1
    log.warning("no configuration found on a graph with %d edges", G.num_edges)
    for e in G.edges:
        if not is_bridge(G, e):
            m = ConfigurationMatch("none", (), Reduction("delete", (e,)))
            return reduce(G, m)
    raise InternalExtensionFailure("no reducible structure and no deletable edge")


@dataclass
class _Frame:
    graph: PlaneGraph
    step: ReductionStep | None = None
    results: list[EdgeFaceColouring] = field(default_factory=list)


def _finish(G: PlaneGraph, step: ReductionStep, results, stats: SolverStats) -> EdgeFaceColouring:
    lam = lift(G, step, results)
    _repair_conflicts(G, lam, step)
    try:
        out, how = extend(G, step, lam, stats)
    except ScriptBlocked as exc:
        stats.blocked.append((exc.config_id, exc.reason))
        log.info("script blocked for %s; using fallback", exc.config_id)
        out, how = fallback_extend(G, step, lam), "fallback"
    stats.record(step.config_id, how)
    return out


def colour_with_stats(G: PlaneGraph) -> tuple[EdgeFaceColouring, SolverStats]:
    check_preconditions(G)
    try:
        return _colour(G)
    except InternalExtensionFailure as exc:
        # report the top-level input so the failure can be replayed
        raise InternalExtensionFailure(str(exc), graph=G) from exc


def _colour(G: PlaneGraph) -> tuple[EdgeFaceColouring, SolverStats]:
    stats = SolverStats()
    stack = [_Frame(G)]
    done: EdgeFaceColouring | None = None
    while stack:
        fr = stack[-1]
        if done is not None:
            fr.results.append(done)
            done = None
        if fr.step is None:
            base = _base_colouring(fr.graph)
            if base is not None:
                stack.pop()
                done = base
                continue
            fr.step = choose_step(fr.graph, stats)
        if len(fr.results) < len(fr.step.children):
            stack.append(_Frame(fr.step.children[len(fr.results)]))
            continue
        stack.pop()
        done = _finish(fr.graph, fr.step, fr.results, stats)
    verdict = validate(G, done, require_total=True)
    if not verdict.valid:
        raise InternalExtensionFailure(f"final colouring invalid: {verdict.violations[:3]}", graph=G)
    return done, stats


def colour(G: PlaneGraph) -> EdgeFaceColouring:
    """A valid edge-face colouring of ``G`` with colours 1..9."""
    return colour_with_stats(G)[0]


def colour_via(G: PlaneGraph, m: ConfigurationMatch, stats: SolverStats | None = None) -> EdgeFaceColouring:
    """Colour ``G`` by first applying the reduction of ``m``, whatever the
    priority order would have chosen.  Used to exercise a single class."""
    check_preconditions(G)
    stats = stats if stats is not None else SolverStats()
    step = reduce(G, m)
    results = []
    for H in step.children:
        lam, sub = colour_with_stats(H)
        stats.merge(sub)
        results.append(lam)
    return _finish(G, step, results, stats)
