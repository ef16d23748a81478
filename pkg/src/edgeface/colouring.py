"""Edge-face colourings: representation, validation and completion.

An element is either an edge, written as a sorted vertex pair ``(u, v)``, or
a face, written as its integer face id.  Two elements *conflict* when they
must receive different colours:

* two edges sharing an endpoint;
* an edge and a face on either side of it;
* two distinct faces sharing an edge (a face is never in conflict with itself,
  which is what allows graphs with cut-edges to be coloured).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

from .embed import Edge, PlaneGraph, edge_key
from .exceptions import NoFreeColour, NotNice, UnknownElement

Element = Union[Edge, int]

NUM_COLOURS = 9
SMALL_FACE = 4  # faces of degree <= SMALL_FACE are left for the final greedy pass


def is_face(x: Element) -> bool:
    return isinstance(x, int)


@dataclass
class EdgeFaceColouring:
    """Partial assignment of colours to edges and faces."""

    edges: dict[Edge, int] = field(default_factory=dict)
    faces: dict[int, int] = field(default_factory=dict)

    def copy(self) -> "EdgeFaceColouring":
        return EdgeFaceColouring(dict(self.edges), dict(self.faces))

    def get(self, x: Element) -> int | None:
        if is_face(x):
            return self.faces.get(x)
        return self.edges.get(edge_key(*x))

    def set(self, x: Element, colour: int | None) -> None:
        if is_face(x):
            store, key = self.faces, x
        else:
            store, key = self.edges, edge_key(*x)
        if colour is None:
            store.pop(key, None)
        else:
            store[key] = colour

    def colours_used(self) -> set[int]:
        return set(self.edges.values()) | set(self.faces.values())

    def uncoloured(self, G: PlaneGraph) -> list[Element]:
        out: list[Element] = [e for e in G.edges if e not in self.edges]
        out += [f.id for f in G.faces if f.id not in self.faces]
        return out

    def is_total(self, G: PlaneGraph) -> bool:
        return not self.uncoloured(G)

    def is_nice(self, G: PlaneGraph) -> bool:
        return all(is_face(x) and G.face_degree(x) <= SMALL_FACE for x in self.uncoloured(G))


@dataclass(frozen=True)
class Violation:
    condition: str  # "i", "ii", "iii", "range" or "uncoloured"
    first: Element
    second: Element | None = None

    def __str__(self) -> str:
        def name(x):
            return f"face {x}" if is_face(x) else f"edge {x[0]}-{x[1]}"

        if self.second is None:
            return f"({self.condition}) {name(self.first)}"
        return f"({self.condition}) {name(self.first)} / {name(self.second)}"


@dataclass
class Verdict:
    violations: list[Violation]

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid


def _check_domain(G: PlaneGraph, lam: EdgeFaceColouring) -> None:
    for (u, v) in lam.edges:
        if not G.has_edge(u, v):
            raise UnknownElement(f"edge {u}-{v} not in graph")
    for f in lam.faces:
        if not 0 <= f < G.num_faces:
            raise UnknownElement(f"face {f} not in graph")


def validate(
    G: PlaneGraph, lam: EdgeFaceColouring, require_total: bool = False, k: int = NUM_COLOURS
) -> Verdict:
    """Check the three conditions on every pair of coloured elements."""
    _check_domain(G, lam)
    bad: list[Violation] = []
    for x, c in list(lam.edges.items()) + list(lam.faces.items()):
        if not 1 <= c <= k:
            bad.append(Violation("range", x))
    edges, faces = lam.edges, lam.faces
    for v in G.vertices:
        at_v = sorted(edge_key(v, w) for w in G.neighbours(v))
        for i, a in enumerate(at_v):
            ca = edges.get(a)
            if ca is None:
                continue
            for b in at_v[i + 1:]:
                if edges.get(b) == ca:
                    bad.append(Violation("i", a, b))
    for e in G.edges:
        f, g = G.side_faces(e)
        ce = edges.get(e)
        for h in sorted({f, g}):
            if ce is not None and faces.get(h) == ce:
                bad.append(Violation("ii", e, h))
        if f != g and faces.get(f) is not None and faces.get(f) == faces.get(g):
            bad.append(Violation("iii", min(f, g), max(f, g)))
    if require_total:
        bad.extend(Violation("uncoloured", x) for x in lam.uncoloured(G))
    return Verdict(sorted(set(bad), key=_violation_key))


def _violation_key(v: Violation):
    def k(x):
        return (1, x, 0) if is_face(x) else (0, x[0], x[1]) if x is not None else (2, 0, 0)

    return (v.condition, k(v.first), k(v.second))


def neighbourhood(G: PlaneGraph, x: Element) -> list[Element]:
    """Elements conflicting with ``x``."""
    if is_face(x):
        if not 0 <= x < G.num_faces:
            raise UnknownElement(f"face {x} not in graph")
        out: list[Element] = sorted(set(G.face_edges(x)))
        out += sorted(G.adjacent_faces(x))
        return out
    u, v = x
    if not G.has_edge(u, v):
        raise UnknownElement(f"edge {u}-{v} not in graph")
    e = edge_key(u, v)
    out = [edge_key(a, w) for a in e for w in G.neighbours(a) if edge_key(a, w) != e]
    out += sorted(set(G.side_faces(e)))
    return out


def forbidden(G: PlaneGraph, lam: EdgeFaceColouring, x: Element) -> set[int]:
    """Colours on elements incident or adjacent to ``x``."""
    out = set()
    for y in neighbourhood(G, x):
        c = lam.get(y)
        if c is not None:
            out.add(c)
    return out


def edge_colours_at(G: PlaneGraph, lam: EdgeFaceColouring, v: int) -> set[int]:
    """Colours of the coloured edges incident to vertex ``v``."""
    out = set()
    for w in G.neighbours(v):
        c = lam.edges.get(edge_key(v, w))
        if c is not None:
            out.add(c)
    return out


def smallest_free(G: PlaneGraph, lam: EdgeFaceColouring, x: Element, k: int = NUM_COLOURS) -> int | None:
    bad = forbidden(G, lam, x)
    for c in range(1, k + 1):
        if c not in bad:
            return c
    return None


def greedy_complete(G: PlaneGraph, lam: EdgeFaceColouring) -> EdgeFaceColouring:
    """Colour the open small faces of a nice colouring, smallest colour first.

    Raises:
        NotNice: an edge or a face of degree above 4 is uncoloured.
        NoFreeColour: a small face sees all nine colours (cannot happen for
            a valid input, since such a face has at most eight neighbours).
    """
    open_ = lam.uncoloured(G)
    for x in open_:
        if not is_face(x) or G.face_degree(x) > SMALL_FACE:
            raise NotNice(f"element {x} is uncoloured")
    out = lam.copy()
    for f in open_:
        c = smallest_free(G, out, f)
        if c is None:
            raise NoFreeColour(f"face {f} sees every colour")
        out.faces[f] = c
    return out


# exact search


def conflict_graph(G: PlaneGraph) -> dict[Element, list[Element]]:
    elements: list[Element] = list(G.edges) + [f.id for f in G.faces]
    return {x: neighbourhood(G, x) for x in elements}


class _BudgetExhausted(Exception):
    pass


def solve_constraints(
    variables: list[Element],
    nbrs: Mapping[Element, Iterable[Element]],
    fixed: Mapping[Element, int],
    k: int,
    budget: int | None,
    break_symmetry: bool = False,
) -> tuple[str, dict[Element, int] | None, int]:
    """Backtracking colouring of ``variables`` around fixed colours.

    Variable choice is DSATUR style: most distinct forbidden colours first,
    then most uncoloured conflicting variables, then input order.  With
    ``break_symmetry`` a colour may only be introduced in increasing order,
    so the first variable always gets colour 1; only sound when ``fixed`` is
    empty.

    Returns:
        ``(status, assignment, nodes)`` with status ``"feasible"``,
        ``"infeasible"`` or ``"budget"``.
    """
    order = {x: i for i, x in enumerate(variables)}
    var_nbrs = {x: [y for y in nbrs[x] if y in order] for x in variables}
    sat: dict[Element, dict[int, int]] = {x: {} for x in variables}
    for x in variables:
        for y in nbrs[x]:
            c = fixed.get(y)
            if c is not None:
                sat[x][c] = sat[x].get(c, 0) + 1
    assign: dict[Element, int] = {}
    nodes = 0
    top = 0

    def pick():
        best = None
        best_key = None
        for x in variables:
            if x in assign:
                continue
            key = (len(sat[x]), sum(1 for y in var_nbrs[x] if y not in assign), -order[x])
            if best_key is None or key > best_key:
                best, best_key = x, key
        return best

    def rec() -> bool:
        nonlocal nodes, top
        x = pick()
        if x is None:
            return True
        if len(sat[x]) >= k:
            return False
        for c in range(1, k + 1):
            if c in sat[x]:
                continue
            if break_symmetry and c > top + 1:
                break
            nodes += 1
            if budget is not None and nodes > budget:
                raise _BudgetExhausted
            assign[x] = c
            old_top = top
            top = max(top, c)
            for y in var_nbrs[x]:
                s = sat[y]
                s[c] = s.get(c, 0) + 1
            if rec():
                return True
            for y in var_nbrs[x]:
                s = sat[y]
                if s[c] == 1:
                    del s[c]
                else:
                    s[c] -= 1
            del assign[x]
            top = old_top
        return False

    try:
        ok = rec()
    except _BudgetExhausted:
        return "budget", None, nodes
    return ("feasible", dict(assign), nodes) if ok else ("infeasible", None, nodes)


@dataclass
class OracleResult:
    status: str  # "feasible", "infeasible" or "budget"
    colouring: EdgeFaceColouring | None
    nodes: int

    @property
    def feasible(self) -> bool:
        return self.status == "feasible"


def oracle_colour(G: PlaneGraph, k: int, budget: int | None = 1_000_000) -> OracleResult:
    """Exhaustively decide whether ``G`` has an edge-face ``k``-colouring.

    An ``"infeasible"`` answer is a complete search and therefore a proof that
    more than ``k`` colours are needed.
    """
    if k < 1:
        raise ValueError("k must be positive")
    nbrs = conflict_graph(G)
    variables = list(nbrs)  # edges first, then faces, both in canonical order
    status, assignment, nodes = solve_constraints(variables, nbrs, {}, k, budget, break_symmetry=True)
    if assignment is None:
        return OracleResult(status, None, nodes)
    lam = EdgeFaceColouring()
    for x, c in assignment.items():
        lam.set(x, c)
    return OracleResult(status, lam, nodes)
