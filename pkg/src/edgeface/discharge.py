"""Exact discharging: initial charges, transfer rules and audit reports.

Vertices start with ``2 deg - 6`` and faces with ``deg - 6``; on a
connected plane graph these sum to -12.  The rules move charge from
vertices of degree 4 or more to faces, and from faces of degree 4 or more
to 2-vertices.  A rule fires once per corner, so a face meeting a vertex
several times receives the transfer that many times.  Every amount is a
:class:`fractions.Fraction`.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .configs import (
    ConfigurationMatch,
    check_preconditions,
    detect_all,
    exceptional_corners,
    special_face_counts,
)
from .embed import PlaneGraph
from .exceptions import Disconnected

log = logging.getLogger(__name__)

F = Fraction

RULE_AMOUNTS: dict[str, Fraction] = {
    "R0": F(1),
    "R1a": F(3, 2),
    "R1b": F(7, 5),
    "R1c": F(5, 4),
    "R1d": F(6, 5),
    "R1e": F(11, 10),
    "R1f": F(1),
    "R1g": F(1, 2),
    "R2a": F(11, 10),
    "R2b": F(1),
    "R2c": F(1, 2),
    "R3": F(4, 5),
    "R4": F(1, 2),
}

# ("v", id) or ("f", id)
ChargeElement = tuple[str, int]


def element_order(x: ChargeElement) -> tuple[int, int]:
    """Canonical order: vertices before faces, then by id."""
    return (0 if x[0] == "v" else 1, x[1])


def vertex(v: int) -> ChargeElement:
    return ("v", v)


def face(f: int) -> ChargeElement:
    return ("f", f)


def element_name(x: ChargeElement) -> str:
    return f"{x[0]}{x[1]}"


def fmt(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Transfer:
    source: ChargeElement
    target: ChargeElement
    amount: Fraction
    rule: str
    corner: int  # position of the corner on the face's boundary walk
    trigger: str = ""

    def sort_key(self):
        return (element_order(self.source), element_order(self.target), self.rule, self.corner)


@dataclass
class ChargeLedger:
    initial: dict[ChargeElement, Fraction]
    transfers: list[Transfer] = field(default_factory=list)

    @property
    def charges(self) -> dict[ChargeElement, Fraction]:
        out = dict(self.initial)
        for t in self.transfers:
            out[t.source] -= t.amount
            out[t.target] += t.amount
        return out

    def total(self) -> Fraction:
        return sum(self.charges.values(), F(0))

    def received(self, x: ChargeElement) -> Fraction:
        return sum((t.amount for t in self.transfers if t.target == x), F(0))

    def sent(self, x: ChargeElement) -> Fraction:
        return sum((t.amount for t in self.transfers if t.source == x), F(0))


def initial_charges(G: PlaneGraph) -> ChargeLedger:
    if not G.is_connected():
        raise Disconnected("charges are only defined for connected graphs")
    init: dict[ChargeElement, Fraction] = {}
    for v in sorted(G.vertices):
        init[vertex(v)] = F(2 * G.degree(v) - 6)
    for f in G.faces:
        init[face(f.id)] = F(f.degree - 6)
    return ChargeLedger(init)


# face classification


def _matches_cyclic(seq: tuple[int, ...], pattern: tuple) -> bool:
    """Whether ``seq`` equals ``pattern`` up to rotation and reflection;
    pattern entries are ints or predicates."""
    n = len(seq)
    if n != len(pattern):
        return False
    for s in (seq, seq[::-1]):
        for k in range(n):
            rotated = s[k:] + s[:k]
            if all(p(d) if callable(p) else p == d for p, d in zip(pattern, rotated)):
                return True
    return False


def _at_most(k):
    return lambda d: d <= k


def _triangle_type(degs: tuple[int, ...]) -> tuple[int, int, int]:
    return tuple(sorted(degs))


def _r1_triangle(t: tuple[int, int, int]) -> str | None:
    a, b, c = t
    if (a == 3 and b >= 7) or (a, b) == (4, 6) and c >= 7:
        return "R1a"
    if (a, b) == (5, 5) and c >= 7:
        return "R1b"
    if a == 4 and b >= 7:
        return "R1c"
    if t == (5, 6, 8):
        return "R1d"
    if t == (5, 6, 7) or (a == 5 and b >= 7):
        return "R1e"
    if a >= 6:
        return "R1f"
    return None


def _r1_four_face(degs: tuple[int, ...]) -> str | None:
    if _matches_cyclic(degs, (2, 8, 4, 8)):
        return "R1c"
    if _matches_cyclic(degs, (2, 8, 5, 8)):
        return "R1e"
    if _matches_cyclic(degs, (2, 8, _at_most(5), 8)):
        return None
    return "R1f"


def _r1(G, v, f, degs, special) -> tuple[str | None, str]:
    d = len(degs)
    if d == 3:
        t = _triangle_type(degs)
        return _r1_triangle(t), f"triangle {t}"
    if d == 4:
        return _r1_four_face(degs), f"4-face {degs}"
    if f in special:
        return "R1f", "special"
    if d == 5:
        return "R1g", "non-special 5-face"
    return None, ""


def _r2(G, v, f, degs, exceptional: bool) -> tuple[str | None, str]:
    d = len(degs)
    if d == 3:
        t = _triangle_type(degs)
        if t in ((5, 6, 6), (5, 6, 7)):
            return "R2a", f"triangle {t}"
        return "R2b", f"triangle {t}"
    if d == 4:
        return "R2b", "4-face"
    if d == 5:
        return "R2c", "5-face"
    if d == 6:
        return ("R2b", "exceptional") if exceptional else ("R2c", "unexceptional 6-face")
    return None, ""


def apply_rules(G: PlaneGraph) -> ChargeLedger:
    check_preconditions(G)
    ledger = initial_charges(G)
    special = {v: special_face_counts(G, v) for v in G.vertices if G.degree(v) >= 7}
    exceptional = {v: set(exceptional_corners(G, v)) for v in G.vertices if G.degree(v) == 6}
    out: list[Transfer] = []
    for f in G.faces:
        walk = f.vertices
        degs = tuple(G.degree(x) for x in walk)
        for i, x in enumerate(walk):
            dx = degs[i]
            src, dst = vertex(x), face(f.id)
            if dx == 2 and f.degree >= 4:
                out.append(Transfer(dst, src, RULE_AMOUNTS["R0"], "R0", i, f"{f.degree}-face"))
                continue
            if dx >= 7:
                rule, why = _r1(G, x, f.id, degs, special[x])
            elif dx == 6:
                rule, why = _r2(G, x, f.id, degs, (f.id, i) in exceptional[x])
            elif dx == 5:
                rule, why = "R3", ""
            elif dx == 4:
                rule, why = "R4", ""
            else:
                rule = None
            if rule is not None:
                out.append(Transfer(src, dst, RULE_AMOUNTS[rule], rule, i, why))
    ledger.transfers = sorted(out, key=Transfer.sort_key)
    return ledger


# audit


@dataclass
class AuditReport:
    ledger: ChargeLedger
    total: Fraction
    charges: dict[ChargeElement, Fraction]
    negatives: list[tuple[ChargeElement, Fraction]]
    matches_nearby: list[ConfigurationMatch]


_FACE_ROLES = {"f", "g"}


def _match_elements(m: ConfigurationMatch) -> set[ChargeElement]:
    return {face(x) if r in _FACE_ROLES else vertex(x) for r, x in m.bindings}


def _incidence_ball(G: PlaneGraph, sources: list[ChargeElement], radius: int) -> set[ChargeElement]:
    def nbrs(x):
        if x[0] == "v":
            return [face(f) for f, _, _ in G.corners(x[1])]
        return [vertex(w) for w in G.face(x[1]).vertices]

    dist = {x: 0 for x in sources}
    queue = deque(sources)
    while queue:
        x = queue.popleft()
        if dist[x] == radius:
            continue
        for y in nbrs(x):
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return set(dist)


def audit(G: PlaneGraph, radius: int = 2) -> AuditReport:
    ledger = apply_rules(G)
    charges = ledger.charges
    negatives = [(x, charges[x]) for x in sorted(charges, key=element_order) if charges[x] < 0]
    near = _incidence_ball(G, [x for x, _ in negatives], radius)
    nearby = [m for m in detect_all(G) if _match_elements(m) & near]
    covered = set().union(*(_match_elements(m) for m in nearby)) if nearby else set()
    for x, c in negatives:
        # expected but not guaranteed off minimal counter-examples, so only logged
        if not _incidence_ball(G, [x], radius) & covered:
            log.warning("negative element %s (%s) has no configuration within distance %d",
                        element_name(x), fmt(c), radius)
    return AuditReport(ledger, sum(charges.values(), F(0)), charges, negatives, nearby)


def serialise_report(report: AuditReport, diagnostics: bool = False) -> str:
    lines = [f"total {fmt(report.total)}"]
    lines += [f"charge {element_name(x)} {fmt(report.charges[x])}" for x in sorted(report.charges, key=element_order)]
    lines += [
        f"transfer {element_name(t.source)} {element_name(t.target)} {fmt(t.amount)} {t.rule}"
        for t in report.ledger.transfers
    ]
    if diagnostics:
        lines += [f"# negative {element_name(x)} {fmt(c)}" for x, c in report.negatives]
        lines += [f"# nearby {m}" for m in report.matches_nearby]
    return "\n".join(lines) + "\n"
