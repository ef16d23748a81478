from __future__ import annotations

from collections import Counter
from fractions import Fraction

import pytest
from conftest import GOLDEN, k4, k11, triangle_with_leaves
from hypothesis import given
from oracles import ref_final_charges
from strategies import plane_graphs

from edgeface.discharge import (
    RULE_AMOUNTS,
    apply_rules,
    audit,
    face,
    initial_charges,
    serialise_report,
    vertex,
)
from edgeface.embed import build_from_rotations
from edgeface.exceptions import Disconnected, PreconditionViolated
from edgeface.io_gen.generators import platonic, star

F = Fraction


def triangle_charge(leaves):
    G = triangle_with_leaves(leaves)
    f = next(f.id for f in G.faces if f.degree == 3)
    return G, f, apply_rules(G)


# initial charges


def test_initial_charge_values():
    G = star(9)
    led = initial_charges(G)
    assert led.initial[vertex(0)] == 10  # 8-vertex
    G = star(8)
    assert initial_charges(G).initial[vertex(0)] == 8  # 7-vertex
    led = initial_charges(k4())
    assert all(led.initial[vertex(v)] == 0 for v in range(4))
    assert all(led.initial[face(f)] == -3 for f in range(4))
    assert led.total() == -12


def test_initial_charges_need_connectivity():
    G = build_from_rotations({0: [1], 1: [0], 2: [3], 3: [2]})
    with pytest.raises(Disconnected):
        initial_charges(G)


# rules


def test_three_eight_eight_triangle_receives_three():
    G, f, led = triangle_charge((1, 6, 6))
    got = [t for t in led.transfers if t.target == face(f)]
    assert sorted(t.rule for t in got) == ["R1a", "R1a"]
    assert led.received(face(f)) == 3


def test_five_five_eight_triangle_receives_three():
    G, f, led = triangle_charge((3, 3, 6))
    assert [G.degree(v) for v in (0, 1, 2)] == [5, 5, 8]
    got = Counter(t.rule for t in led.transfers if t.target == face(f))
    assert got == Counter({"R1b": 1, "R3": 2})
    assert led.received(face(f)) == F(7, 5) + 2 * F(4, 5) == 3


def test_k4_no_rule_fires():
    led = apply_rules(k4())
    assert led.transfers == []
    assert all(led.charges[face(f)] == -3 for f in range(4))


def test_icosahedron_only_r3():
    led = apply_rules(platonic("icosahedron"))
    assert {t.rule for t in led.transfers} == {"R3"}
    ch = led.charges
    assert all(ch[face(f)] == F(-3, 5) for f in range(20))
    assert all(ch[vertex(v)] == 0 for v in range(12))
    assert led.total() == -12


def test_r0_counts_each_incidence():
    # a 2-vertex on a 5-cycle meets each of its two faces once
    from edgeface.io_gen.generators import cycle

    led = apply_rules(cycle(5))
    assert Counter(t.rule for t in led.transfers) == Counter({"R0": 10})
    assert led.charges[vertex(0)] == -2 + 2


def test_rule_amounts_have_small_denominators():
    assert all(20 % q.denominator == 0 for q in RULE_AMOUNTS.values())


def test_apply_rules_preconditions():
    with pytest.raises(PreconditionViolated):
        apply_rules(star(10, max_degree=9))


# audit


def test_star_audit():
    rep = audit(star(9))
    leaves = [x for x, c in rep.negatives if x[0] == "v"]
    assert len(leaves) == 8 and all(rep.charges[x] == -4 for x in leaves)
    assert any(m.config_id == "A0" for m in rep.matches_nearby)


def test_icosahedron_audit_lists_c1():
    rep = audit(platonic("icosahedron"))
    assert len(rep.negatives) == 20
    assert any(m.config_id == "C1" for m in rep.matches_nearby)


def test_k4_audit_lists_configs():
    rep = audit(k4())
    assert [c for _, c in rep.negatives] == [-3] * 4
    ids = {m.config_id for m in rep.matches_nearby}
    assert {"B1", "C1", "C4"} <= ids


@pytest.mark.parametrize("name, G", [("icosahedron", platonic("icosahedron")), ("k4", k4())])
def test_golden_reports(name, G):
    text = serialise_report(audit(G))
    assert text == (GOLDEN / f"{name}.audit").read_text(encoding="utf-8")


def test_report_format():
    text = serialise_report(audit(k11()), diagnostics=True)
    lines = text.splitlines()
    assert lines[0] == "total -12/1"
    assert lines[1].startswith("charge v0 ")
    assert any(line.startswith("# negative") for line in lines)


# properties


@given(plane_graphs(max_n=40))
def test_conservation_and_rule_shape(G):
    led = apply_rules(G)
    assert led.total() == -12
    assert sum(t.amount for t in led.transfers) == sum(led.sent(x) for x in led.initial)
    seen = set()
    for t in led.transfers:
        key = (t.source, t.target, t.corner)
        assert key not in seen  # one rule per corner
        seen.add(key)
        assert t.amount == RULE_AMOUNTS[t.rule]
        if t.target[0] == "v":
            assert t.rule == "R0" and G.degree(t.target[1]) == 2
        else:
            assert G.degree(t.source[1]) >= 4


@given(plane_graphs(max_n=40))
def test_charges_match_reference(G):
    led = apply_rules(G)
    ref = ref_final_charges(G.rotation())
    ours = {}
    for x, c in led.charges.items():
        ours[x if x[0] == "v" else frozenset(G.face(x[1]).darts)] = c
    assert ours == ref


@given(plane_graphs(max_n=30))
def test_some_element_is_negative(G):
    rep = audit(G)
    assert rep.total == -12
    assert rep.negatives
