from __future__ import annotations

import random

import pytest
from conftest import k3, k4, k11, path
from hypothesis import given
from hypothesis import strategies as st
from oracles import brute_force_violations
from strategies import plane_graphs

from edgeface.colouring import (
    SMALL_FACE,
    EdgeFaceColouring,
    edge_colours_at,
    forbidden,
    greedy_complete,
    is_face,
    oracle_colour,
    smallest_free,
    validate,
)
from edgeface.exceptions import NotNice, UnknownElement
from edgeface.io_gen.enumerate import enumerate_small
from edgeface.io_gen.generators import platonic, star


def k3_colouring(inner=5, outer=4):
    G = k3()
    lam = EdgeFaceColouring({(0, 1): 1, (1, 2): 2, (0, 2): 3}, {0: inner, 1: outer})
    return G, lam


def to_oracle_form(G, lam):
    faces = {frozenset(f.darts): lam.faces[f.id] for f in G.faces if f.id in lam.faces}
    return brute_force_violations(G.rotation(), dict(lam.edges), faces)


# validate


def test_k3_valid():
    G, lam = k3_colouring()
    assert validate(G, lam, require_total=True).valid


def test_k3_equal_faces_violate_iii():
    G, lam = k3_colouring(4, 4)
    verdict = validate(G, lam)
    assert [v.condition for v in verdict.violations] == ["iii"]


def test_cut_edge_self_adjacency_exempt():
    G = k11()
    bad = EdgeFaceColouring({(0, 1): 1}, {0: 1})
    assert [v.condition for v in validate(G, bad).violations] == ["ii"]
    good = EdgeFaceColouring({(0, 1): 1}, {0: 2})
    assert validate(G, good, require_total=True).valid


def test_unknown_element():
    with pytest.raises(UnknownElement):
        validate(k3(), EdgeFaceColouring({(0, 9): 1}, {}))
    with pytest.raises(UnknownElement):
        validate(k3(), EdgeFaceColouring({}, {5: 1}))


def test_require_total_lists_uncoloured():
    G = k3()
    verdict = validate(G, EdgeFaceColouring(), require_total=True)
    assert len(verdict.violations) == 5
    assert {v.condition for v in verdict.violations} == {"uncoloured"}


def test_colour_out_of_range():
    G, lam = k3_colouring(inner=10)
    assert any(v.condition == "range" for v in validate(G, lam).violations)


# forbidden


def test_forbidden_inner_face():
    G, lam = k3_colouring()
    del lam.faces[0]
    assert forbidden(G, lam, 0) == {1, 2, 3, 4}


def test_forbidden_path_edge():
    G = path(4)  # 0 - 1 - 2 - 3, edge (1, 2) plays uv
    lam = EdgeFaceColouring({(0, 1): 1, (2, 3): 2}, {0: 3})
    assert forbidden(G, lam, (1, 2)) == {1, 2, 3}
    assert edge_colours_at(G, lam, 1) == {1}


def test_forbidden_empty_colouring():
    G = k4()
    lam = EdgeFaceColouring()
    assert all(forbidden(G, lam, x) == set() for x in list(G.edges) + [f.id for f in G.faces])


# greedy_complete


def test_greedy_inner_face():
    G, lam = k3_colouring()
    del lam.faces[0]
    assert greedy_complete(G, lam).faces[0] == 5


def test_greedy_k4_from_oracle():
    G = k4()
    full = oracle_colour(G, 9).colouring
    outer = max(f.id for f in G.faces)
    lam = EdgeFaceColouring(dict(full.edges), {outer: full.faces[outer]})
    out = greedy_complete(G, lam)
    assert out.is_total(G) and validate(G, out).valid


def test_greedy_identity_on_total():
    G, lam = k3_colouring()
    assert greedy_complete(G, lam) == lam


def test_greedy_rejects_non_nice():
    G, lam = k3_colouring()
    del lam.edges[(0, 1)]
    with pytest.raises(NotNice):
        greedy_complete(G, lam)


# oracle


def test_star_tightness():
    G = star(9)
    assert oracle_colour(G, 8).status == "infeasible"
    res = oracle_colour(G, 9)
    assert res.feasible and validate(G, res.colouring, require_total=True).valid


def test_single_edge_oracle():
    G = k11()
    assert oracle_colour(G, 2).feasible
    assert oracle_colour(G, 1).status == "infeasible"


def test_k4_feasible():
    res = oracle_colour(k4(), 9)
    assert res.feasible and validate(k4(), res.colouring, require_total=True).valid


def test_budget_status():
    res = oracle_colour(platonic("dodecahedron"), 4, budget=100)
    assert res.status == "budget" and res.colouring is None


def test_oracle_rejects_bad_k():
    with pytest.raises(ValueError):
        oracle_colour(k3(), 0)


def test_oracle_minimum_on_k3():
    # three mutually adjacent edges, two adjacent faces each touching all of them
    assert oracle_colour(k3(), 4).status == "infeasible"
    assert oracle_colour(k3(), 5).feasible


# properties


def random_valid_nice(G, rnd: random.Random) -> EdgeFaceColouring:
    """Random greedy colouring of edges and big faces, retried until it fits."""
    big = [f.id for f in G.faces if f.degree > SMALL_FACE]
    for _ in range(20):
        lam = EdgeFaceColouring()
        order = list(G.edges) + big
        rnd.shuffle(order)
        ok = True
        for x in order:
            free = [c for c in range(1, 10) if c not in forbidden(G, lam, x)]
            if not free:
                ok = False
                break
            lam.set(x, rnd.choice(free))
        if ok:
            return lam
    return None


@given(plane_graphs(max_n=20), st.randoms(use_true_random=False))
def test_greedy_completion_is_valid(G, rnd):
    lam = random_valid_nice(G, rnd)
    if lam is None:
        return
    assert lam.is_nice(G) and validate(G, lam).valid
    out = greedy_complete(G, lam)
    assert out.is_total(G) and validate(G, out).valid


@given(plane_graphs(max_n=20), st.randoms(use_true_random=False))
def test_validate_agrees_with_brute_force(G, rnd):
    lam = EdgeFaceColouring()
    for x in list(G.edges) + [f.id for f in G.faces]:
        if rnd.random() < 0.8:
            lam.set(x, rnd.randint(1, 4))
    verdict = validate(G, lam)
    assert len(verdict.violations) == to_oracle_form(G, lam)


def test_oracle_monotone_and_feasible_on_corpus():
    for G in enumerate_small(4):
        statuses = [oracle_colour(G, k).status for k in range(1, 10)]
        assert statuses[-1] == "feasible"
        first = statuses.index("feasible")
        assert all(s == "feasible" for s in statuses[first:])
        assert all(s == "infeasible" for s in statuses[:first])
        res = oracle_colour(G, first + 1)
        assert to_oracle_form(G, res.colouring) == 0 and res.colouring.is_total(G)


@pytest.mark.parametrize("name", ["tetrahedron", "octahedron", "cube", "icosahedron", "dodecahedron"])
def test_platonic_oracle_outputs_checked_independently(name):
    G = platonic(name)
    for k in range(3, 10):
        res = oracle_colour(G, k, None)
        if res.feasible:
            assert to_oracle_form(G, res.colouring) == 0 and res.colouring.is_total(G)
            assert max(res.colouring.colours_used()) <= k
            break
    else:
        pytest.fail("no feasible k")


def test_elements_are_typed():
    assert is_face(3) and not is_face((0, 1))
