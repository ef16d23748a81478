from __future__ import annotations

import pytest
from conftest import k3, k4, k11
from hypothesis import given
from strategies import plane_graphs

from edgeface.colouring import EdgeFaceColouring, greedy_complete, oracle_colour, validate
from edgeface.configs import CONFIG_IDS, ConfigurationMatch, Reduction, detect, detect_all
from edgeface.embed import build_from_rotations, edge_key
from edgeface.exceptions import PreconditionViolated, SurgeryPreconditionFailed
from edgeface.io_gen.enumerate import enumerate_small
from edgeface.io_gen.generators import cycle, platonic, star, subgraph, tree, triangulation
from edgeface.solver import (
    PRIORITY,
    SolverStats,
    _repair_conflicts,
    choose_step,
    colour,
    colour_via,
    colour_with_stats,
    decompose,
    extend,
    fallback_extend,
    lemma_scripts,
    lift,
    reduce,
    run_script,
)


def valid_total(G, lam):
    return validate(G, lam, require_total=True).valid and lam.colours_used() <= set(range(1, 10))


def lifted(G, m):
    step = reduce(G, m)
    lam = lift(G, step, [colour(H) for H in step.children])
    _repair_conflicts(G, lam, step)
    return step, lam


# colour


def test_single_edge():
    lam = colour(k11())
    assert valid_total(k11(), lam)
    assert lam.edges[(0, 1)] != lam.faces[0]


def test_star_needs_all_nine():
    G = star(9)
    lam = colour(G)
    assert valid_total(G, lam) and lam.colours_used() == set(range(1, 10))


@pytest.mark.parametrize("G", [k4(), platonic("octahedron"), platonic("icosahedron")], ids=["k4", "oct", "ico"])
def test_solids_agree_with_oracle(G):
    assert valid_total(G, colour(G))
    assert oracle_colour(G, 9).feasible


def test_rejects_bad_input():
    with pytest.raises(PreconditionViolated):
        colour(star(10, max_degree=9))
    with pytest.raises(PreconditionViolated):
        colour(build_from_rotations({0: [1], 1: [0], 2: [3], 3: [2]}))


def test_edgeless_graph():
    G = build_from_rotations({0: []})
    assert colour(G).edges == {}


def test_deep_recursion_is_iterative():
    G = tree(3000, 3, 1)
    assert valid_total(G, colour(G))


# decompose


def bowtie():
    return build_from_rotations({0: [1, 2, 3, 4], 1: [2, 0], 2: [0, 1], 3: [4, 0], 4: [0, 3]})


def test_decompose_bowtie_and_merge():
    G = bowtie()
    step = decompose(G)
    assert step.kind == "cut" and len(step.children) == 2
    assert all(H.num_edges == 3 for H in step.children)
    lam = lift(G, step, [colour(H) for H in step.children])
    assert validate(G, lam).valid
    # normalisation: inner cut edges end on 9 and 8, outer cut edges avoid them
    inner = {lam.edges[edge_key(*e)] for e in step.cut_inner}
    outer = {lam.edges[edge_key(*e)] for e in step.cut_outer}
    assert inner == {8, 9} and not outer & {1, 8, 9}
    out, _ = extend(G, step, lam)
    assert valid_total(G, out)


def test_decompose_pendant_edge_on_k4():
    rot = k4().rotation()
    rot[0] = [1, 4, 3, 2]
    rot[4] = [0]
    G = build_from_rotations(rot)
    step = decompose(G)
    sizes = sorted(H.num_edges for H in step.children)
    assert step.kind == "cut" and sizes == [1, 6]
    lam = lift(G, step, [colour(H) for H in step.children])
    assert validate(G, lam).valid
    assert valid_total(G, extend(G, step, lam)[0])


def test_decompose_not_applicable():
    assert decompose(k4()) is None
    assert decompose(platonic("icosahedron")) is None


# reduce


def test_reduce_b1_deletes_edge():
    G = k4()
    m = next(m for m in detect_all(G) if m.config_id == "B1")
    step = reduce(G, m)
    (H,) = step.children
    assert H.num_edges == 5 and not H.has_edge(m["u"], m["v"])


def test_reduce_contracts_two_vertex():
    G = cycle(6)
    m = next(m for m in detect_all(G) if m.config_id == "LNN")
    assert m.reduction.kind == "contract"
    (H,) = reduce(G, m).children
    assert H.num_vertices == 5 and H.num_edges == 5


def test_reduce_ln_on_c5_deletes_all_loose_edges():
    G = cycle(5)
    m = next(m for m in detect_all(G) if m.config_id == "LN")
    assert len(m.reduction.edges) == 5
    step = reduce(G, m)
    assert step.children == []  # nothing but isolated vertices remains
    lam = colour_via(G, m)
    assert valid_total(G, lam)


def test_reduce_rejects_bridge():
    G = k11()
    m = ConfigurationMatch("B1", (("u", 0), ("v", 1), ("f", 0)), Reduction("delete", ((0, 1),)))
    with pytest.raises(SurgeryPreconditionFailed):
        reduce(G, m)


def test_reduce_rejects_bad_contraction():
    G = k3()
    m = ConfigurationMatch("LNN", (("u", 0), ("v", 1)), Reduction("contract", vertex=0, keep=1))
    with pytest.raises(SurgeryPreconditionFailed):
        reduce(G, m)


def test_reductions_shrink():
    for s in range(30):
        G = subgraph(20, 8, s)
        step = choose_step(G)
        assert sum(H.num_edges for H in step.children) < G.num_edges


# extension


def test_b1_on_k4_end_to_end():
    G = k4()
    m = next(m for m in detect_all(G) if m.config_id == "B1")
    assert valid_total(G, colour_via(G, m))


def test_leaf_on_star():
    G = star(9)
    m = next(m for m in detect_all(G) if m.config_id == "A0")
    stats = SolverStats()
    assert valid_total(G, colour_via(G, m, stats))
    assert stats.outcomes["A0"]["greedy"] >= 1


def test_fallback_extend_directly():
    for s in range(10):
        G = triangulation(15, 8, s)
        m = detect_all(G)[0]
        if m.reduction.kind == "redirect":
            continue
        step, lam = lifted(G, m)
        assert valid_total(G, fallback_extend(G, step, lam))


def test_run_script_moves():
    G = k3()
    lam = EdgeFaceColouring({(0, 1): 1, (1, 2): 2}, {0: 4, 1: 5})
    out = run_script(G, lam, [("greedy", ((0, 2),))])
    assert out.edges[(0, 2)] == 3
    # giving 0-2 the colour of 0-1 clashes, and nothing repairs it
    assert run_script(G, lam, [("with", (0, 2), (0, 1))]) is None
    out = run_script(G, lam, [("swap", (0, 1), (1, 2))])
    assert out.edges[(0, 1)] == 2 and out.edges[(1, 2)] == 1
    assert valid_total(G, greedy_complete(G, out))
    assert run_script(G, lam, [("uncolour", 0), ("free", (0, 2))]) is not None
    with pytest.raises(ValueError):
        run_script(G, lam, [("teleport", 0)])


def _corpus():
    yield from enumerate_small(5)
    for s in range(400):
        yield triangulation(8 + s % 25, 8, s)
        yield subgraph(8 + s % 25, 8, s)


def test_every_script_class_succeeds_somewhere():
    scripted = [c for c in CONFIG_IDS if c not in ("A0", "A3", "B1", "C1", "LN", "LNN")]
    pending = set(scripted)
    for G in _corpus():
        if not pending:
            break
        for cid in sorted(pending):
            for m in detect(G, [cid])[:3]:
                if m.reduction.kind == "redirect":
                    continue
                try:
                    step, lam = lifted(G, m)
                except SurgeryPreconditionFailed:
                    continue
                outs = [run_script(G, lam, mv) for mv in lemma_scripts(G, m)]
                good = [o for o in outs if o is not None]
                assert all(o.is_nice(G) and valid_total(G, greedy_complete(G, o)) for o in good)
                if good:
                    pending.discard(cid)
                    break
    assert not pending, f"scripts never succeeded for {sorted(pending)}"


def test_forced_reduction_for_every_class():
    pending = set(CONFIG_IDS)
    for G in _corpus():
        if not pending:
            break
        for cid in sorted(pending):
            for m in detect(G, [cid])[:2]:
                if m.reduction.kind == "redirect":
                    continue
                try:
                    lam = colour_via(G, m)
                except SurgeryPreconditionFailed:
                    continue
                assert valid_total(G, lam), str(m)
                pending.discard(cid)
                break
    assert not pending, sorted(pending)


def test_priority_covers_catalogue():
    assert set(PRIORITY) | {"A0"} == set(CONFIG_IDS)


# properties


@given(plane_graphs(max_n=40))
def test_colour_is_valid(G):
    lam, stats = colour_with_stats(G)
    assert valid_total(G, lam)
    assert stats.missing_configuration == 0
    assert len(stats.blocked) == stats.fallback_count()


def test_small_corpus_no_fallback(small_corpus):
    total = SolverStats()
    for G in small_corpus:
        lam, stats = colour_with_stats(G)
        assert valid_total(G, lam)
        total.merge(stats)
    assert total.fallback_count() == 0
    assert total.blocked == []
