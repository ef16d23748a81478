from __future__ import annotations

import networkx as nx
import pytest
from conftest import k3
from hypothesis import given
from hypothesis import strategies as st
from strategies import plane_graphs

from edgeface.colouring import EdgeFaceColouring
from edgeface.configs import detect_all
from edgeface.discharge import apply_rules
from edgeface.embed import build_from_rotations
from edgeface.exceptions import DocumentSyntaxError, NonPlanarEmbedding, SemanticError
from edgeface.io_gen.enumerate import canonical_code, enumerate_small
from edgeface.io_gen.formats import (
    parse_colouring,
    parse_graph,
    parse_rotation,
    serialise_colouring,
    serialise_graph,
)
from edgeface.io_gen.generators import (
    InfeasibleParameters,
    cycle,
    generate,
    platonic,
    star,
    subgraph,
    tree,
    triangulation,
)
from edgeface.solver import colour

# formats


def test_parse_k3():
    G = parse_graph("vertex 0: 1 2\nvertex 1: 2 0\nvertex 2: 0 1")
    assert G == k3()


def test_missing_reciprocal():
    with pytest.raises(SemanticError):
        parse_graph("vertex 0: 1\nvertex 1:\n")


def test_k5_document_rejected():
    text = "\n".join(f"vertex {v}: " + " ".join(str(w) for w in range(5) if w != v) for v in range(5))
    with pytest.raises(SemanticError) as info:
        parse_graph(text)
    assert isinstance(info.value.__cause__, NonPlanarEmbedding)


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("vertex 0: 1\nvertx 1: 0\n", 2, 1),
        ("vertex 0: 1 x\n", 1, 13),
        ("vertex a: 1\n", 1, 8),
        ("  vertex 0 1\n", 1, 3),
    ],
)
def test_syntax_errors_carry_position(text, line, column):
    with pytest.raises(DocumentSyntaxError) as info:
        parse_graph(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_comments_and_blank_lines():
    rot = parse_rotation("# planegraph v1\n\nvertex 0: 1 # trailing\nvertex 1: 0\n")
    assert rot == {0: [1], 1: [0]}


def test_duplicate_vertex_line():
    with pytest.raises(SemanticError):
        parse_rotation("vertex 0: 1\nvertex 0: 1\nvertex 1: 0\n")


def test_canonical_serialisation():
    G = build_from_rotations({2: [0, 1], 0: [1, 2], 1: [2, 0]})
    assert serialise_graph(G) == "# planegraph v1\nvertex 0: 1 2\nvertex 1: 0 2\nvertex 2: 0 1\n"


def test_colouring_round_trip_and_errors():
    G = k3()
    lam = EdgeFaceColouring({(0, 1): 1, (1, 2): 2, (0, 2): 3}, {0: 4, 1: 5})
    text = serialise_colouring(lam)
    assert parse_colouring(text, G) == lam
    with pytest.raises(SemanticError):
        parse_colouring("edge 0 1 10\n", G)
    with pytest.raises(SemanticError):
        parse_colouring("face 7 1\n", G)
    with pytest.raises(SemanticError):
        parse_colouring("edge 0 1 1\nedge 1 0 2\n", G)
    with pytest.raises(DocumentSyntaxError):
        parse_colouring("edge 0 1\n", G)


@given(plane_graphs(max_n=40))
def test_graph_round_trip(G):
    text = serialise_graph(G)
    H = parse_graph(text)
    assert H == G and H.rotation() == G.rotation()
    assert serialise_graph(H) == text


@given(plane_graphs(max_n=20))
def test_colouring_round_trip(G):
    lam = colour(G)
    text = serialise_colouring(lam)
    assert parse_colouring(text, G) == lam
    assert serialise_colouring(parse_colouring(text, G)) == text


# generators


def test_star_nine_is_k18():
    G = generate("star", 9)
    assert G.degree(0) == 8 and all(G.degree(v) == 1 for v in range(1, 9))


def test_icosahedron():
    G = platonic("icosahedron")
    assert G.num_vertices == 12 and all(G.degree(v) == 5 for v in G.vertices)
    assert all(f.degree == 3 for f in G.faces)


@pytest.mark.parametrize(
    "name, V, E, face_deg",
    [("tetrahedron", 4, 6, 3), ("cube", 8, 12, 4), ("octahedron", 6, 12, 3), ("dodecahedron", 20, 30, 5)],
)
def test_platonic_solids(name, V, E, face_deg):
    G = platonic(name)
    assert (G.num_vertices, G.num_edges) == (V, E)
    assert all(f.degree == face_deg for f in G.faces)


def test_triangulation_determinism():
    a = serialise_graph(generate("triangulation", 50, seed=7))
    b = serialise_graph(generate("triangulation", 50, seed=7))
    assert a == b
    assert a != serialise_graph(generate("triangulation", 50, seed=8))


def test_triangulation_is_maximal():
    G = triangulation(40, 8, 3)
    assert G.num_edges == 3 * 40 - 6 and G.max_degree() <= 8


@pytest.mark.parametrize(
    "call",
    [
        lambda: star(10),
        lambda: star(1),
        lambda: cycle(2),
        lambda: tree(0),
        lambda: triangulation(2),
        lambda: platonic("sphere"),
        lambda: generate("blob", 5),
    ],
)
def test_infeasible_parameters(call):
    with pytest.raises(InfeasibleParameters):
        call()


@given(
    st.sampled_from(["tree", "cycle", "triangulation", "subgraph"]),
    st.integers(3, 60),
    st.integers(6, 8),
    st.integers(0, 10**6),
)
def test_generator_outputs(kind, n, cap, seed):
    G = generate(kind, n, cap, seed)
    assert G.is_connected() and G.num_vertices == n
    assert G.max_degree() <= cap
    assert generate(kind, n, cap, seed) == G


def test_subgraph_keep_extremes():
    full = subgraph(30, 8, 2, keep=1.0)
    assert full.num_edges == 3 * 30 - 6
    sparse = subgraph(30, 8, 2, keep=0.0)
    assert sparse.num_edges == 29  # a spanning tree


# enumeration


def test_enumeration_counts():
    counts = {}
    for G in enumerate_small(5):
        counts[G.num_vertices] = counts.get(G.num_vertices, 0) + 1
    assert counts[2] == 1
    assert counts[3] == 2  # the path P3 and one embedding of K3


def test_enumeration_emits_valid_distinct_classes(small_corpus):
    codes = set()
    for G in small_corpus:
        assert G.is_connected()
        assert G.num_vertices - G.num_edges + G.num_faces == 2
        code, _ = canonical_code({v: tuple(G.neighbours(v)) for v in G.vertices})
        assert code not in codes
        codes.add(code)


def test_enumeration_covers_all_connected_planar_graphs():
    # every connected planar graph on <= 5 vertices appears at least once
    seen = [G.to_networkx() for G in enumerate_small(5)]
    for g in nx.graph_atlas_g():
        if 2 <= g.number_of_nodes() <= 5 and nx.is_connected(g) and nx.check_planarity(g)[0]:
            assert any(nx.is_isomorphic(g, h) for h in seen if h.number_of_edges() == g.number_of_edges())


def test_relabelling_gives_same_code():
    G = triangulation(6, 8, 0)
    rot = {v: tuple(G.neighbours(v)) for v in G.vertices}
    perm = {v: (v * 5 + 1) % 6 for v in rot}
    moved = {perm[v]: tuple(perm[w] for w in r) for v, r in rot.items()}
    assert canonical_code(rot)[0] == canonical_code(moved)[0]


def test_enumeration_limit():
    with pytest.raises(ValueError):
        list(enumerate_small(7))


def test_small_corpus_properties(small_corpus):
    for G in small_corpus:
        assert detect_all(G)
        assert apply_rules(G).total() == -12
