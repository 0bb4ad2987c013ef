import pytest
from hypothesis import given

from oracles import irreducible_oracle, period_oracle
from sftc.errors import MalformedInput, NoCycle
from sftc.fixtures import graph
from sftc.graphs import (
    Edge,
    Graph,
    GraphHom,
    is_irreducible,
    period,
    presented_isomorphic,
    product_graph,
    trim_essential,
    validate_graph,
)
from sftc.coverings import full_shift
from sftc.linalg import Matrix
from strategies import essential_graphs, graphs, square_matrices


def test_validate_examples():
    rep = validate_graph(full_shift(2), require_essential=True)
    assert rep.valid and rep.essential
    path = Graph(["a", "b"], [Edge("e", "a", "b")])
    rep = validate_graph(path, require_essential=True)
    assert not rep.valid
    assert "a" in rep.sources and "b" in rep.sinks
    assert validate_graph(graph("golden"), require_essential=True).valid


def test_malformed_rejected():
    with pytest.raises(MalformedInput):
        Graph(["a", "a"], [])
    with pytest.raises(MalformedInput):
        Graph(["a"], [Edge("e", "a", "z")])
    with pytest.raises(MalformedInput):
        Graph(["a"], [Edge("e", "a", "a"), Edge("e", "a", "a")])


def test_adjacency_counts_parallel_edges():
    g = Graph(["a", "b"], [Edge("1", "a", "b"), Edge("2", "a", "b"), Edge("3", "b", "a")])
    assert g.adjacency == Matrix([[0, 2], [1, 0]])
    assert Graph.from_matrix(g.adjacency).adjacency == g.adjacency


@pytest.mark.parametrize("name, p", [("cycle2", 2), ("full2", 1), ("golden", 1), ("cycle3", 3), ("b02", 2)])
def test_period_examples(name, p):
    assert period(graph(name)) == p


def test_period_needs_cycle():
    with pytest.raises(NoCycle):
        period(Graph(["a", "b"], [Edge("e", "a", "b")]))


def test_irreducible_examples():
    assert is_irreducible(full_shift(2))
    assert not is_irreducible(graph("two_loops"))
    assert is_irreducible(graph("golden"))


@given(square_matrices(max_n=5, max_entry=3))
def test_irreducible_against_closure(rows):
    assert is_irreducible(Graph.from_matrix(Matrix(rows))) == irreducible_oracle(rows)


def test_product_examples():
    p = product_graph(full_shift(2), full_shift(3))
    assert len(p.vertices) == 1 and len(p.edges) == 6
    assert product_graph(full_shift(2), graph("cycle2")).adjacency == Matrix([[0, 2], [2, 0]])
    g = graph("golden")
    assert presented_isomorphic(product_graph(g, full_shift(1)), g) is not None


@given(essential_graphs(3), essential_graphs(3))
def test_product_is_kronecker(g, h):
    assert product_graph(g, h).adjacency == g.adjacency.kron(h.adjacency)


@given(essential_graphs(3, 2), essential_graphs(3, 2))
def test_product_period_against_walks(g, h):
    p = product_graph(g, h)
    if not is_irreducible(g) or not is_irreducible(h):
        return
    bound = len(g.vertices) * len(h.vertices) * 4
    assert period(p) == period_oracle(p, bound)


def test_trim_examples():
    path = Graph(["a", "b", "c"], [Edge("x", "a", "b"), Edge("y", "b", "c")])
    assert trim_essential(path).graph.is_empty()
    stray = Graph(["a", "b"], [Edge("l", "a", "a"), Edge("s", "a", "b")])
    t = trim_essential(stray).graph
    assert t.vertices == ("a",) and [e.id for e in t.edges] == ["l"]
    g = graph("golden")
    t = trim_essential(g)
    assert t.graph == g
    assert all(k == v for k, v in t.vertex_map.items())


@given(graphs(5, 2))
def test_trim_idempotent(g):
    once = trim_essential(g).graph
    assert trim_essential(once).graph == once
    if not once.is_empty():
        assert validate_graph(once, require_essential=True).valid


def test_isomorphism_examples():
    g = full_shift(2)
    assert presented_isomorphic(g, g.relabeled(edge_names={"x0": "p", "x1": "q"})) is not None
    assert presented_isomorphic(full_shift(2), full_shift(3)) is None
    assert presented_isomorphic(graph("cycle2"), graph("golden")) is None


def test_hom_checks_incidence():
    g = graph("cycle2")
    base = full_shift(1)
    ok = GraphHom(g, base, {"v0": "v", "v1": "v"}, {e.id: "x0" for e in g.edges})
    assert ok.is_surjective()
    with pytest.raises(MalformedInput):
        GraphHom(base, g, {"v": "v0"}, {"x0": g.edges[0].id})
