import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from oracles import covering_oracle
from sftc.coverings import (
    LEFT,
    RIGHT,
    CoveringMap,
    covering_violation,
    cyclic_cover,
    full_shift,
    induced_hom,
    induced_matrix,
    lind_marcus_build,
    verify_covering,
)
from sftc.dimgroups import lagged_hom_compose, lagged_hom_equal, scalar_hom
from sftc.errors import (
    DimensionMismatch,
    NotCovering,
    NotEssential,
    NotIntertwining,
    NotSurjective,
    ZeroMatrix,
)
from sftc.fixtures import MATRICES, double_cover, graph
from sftc.graphs import Edge, Graph, GraphHom
from sftc.linalg import Matrix
from strategies import factor_pairs

F2 = full_shift(2)


def spec_double_cover():
    m = Graph(["0", "1"], [Edge("a0", "0", "1"), Edge("b0", "0", "1"), Edge("a1", "1", "0"), Edge("b1", "1", "0")])
    loops = Graph(["v"], [Edge("a", "v", "v"), Edge("b", "v", "v")])
    emap = {"a0": "a", "a1": "a", "b0": "b", "b1": "b"}
    return GraphHom(m, loops, {"0": "v", "1": "v"}, emap)


def test_double_cover_both_sides():
    hom = spec_double_cover()
    assert verify_covering(hom, LEFT).side == LEFT
    assert verify_covering(hom, RIGHT).side == RIGHT


def test_identity_covers_both_sides(fixture_graph):
    ident = GraphHom.identity(fixture_graph)
    for side in (LEFT, RIGHT):
        verify_covering(ident, side)


def test_two_cycle_collapse():
    g = graph("cycle2")
    base = full_shift(1)
    hom = GraphHom(g, base, {v: "v" for v in g.vertices}, {e.id: "x0" for e in g.edges})
    verify_covering(hom, LEFT)
    verify_covering(hom, RIGHT)


def test_covering_violation_reported():
    # two loops at one vertex onto a single loop: in-edges collide
    g = Graph(["a"], [Edge("p", "a", "a"), Edge("q", "a", "a")])
    base = full_shift(1)
    hom = GraphHom(g, base, {"a": "v"}, {"p": "x0", "q": "x0"})
    assert covering_violation(hom, LEFT) == "a"
    with pytest.raises(NotCovering) as exc:
        verify_covering(hom, LEFT)
    assert exc.value.vertex == "a" and exc.value.side == LEFT


def test_non_surjective_rejected():
    g = graph("two_loops")
    sub = Graph(["v0"], [g.edges[0]])
    with pytest.raises(NotSurjective):
        verify_covering(GraphHom(sub, g, {"v0": "v0"}, {g.edges[0].id: g.edges[0].id}), LEFT)


def test_covering_agrees_with_oracle():
    homs = [spec_double_cover(), cyclic_cover(3, 2), cyclic_cover(2, 3)]
    homs += [GraphHom.identity(graph(n)) for n in MATRICES]
    c = double_cover()
    homs += [c.theta_u.hom, c.theta_s.hom]
    bad = Graph(["a"], [Edge("p", "a", "a"), Edge("q", "a", "a")])
    homs.append(GraphHom(bad, full_shift(1), {"a": "v"}, {"p": "x0", "q": "x0"}))
    for hom in homs:
        for side in (LEFT, RIGHT):
            try:
                verify_covering(hom, side)
                ok = True
            except (NotCovering, NotSurjective):
                ok = False
            assert ok == covering_oracle(hom, side)


def test_induced_matrices():
    g = graph("two_loops")
    ident = verify_covering(GraphHom.identity(g), LEFT)
    assert induced_matrix(ident) == Matrix.identity(2)
    hom = spec_double_cover()
    assert induced_matrix(verify_covering(hom, LEFT)) == Matrix([[1, 1]])
    assert induced_matrix(verify_covering(hom, RIGHT)) == Matrix([[1], [1]])


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("k", [2, 3])
def test_cyclic_cover_n_to_one(n, k):
    hom = cyclic_cover(n, k)
    d = induced_hom(verify_covering(hom, LEFT))
    e = induced_hom(verify_covering(hom, RIGHT))
    assert lagged_hom_equal(lagged_hom_compose(d, e), scalar_hom(d.target, n))


def test_lm_single_vertex():
    lm = lind_marcus_build(Matrix([[1]]), F2, F2)
    assert len(lm.m.vertices) == 1 and len(lm.m.edges) == 2
    assert lm.d @ lm.e == Matrix([[1]])


def test_lm_two_vertices():
    lm = lind_marcus_build(Matrix([[2]]), F2, F2)
    assert len(lm.m.vertices) == 2
    assert lm.d == Matrix([[1, 1]]) and lm.e == Matrix([[1], [1]])
    assert lm.d @ lm.e == Matrix([[2]])


def test_lm_cycle_to_loop():
    lm = lind_marcus_build(Matrix([[1, 1]]), graph("cycle2"), full_shift(1))
    assert len(lm.m.vertices) == 2
    assert lm.d @ lm.e == Matrix([[1, 1]])


def test_policies_keep_vertices_and_matrices():
    f = Matrix([[1, 1]])
    g, h = graph("b02"), F2
    builds = [lind_marcus_build(f, g, h, p) for p in ("lex", "fibre", "seeded:1", "seeded:7")]
    for lm in builds[1:]:
        assert lm.m.vertices == builds[0].m.vertices
        assert lm.d == builds[0].d and lm.e == builds[0].e


def test_custom_policy_callable():
    lm = lind_marcus_build(Matrix([[2]]), F2, F2, lambda i, j, p1, p2: list(reversed(p2)))
    assert lm.d @ lm.e == Matrix([[2]])
    with pytest.raises(ValueError):
        lind_marcus_build(Matrix([[2]]), F2, F2, lambda i, j, p1, p2: p2[:1])


def test_lm_rejections():
    with pytest.raises(DimensionMismatch):
        lind_marcus_build(Matrix([[1, 1]]), F2, F2)
    with pytest.raises(ZeroMatrix):
        lind_marcus_build(Matrix([[0]]), F2, F2)
    with pytest.raises(NotIntertwining):
        lind_marcus_build(Matrix([[1]]), F2, full_shift(3))
    path = Graph(["a", "b"], [Edge("e", "a", "b")])
    with pytest.raises(NotEssential):
        lind_marcus_build(Matrix([[1, 1]]), path, full_shift(1))
    with pytest.raises(NotSurjective):
        lind_marcus_build(Matrix([[1, 0], [0, 0]]), graph("two_loops"), graph("two_loops"))
    with pytest.raises(ValueError):
        lind_marcus_build(Matrix([[2]]), F2, F2, "nonsense")


def test_covering_map_wrapper():
    c = verify_covering(spec_double_cover(), LEFT)
    assert isinstance(c, CoveringMap)
    assert c.codomain.vertices == ("v",)


@given(factor_pairs(), st.integers(0, 1000))
def test_lm_de_equals_f_and_policy_invariance(rs, seed):
    r, s = rs
    g, h = Graph.from_matrix(s @ r), Graph.from_matrix(r @ s)
    assume(g.is_essential() and h.is_essential())
    a = lind_marcus_build(r, g, h, "lex")
    b = lind_marcus_build(r, g, h, f"seeded:{seed}")
    assert a.d @ a.e == r
    assert (a.m.vertices, a.d, a.e) == (b.m.vertices, b.d, b.e)
    assert covering_oracle(a.theta_u.hom, RIGHT) and covering_oracle(a.theta_s.hom, LEFT)
