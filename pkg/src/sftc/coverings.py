"""Left and right covering maps and the correspondence built from an intertwiner.

A left covering is bijective on incoming edge sets at every vertex and
presents an s-bijective map of edge shifts; a right covering is bijective
on outgoing edge sets and presents a u-bijective map.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .dimgroups import STABLE, UNSTABLE, DimGroupPres, lagged_hom_new
from .errors import (
    DimensionMismatch,
    NotCovering,
    NotEssential,
    NotIntertwining,
    NotSurjective,
    ZeroMatrix,
)
from .graphs import Edge, Graph, GraphHom
from .linalg import Matrix

LEFT = "left"
RIGHT = "right"


@dataclass(frozen=True, eq=False)
class CoveringMap:
    hom: GraphHom
    side: str

    @property
    def domain(self):
        return self.hom.domain

    @property
    def codomain(self):
        return self.hom.codomain


def covering_violation(hom, side):
    """First vertex where the local bijection fails, or None."""
    dom, cod = hom.domain, hom.codomain
    local_dom = dom.in_edges if side == LEFT else dom.out_edges
    local_cod = cod.in_edges if side == LEFT else cod.out_edges
    for v in dom.vertices:
        images = [hom.edge_map[e.id] for e in local_dom[v]]
        if len(set(images)) != len(images) or len(images) != len(local_cod[hom.vertex_map[v]]):
            return v
    return None


def verify_covering(hom, side):
    if side not in (LEFT, RIGHT):
        raise ValueError(f"unknown side {side!r}")
    bad = covering_violation(hom, side)
    if bad is not None:
        kind = "incoming" if side == LEFT else "outgoing"
        raise NotCovering(f"{kind} edges at {bad} are not mapped bijectively", vertex=bad, side=side)
    if not hom.is_surjective():
        raise NotSurjective("covering maps must be onto vertices and edges")
    return CoveringMap(hom, side)


def vertex_incidence(hom):
    """0-1 matrix with rows indexed by codomain vertices: entry (I, J) is 1 iff J maps to I."""
    dom, cod = hom.domain, hom.codomain
    ci = cod.vertex_index
    out = [[0] * len(dom.vertices) for _ in cod.vertices]
    for j, v in enumerate(dom.vertices):
        out[ci[hom.vertex_map[v]]][j] = 1
    return Matrix(out, len(cod.vertices), len(dom.vertices))


def induced_matrix(c):
    """D (codomain x domain) for a left covering, E (domain x codomain) for a right one."""
    inc = vertex_incidence(c.hom)
    return inc if c.side == LEFT else inc.T


def induced_hom(c, side=STABLE):
    """The dimension-group map a covering induces on the given side.

    On the stable side a left covering pushes forward (D) and a right
    covering pulls back (E); on the unstable side the roles swap and the
    matrices are transposed.
    """
    m = induced_matrix(c)
    dom = DimGroupPres(c.domain.adjacency, side)
    cod = DimGroupPres(c.codomain.adjacency, side)
    pushes = (c.side == LEFT) == (side == STABLE)
    if side == UNSTABLE:
        m = m.T
    if pushes:
        return lagged_hom_new(dom, cod, m, 0)
    return lagged_hom_new(cod, dom, m, 0)


# ---------------------------------------------------------------------------
# Lind-Marcus construction


@dataclass(frozen=True)
class FEdgeSet:
    h_vertices: tuple
    g_vertices: tuple
    f: Matrix
    edges: tuple

    def between(self, i, j):
        return [e for e in self.edges if e.src == i and e.dst == j]


def f_edges(f, g, h):
    edges = []
    for a, i in enumerate(h.vertices):
        for b, j in enumerate(g.vertices):
            for k in range(f[a, b]):
                edges.append(Edge(f"F:{i}:{j}:{k}", i, j))
    return FEdgeSet(h.vertices, g.vertices, f, tuple(edges))


@dataclass(frozen=True, eq=False)
class LindMarcus:
    m: Graph
    theta_u: CoveringMap
    theta_s: CoveringMap
    fedges: FEdgeSet
    d: Matrix
    e: Matrix


def _lex_policy(i, j, p1, p2):
    return list(p2)


def _fibre_policy(i, j, p1, p2):
    # group the targets by their F-edge first
    return sorted(p2, key=lambda pair: (pair[1][1], pair[0][1]))


def _seeded_policy(seed):
    rng = random.Random(seed)

    def policy(i, j, p1, p2):
        out = list(p2)
        rng.shuffle(out)
        return out

    return policy


def resolve_policy(policy):
    """Turn ``"lex"``, ``"fibre"``, ``"seeded:<n>"`` or a callable into a matcher."""
    if callable(policy):
        return policy
    if policy in (None, "lex"):
        return _lex_policy
    if policy == "fibre":
        return _fibre_policy
    if isinstance(policy, str) and policy.startswith("seeded:"):
        return _seeded_policy(int(policy.split(":", 1)[1]))
    raise ValueError(f"unknown bijection policy {policy!r}")


def lind_marcus_build(f, g, h, policy="lex"):
    """Correspondence from an intertwiner F with F A_g = A_h F.

    Vertices of the middle graph are the F-edges (from an H-vertex to a
    G-vertex).  For every pair (I, J) the paths "F-edge then G-edge" and
    "H-edge then F-edge" from I to J are equinumerous; the policy chooses a
    bijection between them, and each matched pair becomes one edge of the
    middle graph.  Paths are listed in declaration order of their edges,
    so the default ``"lex"`` policy is deterministic.

    ``policy`` is one of ``"lex"``, ``"fibre"``, ``"seeded:<n>"`` or a
    callable ``(I, J, p1, p2) -> reordered p2``; each element of p1 is an
    ``(F-edge, G-edge)`` pair and each element of p2 an ``(H-edge, F-edge)``
    pair, as ``(id, order key)`` tuples.
    """
    ag, ah = g.adjacency, h.adjacency
    if f.shape != (ah.rows, ag.rows):
        raise DimensionMismatch(f"F has shape {f.shape}, expected {(ah.rows, ag.rows)}")
    if not f.is_nonnegative() or not f.is_integral():
        raise ValueError("F must be a nonnegative integer matrix")
    if f.is_zero():
        raise ZeroMatrix("F must be nonzero")
    if not (g.is_essential() and h.is_essential()):
        raise NotEssential("both graphs must be essential")
    left, right = f @ ag, ah @ f
    if left != right:
        bad = next((i, j) for i in range(left.rows) for j in range(left.cols) if left[i, j] != right[i, j])
        raise NotIntertwining(f"F A_G != A_H F at entry {bad}", entry=bad)

    match = resolve_policy(policy)
    fe = f_edges(f, g, h)
    g_order = {e.id: k for k, e in enumerate(g.edges)}
    h_order = {e.id: k for k, e in enumerate(h.edges)}
    f_order = {e.id: k for k, e in enumerate(fe.edges)}
    f_by_src = {v: [e for e in fe.edges if e.src == v] for v in h.vertices}

    m_edges = []
    edge_u, edge_s = {}, {}
    for i in h.vertices:
        for j in g.vertices:
            p1 = [
                ((ef.id, f_order[ef.id]), (eg.id, g_order[eg.id]))
                for ef in f_by_src[i]
                for eg in g.out_edges[ef.dst]
                if eg.dst == j
            ]
            p2 = [
                ((eh.id, h_order[eh.id]), (ef.id, f_order[ef.id]))
                for eh in h.out_edges[i]
                for ef in f_by_src[eh.dst]
                if ef.dst == j
            ]
            p1.sort(key=lambda pair: (pair[0][1], pair[1][1]))
            p2.sort(key=lambda pair: (pair[0][1], pair[1][1]))
            assert len(p1) == len(p2)
            targets = match(i, j, p1, p2)
            if sorted(targets) != sorted(p2):
                raise ValueError("bijection policy must return a permutation of its targets")
            for ((ef, _), (eg, _)), ((eh, _), ef2) in zip(p1, targets):
                eid = f"m[{ef}|{eg}|{eh}|{ef2[0]}]"
                m_edges.append(Edge(eid, ef, ef2[0]))
                edge_u[eid] = eg
                edge_s[eid] = eh

    m = Graph([e.id for e in fe.edges], m_edges)
    fe_index = {e.id: e for e in fe.edges}
    theta_u = verify_covering(
        GraphHom(m, g, {v: fe_index[v].dst for v in m.vertices}, edge_u), RIGHT
    )
    theta_s = verify_covering(
        GraphHom(m, h, {v: fe_index[v].src for v in m.vertices}, edge_s), LEFT
    )
    assert m.is_essential()
    d, e = induced_matrix(theta_s), induced_matrix(theta_u)
    assert d @ e == f
    return LindMarcus(m, theta_u, theta_s, fe, d, e)


def full_shift(k, vertex="v"):
    """One vertex with k loops."""
    return Graph([vertex], [Edge(f"x{i}", vertex, vertex) for i in range(k)])


def cyclic_cover(n, k):
    """n-fold cyclic cover of the k-loop vertex, with its covering hom.

    Vertices 0..n-1; loop ``x_l`` lifts to edges i -> i+1 mod n.  The map
    is both a left and a right covering.
    """
    base = full_shift(k)
    verts = [f"c{i}" for i in range(n)]
    edges, emap = [], {}
    for i in range(n):
        for loop in base.edges:
            eid = f"{loop.id}@{i}"
            edges.append(Edge(eid, verts[i], verts[(i + 1) % n]))
            emap[eid] = loop.id
    cover = Graph(verts, edges)
    return GraphHom(cover, base, {v: base.vertices[0] for v in verts}, emap)
