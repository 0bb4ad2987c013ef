"""Correspondences between edge shifts presented by covering maps.

A correspondence from G to H is a middle graph M with a right covering
``theta_u: M -> G`` and a left covering ``theta_s: M -> H``.  Composition
is the fibre product of the inner legs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .coverings import LEFT, RIGHT, CoveringMap, induced_hom, lind_marcus_build, verify_covering
from .dimgroups import STABLE, UNSTABLE, Proportion, lagged_hom_compose, lagged_hom_equal, rationally_proportional
from .errors import CodomainMismatch, MiddleMismatch, NotCovering, NotSurjective, SignatureMismatch
from .graphs import Edge, Graph, GraphHom, find_isomorphism, trim_essential


@dataclass(frozen=True, eq=False)
class Correspondence:
    left: Graph
    right: Graph
    mid: Graph
    theta_u: CoveringMap
    theta_s: CoveringMap
    diagnostics: dict = field(default=None, compare=False)


def _as_covering(theta, side, name):
    if isinstance(theta, CoveringMap):
        if theta.side != side:
            raise NotCovering(f"{name} must be a {side} covering, got {theta.side}", side=side)
        return verify_covering(theta.hom, side)
    return verify_covering(theta, side)


def correspondence_new(g, h, m, theta_u, theta_s):
    theta_u = _as_covering(theta_u, RIGHT, "theta_u")
    theta_s = _as_covering(theta_s, LEFT, "theta_s")
    if theta_u.domain != m or theta_s.domain != m:
        raise CodomainMismatch("both legs must start at the middle graph")
    if theta_u.codomain != g:
        raise CodomainMismatch("theta_u must land on the left graph")
    if theta_s.codomain != h:
        raise CodomainMismatch("theta_s must land on the right graph")
    for graph in (g, h, m):
        if not graph.is_essential():
            raise NotCovering("correspondence graphs must be essential")
    return Correspondence(g, h, m, theta_u, theta_s)


def identity_correspondence(g):
    ident = GraphHom.identity(g)
    return correspondence_new(g, g, g, ident, ident)


def lind_marcus_correspondence(f, g, h, policy="lex"):
    lm = lind_marcus_build(f, g, h, policy)
    return Correspondence(g, h, lm.m, lm.theta_u, lm.theta_s)


@dataclass(frozen=True)
class EmptyComposite:
    """Composition whose fibre product has no bi-infinite paths."""

    vertices_before_trim: int
    edges_before_trim: int


def fibre_product(p, q):
    """Fibre product of homs p: A -> C and q: B -> C, with both projections."""
    a, b = p.domain, q.domain
    verts, pairs = [], {}
    for v in a.vertices:
        for w in b.vertices:
            if p.vertex_map[v] == q.vertex_map[w]:
                vid = f"({v},{w})"
                verts.append(vid)
                pairs[vid] = (v, w)
    edges, epairs = [], {}
    for e in a.edges:
        for f in b.edges:
            if p.edge_map[e.id] == q.edge_map[f.id]:
                eid = f"({e.id},{f.id})"
                edges.append(Edge(eid, f"({e.src},{f.src})", f"({e.dst},{f.dst})"))
                epairs[eid] = (e.id, f.id)
    prod = Graph(verts, edges)
    p1 = GraphHom(prod, a, {v: pairs[v][0] for v in verts}, {e: epairs[e][0] for e in epairs})
    p2 = GraphHom(prod, b, {v: pairs[v][1] for v in verts}, {e: epairs[e][1] for e in epairs})
    return prod, p1, p2


def compose_correspondences(c1, c2):
    """c2 after c1: G => H => K becomes G => K through the fibre product over H."""
    if c1.right != c2.left:
        raise MiddleMismatch("right graph of c1 differs from left graph of c2")
    prod, p1, p2 = fibre_product(c1.theta_s.hom, c2.theta_u.hom)
    # one-sided projections are coverings before trimming
    verify_covering(p1, RIGHT)
    verify_covering(p2, LEFT)
    trimmed = trim_essential(prod).graph
    if trimmed.is_empty():
        return EmptyComposite(len(prod.vertices), len(prod.edges))
    leg_u = p1.then(c1.theta_u.hom).restrict(trimmed)
    leg_s = p2.then(c2.theta_s.hom).restrict(trimmed)
    diag = {
        "fibre_vertices": len(prod.vertices),
        "fibre_edges": len(prod.edges),
        "trimmed_vertices": len(prod.vertices) - len(trimmed.vertices),
        "trimmed_edges": len(prod.edges) - len(trimmed.edges),
    }
    return Correspondence(
        c1.left, c2.right, trimmed,
        verify_covering(leg_u, RIGHT), verify_covering(leg_s, LEFT), diag,
    )


@dataclass(frozen=True)
class InducedMaps:
    s_map: object
    u_map: object


def induced_maps(c):
    """Stable map D^s(G) -> D^s(H) and unstable map D^u(H) -> D^u(G)."""
    s_map = lagged_hom_compose(induced_hom(c.theta_s, STABLE), induced_hom(c.theta_u, STABLE))
    u_map = lagged_hom_compose(induced_hom(c.theta_u, UNSTABLE), induced_hom(c.theta_s, UNSTABLE))
    return InducedMaps(s_map, u_map)


def _same_signature(c1, c2):
    if c1.left != c2.left or c1.right != c2.right:
        raise SignatureMismatch("correspondences join different graphs")


def h_equivalent(c1, c2):
    _same_signature(c1, c2)
    m1, m2 = induced_maps(c1), induced_maps(c2)
    return lagged_hom_equal(m1.s_map, m2.s_map) and lagged_hom_equal(m1.u_map, m2.u_map)


def rationally_h_equivalent(c1, c2):
    """Common q for both rationalized induced maps, or None."""
    _same_signature(c1, c2)
    m1, m2 = induced_maps(c1), induced_maps(c2)
    ps = rationally_proportional(m1.s_map, m2.s_map)
    pu = rationally_proportional(m1.u_map, m2.u_map)
    if ps is None or pu is None:
        return None
    if ps.both_zero and pu.both_zero:
        return Proportion(Fraction(1), True)
    if ps.both_zero:
        return Proportion(pu.q)
    if pu.both_zero or ps.q == pu.q:
        return Proportion(ps.q)
    return None


def presented_isomorphic_corr(c1, c2):
    """Isomorphism of middle graphs commuting with both legs, or None."""
    _same_signature(c1, c2)
    u1, s1 = c1.theta_u.hom, c1.theta_s.hom
    u2, s2 = c2.theta_u.hom, c2.theta_s.hom

    def vertex_ok(v, w):
        return u1.vertex_map[v] == u2.vertex_map[w] and s1.vertex_map[v] == s2.vertex_map[w]

    return find_isomorphism(
        c1.mid, c2.mid, vertex_ok,
        lambda e: (u1.edge_map[e.id], s1.edge_map[e.id]),
        lambda e: (u2.edge_map[e.id], s2.edge_map[e.id]),
    )


@dataclass(frozen=True)
class RatIsoCheck:
    valid: bool
    checks: dict
    m_to_one: int = None
    n_to_one: int = None
    q: Fraction = None
    flags: tuple = ()


def _fibre_size(hom):
    sizes = {}
    for v, w in hom.vertex_map.items():
        sizes[w] = sizes.get(w, 0) + 1
    values = set(sizes.values())
    if len(values) == 1 and len(sizes) == len(hom.codomain.vertices):
        return values.pop()
    return None


def _both_sided(hom):
    try:
        verify_covering(hom, LEFT)
        verify_covering(hom, RIGHT)
    except (NotCovering, NotSurjective):
        return False
    return True


def rat_iso_verify(c1, c2, theta1, theta2):
    """Check a user-supplied witness (M, theta1: M -> M1, theta2: M -> M2).

    Both maps must be left and right coverings with constant vertex-fibre
    sizes m and n, and the square with the legs of c1 and c2 must commute.
    On success ``q = n / m`` relates the rationalized induced maps.
    """
    _same_signature(c1, c2)
    checks = {
        "theta1_codomain": theta1.codomain == c1.mid,
        "theta2_codomain": theta2.codomain == c2.mid,
        "same_domain": theta1.domain == theta2.domain,
    }
    if not all(checks.values()):
        return RatIsoCheck(False, checks)
    checks["theta1_both_sided"] = _both_sided(theta1)
    checks["theta2_both_sided"] = _both_sided(theta2)
    m = _fibre_size(theta1)
    n = _fibre_size(theta2)
    checks["theta1_constant_fibre"] = m is not None
    checks["theta2_constant_fibre"] = n is not None
    lu = theta1.then(c1.theta_u.hom)
    ru = theta2.then(c2.theta_u.hom)
    ls = theta1.then(c1.theta_s.hom)
    rs = theta2.then(c2.theta_s.hom)
    checks["commutes_u"] = lu.vertex_map == ru.vertex_map and lu.edge_map == ru.edge_map
    checks["commutes_s"] = ls.vertex_map == rs.vertex_map and ls.edge_map == rs.edge_map
    valid = all(checks.values())
    flags = ("n-to-one checked on vertex fibres only",)
    q = Fraction(n, m) if valid else None
    return RatIsoCheck(valid, checks, m, n, q, flags)
