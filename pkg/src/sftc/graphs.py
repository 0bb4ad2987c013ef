"""Finite directed multigraphs presenting edge shifts.

A :class:`Graph` keeps its vertices and edges in declaration order, and
that order fixes the row and column order of every derived matrix.
Parallel edges are distinct objects with their own ids, so a
construction can refer to individual edges.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from math import gcd
from collections import deque

import networkx as nx

from .errors import MalformedInput, NoCycle
from .linalg import Matrix


@dataclass(frozen=True)
class Edge:
    id: str
    src: str
    dst: str


@dataclass(frozen=True)
class Graph:
    vertices: tuple
    edges: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(
            self, "edges",
            tuple(e if isinstance(e, Edge) else Edge(*e) for e in self.edges),
        )
        _check_well_formed(self.vertices, self.edges)

    @classmethod
    def from_matrix(cls, a, prefix="v"):
        """Graph with ``a[i][j]`` parallel edges i -> j and generated ids."""
        a = a if isinstance(a, Matrix) else Matrix(a)
        verts = [f"{prefix}{i}" for i in range(a.rows)]
        edges = []
        for i, j in product(range(a.rows), range(a.cols)):
            for k in range(a[i, j]):
                edges.append(Edge(f"e{i}_{j}_{k}", verts[i], verts[j]))
        return cls(verts, edges)

    @cached_property
    def vertex_index(self):
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def edge_index(self):
        return {e.id: e for e in self.edges}

    @cached_property
    def adjacency(self):
        n = len(self.vertices)
        idx = self.vertex_index
        a = [[0] * n for _ in range(n)]
        for e in self.edges:
            a[idx[e.src]][idx[e.dst]] += 1
        return Matrix(a, n, n)

    @cached_property
    def out_edges(self):
        out = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.src].append(e)
        return {v: tuple(es) for v, es in out.items()}

    @cached_property
    def in_edges(self):
        inc = {v: [] for v in self.vertices}
        for e in self.edges:
            inc[e.dst].append(e)
        return {v: tuple(es) for v, es in inc.items()}

    def is_empty(self):
        return not self.vertices

    def is_essential(self):
        return all(self.out_edges[v] and self.in_edges[v] for v in self.vertices)

    def to_networkx(self):
        g = nx.MultiDiGraph()
        g.add_nodes_from(self.vertices)
        for e in self.edges:
            g.add_edge(e.src, e.dst, key=e.id)
        return g

    def relabeled(self, vertex_names=None, edge_names=None):
        vn = vertex_names or {}
        en = edge_names or {}
        return Graph(
            [vn.get(v, v) for v in self.vertices],
            [Edge(en.get(e.id, e.id), vn.get(e.src, e.src), vn.get(e.dst, e.dst)) for e in self.edges],
        )


def _check_well_formed(vertices, edges):
    if len(set(vertices)) != len(vertices):
        dup = sorted({v for v in vertices if vertices.count(v) > 1})
        raise MalformedInput(f"duplicate vertex ids: {dup}")
    ids = [e.id for e in edges]
    if len(set(ids)) != len(ids):
        dup = sorted({i for i in ids if ids.count(i) > 1})
        raise MalformedInput(f"duplicate edge ids: {dup}")
    vs = set(vertices)
    for e in edges:
        if e.src not in vs or e.dst not in vs:
            raise MalformedInput(f"edge {e.id} has an undeclared endpoint")


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    essential: bool
    sources: tuple
    sinks: tuple
    issues: tuple = ()


def validate_graph(g, require_essential=False):
    """Check well-formedness and, optionally, absence of sources and sinks.

    Duplicate ids and dangling endpoints raise :class:`MalformedInput`;
    sources and sinks are reported.
    """
    _check_well_formed(g.vertices, g.edges)
    sources = tuple(v for v in g.vertices if not g.in_edges[v])
    sinks = tuple(v for v in g.vertices if not g.out_edges[v])
    issues = [f"source {v}" for v in sources] + [f"sink {v}" for v in sinks]
    essential = not issues
    valid = essential or not require_essential
    return ValidationReport(valid, essential, sources, sinks, tuple(issues))


def strongly_connected_components(g):
    """SCCs as vertex tuples in declaration order, sorted by first vertex."""
    idx = g.vertex_index
    comps = [tuple(sorted(c, key=idx.__getitem__)) for c in nx.strongly_connected_components(g.to_networkx())]
    return sorted(comps, key=lambda c: idx[c[0]])


def is_irreducible(g):
    # a lone vertex without edges carries no bi-infinite path
    if not g.edges:
        return False
    return len(strongly_connected_components(g)) == 1


def _component_period(g, comp):
    members = set(comp)
    level = {comp[0]: 0}
    queue = deque([comp[0]])
    while queue:
        u = queue.popleft()
        for e in g.out_edges[u]:
            if e.dst in members and e.dst not in level:
                level[e.dst] = level[u] + 1
                queue.append(e.dst)
    p = 0
    for u in comp:
        for e in g.out_edges[u]:
            if e.dst in members:
                p = gcd(p, abs(level[u] + 1 - level[e.dst]))
    return p


def period(g):
    """gcd of the lengths of closed walks in ``g``."""
    p = 0
    for comp in strongly_connected_components(g):
        cp = _component_period(g, comp)
        p = gcd(p, cp)
    if p == 0:
        raise NoCycle("graph has no closed walk")
    return p


def product_graph(g, h):
    """Tensor product: (u,u') -> (v,v') edges are pairs of edges u->v, u'->v'."""
    verts = [_pair_id(v, w) for v, w in product(g.vertices, h.vertices)]
    edges = [
        Edge(_pair_id(e.id, f.id), _pair_id(e.src, f.src), _pair_id(e.dst, f.dst))
        for e in g.edges for f in h.edges
    ]
    return Graph(verts, edges)


def _pair_id(a, b):
    return f"({a},{b})"


@dataclass(frozen=True)
class Trimmed:
    graph: Graph
    vertex_map: dict = field(default_factory=dict)
    edge_map: dict = field(default_factory=dict)


def trim_essential(g):
    """Maximal essential subgraph, with the inclusion of kept vertices and edges."""
    alive = set(g.vertices)
    live_edges = set(e.id for e in g.edges)
    changed = True
    while changed:
        changed = False
        indeg = {v: 0 for v in alive}
        outdeg = {v: 0 for v in alive}
        for e in g.edges:
            if e.id in live_edges:
                outdeg[e.src] += 1
                indeg[e.dst] += 1
        dead = {v for v in alive if not indeg[v] or not outdeg[v]}
        if dead:
            changed = True
            alive -= dead
            live_edges = {e.id for e in g.edges if e.id in live_edges and e.src in alive and e.dst in alive}
    verts = [v for v in g.vertices if v in alive]
    edges = [e for e in g.edges if e.id in live_edges]
    return Trimmed(Graph(verts, edges), {v: v for v in verts}, {e.id: e.id for e in edges})


@dataclass(frozen=True)
class GraphHom:
    """Graph homomorphism given by vertex and edge dictionaries."""

    domain: Graph
    codomain: Graph
    vertex_map: dict
    edge_map: dict

    def __post_init__(self):
        dom, cod = self.domain, self.codomain
        if set(self.vertex_map) != set(dom.vertices):
            raise MalformedInput("vertex map must be defined exactly on the domain vertices")
        if set(self.edge_map) != {e.id for e in dom.edges}:
            raise MalformedInput("edge map must be defined exactly on the domain edges")
        cv = set(cod.vertices)
        ce = cod.edge_index
        for v, w in self.vertex_map.items():
            if w not in cv:
                raise MalformedInput(f"vertex {v} maps outside the codomain")
        for e in dom.edges:
            f = ce.get(self.edge_map[e.id])
            if f is None:
                raise MalformedInput(f"edge {e.id} maps outside the codomain")
            if f.src != self.vertex_map[e.src] or f.dst != self.vertex_map[e.dst]:
                raise MalformedInput(f"edge {e.id} -> {f.id} does not preserve incidence")

    @classmethod
    def identity(cls, g):
        return cls(g, g, {v: v for v in g.vertices}, {e.id: e.id for e in g.edges})

    def is_surjective(self):
        return (
            set(self.vertex_map.values()) == set(self.codomain.vertices)
            and set(self.edge_map.values()) == {e.id for e in self.codomain.edges}
        )

    def then(self, other):
        """``other`` after ``self``."""
        return GraphHom(
            self.domain, other.codomain,
            {v: other.vertex_map[w] for v, w in self.vertex_map.items()},
            {e: other.edge_map[f] for e, f in self.edge_map.items()},
        )

    def restrict(self, subgraph):
        return GraphHom(
            subgraph, self.codomain,
            {v: self.vertex_map[v] for v in subgraph.vertices},
            {e.id: self.edge_map[e.id] for e in subgraph.edges},
        )


def _degree_signature(g, v):
    return (len(g.out_edges[v]), len(g.in_edges[v]), g.adjacency[g.vertex_index[v], g.vertex_index[v]])


def find_isomorphism(g, h, vertex_ok=None, label_g=None, label_h=None):
    """Backtracking search for a graph isomorphism g -> h.

    ``vertex_ok(v, w)`` restricts which vertex pairings are allowed.
    ``label_g`` and ``label_h`` map edges of g and h to labels that must be
    preserved; parallel edges are then paired by sorted label.
    """
    if len(g.vertices) != len(h.vertices) or len(g.edges) != len(h.edges):
        return None
    ag, ah = g.adjacency, h.adjacency
    gi, hi = g.vertex_index, h.vertex_index
    cands = {}
    for v in g.vertices:
        sig = _degree_signature(g, v)
        cands[v] = [
            w for w in h.vertices
            if _degree_signature(h, w) == sig and (vertex_ok is None or vertex_ok(v, w))
        ]
        if not cands[v]:
            return None
    order = sorted(g.vertices, key=lambda v: (len(cands[v]), gi[v]))
    assign = {}
    used = set()

    def parallel(graph, u, v):
        return [e for e in graph.out_edges[u] if e.dst == v]

    def labels_match(u, v, w, x):
        if label_g is None:
            return True
        a = sorted(label_g(e) for e in parallel(g, u, v))
        b = sorted(label_h(e) for e in parallel(h, w, x))
        return a == b

    def consistent(v, w):
        for u, x in list(assign.items()) + [(v, w)]:
            if ag[gi[v], gi[u]] != ah[hi[w], hi[x]] or ag[gi[u], gi[v]] != ah[hi[x], hi[w]]:
                return False
            if not (labels_match(v, u, w, x) and labels_match(u, v, x, w)):
                return False
        return True

    def search(k):
        if k == len(order):
            return True
        v = order[k]
        for w in cands[v]:
            if w in used or not consistent(v, w):
                continue
            assign[v] = w
            used.add(w)
            if search(k + 1):
                return True
            del assign[v]
            used.discard(w)
        return False

    if not search(0):
        return None
    edge_map = {}
    for u in g.vertices:
        for v in g.vertices:
            src = parallel(g, u, v)
            dst = parallel(h, assign[u], assign[v])
            if label_g is not None:
                src = sorted(src, key=lambda e: (label_g(e), e.id))
                dst = sorted(dst, key=lambda e: (label_h(e), e.id))
            for e, f in zip(src, dst):
                edge_map[e.id] = f.id
    return GraphHom(g, h, dict(assign), edge_map)


def presented_isomorphic(g, h):
    """A presentation isomorphism g -> h if one exists, else None.

    A None answer only means "not presentably isomorphic"; the edge
    shifts may still be conjugate.
    """
    return find_isomorphism(g, h)

