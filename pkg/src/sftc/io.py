"""JSON encoding of graphs, matrices, maps, correspondences and reports.

Integers inside matrices and polynomials are written as decimal strings
and rationals as ``"p/q"`` strings, so no value ever passes through a
float.  The formats are described in ``docs/formats.md``.
"""

from __future__ import annotations

import dataclasses
import json
from fractions import Fraction
from pathlib import Path

from .correspondences import Correspondence, EmptyComposite, InducedMaps, RatIsoCheck, correspondence_new
from .coverings import CoveringMap, LindMarcus
from .dimgroups import STABLE, UNSTABLE, DimElement, DimGroupPres, LaggedHom, Proportion, RationalMap
from .equivalences import EquivalenceReport, HInversePair, ShiftEquivalenceWitness
from .errors import MalformedInput
from .graphs import Edge, Graph, GraphHom
from .invariants import KunnethReport, ZetaFunction
from .linalg import Matrix, RatPoly


def rational_str(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(s):
    if isinstance(s, bool):
        raise MalformedInput(f"not a number: {s!r}")
    if isinstance(s, int):
        return s
    if isinstance(s, str):
        try:
            x = Fraction(s.strip())
        except ValueError as exc:
            raise MalformedInput(f"not a rational: {s!r}") from exc
        return x.numerator if x.denominator == 1 else x
    raise MalformedInput(f"numbers must be integers or decimal strings, got {s!r}")


def matrix_to_json(m):
    return [[rational_str(x) for x in row] for row in m.data]


def matrix_from_json(data, cols=None):
    if not isinstance(data, list) or any(not isinstance(r, list) for r in data):
        raise MalformedInput("a matrix is a list of rows")
    rows = [[parse_rational(x) for x in r] for r in data]
    if cols is None and not rows:
        cols = 0
    return Matrix(rows, len(rows), cols)


def poly_to_json(p):
    return [rational_str(c) for c in p.coeffs]


def poly_from_json(data):
    return RatPoly(Fraction(parse_rational(c)) for c in data)


def graph_to_json(g):
    return {
        "vertices": list(g.vertices),
        "edges": [{"id": e.id, "src": e.src, "dst": e.dst} for e in g.edges],
    }


def graph_from_json(data):
    try:
        verts = data["vertices"]
        edges = [Edge(str(e["id"]), str(e["src"]), str(e["dst"])) for e in data["edges"]]
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"graph JSON needs vertices and edges: {exc}") from exc
    return Graph([str(v) for v in verts], edges)


def hom_to_json(h):
    return {"vertex_map": dict(h.vertex_map), "edge_map": dict(h.edge_map)}


def hom_from_json(data, domain, codomain):
    try:
        return GraphHom(domain, codomain, dict(data["vertex_map"]), dict(data["edge_map"]))
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"map JSON needs vertex_map and edge_map: {exc}") from exc


def covering_to_json(c):
    out = hom_to_json(c.hom)
    out["side"] = c.side
    return out


def correspondence_to_json(c):
    return {
        "g": graph_to_json(c.left),
        "h": graph_to_json(c.right),
        "m": graph_to_json(c.mid),
        "theta_u": covering_to_json(c.theta_u),
        "theta_s": covering_to_json(c.theta_s),
    }


def correspondence_from_json(data):
    try:
        g = graph_from_json(data["g"])
        h = graph_from_json(data["h"])
        m = graph_from_json(data["m"])
        tu, ts = data["theta_u"], data["theta_s"]
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"correspondence JSON needs g, h, m, theta_u, theta_s: {exc}") from exc
    theta_u = hom_from_json(tu, m, g)
    theta_s = hom_from_json(ts, m, h)
    if tu.get("side", "right") != "right" or ts.get("side", "left") != "left":
        from .errors import NotCovering
        raise NotCovering("theta_u must be right-covering and theta_s left-covering")
    return correspondence_new(g, h, m, theta_u, theta_s)


def witness_to_json(w):
    return {"r": matrix_to_json(w.r_mat), "s": matrix_to_json(w.s_mat), "lag": w.lag}


def witness_from_json(data):
    try:
        r = matrix_from_json(data["r"])
        s = matrix_from_json(data["s"])
        lag = int(data["lag"])
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"witness JSON needs r, s, lag: {exc}") from exc
    return ShiftEquivalenceWitness(r, s, lag)


def lagged_hom_to_json(h):
    return {"f": matrix_to_json(h.f), "lag": h.lag, "side": "s" if h.source.side == STABLE else "u"}


def lagged_hom_from_json(data, source_a, target_a):
    from .dimgroups import lagged_hom_new

    side = STABLE if data.get("side", "s") == "s" else UNSTABLE
    f = matrix_from_json(data["f"], cols=source_a.rows)
    return lagged_hom_new(DimGroupPres(source_a, side), DimGroupPres(target_a, side), f, int(data["lag"]))


def element_to_json(x):
    return {"v": [rational_str(c) for c in x.v], "j": x.j}


def element_from_json(data):
    return DimElement(tuple(parse_rational(c) for c in data["v"]), int(data["j"]))


def to_jsonable(obj):
    """Recursively convert library values into JSON-ready structures."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return rational_str(obj)
    if isinstance(obj, Matrix):
        return matrix_to_json(obj)
    if isinstance(obj, RatPoly):
        return poly_to_json(obj)
    if isinstance(obj, Graph):
        return graph_to_json(obj)
    if isinstance(obj, CoveringMap):
        return covering_to_json(obj)
    if isinstance(obj, GraphHom):
        return hom_to_json(obj)
    if isinstance(obj, Correspondence):
        out = correspondence_to_json(obj)
        if obj.diagnostics:
            out["diagnostics"] = dict(obj.diagnostics)
        return out
    if isinstance(obj, EmptyComposite):
        return {"empty_composite": True, **dataclasses.asdict(obj)}
    if isinstance(obj, LindMarcus):
        return {
            "m": graph_to_json(obj.m),
            "theta_u": covering_to_json(obj.theta_u),
            "theta_s": covering_to_json(obj.theta_s),
            "D": matrix_to_json(obj.d),
            "E": matrix_to_json(obj.e),
        }
    if isinstance(obj, LaggedHom):
        return lagged_hom_to_json(obj)
    if isinstance(obj, InducedMaps):
        return {"s_map": lagged_hom_to_json(obj.s_map), "u_map": lagged_hom_to_json(obj.u_map)}
    if isinstance(obj, DimGroupPres):
        return {"rank": obj.rank, "a": matrix_to_json(obj.a), "side": obj.side}
    if isinstance(obj, DimElement):
        return element_to_json(obj)
    if isinstance(obj, ShiftEquivalenceWitness):
        return witness_to_json(obj)
    if isinstance(obj, ZetaFunction):
        return {"numerator": poly_to_json(obj.numerator), "denominator": poly_to_json(obj.denominator),
                "text": str(obj)}
    if isinstance(obj, KunnethReport):
        return {
            "adjacency_is_kronecker": obj.adjacency_is_kronecker,
            "range_dims": list(obj.range_dims),
            "range_dim_multiplies": obj.range_dim_multiplies,
            "rcf_matches": obj.rcf_matches,
            "passed": obj.passed,
        }
    if isinstance(obj, Proportion):
        return {"q": rational_str(obj.q), "both_zero": obj.both_zero}
    if isinstance(obj, RationalMap):
        return {"matrix": matrix_to_json(obj.matrix)}
    if isinstance(obj, RatIsoCheck):
        return {
            "valid": obj.valid,
            "checks": dict(obj.checks),
            "m_to_one": obj.m_to_one,
            "n_to_one": obj.n_to_one,
            "q": to_jsonable(obj.q),
            "flags": list(obj.flags),
        }
    if isinstance(obj, HInversePair):
        return {
            "c1": to_jsonable(obj.c1),
            "c2": to_jsonable(obj.c2),
            "lag": obj.lag,
            "checks": dict(obj.checks),
        }
    if isinstance(obj, EquivalenceReport):
        return {
            "relation": obj.relation,
            "verdict": obj.verdict,
            "witness": to_jsonable(obj.witness),
            "certificates": to_jsonable(obj.certificates),
            "bounds": to_jsonable(obj.bounds),
            "notes": list(obj.notes),
        }
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj):
    return json.dumps(to_jsonable(obj), indent=2)


def load_json(path):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}: invalid JSON ({exc})") from exc


def load_graph(path):
    return graph_from_json(load_json(path))


def load_matrix(path):
    return matrix_from_json(load_json(path))


def load_correspondence(path):
    return correspondence_from_json(load_json(path))


def load_witness(path):
    return witness_from_json(load_json(path))
