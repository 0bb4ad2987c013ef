"""Entropy, almost conjugacy, intertwiners and shift equivalence.

Existence questions are answered by bounded searches over integer
lattices.  A failed search is reported as ``unknown-within-bounds``
rather than "no", unless an exact invariant already rules the witness
out.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .correspondences import induced_maps, lind_marcus_correspondence
from .dimgroups import UNSTABLE, STABLE, DimGroupPres, LaggedHom, compose_all, identity_hom, lagged_hom_equal
from .errors import DimensionMismatch, NotIrreducible, WitnessInvalid
from .graphs import Graph, is_irreducible, period
from .linalg import Matrix, integer_kernel_basis, perron_compare

YES = "yes"
NO = "no"
UNKNOWN = "unknown-within-bounds"


def _adj(x):
    return x.adjacency if isinstance(x, Graph) else x


@dataclass
class EquivalenceReport:
    relation: str
    verdict: str
    witness: object = None
    certificates: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)


@dataclass(frozen=True)
class ShiftEquivalenceWitness:
    r_mat: Matrix
    s_mat: Matrix
    lag: int


# ---------------------------------------------------------------------------
# entropy and period


def same_entropy(g, h):
    return perron_compare(_adj(g), _adj(h)).equal


def _require_irreducible(*graphs):
    for g in graphs:
        if not is_irreducible(g):
            raise NotIrreducible("graph is not irreducible")


def almost_conjugate(g, h):
    _require_irreducible(g, h)
    return same_entropy(g, h) and period(g) == period(h)


def entropy_report(g, h, relation="finite-equivalence"):
    cmp = perron_compare(g.adjacency, h.adjacency)
    rep = EquivalenceReport(relation, YES if cmp.equal else NO)
    rep.certificates = {
        "perron_interval_g": cmp.interval_a,
        "perron_interval_h": cmp.interval_b,
        "joint_squarefree_poly": cmp.joint_poly,
        "bisections": cmp.bisections,
    }
    irreducible = is_irreducible(g) and is_irreducible(h)
    rep.certificates["irreducible"] = irreducible
    if irreducible:
        rep.notes.append("irreducible inputs: equal entropy iff finitely equivalent iff a correspondence exists")
    else:
        rep.notes.append("reducible input: entropy comparison only")
    return rep


def almost_conjugacy_report(g, h, relation="almost-conjugacy"):
    _require_irreducible(g, h)
    cmp = perron_compare(g.adjacency, h.adjacency)
    pg, ph = period(g), period(h)
    rep = EquivalenceReport(relation, YES if (cmp.equal and pg == ph) else NO)
    rep.certificates = {
        "same_entropy": cmp.equal,
        "period_g": pg,
        "period_h": ph,
        "perron_interval_g": cmp.interval_a,
        "perron_interval_h": cmp.interval_b,
    }
    rep.notes.append("irreducible inputs: almost conjugate iff equal entropy and equal period")
    return rep


def cor_equivalence_report(g, h):
    """Existence of correspondences both ways; for SFTs this is finite equivalence."""
    return entropy_report(g, h, relation="cor-equivalence")


def acc_report(g, h):
    """Almost cor-conjugacy; for SFTs this is almost conjugacy."""
    return almost_conjugacy_report(g, h, relation="almost-cor-conjugacy")


# ---------------------------------------------------------------------------
# intertwiners


def intertwiner_lattice(a_src, a_tgt):
    """Integer basis of {X : X a_src = a_tgt X}, each X flattened row-major."""
    p, q = a_tgt.rows, a_src.rows
    rows = []
    for i, j in product(range(p), range(q)):
        row = [0] * (p * q)
        for k, l in product(range(p), range(q)):
            c = (a_src[l, j] if i == k else 0) - (a_tgt[i, k] if l == j else 0)
            row[k * q + l] = c
        rows.append(row)
    return integer_kernel_basis(Matrix(rows, p * q, p * q)), (p, q)


def nonnegative_points(basis, shape, bound):
    """Distinct nonzero nonnegative matrices sum c_i b_i, |c_i| <= bound, sorted by entries."""
    p, q = shape
    found = set()
    for coeffs in product(range(-bound, bound + 1), repeat=len(basis)):
        vec = [sum(c * b[k] for c, b in zip(coeffs, basis)) for k in range(p * q)]
        if all(x >= 0 for x in vec) and any(vec):
            found.add(tuple(vec))
    return [Matrix([list(v[i * q:(i + 1) * q]) for i in range(p)], p, q) for v in sorted(found)]


def find_intertwiner(g, h, coeff_bound):
    """Least nonzero nonnegative F with F A_g = A_h F inside the bounded lattice box."""
    basis, shape = intertwiner_lattice(_adj(g), _adj(h))
    points = nonnegative_points(basis, shape, coeff_bound)
    return points[0] if points else None


def intertwiner_report(g, h, coeff_bound):
    basis, shape = intertwiner_lattice(g.adjacency, h.adjacency)
    points = nonnegative_points(basis, shape, coeff_bound)
    rep = EquivalenceReport("intertwiner", YES if points else UNKNOWN, bounds={"coeff_bound": coeff_bound})
    rep.certificates["lattice_rank"] = len(basis)
    if points:
        f = points[0]
        rep.witness = f
        rep.certificates["F_A_G"] = f @ g.adjacency
        rep.certificates["A_H_F"] = h.adjacency @ f
    else:
        _explain_absence(rep, g, h, lattice_empty=not basis)
    return rep


def _explain_absence(rep, g, h, lattice_empty=False):
    if lattice_empty:
        rep.notes.append("the integer intertwiner lattice is zero")
    if is_irreducible(g) and is_irreducible(h):
        if not same_entropy(g, h):
            rep.notes.append("entropies differ: no intertwiner exists for irreducible graphs")
        else:
            rep.notes.append("equal entropy: an intertwiner exists for irreducible graphs; raise the bound")


def finite_equivalence_witness(g, h, coeff_bound, policy="lex"):
    _require_irreducible(g, h)
    f = find_intertwiner(g, h, coeff_bound)
    if f is None:
        return None
    return lind_marcus_correspondence(f, g, h, policy)


def finite_equivalence_report(g, h, coeff_bound, policy="lex"):
    _require_irreducible(g, h)
    f = find_intertwiner(g, h, coeff_bound)
    rep = EquivalenceReport("finite-equivalence", YES if f is not None else UNKNOWN,
                            bounds={"coeff_bound": coeff_bound})
    if f is not None:
        c = lind_marcus_correspondence(f, g, h, policy)
        rep.witness = c
        rep.certificates["F"] = f
        rep.certificates["D_E"] = induced_maps(c).s_map.f
    else:
        if not same_entropy(g, h):
            rep.verdict = NO
            rep.notes.append("entropy differs")
        else:
            _explain_absence(rep, g, h)
    return rep


# ---------------------------------------------------------------------------
# shift equivalence


def _se_identities(a, b, w):
    l = w.lag
    return {
        "AR=RB": a @ w.r_mat == w.r_mat @ b,
        "SA=BS": w.s_mat @ a == b @ w.s_mat,
        "RS=A^l": w.r_mat @ w.s_mat == a ** l,
        "SR=B^l": w.s_mat @ w.r_mat == b ** l,
    }


def shift_equivalence_verify(g, h, w):
    a, b = _adj(g), _adj(h)
    r, s = w.r_mat, w.s_mat
    if r.shape != (a.rows, b.rows) or s.shape != (b.rows, a.rows):
        raise DimensionMismatch(f"R must be {a.rows}x{b.rows} and S {b.rows}x{a.rows}")
    if w.lag < 1 or not (r.is_nonnegative() and s.is_nonnegative()):
        return False
    return all(_se_identities(a, b, w).values())


def shift_equivalence_search(g, h, lag_max, coeff_bound):
    """First witness in (lag, R entries, S entries) order, or None."""
    a, b = _adj(g), _adj(h)
    r_basis, r_shape = intertwiner_lattice(b, a)
    s_basis, s_shape = intertwiner_lattice(a, b)
    rs = nonnegative_points(r_basis, r_shape, coeff_bound)
    ss = nonnegative_points(s_basis, s_shape, coeff_bound)
    for lag in range(1, lag_max + 1):
        al, bl = a ** lag, b ** lag
        for r in rs:
            for s in ss:
                if r @ s == al and s @ r == bl:
                    return ShiftEquivalenceWitness(r, s, lag)
    return None


def se_search_report(g, h, lag_max, coeff_bound):
    w = shift_equivalence_search(g, h, lag_max, coeff_bound)
    rep = EquivalenceReport("shift-equivalence", YES if w else UNKNOWN,
                            bounds={"lag_max": lag_max, "coeff_bound": coeff_bound})
    if w:
        rep.witness = w
        rep.certificates = _se_identities(g.adjacency, h.adjacency, w)
    elif not same_entropy(g, h):
        rep.notes.append("entropies differ, so no shift equivalence exists")
    return rep


def se_verify_report(g, h, w):
    ok = shift_equivalence_verify(g, h, w)
    rep = EquivalenceReport("shift-equivalence", YES if ok else NO, witness=w)
    rep.certificates = _se_identities(g.adjacency, h.adjacency, w)
    rep.certificates["nonnegative"] = w.r_mat.is_nonnegative() and w.s_mat.is_nonnegative()
    if not ok:
        rep.notes.append("the supplied witness fails; this does not refute shift equivalence")
    return rep


@dataclass(frozen=True, eq=False)
class HInversePair:
    c1: object
    c2: object
    lag: int
    checks: dict


def h_inverse_pair_from_se(g, h, w):
    """Correspondences realizing S and R, checked to be H-inverse up to the lag shift.

    ``c1`` goes from g to h with stable map [v, j] -> [Sv, j]; ``c2`` goes
    back with [w, j] -> [Rw, j].  The shift by ``lag`` on g's side enters
    as the lagged identity (I, lag), which divides by A^lag.
    """
    if not shift_equivalence_verify(g, h, w):
        raise WitnessInvalid("witness does not satisfy the shift-equivalence identities")
    c1 = lind_marcus_correspondence(w.s_mat, g, h)
    c2 = lind_marcus_correspondence(w.r_mat, h, g)
    m1, m2 = induced_maps(c1), induced_maps(c2)
    a = g.adjacency
    ds = LaggedHom(DimGroupPres(a, STABLE), DimGroupPres(a, STABLE), Matrix.identity(a.rows), w.lag)
    du = LaggedHom(DimGroupPres(a, UNSTABLE), DimGroupPres(a, UNSTABLE), Matrix.identity(a.rows), w.lag)
    checks = {
        "stable_on_g": lagged_hom_equal(compose_all(m2.s_map, m1.s_map, ds), identity_hom(ds.source)),
        "unstable_on_g": lagged_hom_equal(compose_all(m1.u_map, m2.u_map, du), identity_hom(du.source)),
        "stable_on_h": lagged_hom_equal(compose_all(m1.s_map, ds, m2.s_map), identity_hom(m1.s_map.target)),
        "unstable_on_h": lagged_hom_equal(compose_all(m2.u_map, du, m1.u_map), identity_hom(m1.u_map.source)),
    }
    return HInversePair(c1, c2, w.lag, checks)


def h_invert_report(g, h, w):
    try:
        pair = h_inverse_pair_from_se(g, h, w)
    except WitnessInvalid as exc:
        rep = EquivalenceReport("h-equivalence", NO, witness=w)
        rep.certificates = _se_identities(g.adjacency, h.adjacency, w)
        rep.notes.append(str(exc))
        return rep
    ok = all(pair.checks.values())
    rep = EquivalenceReport("h-equivalence", YES if ok else NO, witness=w)
    rep.certificates = dict(pair.checks)
    rep.certificates["c1_stable_map"] = induced_maps(pair.c1).s_map.f
    rep.certificates["c2_stable_map"] = induced_maps(pair.c2).s_map.f
    rep.notes.append(f"shift decoration (I, {w.lag}) composed on the left graph")
    return rep
