"""Periodic points, zeta functions, product checks and the invariant report."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dimgroups import STABLE, UNSTABLE, dim_group_of
from .errors import NotEssential
from .graphs import is_irreducible, period, product_graph, strongly_connected_components
from .linalg import (
    Matrix,
    RatPoly,
    charpoly,
    eventual_range,
    invariant_factors,
    isolate_max_real_root,
    rank,
    rational_canonical_form,
)

MAX_SERIES_ORDER = 32


def periodic_counts(g, n_max):
    """Number of points fixed by sigma^n, n = 1..n_max."""
    a = g.adjacency
    out = []
    p = Matrix.identity(a.rows)
    for _ in range(n_max):
        p = p @ a
        out.append(p.trace())
    return out


@dataclass(frozen=True)
class ZetaFunction:
    numerator: RatPoly
    denominator: RatPoly

    def __str__(self):
        return f"({self.numerator}) / ({self.denominator})"


def det_one_minus_ta(a):
    """det(I - tA), the reversal of the characteristic polynomial."""
    chi = charpoly(a)
    r = a.rows
    coeffs = list(chi.coeffs) + [0] * (r + 1 - len(chi.coeffs))
    return RatPoly(reversed(coeffs))


def zeta(g):
    return ZetaFunction(RatPoly([1]), det_one_minus_ta(g.adjacency))


# formal power series as coefficient lists truncated to a fixed length


def series_inverse(f, n):
    if f[0] == 0:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    f = list(f) + [0] * n
    inv = [Fraction(1) / f[0]]
    for k in range(1, n):
        s = sum(f[i] * inv[k - i] for i in range(1, k + 1))
        inv.append(-s / f[0])
    return inv


def series_mul(f, g, n):
    f = list(f) + [0] * n
    g = list(g) + [0] * n
    return [sum(Fraction(f[i]) * g[k - i] for i in range(k + 1)) for k in range(n)]


def series_log(f, n):
    """log f for f(0) = 1, via (log f)' = f'/f."""
    if f[0] != 1:
        raise ValueError("logarithm needs constant term 1")
    f = list(f) + [0] * n
    df = [k * f[k] for k in range(1, n + 1)]
    q = series_mul(df, series_inverse(f, n), n)
    return [Fraction(0)] + [q[k - 1] / k for k in range(1, n)]


def series_exp(f, n):
    """exp f for f(0) = 0, via g' = f' g."""
    if f[0] != 0:
        raise ValueError("exponential needs constant term 0")
    f = list(f) + [0] * n
    g = [Fraction(1)]
    for k in range(1, n):
        s = sum(i * Fraction(f[i]) * g[k - i] for i in range(1, k + 1))
        g.append(s / k)
    return g


def zeta_series_check(g, order, counts=None):
    """Compare log zeta with sum N_n t^n / n up to t^order, exactly.

    ``counts`` overrides the periodic point counts (negative controls).
    """
    if order > MAX_SERIES_ORDER:
        raise ValueError(f"order must be at most {MAX_SERIES_ORDER}")
    n = order + 1
    den = det_one_minus_ta(g.adjacency)
    log_zeta = [-c for c in series_log(list(den.coeffs), n)]
    if counts is None:
        counts = periodic_counts(g, order)
    expected = [Fraction(0)] + [Fraction(counts[k - 1], k) for k in range(1, n)]
    return log_zeta == expected


@dataclass(frozen=True)
class KunnethReport:
    adjacency_is_kronecker: bool
    range_dims: tuple
    range_dim_multiplies: bool
    rcf_matches: bool

    @property
    def passed(self):
        return self.adjacency_is_kronecker and self.range_dim_multiplies and self.rcf_matches


def kunneth_check(g, h):
    a, b = g.adjacency, h.adjacency
    p = product_graph(g, h)
    ab = p.adjacency
    kron_ok = ab == a.kron(b)
    ra, rb, rab = eventual_range(a), eventual_range(b), eventual_range(ab)
    dims_ok = rab.dim == ra.dim * rb.dim
    rcf_ok = rational_canonical_form(ra.a_times.kron(rb.a_times)) == rab.rcf
    return KunnethReport(kron_ok, (ra.dim, rb.dim, rab.dim), dims_ok, rcf_ok)


def invariant_report(g, perron_width=Fraction(1, 2 ** 20), n_max=10):
    """Bundle of the shift-of-finite-type invariants of an essential graph."""
    if g.is_empty():
        return {"empty_shift": True}
    if not g.is_essential():
        raise NotEssential("invariants are reported for essential graphs")
    a = g.adjacency
    chi = charpoly(a)
    er = eventual_range(a)
    counts = periodic_counts(g, n_max)
    rep = {
        "empty_shift": False,
        "adjacency": a,
        "irreducible": is_irreducible(g),
        "components": strongly_connected_components(g),
        "charpoly": chi,
        "eventual_range_dim": er.dim,
        "rank_of_power": rank(a ** a.rows),
        "eventual_range_basis": er.basis,
        "invertible_part": er.a_times,
        "invariant_factors": invariant_factors(er.a_times),
        "rational_canonical_form": er.rcf,
        "zeta": zeta(g),
        "periodic_counts": counts,
        "period_witness_lengths": [n for n, c in enumerate(counts, 1) if c > 0],
        "dimension_groups": {
            "stable": dim_group_of(g, STABLE),
            "unstable": dim_group_of(g, UNSTABLE),
        },
    }
    rep["period"] = period(g)
    iv = isolate_max_real_root(chi, perron_width)
    rep["perron_interval"] = (iv.lo, iv.hi)
    return rep
