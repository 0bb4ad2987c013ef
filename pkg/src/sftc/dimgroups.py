"""Krieger dimension groups as presented inductive limits.

A presentation ``(r, A, side)`` stands for the limit of
Z^r -> Z^r -> ... under A (stable side) or under A transposed (unstable
side).  Elements are classes ``[v, j]`` with ``[v, j] = [Mv, j + 1]``,
where M is the acting matrix.  Homomorphisms are lagged matrices
``[v, j] -> [Fv, j + lag]`` with ``F`` intertwining the acting matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, NotEssential, NotIntertwining, SignatureMismatch
from .linalg import Matrix, eventual_range, inverse

STABLE = "stable"
UNSTABLE = "unstable"
MAX_LEVEL = 2 ** 31


@dataclass(frozen=True)
class DimGroupPres:
    a: Matrix
    side: str = STABLE

    def __post_init__(self):
        if not self.a.is_square() or not self.a.is_nonnegative():
            raise DimensionMismatch("a presentation needs a square nonnegative matrix")
        if self.side not in (STABLE, UNSTABLE):
            raise ValueError(f"unknown side {self.side!r}")

    @property
    def rank(self):
        return self.a.rows

    @property
    def matrix(self):
        """The matrix acting in the limit (A or its transpose)."""
        return self.a if self.side == STABLE else self.a.T

    def dual(self):
        return DimGroupPres(self.a, UNSTABLE if self.side == STABLE else STABLE)


@dataclass(frozen=True)
class DimElement:
    v: tuple
    j: int = 0

    def __post_init__(self):
        object.__setattr__(self, "v", tuple(self.v))
        if not 0 <= self.j <= MAX_LEVEL:
            raise ValueError(f"level {self.j} outside [0, 2^31]")


def dim_group_of(g, side=STABLE):
    if not g.is_essential():
        raise NotEssential("dimension groups are defined for essential graphs")
    return DimGroupPres(g.adjacency, side)


def _check_member(d, x):
    if len(x.v) != d.rank:
        raise DimensionMismatch(f"element of length {len(x.v)} in a rank {d.rank} group")


def elem_equal(d, x, y):
    _check_member(d, x)
    _check_member(d, y)
    if x.j > y.j:
        x, y = y, x
    m = d.matrix
    lifted = (m ** (y.j - x.j)).apply(x.v)
    diff = tuple(a - b for a, b in zip(lifted, y.v))
    return all(c == 0 for c in (m ** d.rank).apply(diff))


def is_positive_presented(d, x, max_power=None):
    """True if some M^k v with k <= max_power is entrywise nonnegative."""
    _check_member(d, x)
    bound = 4 * d.rank if max_power is None else max_power
    v = x.v
    for _ in range(bound + 1):
        if all(c >= 0 for c in v):
            return True
        v = d.matrix.apply(v)
    return False


@dataclass(frozen=True)
class LaggedHom:
    source: DimGroupPres
    target: DimGroupPres
    f: Matrix
    lag: int = 0

    def __call__(self, x):
        _check_member(self.source, x)
        return DimElement(self.f.apply(x.v), x.j + self.lag)


def lagged_hom_new(src, tgt, f, lag=0):
    if f.shape != (tgt.rank, src.rank):
        raise DimensionMismatch(f"map of shape {f.shape} between ranks {src.rank} -> {tgt.rank}")
    if src.side != tgt.side:
        raise SignatureMismatch("source and target live on different sides")
    if lag < 0:
        raise ValueError("lag must be nonnegative")
    left = f @ src.matrix
    right = tgt.matrix @ f
    if left != right:
        bad = next(
            (i, j) for i in range(left.rows) for j in range(left.cols) if left[i, j] != right[i, j]
        )
        raise NotIntertwining(
            f"F*A_src != A_tgt*F at entry {bad}: {left[bad]} != {right[bad]}", entry=bad
        )
    return LaggedHom(src, tgt, f, lag)


def identity_hom(d):
    return LaggedHom(d, d, Matrix.identity(d.rank), 0)


def _same_signature(h1, h2):
    if h1.source != h2.source or h1.target != h2.target:
        raise SignatureMismatch("homomorphisms have different source or target")


def lagged_hom_equal(h1, h2):
    _same_signature(h1, h2)
    m = h1.target.matrix
    diff = (m ** h2.lag) @ h1.f - (m ** h1.lag) @ h2.f
    return ((m ** h1.target.rank) @ diff).is_zero()


def lagged_hom_compose(h2, h1):
    """h2 after h1."""
    if h1.target != h2.source:
        raise SignatureMismatch("h1 target differs from h2 source")
    return lagged_hom_new(h1.source, h2.target, h2.f @ h1.f, h1.lag + h2.lag)


def compose_all(*homs):
    """Compose right to left: ``compose_all(h3, h2, h1)`` is h3 after h2 after h1."""
    out = homs[-1]
    for h in reversed(homs[:-1]):
        out = lagged_hom_compose(h, out)
    return out


def scalar_hom(d, n):
    return LaggedHom(d, d, n * Matrix.identity(d.rank), 0)


def shift_automorphisms(d):
    """(forward, inverse): division by the acting matrix, and multiplication by it."""
    forward = LaggedHom(d, d, Matrix.identity(d.rank), 1)
    backward = LaggedHom(d, d, d.matrix, 0)
    return forward, backward


@dataclass(frozen=True)
class RationalMap:
    """A linear map between eventual ranges in their canonical bases."""

    matrix: Matrix
    source_basis: tuple
    target_basis: tuple

    def is_zero(self):
        return self.matrix.is_zero()


def rationalized(h):
    """The map induced on D tensor Q, realized on the eventual ranges."""
    rs = eventual_range(h.source.matrix)
    rt = eventual_range(h.target.matrix)
    cols = [rt.coordinates(h.f.apply(b)) for b in rs.basis]
    x = Matrix.from_columns(cols, rt.dim) if cols else Matrix.zeros(rt.dim, 0)
    if h.lag and rt.dim:
        x = (inverse(rt.a_times) ** h.lag) @ x
    return RationalMap(x, rs.basis, rt.basis)


@dataclass(frozen=True)
class Proportion:
    q: Fraction
    both_zero: bool = False


def rationally_proportional(h1, h2):
    """q with rationalized(h1) = q * rationalized(h2), or None.

    When both rationalized maps vanish the answer is ``Proportion(1, True)``.
    """
    _same_signature(h1, h2)
    m1 = rationalized(h1).matrix
    m2 = rationalized(h2).matrix
    z1, z2 = m1.is_zero(), m2.is_zero()
    if z1 and z2:
        return Proportion(Fraction(1), True)
    if z1 or z2:
        return None
    k = next(i for i, x in enumerate(m2.flat()) if x != 0)
    q = Fraction(m1.flat()[k]) / m2.flat()[k]
    if q * m2 != m1:
        return None
    return Proportion(q)
