"""Exact integer and rational linear algebra.

Everything here works on Python ``int`` and :class:`fractions.Fraction`
entries; nothing is ever rounded.  The module provides

* :class:`Matrix`, a small immutable dense matrix,
* :class:`RatPoly`, univariate polynomials over Q,
* characteristic polynomials, ranks, eventual ranges and rational
  canonical forms,
* Hermite-normal-form integer kernels,
* Sturm-sequence isolation of the largest real root and an exact
  comparison of Perron eigenvalues.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd, lcm

from .errors import (
    DimensionMismatch,
    NoRealRoot,
    NotSquare,
    RefinementBudget,
    ZeroSpectralRadius,
)

MAX_BISECTIONS = 256


def _norm(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


class Matrix:
    """Immutable dense matrix with exact entries.

    ``Matrix([[1, 2], [3, 4]])`` builds a 2x2 matrix.  Empty shapes need an
    explicit size: ``Matrix([], rows=0, cols=3)``.
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data, rows=None, cols=None):
        data = tuple(tuple(_norm(x) for x in row) for row in data)
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if len(data) != rows or any(len(r) != cols for r in data):
            raise DimensionMismatch(f"rows of a {rows}x{cols} matrix are ragged")
        self.rows = rows
        self.cols = cols
        self.data = data

    # construction helpers
    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def zeros(cls, rows, cols):
        return cls([[0] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def from_columns(cls, columns, rows):
        columns = [list(c) for c in columns]
        return cls([[c[i] for c in columns] for i in range(rows)], rows, len(columns))

    @classmethod
    def column(cls, vec):
        return cls([[x] for x in vec], len(vec), 1)

    # access
    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i):
        return self.data[i]

    def col(self, j):
        return tuple(r[j] for r in self.data)

    def columns(self):
        return [self.col(j) for j in range(self.cols)]

    def flat(self):
        return tuple(x for r in self.data for x in r)

    def tolist(self):
        return [list(r) for r in self.data]

    @property
    def T(self):
        return Matrix([list(self.col(j)) for j in range(self.cols)], self.cols, self.rows)

    # predicates
    def is_square(self):
        return self.rows == self.cols

    def is_zero(self):
        return all(x == 0 for x in self.flat())

    def is_nonnegative(self):
        return all(x >= 0 for x in self.flat())

    def is_integral(self):
        return all(isinstance(x, int) for x in self.flat())

    # arithmetic
    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.shape, self.data))

    def __add__(self, other):
        self._same_shape(other)
        return Matrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)],
            self.rows, self.cols,
        )

    def __sub__(self, other):
        self._same_shape(other)
        return Matrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)],
            self.rows, self.cols,
        )

    def __neg__(self):
        return Matrix([[-a for a in r] for r in self.data], self.rows, self.cols)

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return NotImplemented
        return Matrix([[c * a for a in r] for r in self.data], self.rows, self.cols)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.columns()
        return Matrix(
            [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.data],
            self.rows, other.cols,
        )

    def apply(self, vec):
        if len(vec) != self.cols:
            raise DimensionMismatch(f"vector of length {len(vec)} for {self.shape} matrix")
        return tuple(_norm(sum(a * b for a, b in zip(r, vec))) for r in self.data)

    def __pow__(self, k):
        if not self.is_square():
            raise NotSquare(f"power of a {self.shape} matrix")
        if k < 0:
            return inverse(self) ** (-k)
        result = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def kron(self, other):
        rows = []
        for r in self.data:
            for s in other.data:
                rows.append([a * b for a in r for b in s])
        return Matrix(rows, self.rows * other.rows, self.cols * other.cols)

    def trace(self):
        if not self.is_square():
            raise NotSquare(f"trace of a {self.shape} matrix")
        return sum(self.data[i][i] for i in range(self.rows))

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")

    def __repr__(self):
        return f"Matrix({self.tolist()!r}, rows={self.rows}, cols={self.cols})"


def block_diag(blocks):
    n = sum(b.rows for b in blocks)
    m = sum(b.cols for b in blocks)
    out = [[0] * m for _ in range(n)]
    r = c = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                out[r + i][c + j] = b[i, j]
        r += b.rows
        c += b.cols
    return Matrix(out, n, m)


# ---------------------------------------------------------------------------
# polynomials


class RatPoly:
    """Polynomial over Q, coefficients stored lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, k, c=1):
        return cls([0] * k + [c])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, RatPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return RatPoly(x + y for x, y in zip(a, b))

    def __neg__(self):
        return RatPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, RatPoly):
            return RatPoly(c * other for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = RatPoly([1])
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(len(self.coeffs) - len(other.coeffs) + 1, 0)
        r = list(self.coeffs)
        d = other.degree
        lc = other.lc
        while len(r) - 1 >= d and any(r):
            k = len(r) - 1 - d
            c = r[-1] / lc
            q[k] = c
            for i, b in enumerate(other.coeffs):
                r[i + k] -= c * b
            r.pop()
            while r and r[-1] == 0:
                r.pop()
        return RatPoly(q), RatPoly(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self):
        return RatPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def primitive(self):
        """Integer-coefficient primitive associate with positive leading coefficient."""
        if self.is_zero():
            return self
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = gcd(*ints)
        if ints[-1] < 0:
            g = -g
        return RatPoly(x // g for x in ints)

    def monic(self):
        return RatPoly(c / self.lc for c in self.coeffs)

    def strip_t(self):
        """Remove every factor of t; returns (remaining poly, multiplicity of t)."""
        k = 0
        while k < len(self.coeffs) and self.coeffs[k] == 0:
            k += 1
        return RatPoly(self.coeffs[k:]), k

    def int_coeffs(self):
        return [int(c) if c.denominator == 1 else c for c in self.coeffs]

    def __repr__(self):
        return f"RatPoly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            body = str(a) if (a != 1 or k == 0) else ""
            terms.append((sign, body + ("*" if body and mono else "") + mono))
        head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        return head + "".join(f" {s} {b}" for s, b in terms[1:])


def poly_gcd(p, q):
    """Greatest common divisor, normalized to its primitive integer associate."""
    a, b = p, q
    while not b.is_zero():
        a, b = b, a % b
    return a.primitive()


def squarefree_part(p):
    if p.is_zero():
        return p
    g = poly_gcd(p, p.derivative())
    return (p // g).primitive()


# ---------------------------------------------------------------------------
# elimination


def rref(m):
    """Reduced row echelon form over Q; returns (matrix, pivot columns)."""
    a = [[Fraction(x) for x in r] for r in m.data]
    pivots = []
    r = 0
    for c in range(m.cols):
        piv = next((i for i in range(r, m.rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return Matrix(a, m.rows, m.cols), pivots


def rank(m):
    return len(rref(m)[1])


def inverse(m):
    if not m.is_square():
        raise NotSquare(f"inverse of a {m.shape} matrix")
    n = m.rows
    aug = Matrix([list(m.row(i)) + [1 if i == j else 0 for j in range(n)] for i in range(n)], n, 2 * n)
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return Matrix([red.row(i)[n:] for i in range(n)], n, n)


def charpoly(a):
    """det(tI - a) by the Faddeev-LeVerrier recursion."""
    if not a.is_square():
        raise NotSquare(f"characteristic polynomial of a {a.shape} matrix")
    n = a.rows
    c = [Fraction(0)] * (n + 1)
    c[n] = Fraction(1)
    ident = Matrix.identity(n)
    m = Matrix.zeros(n, n)
    for k in range(1, n + 1):
        m = a @ m + c[n - k + 1] * ident
        c[n - k] = -Fraction((a @ m).trace()) / k
    return RatPoly(c)


def companion(p):
    """Companion matrix of a monic polynomial (ones on the subdiagonal)."""
    p = p.monic()
    k = p.degree
    out = [[0] * k for _ in range(k)]
    for i in range(1, k):
        out[i][i - 1] = 1
    for i in range(k):
        out[i][k - 1] = -p.coeffs[i]
    return Matrix(out, k, k)


def invariant_factors(m):
    """Nonconstant invariant factors of tI - m over Q[t], monic, in divisibility order."""
    if not m.is_square():
        raise NotSquare(f"invariant factors of a {m.shape} matrix")
    if m.rows == 0:
        return []
    import sympy
    from sympy.matrices.normalforms import invariant_factors as _sympy_if

    t = sympy.Symbol("t")
    sm = sympy.Matrix(m.rows, m.cols, [sympy.Rational(x) for x in m.flat()])
    chi = t * sympy.eye(m.rows) - sm
    out = []
    for f in _sympy_if(chi, domain=sympy.QQ[t]):
        poly = sympy.Poly(sympy.sympify(f), t)
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
        rp = RatPoly(coeffs)
        if rp.degree >= 1:
            out.append(rp.monic())
    return out


def rational_canonical_form(m):
    factors = invariant_factors(m)
    if not factors:
        return Matrix([], 0, 0)
    return block_diag([companion(f) for f in factors])


@dataclass(frozen=True)
class EventualRange:
    """Canonical basis of the eventual range and the invertible part of A on it.

    ``basis`` holds the nonzero rows of the reduced echelon form of
    ``(A^r)^T``; ``pivots`` are their pivot positions, so the coordinates
    of a vector of the range are its entries at ``pivots``.
    """

    basis: tuple
    pivots: tuple
    a_times: Matrix
    rcf: Matrix
    ambient: int

    @property
    def dim(self):
        return len(self.basis)

    def basis_matrix(self):
        return Matrix.from_columns(self.basis, self.ambient)

    def coordinates(self, vec):
        return tuple(_norm(Fraction(vec[p])) for p in self.pivots)


def eventual_range(a):
    if not a.is_square():
        raise NotSquare(f"eventual range of a {a.shape} matrix")
    r = a.rows
    p = a ** r
    red, piv = rref(p.T)
    basis = tuple(red.row(i) for i in range(len(piv)))
    d = len(basis)
    cols = [tuple(Fraction(x) for x in a.apply(b)) for b in basis]
    a_times = Matrix([[cols[j][piv[i]] for j in range(d)] for i in range(d)], d, d)
    return EventualRange(basis, tuple(piv), a_times, rational_canonical_form(a_times), r)


# ---------------------------------------------------------------------------
# integer lattices


def _echelon_int(rows, upto):
    """Unimodular row reduction of ``rows`` into Hermite form on columns < upto.

    Returns the rank; ``rows`` is modified in place.
    """
    r = 0
    for c in range(upto):
        while True:
            nz = [i for i in range(r, len(rows)) if rows[i][c] != 0]
            if not nz:
                break
            i_min = min(nz, key=lambda i: abs(rows[i][c]))
            rows[r], rows[i_min] = rows[i_min], rows[r]
            p = rows[r][c]
            clean = True
            for i in range(r + 1, len(rows)):
                if rows[i][c]:
                    q = rows[i][c] // p
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
                    if rows[i][c]:
                        clean = False
            if clean:
                break
        if r >= len(rows) or rows[r][c] == 0:
            continue
        if rows[r][c] < 0:
            rows[r] = [-x for x in rows[r]]
        p = rows[r][c]
        for i in range(r):
            q = rows[i][c] // p
            if q:
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def hermite_normal_form(vectors, n):
    """Row-style Hermite normal form of the lattice spanned by ``vectors`` in Z^n."""
    rows = [list(v) for v in vectors]
    k = _echelon_int(rows, n)
    return [tuple(r) for r in rows[:k]]


def integer_kernel_basis(a):
    """Hermite-reduced Z-basis of {x in Z^cols : a x = 0}."""
    if not a.is_integral():
        raise DimensionMismatch("integer kernel needs an integer matrix")
    n, m = a.cols, a.rows
    aug = [list(a.col(j)) + [1 if i == j else 0 for i in range(n)] for j in range(n)]
    k = _echelon_int(aug, m)
    kernel = [row[m:] for row in aug[k:]]
    return hermite_normal_form(kernel, n)


# ---------------------------------------------------------------------------
# real roots


def sturm_sequence(p):
    q = squarefree_part(p)
    seq = [q, q.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    return seq[:-1]


def _variations(seq, x):
    signs = [s for s in (f(x) for f in seq) if s != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if (u < 0) != (v < 0))


def count_roots(seq, lo, hi):
    """Number of distinct real roots in (lo, hi] of the first polynomial of ``seq``."""
    return _variations(seq, lo) - _variations(seq, hi)


def root_bound(p):
    """Power of two strictly exceeding the modulus of every root (Cauchy)."""
    q = p.monic()
    cb = 1 + max((abs(c) for c in q.coeffs[:-1]), default=Fraction(0))
    b = Fraction(1)
    while b <= cb:
        b *= 2
    return b


@dataclass
class RootInterval:
    """Half-open interval (lo, hi] holding exactly one real root of ``poly``."""

    lo: Fraction
    hi: Fraction
    poly: RatPoly
    bisections: int = 0
    _sturm: list = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self._sturm is None:
            self._sturm = sturm_sequence(self.poly)

    @property
    def width(self):
        return self.hi - self.lo

    def bisect(self):
        if self.bisections >= MAX_BISECTIONS:
            raise RefinementBudget(f"more than {MAX_BISECTIONS} bisections requested")
        mid = (self.lo + self.hi) / 2
        if count_roots(self._sturm, mid, self.hi) >= 1:
            self.lo = mid
        else:
            self.hi = mid
        self.bisections += 1

    def refine(self, width):
        width = Fraction(width)
        while self.hi - self.lo > width:
            self.bisect()
        return self

    def contains(self, x):
        return self.lo < x <= self.hi


def isolate_max_real_root(p, width=None):
    """Isolating interval of the largest real root of ``p``.

    The interval is bisected until it holds exactly one root of the
    squarefree part of ``p`` and, if ``width`` is given, is no wider than it.
    """
    if p.is_zero():
        raise NoRealRoot("the zero polynomial")
    q = squarefree_part(p)
    if q.degree < 1:
        raise NoRealRoot(f"{p} is constant")
    seq = sturm_sequence(q)
    b = root_bound(q)
    if count_roots(seq, -b, b) == 0:
        raise NoRealRoot(f"{p} has no real root")
    iv = RootInterval(-b, b, q, 0, seq)
    while count_roots(seq, iv.lo, iv.hi) > 1:
        iv.bisect()
    if width is not None:
        iv.refine(width)
    return iv


@dataclass(frozen=True)
class PerronComparison:
    equal: bool
    interval_a: tuple
    interval_b: tuple
    bisections: int
    joint_poly: RatPoly


def _perron_poly(a):
    if not a.is_square():
        raise NotSquare(f"spectral data of a {a.shape} matrix")
    p = charpoly(a)
    if p.strip_t()[0].degree < 1:
        raise ZeroSpectralRadius("matrix is nilpotent")
    return p


def perron_compare(a, b):
    """Decide exactly whether two nonnegative matrices share their Perron root."""
    pa, pb = _perron_poly(a), _perron_poly(b)
    joint = squarefree_part(pa * pb)
    jseq = sturm_sequence(joint)
    ia = isolate_max_real_root(pa)
    ib = isolate_max_real_root(pb)
    spent = ia.bisections + ib.bisections
    for iv in (ia, ib):
        while count_roots(jseq, iv.lo, iv.hi) > 1:
            iv.bisect()
            spent += 1
    overlap = ia.lo < ib.hi and ib.lo < ia.hi
    equal = overlap and count_roots(jseq, min(ia.lo, ib.lo), max(ia.hi, ib.hi)) == 1
    return PerronComparison(equal, (ia.lo, ia.hi), (ib.lo, ib.hi), spent, joint)


def perron_equal(a, b):
    return perron_compare(a, b).equal


def small_vectors(n, bound):
    """All integer vectors in [-bound, bound]^n, in lexicographic order."""
    return product(range(-bound, bound + 1), repeat=n)
