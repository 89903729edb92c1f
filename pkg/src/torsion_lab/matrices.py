"""Dense exact linear algebra over Laurent polynomials and rational functions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import InconsistentSystemError, ParseError
from .exactalg import LaurentPoly, RationalFunction

POLY = "poly"
RATIONAL = "rational"


def _lift(x):
    if isinstance(x, (LaurentPoly, RationalFunction)):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return LaurentPoly.constant(x)
    raise TypeError(f"unsupported matrix entry {x!r}")


def _zero(ring):
    return LaurentPoly.zero() if ring == POLY else RationalFunction.zero()


def _one(ring):
    return LaurentPoly.one() if ring == POLY else RationalFunction.one()


def _exdiv(a, b):
    if isinstance(a, LaurentPoly):
        return a.divexact(b)
    return a / b


class RingMatrix:
    """Immutable dense matrix with entries in Q[t, t^-1] or Q(t).

    All entries share one ring: Laurent polynomials unless any entry is a
    genuine rational function, in which case everything is promoted.
    """

    __slots__ = ("rows", "cols", "entries", "ring")

    def __init__(self, rows, cols, entries, ring=None):
        entries = [_lift(e) for e in entries]
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {len(entries)}")
        if ring is None:
            ring = RATIONAL if any(isinstance(e, RationalFunction) for e in entries) else POLY
        if ring == RATIONAL:
            entries = [e if isinstance(e, RationalFunction) else RationalFunction(e) for e in entries]
        elif any(isinstance(e, RationalFunction) for e in entries):
            entries = [e.as_poly() if isinstance(e, RationalFunction) else e for e in entries]
        self.rows = rows
        self.cols = cols
        self.entries = tuple(entries)
        self.ring = ring

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_rows(cls, rows, cols=None, ring=None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, [e for r in rows for e in r], ring)

    @classmethod
    def zeros(cls, rows, cols, ring=POLY):
        return cls(rows, cols, [_zero(ring)] * (rows * cols), ring)

    @classmethod
    def identity(cls, n, ring=POLY):
        z, o = _zero(ring), _one(ring)
        return cls(n, n, [o if i == j else z for i in range(n) for j in range(n)], ring)

    @classmethod
    def diagonal(cls, entries, rows=None, cols=None, ring=None):
        entries = [_lift(e) for e in entries]
        rows = len(entries) if rows is None else rows
        cols = len(entries) if cols is None else cols
        if ring is None:
            ring = RATIONAL if any(isinstance(e, RationalFunction) for e in entries) else POLY
        z = _zero(ring)
        out = [z] * (rows * cols)
        for i, e in enumerate(entries):
            out[i * cols + i] = e
        return cls(rows, cols, out, ring)

    @classmethod
    def block_diagonal(cls, blocks):
        ring = RATIONAL if any(b.ring == RATIONAL for b in blocks) else POLY
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = [[_zero(ring)] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[r0 + i][c0 + j] = b[i, j]
            r0 += b.rows
            c0 += b.cols
        return cls(rows, cols, [e for r in out for e in r], ring)

    # -- access ------------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j):
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self):
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def is_square(self):
        return self.rows == self.cols

    @property
    def is_zero(self):
        return not any(self.entries)

    def transpose(self):
        return RingMatrix(self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)], self.ring)

    T = property(transpose)

    def submatrix(self, rows, cols):
        rows, cols = list(rows), list(cols)
        return RingMatrix(len(rows), len(cols), [self[i, j] for i in rows for j in cols], self.ring)

    def hstack(self, other):
        if self.rows != other.rows:
            raise ValueError("hstack needs equal row counts")
        ring = RATIONAL if RATIONAL in (self.ring, other.ring) else POLY
        return RingMatrix.from_rows([list(self.row(i)) + list(other.row(i)) for i in range(self.rows)], self.cols + other.cols, ring)

    def vstack(self, other):
        if self.cols != other.cols:
            raise ValueError("vstack needs equal column counts")
        ring = RATIONAL if RATIONAL in (self.ring, other.ring) else POLY
        return RingMatrix(self.rows + other.rows, self.cols, self.entries + other.entries, ring)

    def map(self, fn, ring=None):
        return RingMatrix(self.rows, self.cols, [fn(e) for e in self.entries], ring)

    def to_rational(self):
        return self if self.ring == RATIONAL else RingMatrix(self.rows, self.cols, self.entries, RATIONAL)

    # -- arithmetic -----------------------------------------------------------

    def _promote(self, other):
        if self.ring == other.ring:
            return self, other
        return self.to_rational(), other.to_rational()

    def __add__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        a, b = self._promote(other)
        return RingMatrix(a.rows, a.cols, [x + y for x, y in zip(a.entries, b.entries)], a.ring)

    def __neg__(self):
        return RingMatrix(self.rows, self.cols, [-x for x in self.entries], self.ring)

    def __sub__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return self + (-other)

    def __matmul__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        a, b = self._promote(other)
        z = _zero(a.ring)
        out = []
        bcols = [b.col(j) for j in range(b.cols)]
        for i in range(a.rows):
            r = a.row(i)
            for col in bcols:
                acc = z
                for x, y in zip(r, col):
                    if x and y:
                        acc = acc + x * y
                out.append(acc)
        return RingMatrix(a.rows, b.cols, out, a.ring)

    def __mul__(self, other):
        if isinstance(other, RingMatrix):
            return self @ other
        if isinstance(other, RationalFunction) and self.ring == POLY:
            return self.to_rational() * other
        if isinstance(other, (int, Fraction, LaurentPoly, RationalFunction)) and not isinstance(other, bool):
            return RingMatrix(self.rows, self.cols, [x * other for x in self.entries], self.ring)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n):
        if not self.is_square or n < 0:
            raise ValueError("matrix powers need a square matrix and n >= 0")
        result, base = RingMatrix.identity(self.rows, self.ring), self
        while n:
            if n & 1:
                result = result @ base
            n >>= 1
            if n:
                base = base @ base
        return result

    def trace(self):
        if not self.is_square:
            raise ValueError("trace of a non-square matrix")
        acc = _zero(self.ring)
        for i in range(self.rows):
            acc = acc + self[i, i]
        return acc

    # -- comparison and io ------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        a, b = self._promote(other)
        return a.entries == b.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in self.row(i)) for i in range(self.rows))
        return f"RingMatrix({self.rows}x{self.cols}: [{body}])"

    def to_json(self):
        return {"rows": self.rows, "cols": self.cols, "entries": [[e.to_json() for e in self.row(i)] for i in range(self.rows)]}

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict) or set(data) != {"rows", "cols", "entries"}:
            raise ParseError("matrix needs exactly the keys rows, cols, entries")
        rows, cols, entries = data["rows"], data["cols"], data["entries"]
        if not (isinstance(rows, int) and isinstance(cols, int)) or rows < 0 or cols < 0:
            raise ParseError("matrix rows/cols must be nonnegative integers")
        if not isinstance(entries, list) or len(entries) != rows or any(not isinstance(r, list) or len(r) != cols for r in entries):
            raise ParseError(f"matrix entries must be {rows} rows of {cols} entries")
        parsed = []
        for r in entries:
            for e in r:
                parsed.append(RationalFunction.from_json(e) if isinstance(e, dict) else LaurentPoly.from_json(e))
        return cls(rows, cols, parsed)


# -- elimination --------------------------------------------------------------------


def _bareiss_echelon(m):
    """Fraction-free row echelon form; returns (rank, rows, pivot columns, swap parity)."""
    a = [list(m.row(i)) for i in range(m.rows)]
    one = _one(m.ring)
    prev = one
    r = 0
    pivots = []
    sign = 1
    for c in range(m.cols):
        if r == m.rows:
            break
        p = next((i for i in range(r, m.rows) if a[i][c]), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
            sign = -sign
        piv = a[r][c]
        for i in range(r + 1, m.rows):
            lead = a[i][c]
            row_i = a[i]
            for j in range(c + 1, m.cols):
                v = row_i[j] * piv
                if lead and a[r][j]:
                    v = v - lead * a[r][j]
                row_i[j] = _exdiv(v, prev) if v else v
            row_i[c] = _zero(m.ring)
        prev = piv
        pivots.append(c)
        r += 1
    return r, a, pivots, sign


def determinant(m):
    """Determinant by fraction-free (Bareiss) elimination, in the entry ring."""
    if not m.is_square:
        raise ValueError(f"determinant of a non-square {m.rows}x{m.cols} matrix")
    n = m.rows
    if n == 0:
        return _one(m.ring)
    rank, a, _, sign = _bareiss_echelon(m)
    if rank < n:
        return _zero(m.ring)
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def cofactor_determinant(m):
    """Laplace expansion along the first row; a slow reference for small sizes."""
    if not m.is_square:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return _one(m.ring)
    if n == 1:
        return m[0, 0]
    acc = _zero(m.ring)
    for j in range(n):
        if not m[0, j]:
            continue
        minor = m.submatrix(range(1, n), [c for c in range(n) if c != j])
        term = m[0, j] * cofactor_determinant(minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def rank(m):
    """Rank over the fraction field."""
    return _bareiss_echelon(m)[0]


def rank_and_solve(m, rhs=None):
    """Rank of ``m`` over Q(t) and, if ``rhs`` is given, one solution of ``m x = rhs``.

    The solution is a ``RingMatrix`` over Q(t) (free variables set to zero).
    Raises ``InconsistentSystemError`` if no solution exists.
    """
    if rhs is None:
        return rank(m), None
    if rhs.rows != m.rows:
        raise ValueError(f"right-hand side has {rhs.rows} rows, matrix has {m.rows}")
    a = [list(r) for r in m.to_rational().to_rows()]
    b = [list(r) for r in rhs.to_rational().to_rows()]
    rows, cols = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        b[r], b[p] = b[p], b[r]
        inv = a[r][c].inverse()
        a[r] = [x * inv for x in a[r]]
        b[r] = [x * inv for x in b[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
                b[i] = [x - f * y for x, y in zip(b[i], b[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if any(b[i]):
            raise InconsistentSystemError("linear system has no solution")
    zero = RationalFunction.zero()
    sol = [[zero] * rhs.cols for _ in range(cols)]
    for i, c in enumerate(pivots):
        sol[c] = b[i]
    return r, RingMatrix.from_rows(sol, rhs.cols, RATIONAL) if cols else RingMatrix.zeros(0, rhs.cols, RATIONAL)


def inverse(m):
    """Inverse over Q(t); ``ZeroDivisionError`` if singular."""
    if not m.is_square:
        raise ValueError("inverse of a non-square matrix")
    try:
        r, sol = rank_and_solve(m, RingMatrix.identity(m.rows, RATIONAL))
    except InconsistentSystemError:
        r, sol = -1, None
    if r != m.rows:
        raise ZeroDivisionError("matrix is singular over the fraction field")
    return sol


def adjugate(m):
    """Transpose of the cofactor matrix, computed from minors in the entry ring."""
    if not m.is_square:
        raise ValueError("adjugate of a non-square matrix")
    n = m.rows
    if n == 0:
        return m
    out = []
    for i in range(n):
        for j in range(n):
            minor = m.submatrix([r for r in range(n) if r != j], [c for c in range(n) if c != i])
            d = determinant(minor)
            out.append(d if (i + j) % 2 == 0 else -d)
    return RingMatrix(n, n, out, m.ring)


def enumerate_minors(m, k):
    """Yield every k-by-k minor, row subsets outermost, both in lexicographic order."""
    if not 0 <= k <= min(m.rows, m.cols):
        raise ValueError(f"minor size {k} out of range for a {m.rows}x{m.cols} matrix")
    for rs in combinations(range(m.rows), k):
        for cs in combinations(range(m.cols), k):
            yield determinant(m.submatrix(rs, cs))


class SpanTracker:
    """Incremental independence test for column vectors over Q(t)."""

    def __init__(self, dim):
        self.dim = dim
        self._basis = []  # (pivot index, vector with 1 at pivot)

    def __len__(self):
        return len(self._basis)

    def reduce(self, vec):
        v = [x if isinstance(x, RationalFunction) else RationalFunction(x) for x in vec]
        for p, b in self._basis:
            f = v[p]
            if f:
                v = [x - f * y if y else x for x, y in zip(v, b)]
        return v

    def add(self, vec):
        """Add ``vec`` if it is independent of what is already held; report whether it was."""
        v = self.reduce(vec)
        p = next((i for i, x in enumerate(v) if x), None)
        if p is None:
            return False
        inv = v[p].inverse()
        v = [x * inv for x in v]
        self._basis.append((p, v))
        return True


# -- Smith normal form over Q[t, t^-1] ---------------------------------------------------


@dataclass(frozen=True)
class SmithForm:
    """``left @ original @ right`` is diagonal with ``diag`` followed by zeros."""

    left: RingMatrix
    right: RingMatrix
    diag: tuple
    rows: int
    cols: int

    @property
    def rank(self):
        return len(self.diag)

    def diagonal_matrix(self):
        return RingMatrix.diagonal(self.diag, self.rows, self.cols, POLY)

    def check(self, original):
        """Assert every defining property against ``original``; returns True."""
        if self.left @ original @ self.right != self.diagonal_matrix():
            raise AssertionError("left * m * right is not the stored diagonal")
        for a, b in zip(self.diag, self.diag[1:]):
            if not a.divides(b):
                raise AssertionError(f"invariant factor {a} does not divide {b}")
        for u in (self.left, self.right):
            d = determinant(u)
            if not (d and d.is_monomial):
                raise AssertionError(f"transform determinant {d} is not a unit")
        return True


def smith_normal_form(m):
    """Smith normal form over Q[t, t^-1] with tracked unimodular transforms.

    Invariant factors are normalized to valuation 0 and constant term 1.
    """
    if m.ring != POLY:
        raise ValueError("smith_normal_form needs Laurent polynomial entries")
    R, C = m.rows, m.cols
    a = [list(m.row(i)) for i in range(R)]
    left = [[LaurentPoly.one() if i == j else LaurentPoly.zero() for j in range(R)] for i in range(R)]
    right = [[LaurentPoly.one() if i == j else LaurentPoly.zero() for j in range(C)] for i in range(C)]
    diag = []

    def row_op(dst, src, q):  # row[dst] -= q * row[src]
        a[dst] = [x - q * y if y else x for x, y in zip(a[dst], a[src])]
        left[dst] = [x - q * y if y else x for x, y in zip(left[dst], left[src])]

    def col_op(dst, src, q):  # col[dst] -= q * col[src]
        for row in a:
            if row[src]:
                row[dst] = row[dst] - q * row[src]
        for row in right:
            if row[src]:
                row[dst] = row[dst] - q * row[src]

    for k in range(min(R, C)):
        while True:
            best = None
            for i in range(k, R):
                for j in range(k, C):
                    e = a[i][j]
                    if e and (best is None or e.span < best[0]):
                        best = (e.span, i, j)
            if best is None:
                break
            _, pi, pj = best
            if pi != k:
                a[k], a[pi] = a[pi], a[k]
                left[k], left[pi] = left[pi], left[k]
            if pj != k:
                for row in a:
                    row[k], row[pj] = row[pj], row[k]
                for row in right:
                    row[k], row[pj] = row[pj], row[k]
            piv = a[k][k]
            dirty = False
            for i in range(k + 1, R):
                if a[i][k]:
                    q, r = a[i][k].euclid_divmod(piv)
                    row_op(i, k, q)
                    dirty = dirty or bool(r)
            for j in range(k + 1, C):
                if a[k][j]:
                    q, r = a[k][j].euclid_divmod(piv)
                    col_op(j, k, q)
                    dirty = dirty or bool(r)
            if dirty:
                continue
            bad = next((i for i in range(k + 1, R) for j in range(k + 1, C) if a[i][j] and not piv.divides(a[i][j])), None)
            if bad is not None:
                a[k] = [x + y for x, y in zip(a[k], a[bad])]
                left[k] = [x + y for x, y in zip(left[k], left[bad])]
                continue
            break
        if best is None:
            break
        piv = a[k][k]
        unit_inv = LaurentPoly.monomial(-piv.valuation, Fraction(1) / piv.low_coeff)
        a[k] = [x * unit_inv for x in a[k]]
        left[k] = [x * unit_inv for x in left[k]]
        diag.append(a[k][k])

    return SmithForm(
        RingMatrix.from_rows(left, R, POLY),
        RingMatrix.from_rows(right, C, POLY),
        tuple(diag),
        R,
        C,
    )
