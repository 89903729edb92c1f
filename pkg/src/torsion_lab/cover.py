"""The infinite cyclic cover: its torsion, homology, deck action and Fitting orders."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .complexes import DOWN, UP, BasedComplex, is_acyclic, torsion
from .errors import ComplexError, NotAcyclicError, ParseError
from .exactalg import (
    PM_TK,
    Q_TK,
    LaurentPoly,
    RationalFunction,
    TruncatedSeries,
    UnitClass,
    gcd_laurent,
    normalize_unit_class,
)
from .matrices import (
    POLY,
    RingMatrix,
    determinant,
    enumerate_minors,
    rank,
    smith_normal_form,
)


class CoverComplex(BasedComplex):
    """Down-direction cellular complex over Z[t, t^-1]; t is the deck transformation."""

    def __init__(self, ranks, differentials, labels=None, check=True):
        super().__init__(DOWN, ranks, differentials, labels, check)
        for i, d in enumerate(self.differentials):
            if d.ring != POLY or not all(e.is_integral for e in d.entries):
                raise ComplexError(f"boundary {i + 1} must have integer Laurent polynomial entries")

    @classmethod
    def from_json(cls, data, direction=None):
        c = BasedComplex.from_json(data, direction=DOWN)
        try:
            return cls(c.ranks, c.differentials, c.labels, check=False)
        except ComplexError as exc:
            raise ParseError(str(exc)) from exc


def cover_torsion(c):
    """Torsion of the cover complex modulo ``±t^k``; ``NotAcyclicError`` when it is not acyclic."""
    return torsion(c, ambiguity=PM_TK)[0]


# -- homology over Q[t, t^-1] ---------------------------------------------------------


def _incoming(c, i):
    """Differential whose image lands in degree i, or None."""
    if c.direction == DOWN:
        return c.differentials[i] if i < len(c.differentials) else None
    return c.differentials[i - 1] if i >= 1 else None


def _outgoing(c, i):
    if c.direction == DOWN:
        return c.differentials[i - 1] if i >= 1 else None
    return c.differentials[i] if i < len(c.differentials) else None


def homology_invariant_factors(c):
    """Per degree: (non-unit invariant factors, free rank) of the homology over Q[t, t^-1].

    The torsion part of H_i is the torsion of the cokernel of the incoming
    differential, read off from its Smith form.  Factors are normalized to
    valuation 0 and constant term 1; units are dropped.
    """
    out = []
    for i, dim in enumerate(c.ranks):
        inc, outg = _incoming(c, i), _outgoing(c, i)
        factors = ()
        r_in = 0
        if inc is not None and inc.rows and inc.cols:
            snf = smith_normal_form(inc)
            factors = tuple(f for f in snf.diag if f.span > 0)
            r_in = snf.rank
        r_out = rank(outg) if outg is not None else 0
        out.append((factors, dim - r_in - r_out))
    return out


def companion_block(p):
    """Rational matrix A with ``det(1 - sA) = p(s)`` for p normalized with constant term 1.

    A is the companion matrix of the reversed polynomial, i.e. multiplication
    by ``t^-1`` on ``Q[t, t^-1]/(p)``.
    """
    if not p or p.valuation != 0 or p.low_coeff != 1:
        raise ValueError(f"{p} is not normalized to constant term 1")
    d = p.span
    c = [Fraction(p.coefficient(j)) for j in range(d + 1)]
    rows = [[Fraction(0)] * d for _ in range(d)]
    for r in range(1, d):
        rows[r][r - 1] = Fraction(1)
    for r in range(d):
        rows[r][d - 1] = -c[d - r]
    return rows


def _block_diag(blocks):
    n = sum(len(b) for b in blocks)
    out = [[Fraction(0)] * n for _ in range(n)]
    o = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[o + i][o + j] = x
        o += len(b)
    return out


def _matmul(a, b):
    if not a:
        return []
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col) if x and y) for col in bt] for row in a]


def char_poly_one_minus(a):
    """``det(1 - tA)`` for a square rational matrix A (list of rows)."""
    n = len(a)
    if n == 0:
        return LaurentPoly.one()
    t = LaurentPoly.monomial(1)
    m = RingMatrix.from_rows([[(1 if i == j else 0) - t * a[i][j] for j in range(n)] for i in range(n)], n, POLY)
    return determinant(m)


@dataclass(frozen=True)
class HomologySummary:
    """Rational homology of the cover with its deck action, degree by degree.

    ``action[i]`` is a square list-of-rows rational matrix.  ``factors`` is
    None when the summary was built directly from action matrices.
    """

    direction: str
    factors: tuple
    free_ranks: tuple
    action: tuple
    char_polys: tuple

    @property
    def finite(self):
        """True when every homology group is finite dimensional over Q."""
        return not any(self.free_ranks)

    @property
    def dimensions(self):
        return tuple(len(a) if f == 0 else None for a, f in zip(self.action, self.free_ranks))

    @classmethod
    def from_action_matrices(cls, matrices, direction=DOWN):
        """Summary for given integer or rational action matrices, one per degree."""
        action = tuple([[Fraction(x) for x in row] for row in m] for m in matrices)
        return cls(direction, None, (0,) * len(action), action, tuple(char_poly_one_minus(a) for a in action))

    def to_json(self):
        return {
            "factors": None if self.factors is None else [[f.to_json() for f in fs] for fs in self.factors],
            "free_ranks": list(self.free_ranks),
            "dimensions": list(self.dimensions),
            "char_polys": [p.to_json() for p in self.char_polys],
        }


def homology_summary(c):
    fs = homology_invariant_factors(c)
    factors = tuple(f for f, _ in fs)
    free = tuple(r for _, r in fs)
    action = []
    chars = []
    for factor_list, fr in fs:
        a = _block_diag([companion_block(p) for p in factor_list])
        action.append(a)
        p = LaurentPoly.one()
        for q in factor_list:
            p = p * q
        chars.append(p)
    return HomologySummary(c.direction, factors, free, tuple(action), tuple(chars))


def lefschetz_series(h, N):
    """``sum_(k>=1) t^k sum_i (-1)^i tr(A_i^k)``, trusted below ``t^N``."""
    if N < 1:
        raise ValueError("N must be at least 1")
    if not h.finite:
        raise ValueError("homology is not finite dimensional; the deck action has no trace")
    coeffs = [0] * N
    for i, a in enumerate(h.action):
        if not a:
            continue
        sign = 1 if i % 2 == 0 else -1
        p = a
        for k in range(1, N):
            coeffs[k] += sign * sum(p[j][j] for j in range(len(p)))
            if k + 1 < N:
                p = _matmul(p, a)
    return TruncatedSeries({k: c for k, c in enumerate(coeffs) if c}, N)


def lemma_torsion(c):
    """Alternating product of homology orders over Q[t, t^-1], modulo rational units.

    Degree i enters with exponent ``(-1)^i`` for up complexes and
    ``(-1)^(m-i)`` for down complexes, matching the torsion convention.
    """
    fs = homology_invariant_factors(c)
    if any(fr for _, fr in fs):
        raise NotAcyclicError("homology has a free part; the complex is not acyclic over Q(t)")
    value = RationalFunction.one()
    m = len(c.ranks) - 1
    for i, (factor_list, _) in enumerate(fs):
        order = LaurentPoly.one()
        for f in factor_list:
            order = order * f
        e = i if c.direction == UP else m - i
        value = value * (order if e % 2 == 0 else RationalFunction(1, order))
    return normalize_unit_class(value, Q_TK)


# -- Fitting orders over Z[t, t^-1] -----------------------------------------------------


@dataclass(frozen=True)
class PresentationMatrix:
    """Module presentation: one row per generator, one column per relation."""

    generators: tuple
    relations: RingMatrix

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if self.relations.rows != len(self.generators):
            raise ValueError(f"{len(self.generators)} generators but {self.relations.rows} relation rows")
        if self.relations.ring != POLY or not all(e.is_integral for e in self.relations.entries):
            raise ValueError("relations must be integer Laurent polynomials")

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict) or set(data) != {"generators", "relations"}:
            raise ParseError("presentation needs exactly the keys generators, relations")
        try:
            return cls(tuple(str(g) for g in data["generators"]), RingMatrix.from_json(data["relations"]))
        except ValueError as exc:
            raise ParseError(str(exc)) from exc


def fitting_order(p):
    """gcd of the maximal minors over Z[t, t^-1], modulo ``±t^k``.

    Returns the zero class when there are fewer relations than generators
    or every maximal minor vanishes.
    """
    n = len(p.generators)
    if p.relations.cols < n:
        return UnitClass.zero(PM_TK)
    g = LaurentPoly.zero()
    for minor in enumerate_minors(p.relations, n):
        if not minor:
            continue
        g = gcd_laurent(g, minor)
        if g.span == 0 and g.low_coeff == 1:
            break
    if not g:
        return UnitClass.zero(PM_TK)
    return normalize_unit_class(g, PM_TK)


__all__ = [
    "CoverComplex",
    "HomologySummary",
    "PresentationMatrix",
    "companion_block",
    "char_poly_one_minus",
    "cover_torsion",
    "fitting_order",
    "homology_invariant_factors",
    "homology_summary",
    "is_acyclic",
    "lefschetz_series",
    "lemma_torsion",
]
