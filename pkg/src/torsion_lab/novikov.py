"""Multivariable group rings over Z^r, their Novikov completion, and specializations.

A Novikov element is a formal sum of lattice points whose grading (dot
product with a fixed weight vector) is bounded below.  Elements are kept
truncated: only terms of grading below ``precision`` are trusted.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .errors import ParseError, PrecisionError
from .exactalg import LaurentPoly, TruncatedSeries


def _vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _dot(a, w):
    return sum(x * y for x, y in zip(a, w))


class GroupRingElement:
    """Finite integer combination of elements of Z^r, written multiplicatively."""

    __slots__ = ("rank", "terms")

    def __init__(self, rank, terms=None):
        self.rank = rank
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != rank:
                raise ValueError(f"exponent vector {e} does not have length {rank}")
            if c:
                clean[e] = clean.get(e, 0) + c
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def monomial(cls, exponent, coeff=1):
        return cls(len(exponent), {tuple(exponent): coeff})

    @classmethod
    def one(cls, rank):
        return cls(rank, {(0,) * rank: 1})

    @property
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return GroupRingElement(self.rank, out)

    def __neg__(self):
        return GroupRingElement(self.rank, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement(self.rank, {e: c * other for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _vec_add(e1, e2)
                out[e] = out.get(e, 0) + c1 * c2
        return GroupRingElement(self.rank, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def __repr__(self):
        body = " + ".join(f"{c}*{list(e)}" for e, c in sorted(self.terms.items())) or "0"
        return f"GroupRingElement(r={self.rank}: {body})"

    def to_json(self):
        return [[list(e), c] for e, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, data, rank):
        return cls(rank, _parse_terms(data, rank))


def _parse_terms(data, rank):
    if not isinstance(data, list):
        raise ParseError("group ring element must be a list of [[exponents], coefficient] pairs")
    terms = {}
    for pair in data:
        if not isinstance(pair, list) or len(pair) != 2:
            raise ParseError(f"bad group ring term {pair!r}")
        e, c = pair
        if not isinstance(e, list) or len(e) != rank or any(isinstance(x, bool) or not isinstance(x, int) for x in e):
            raise ParseError(f"exponent vector {e!r} must be {rank} integers")
        if isinstance(c, bool) or not isinstance(c, int):
            raise ParseError(f"coefficient {c!r} must be an integer")
        key = tuple(e)
        if key in terms:
            raise ParseError(f"repeated exponent vector {e}")
        terms[key] = c
    return terms


class NovikovElement:
    """Truncated element of the Novikov ring of Z^r with respect to ``weights``.

    ``exact`` records that the element is a genuine finite sum with every
    term below the precision, so nothing was discarded.
    """

    __slots__ = ("rank", "weights", "terms", "precision", "exact")

    def __init__(self, weights, terms, precision, exact=False):
        self.weights = tuple(int(w) for w in weights)
        self.rank = len(self.weights)
        self.precision = precision
        kept = {}
        dropped = False
        for e, c in terms.items():
            e = tuple(e)
            if len(e) != self.rank:
                raise ValueError(f"exponent vector {e} does not have length {self.rank}")
            if not c:
                continue
            if _dot(e, self.weights) < precision:
                kept[e] = kept.get(e, 0) + c
            else:
                dropped = True
        self.terms = {e: c for e, c in kept.items() if c}
        self.exact = exact and not dropped

    @classmethod
    def from_group_ring(cls, g, weights, precision):
        return cls(weights, g.terms, precision, exact=True)

    @classmethod
    def one(cls, weights, precision):
        return cls(weights, {(0,) * len(weights): 1}, precision, exact=True)

    def grading(self, e):
        return _dot(e, self.weights)

    @property
    def lower(self):
        """Lowest grading with a nonzero term, or the precision if none."""
        return min((self.grading(e) for e in self.terms), default=self.precision)

    @property
    def is_zero(self):
        return not self.terms

    def _check(self, other):
        if self.weights != other.weights:
            raise ValueError("Novikov elements have different weight vectors")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return NovikovElement(self.weights, out, min(self.precision, other.precision), self.exact and other.exact)

    def __neg__(self):
        return NovikovElement(self.weights, {e: -c for e, c in self.terms.items()}, self.precision, self.exact)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return NovikovElement(self.weights, {e: c * other for e, c in self.terms.items()}, self.precision, self.exact)
        self._check(other)
        prec = min(self.precision + other.lower, other.precision + self.lower)
        out = {}
        skipped = False
        for e1, c1 in self.terms.items():
            g1 = self.grading(e1)
            for e2, c2 in other.terms.items():
                if g1 + other.grading(e2) >= prec:
                    skipped = True
                    continue
                e = _vec_add(e1, e2)
                out[e] = out.get(e, 0) + c1 * c2
        return NovikovElement(self.weights, out, prec, self.exact and other.exact and not skipped)

    __rmul__ = __mul__

    def truncate(self, precision):
        if precision > self.precision:
            raise PrecisionError(f"cannot raise precision from {self.precision} to {precision}")
        return NovikovElement(self.weights, self.terms, precision, self.exact)

    def lowest_part(self):
        v = self.lower
        return {e: c for e, c in self.terms.items() if self.grading(e) == v}

    def is_unit(self):
        low = self.lowest_part()
        return len(low) == 1 and abs(next(iter(low.values()))) == 1

    def inverse(self):
        """Inverse when the lowest-grading part is a single ``±g``."""
        if not self.is_unit():
            raise ArithmeticError("element is not a unit of the truncated Novikov ring")
        (g, c), = self.lowest_part().items()
        v = self.grading(g)
        ginv = tuple(-x for x in g)
        prec = self.precision - 2 * v
        # self = c*g*(1 + y) with y of positive grading
        y = NovikovElement(self.weights, {_vec_add(e, ginv): k * c for e, k in self.terms.items() if e != g}, self.precision - v)
        acc = NovikovElement.one(self.weights, self.precision - v)
        power = NovikovElement.one(self.weights, self.precision - v)
        while True:
            power = power * (-y)
            if power.is_zero or power.lower >= acc.precision:
                break
            acc = acc + power
        inv = NovikovElement(self.weights, {_vec_add(e, ginv): k * c for e, k in acc.terms.items()}, prec)
        return inv

    def __eq__(self, other):
        if not isinstance(other, NovikovElement):
            return NotImplemented
        return self.weights == other.weights and self.precision == other.precision and self.terms == other.terms

    def __repr__(self):
        body = " + ".join(f"{c}*{list(e)}" for e, c in sorted(self.terms.items())) or "0"
        return f"NovikovElement({body}; grading < {self.precision})"

    def to_json(self):
        return {"precision": self.precision, "terms": [[list(e), c] for e, c in sorted(self.terms.items())]}


def geometric_series(g, weights, precision):
    """``(1 - [g])^-1 = 1 + g + g^2 + ...`` truncated below ``precision``."""
    step = _dot(g, weights)
    if step <= 0:
        raise ValueError(f"class {list(g)} has grading {step} <= 0; the geometric series does not converge")
    terms = {}
    e = (0,) * len(weights)
    j = 0
    while j * step < precision:
        terms[e] = 1
        e = _vec_add(e, g)
        j += 1
    return NovikovElement(weights, terms, precision)


@dataclass(frozen=True)
class PathMatrix:
    """Square matrix of Novikov elements; rows are index-2 points, columns index-1 points."""

    weights: tuple
    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("path matrix must be square")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "weights", tuple(self.weights))

    @property
    def size(self):
        return len(self.entries)

    @classmethod
    def from_json(cls, data, weights, precision):
        if not isinstance(data, list) or any(not isinstance(r, list) for r in data):
            raise ParseError("path_matrix must be a list of rows")
        rank = len(weights)
        try:
            rows = [[NovikovElement(weights, _parse_terms(e, rank), precision, exact=True) for e in r] for r in data]
            return cls(tuple(weights), rows)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc


def _cofactor_det(m, weights, precision):
    n = len(m)
    if n == 0:
        return NovikovElement.one(weights, precision)
    acc = None
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = None
        for i, j in enumerate(perm):
            term = m[i][j] if term is None else term * m[i][j]
            if term.is_zero:
                break
        if term.is_zero:
            term = NovikovElement(weights, {}, term.precision, term.exact)
        term = term * sign
        acc = term if acc is None else acc + term
    return acc


def _elimination_det(m, weights, precision):
    a = [list(r) for r in m]
    n = len(a)
    det = NovikovElement.one(weights, precision)
    for k in range(n):
        p = next((i for i in range(k, n) if not a[i][k].is_zero and a[i][k].is_unit()), None)
        if p is None:
            if all(a[i][k].is_zero for i in range(k, n)):
                return NovikovElement(weights, {}, det.precision)
            raise PrecisionError("no unit pivot available; determinant needs cofactor expansion")
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        piv = a[k][k]
        det = det * piv
        inv = piv.inverse()
        for i in range(k + 1, n):
            if a[i][k].is_zero:
                continue
            f = a[i][k] * inv
            a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return det


def path_determinant(p, precision):
    """det(P); cofactor expansion up to size 6, unit-pivot elimination above."""
    if p.size <= 6:
        return _cofactor_det(p.entries, p.weights, precision)
    return _elimination_det(p.entries, p.weights, precision)


def orbit_product(orbits, weights, N):
    """``prod (1 - [gamma])^(-sign)`` over orbits carrying homology classes."""
    acc = NovikovElement.one(weights, N)
    for o in orbits:
        if o.homology_class is None:
            raise ValueError("every orbit needs a homology class here")
        g = tuple(o.homology_class)
        if len(g) != len(weights):
            raise ValueError(f"orbit class {list(g)} has the wrong rank")
        if _dot(g, weights) <= 0:
            raise ValueError(f"orbit class {list(g)} has nonpositive grading")
        if o.sign > 0:
            acc = acc * geometric_series(g, weights, N)
        else:
            one = (0,) * len(weights)
            acc = acc * NovikovElement(weights, {one: 1, g: -1}, N, exact=True)
    return acc


def i_eta(orbits, p, N):
    """``prod (1 - [gamma])^(-sign) * det(P)`` truncated below grading N."""
    zeta = orbit_product(orbits, p.weights, N)
    det = path_determinant(p, N)
    return zeta * det


def rho_specialize(x, weights=None):
    """Send each lattice point to ``t^(grading)``."""
    if isinstance(x, GroupRingElement):
        if weights is None:
            raise ValueError("weights are needed to specialize a group ring element")
        out = {}
        for e, c in x.terms.items():
            k = _dot(e, weights)
            out[k] = out.get(k, 0) + c
        return LaurentPoly(out)
    out = {}
    for e, c in x.terms.items():
        k = x.grading(e)
        out[k] = out.get(k, 0) + c
    return TruncatedSeries(out, x.precision)


def sw_series(i, chi_sigma):
    """``t^(chi/2) * rho(I)``."""
    if chi_sigma % 2:
        raise ValueError(f"Euler characteristic {chi_sigma} is odd")
    return rho_specialize(i).shift(chi_sigma // 2)


def specialize_alpha(f, N):
    """Image under ``e_i -> t^((2N)^i)`` for i = 1..r."""
    base = 2 * N
    out = {}
    for e, c in f.terms.items():
        k = sum(a * base ** (i + 1) for i, a in enumerate(e))
        out[k] = out.get(k, 0) + c
    return LaurentPoly(out)


def reconstruct_from_specialization(q, r, N):
    """Recover f supported in the box ``|a_i| < N`` from its image under ``specialize_alpha``.

    Each exponent is split into balanced base-2N digits; an exponent with no
    such expansion in r digits raises ``ValueError``.
    """
    if N < 1:
        raise ValueError("box size N must be positive")
    base = 2 * N
    terms = {}
    for k, c in q.terms():
        if not isinstance(c, int):
            raise ValueError(f"coefficient {c} is not an integer")
        if k % base:
            raise ValueError(f"exponent {k} is not a multiple of {base}")
        x = k // base
        digits = []
        for _ in range(r):
            d = x % base
            if d > N:
                d -= base
            if d == N:
                raise ValueError(f"exponent {k} needs a digit of size {N}, outside the box")
            digits.append(d)
            x = (x - d) // base
        if x:
            raise ValueError(f"exponent {k} does not fit in {r} balanced digits of base {base}")
        terms[tuple(digits)] = c
    return GroupRingElement(r, terms)


def symmetrize(g):
    """Translate g so that it is invariant under ``h -> h^-1``; ``ValueError`` if impossible."""
    if not g.terms:
        return g
    center = []
    for i in range(g.rank):
        lo = min(e[i] for e in g.terms)
        hi = max(e[i] for e in g.terms)
        if (lo + hi) % 2:
            raise ValueError(f"coordinate {i} has half-integer center {(lo + hi) / 2}; no symmetric translate")
        center.append((lo + hi) // 2)
    moved = {tuple(x - c for x, c in zip(e, center)): k for e, k in g.terms.items()}
    for e, k in moved.items():
        if moved.get(tuple(-x for x in e)) != k:
            raise ValueError("element is not symmetric about its center")
    return GroupRingElement(g.rank, moved)


@dataclass(frozen=True)
class NovikovBlock:
    """The ``novikov`` block of an instance file."""

    rank: int
    weights: tuple
    orbits: object
    path_matrix: PathMatrix
    chi_sigma: int
    precision: int

    @classmethod
    def from_json(cls, data):
        from .orbits import OrbitSet

        keys = {"rank", "weights", "orbits", "path_matrix", "chi_sigma", "precision"}
        if not isinstance(data, dict) or set(data) - keys or not {"rank", "weights", "path_matrix", "chi_sigma"} <= set(data):
            raise ParseError(f"novikov block needs keys {sorted(keys)} (orbits and precision optional)")
        r, w = data["rank"], data["weights"]
        if not isinstance(r, int) or r < 0 or not isinstance(w, list) or len(w) != r or any(not isinstance(x, int) for x in w):
            raise ParseError("novikov rank/weights malformed")
        prec = data.get("precision", 30)
        chi = data["chi_sigma"]
        if not isinstance(prec, int) or not isinstance(chi, int):
            raise ParseError("precision and chi_sigma must be integers")
        orbits = OrbitSet.from_json(data.get("orbits", []))
        for o in orbits:
            if o.homology_class is None or len(o.homology_class) != r:
                raise ParseError("novikov orbits need a class of length rank")
        pm = PathMatrix.from_json(data["path_matrix"], tuple(w), prec)
        return cls(r, tuple(w), orbits, pm, chi, prec)

    def i_eta(self, N=None):
        return i_eta(self.orbits, self.path_matrix, self.precision if N is None else N)

    def sw_series(self, N=None):
        return sw_series(self.i_eta(N), self.chi_sigma)
