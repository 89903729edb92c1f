"""Circle-valued Morse complexes from combinatorial flow data."""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import UP, BasedComplex, torsion
from .errors import ComplexError, NotAcyclicError, ParseError
from .exactalg import PM_TK, LaurentPoly, RationalFunction
from .matrices import POLY, RATIONAL, RingMatrix, adjugate, determinant


@dataclass(frozen=True)
class MorseData:
    """Critical points by index and the incidence polynomials between adjacent indices.

    ``incidence`` maps ``(x, y)`` with x of index i and y of index i+1 to the
    signed count of flow lines from x to y, weighted by ``t^(crossings)``.
    """

    dimension: int
    critical: tuple
    incidence: dict

    def __post_init__(self):
        crit = tuple(tuple(c) for c in self.critical)
        if len(crit) > self.dimension + 1:
            raise ComplexError(f"{len(crit)} index levels exceed dimension {self.dimension}")
        crit = crit + ((),) * (self.dimension + 1 - len(crit))
        object.__setattr__(self, "critical", crit)
        seen = {}
        for i, level in enumerate(crit):
            for x in level:
                if x in seen:
                    raise ComplexError(f"critical point {x!r} listed twice")
                seen[x] = i
        for (x, y), p in self.incidence.items():
            if x not in seen or y not in seen:
                raise ComplexError(f"incidence ({x!r}, {y!r}) names an unknown critical point")
            if seen[y] != seen[x] + 1:
                raise ComplexError(f"incidence ({x!r}, {y!r}) does not join adjacent indices")
            if p and p.valuation < 0:
                raise ComplexError(f"incidence ({x!r}, {y!r}) has a negative exponent")
            if not p.is_integral:
                raise ComplexError(f"incidence ({x!r}, {y!r}) must have integer coefficients")

    @property
    def index_of(self):
        return {x: i for i, level in enumerate(self.critical) for x in level}

    def differential(self, i):
        """Matrix of d: M^i -> M^(i+1); entry (y, x) is the incidence of x and y."""
        src, dst = self.critical[i], self.critical[i + 1]
        z = LaurentPoly.zero()
        rows = [[self.incidence.get((x, y), z) for x in src] for y in dst]
        return RingMatrix.from_rows(rows, len(src), POLY)

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict):
            raise ParseError("morse block must be an object")
        extra = set(data) - {"dimension", "critical", "incidence"}
        if extra:
            raise ParseError(f"unknown morse keys: {sorted(extra)}")
        try:
            n = data["dimension"]
            crit = data.get("critical", [])
            inc = {}
            for rec in data.get("incidence", []):
                if set(rec) != {"from", "to", "series"}:
                    raise ParseError("incidence records need exactly from, to, series")
                key = (rec["from"], rec["to"])
                if key in inc:
                    raise ParseError(f"duplicate incidence {key}")
                inc[key] = LaurentPoly.from_json(rec["series"])
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed morse block: {exc}") from exc
        if not isinstance(n, int) or n < 0:
            raise ParseError("dimension must be a nonnegative integer")
        try:
            return cls(n, tuple(tuple(level) for level in crit), inc)
        except ComplexError as exc:
            raise ParseError(str(exc)) from exc

    def to_json(self):
        return {
            "dimension": self.dimension,
            "critical": [list(level) for level in self.critical],
            "incidence": [{"from": x, "to": y, "series": p.to_json()} for (x, y), p in self.incidence.items()],
        }


@dataclass(frozen=True)
class MorseComplex:
    data: MorseData
    complex: BasedComplex
    adjoints: tuple
    laplacians: tuple

    @property
    def differentials(self):
        return self.complex.differentials

    def laplacian_determinants(self):
        return [determinant(lap) for lap in self.laplacians]

    @property
    def is_acyclic(self):
        """Acyclic over Q(t) exactly when every Laplacian block is invertible."""
        return all(self.laplacian_determinants())


def build_morse_complex(data):
    """Assemble the cochain complex, its transposed adjoint and the Laplacians."""
    n = data.dimension
    diffs = [data.differential(i) for i in range(n)]
    for i in range(n - 1):
        comp = diffs[i + 1] @ diffs[i]
        if not comp.is_zero:
            for r in range(comp.rows):
                for c in range(comp.cols):
                    if comp[r, c]:
                        x, z = data.critical[i][c], data.critical[i + 2][r]
                        raise ComplexError(f"d^2 != 0: coefficient of {z!r} in d(d({x!r})) is {comp[r, c]}")
    ranks = [len(level) for level in data.critical]
    cx = BasedComplex(UP, ranks, diffs, [list(level) for level in data.critical], check=False)
    adj = tuple(d.transpose() for d in diffs)
    laps = []
    for i, r in enumerate(ranks):
        lap = RingMatrix.zeros(r, r, POLY)
        if i >= 1:
            lap = lap + diffs[i - 1] @ adj[i - 1]
        if i < n:
            lap = lap + adj[i] @ diffs[i]
        laps.append(lap)
    return MorseComplex(data, cx, adj, tuple(laps))


def morse_torsion(mc, ambiguity=PM_TK):
    """Torsion of the Morse complex in the up convention."""
    return torsion(mc.complex, ambiguity=ambiguity)[0]


def chain_homotopy_W(mc):
    """``W_i = t * Delta_(i+1)^-1 * d_i`` for each degree, checked against ``d*W + Wd* = t``.

    Inverses are formed as adjugate over determinant so the check runs in
    exact rational-function arithmetic.  Raises ``NotAcyclicError`` when a
    Laplacian is singular and ``ArithmeticError`` if the identity fails.
    """
    dets = mc.laplacian_determinants()
    if not all(dets):
        raise NotAcyclicError("a Laplacian block is singular; the Morse complex is not acyclic")
    t = RationalFunction(LaurentPoly.monomial(1))
    W = []
    for i, d in enumerate(mc.differentials):
        adj = adjugate(mc.laplacians[i + 1])
        W.append((adj @ d).to_rational() * (t / RationalFunction(dets[i + 1])))
    if not w_identity_holds(mc, W):
        raise ArithmeticError("d*W + Wd* != t")
    return W


def w_identity_holds(mc, W):
    """Check ``d_i^T W_i + W_(i-1) d_(i-1)^T == t`` on every degree."""
    t = RationalFunction(LaurentPoly.monomial(1))
    ranks = mc.complex.ranks
    n = len(mc.differentials)
    for i, r in enumerate(ranks):
        acc = RingMatrix.zeros(r, r, RATIONAL)
        if i < n:
            acc = acc + mc.adjoints[i] @ W[i]
        if i >= 1:
            acc = acc + W[i - 1] @ mc.adjoints[i - 1]
        if acc != RingMatrix.identity(r, RATIONAL) * t:
            return False
    return True
