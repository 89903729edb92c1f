"""Based chain complexes and their Reidemeister torsion.

Ranks are always listed in increasing degree.  For ``direction == "up"``
(cochain complexes) ``differentials[i]`` maps degree i to degree i+1 and has
shape ``(ranks[i+1], ranks[i])``.  For ``direction == "down"`` (chain
complexes) ``differentials[i]`` is the boundary from degree i+1 to degree i
and has shape ``(ranks[i], ranks[i+1])``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ComplexError, NotAcyclicError, ParseError
from .exactalg import PM_TK, RationalFunction, normalize_unit_class
from .matrices import POLY, RingMatrix, SpanTracker, determinant, rank

UP = "up"
DOWN = "down"


class BasedComplex:
    """Finite free complex with ordered bases and explicit differential matrices."""

    def __init__(self, direction, ranks, differentials, labels=None, check=True):
        if direction not in (UP, DOWN):
            raise ComplexError(f"direction must be 'up' or 'down', got {direction!r}")
        ranks = tuple(int(r) for r in ranks)
        if any(r < 0 for r in ranks):
            raise ComplexError("ranks must be nonnegative")
        differentials = tuple(differentials)
        if len(differentials) != max(len(ranks) - 1, 0):
            raise ComplexError(f"{len(ranks)} degrees need {max(len(ranks) - 1, 0)} differentials, got {len(differentials)}")
        for i, d in enumerate(differentials):
            want = (ranks[i + 1], ranks[i]) if direction == UP else (ranks[i], ranks[i + 1])
            if d.shape != want:
                raise ComplexError(f"differential {i} has shape {d.shape}, expected {want}")
        if labels is None:
            labels = [[f"e{i}_{j}" for j in range(r)] for i, r in enumerate(ranks)]
        labels = tuple(tuple(str(x) for x in ls) for ls in labels)
        if len(labels) != len(ranks) or any(len(ls) != r for ls, r in zip(labels, ranks)):
            raise ComplexError("labels must give one name per basis element")
        self.direction = direction
        self.ranks = ranks
        self.differentials = differentials
        self.labels = labels
        if check:
            self.check_square_zero()

    @property
    def top(self):
        """Highest degree m."""
        return len(self.ranks) - 1

    def check_square_zero(self):
        for i in range(len(self.differentials) - 1):
            a, b = self.differentials[i], self.differentials[i + 1]
            comp = b @ a if self.direction == UP else a @ b
            if not comp.is_zero:
                raise ComplexError(f"differentials {i} and {i + 1} do not compose to zero")

    # -- positional view -----------------------------------------------------
    # Position j runs along the direction of the differential: degree j for
    # up complexes and degree m - j for down complexes.

    def degree_at(self, j):
        return j if self.direction == UP else self.top - j

    def map_from(self, j):
        """Matrix of the differential leaving position j, or None at the end."""
        if j >= len(self.differentials):
            return None
        return self.differentials[j] if self.direction == UP else self.differentials[self.top - j - 1]

    def rank_at(self, j):
        return self.ranks[self.degree_at(j)]

    def differential_ranks(self):
        """Rank over Q(t) of each entry of ``differentials``."""
        return [rank(d) for d in self.differentials]

    # -- io ----------------------------------------------------------------------

    def to_json(self):
        return {
            "direction": self.direction,
            "ranks": list(self.ranks),
            "differentials": [d.to_json() for d in self.differentials],
            "labels": [list(ls) for ls in self.labels],
        }

    @classmethod
    def from_json(cls, data, direction=None):
        if not isinstance(data, dict):
            raise ParseError("complex must be a JSON object")
        extra = set(data) - {"direction", "ranks", "differentials", "labels"}
        if extra:
            raise ParseError(f"unknown complex keys: {sorted(extra)}")
        try:
            d = data.get("direction", direction)
            if direction is not None and d != direction:
                raise ParseError(f"expected a {direction!r} complex, got {d!r}")
            ranks = data["ranks"]
            diffs = [RingMatrix.from_json(m) for m in data["differentials"]]
        except KeyError as exc:
            raise ParseError(f"complex is missing key {exc}") from exc
        if not isinstance(ranks, list) or any(not isinstance(r, int) or isinstance(r, bool) for r in ranks):
            raise ParseError("ranks must be a list of integers")
        try:
            return cls(d, ranks, diffs, data.get("labels"))
        except ComplexError as exc:
            raise ParseError(str(exc)) from exc

    def __repr__(self):
        return f"BasedComplex({self.direction}, ranks={list(self.ranks)})"


def is_acyclic(c):
    """Exactness over the fraction field, by rank counting."""
    rk = c.differential_ranks()
    for i, r in enumerate(c.ranks):
        if c.direction == UP:
            into = rk[i - 1] if i >= 1 else 0
            out = rk[i] if i < len(rk) else 0
        else:
            into = rk[i] if i < len(rk) else 0
            out = rk[i - 1] if i >= 1 else 0
        if r != into + out:
            return False
    return True


@dataclass(frozen=True)
class TorsionCertificate:
    """The basis subsets and block determinants used to evaluate the torsion.

    All tuples are indexed by degree.
    """

    direction: str
    subsets: tuple
    determinants: tuple
    exponents: tuple
    value: RationalFunction = field(compare=False)


def _columns(m, idx):
    return [m.col(k) for k in idx]


def _block(prev_cols, subset, dim):
    cols = [list(c) for c in prev_cols]
    for k in subset:
        e = [0] * dim
        e[k] = 1
        cols.append(e)
    if not cols:
        return RingMatrix.zeros(0, 0)
    return RingMatrix.from_rows([[col[i] for col in cols] for i in range(dim)], len(cols))


def greedy_subsets(c, orders=None):
    """Lexicographically first admissible subsets, position by position.

    ``orders`` may give, per degree, the order in which basis indices are
    tried; this picks other admissible certificates.
    """
    n = len(c.ranks)
    prev = []
    subsets = [()] * n
    for j in range(n):
        deg = c.degree_at(j)
        dim = c.ranks[deg]
        tracker = SpanTracker(dim)
        for v in prev:
            if not tracker.add(v):
                raise NotAcyclicError(f"image vectors in degree {deg} are dependent")
        order = range(dim) if orders is None or orders[deg] is None else orders[deg]
        chosen = []
        for k in order:
            if len(tracker) == dim:
                break
            e = [0] * dim
            e[k] = 1
            if tracker.add(e):
                chosen.append(k)
        if len(tracker) != dim:
            raise NotAcyclicError(f"could not complete a basis in degree {deg}")
        chosen.sort()
        subsets[deg] = tuple(chosen)
        m = c.map_from(j)
        prev = _columns(m, chosen) if m is not None else []
        if m is None and chosen:
            raise NotAcyclicError(f"degree {deg} has nontrivial homology")
    return subsets


def torsion(c, subsets=None, ambiguity=PM_TK):
    """Reidemeister torsion as a unit class, with the certificate that produced it.

    Each degree contributes the determinant of the image of the previous
    subset followed by the unit vectors of its own subset, raised to
    ``(-1)^i`` (up) or ``(-1)^(m-i)`` (down).
    """
    if not is_acyclic(c):
        raise NotAcyclicError("complex is not acyclic over the fraction field")
    if subsets is None:
        subsets = greedy_subsets(c)
    subsets = tuple(tuple(sorted(s)) for s in subsets)
    if len(subsets) != len(c.ranks):
        raise ValueError("need one subset per degree")
    dets = [None] * len(c.ranks)
    exps = [0] * len(c.ranks)
    value = RationalFunction.one()
    prev = []
    for j in range(len(c.ranks)):
        deg = c.degree_at(j)
        dim = c.ranks[deg]
        s = subsets[deg]
        if len(prev) + len(s) != dim:
            raise ValueError(f"subset in degree {deg} has the wrong size")
        block = _block(prev, s, dim)
        d = determinant(block)
        if not d:
            raise ValueError(f"subset {s} in degree {deg} is not admissible")
        e = 1 if deg % 2 == 0 else -1
        if c.direction == DOWN:
            e = 1 if (c.top - deg) % 2 == 0 else -1
        dets[deg] = d
        exps[deg] = e
        value = value * (d if e > 0 else RationalFunction(1) / d)
        m = c.map_from(j)
        prev = _columns(m, s) if m is not None else []
    cert = TorsionCertificate(c.direction, subsets, tuple(dets), tuple(exps), value)
    return normalize_unit_class(value, ambiguity), cert


def direct_sum(a, b):
    """Block-diagonal sum; the shorter complex is padded with zero ranks on top."""
    if a.direction != b.direction:
        raise ComplexError("direct sum needs complexes of the same direction")
    n = max(len(a.ranks), len(b.ranks))

    def padded(c):
        ranks = list(c.ranks) + [0] * (n - len(c.ranks))
        diffs = list(c.differentials)
        for i in range(len(diffs), n - 1):
            shape = (ranks[i + 1], ranks[i]) if c.direction == UP else (ranks[i], ranks[i + 1])
            diffs.append(RingMatrix.zeros(*shape, POLY))
        labels = [list(ls) for ls in c.labels] + [[] for _ in range(n - len(c.ranks))]
        return ranks, diffs, labels

    ra, da, la = padded(a)
    rb, db, lb = padded(b)
    ranks = [x + y for x, y in zip(ra, rb)]
    diffs = [RingMatrix.block_diagonal([x, y]) for x, y in zip(da, db)]
    labels = [[f"a.{s}" for s in x] + [f"b.{s}" for s in y] for x, y in zip(la, lb)]
    return BasedComplex(a.direction, ranks, diffs, labels, check=False)


def change_basis(c, transforms):
    """Re-express ``c`` in new bases.

    ``transforms[i]`` is an invertible matrix whose columns give the new basis
    of degree i in old coordinates.  Each differential d becomes
    ``transforms[target]^-1 @ d @ transforms[source]``.
    """
    from .matrices import inverse

    inv = [inverse(g) for g in transforms]
    diffs = []
    for i, d in enumerate(c.differentials):
        src, dst = (i, i + 1) if c.direction == UP else (i + 1, i)
        nd = inv[dst] @ d @ transforms[src]
        try:
            nd = nd.map(lambda x: x.as_poly() if isinstance(x, RationalFunction) else x, POLY)
        except ValueError:
            pass
        diffs.append(nd)
    return BasedComplex(c.direction, c.ranks, diffs, c.labels, check=False)
