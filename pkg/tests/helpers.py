"""Shared builders, random generators and independent oracles for the test suite."""

from __future__ import annotations

from pathlib import Path

from torsion_lab.complexes import UP, BasedComplex, change_basis, direct_sum
from torsion_lab.cover import CoverComplex
from torsion_lab.exactalg import LaurentPoly
from torsion_lab.matrices import POLY, RingMatrix
from torsion_lab.morse import MorseData

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

t = LaurentPoly.monomial(1)
ONE = LaurentPoly.one()


def poly(*pairs):
    """``poly((0, 1), (1, -1))`` is 1 - t."""
    return LaurentPoly(dict(pairs))


def rand_poly(rng, low=-2, high=2, coeff=3, allow_zero=True):
    while True:
        p = LaurentPoly({e: rng.randint(-coeff, coeff) for e in range(low, high + 1)})
        if p or allow_zero:
            return p


def rand_matrix(rng, rows, cols, **kw):
    return RingMatrix.from_rows([[rand_poly(rng, **kw) for _ in range(cols)] for _ in range(rows)], cols, POLY)


def unit(rng):
    return LaurentPoly.monomial(rng.randint(-2, 2), rng.choice((1, -1)))


def rand_unimodular(rng, n, steps=None):
    """Product of random elementary moves; the determinant is ±t^k."""
    m = [[ONE if i == j else LaurentPoly.zero() for j in range(n)] for i in range(n)]
    steps = (n + 1 if steps is None else steps) if n else 0
    for _ in range(steps):
        move = rng.random()
        if n >= 2 and move < 0.6:
            i, j = rng.sample(range(n), 2)
            q = LaurentPoly.monomial(rng.randint(-1, 1), rng.choice((1, -1)))
            m[i] = [a + q * b for a, b in zip(m[i], m[j])]
        elif n >= 2 and move < 0.8:
            i, j = rng.sample(range(n), 2)
            m[i], m[j] = m[j], m[i]
        else:
            i = rng.randrange(n)
            u = unit(rng)
            m[i] = [u * a for a in m[i]]
    return RingMatrix.from_rows(m, n, POLY)


# -- random acyclic complexes ---------------------------------------------------------


def elementary_complex(direction, length, position, p):
    """Complex with a single nonzero 1x1 differential p at the given position."""
    ranks = [0] * (length + 1)
    ranks[position] = ranks[position + 1] = 1
    diffs = []
    for i in range(length):
        shape = (ranks[i + 1], ranks[i]) if direction == UP else (ranks[i], ranks[i + 1])
        diffs.append(RingMatrix.from_rows([[p]], 1, POLY) if i == position else RingMatrix.zeros(*shape, POLY))
    return BasedComplex(direction, ranks, diffs)


def rand_acyclic_complex(rng, direction=UP, max_rank=4, max_span=3, length=None):
    """A complex acyclic over Q(t), usually with homology over Q[t, t^-1].

    Built as a sum of elementary pieces ``0 -> R --p--> R -> 0`` re-expressed
    in random unimodular bases.  Redrawn until every entry has span at most
    ``max_span`` and every rank is at most ``max_rank``.
    """
    while True:
        length = rng.randint(1, 3) if length is None else length
        c = None
        pieces = rng.randint(1, 3)
        for _ in range(pieces):
            pos = rng.randrange(length)
            p = rand_poly(rng, 0, rng.randint(0, 2), 2, allow_zero=False)
            e = elementary_complex(direction, length, pos, p)
            c = e if c is None else direct_sum(c, e)
        if max(c.ranks) > max_rank:
            continue
        c = change_basis(c, [rand_unimodular(rng, r, steps=rng.randint(0, 2)) for r in c.ranks])
        spans = [x.span for d in c.differentials for x in d.entries if x]
        if all(s <= max_span for s in spans):
            c.check_square_zero()
            return c


def rand_admissible_orders(rng, c):
    return [rng.sample(range(r), r) for r in c.ranks]


# -- the circle family -------------------------------------------------------------


def circle_exponents(rng, k, c, spread=3):
    """Nonnegative a, b of length c with sum(a) - sum(b) = k."""
    while True:
        b = [rng.randint(0, spread) for _ in range(c)]
        a = [rng.randint(0, spread) for _ in range(c - 1)]
        last = k + sum(b) - sum(a)
        if last >= 0:
            return a + [last], b


def circle_morse(a, b):
    """Morse data of a degree-k circle map with critical points x_i (index 0), y_i (index 1).

    Row i of the differential is ``t^a_i`` in column i and ``-t^b_i`` in column i+1,
    cyclically; for c = 1 the single entry is ``t^a - t^b``.
    """
    c = len(a)
    xs = [f"x{i + 1}" for i in range(c)]
    ys = [f"y{i + 1}" for i in range(c)]
    inc = {}
    for i in range(c):
        inc[(xs[i], ys[i])] = inc.get((xs[i], ys[i]), LaurentPoly.zero()) + LaurentPoly.monomial(a[i])
        j = (i + 1) % c
        inc[(xs[j], ys[i])] = inc.get((xs[j], ys[i]), LaurentPoly.zero()) - LaurentPoly.monomial(b[i])
    return MorseData(1, (tuple(xs), tuple(ys)), {k: v for k, v in inc.items() if v})


def circle_cover(k):
    """One vertex and one edge whose lift ends k sheets up: boundary t^k - 1."""
    d = RingMatrix.from_rows([[LaurentPoly.monomial(k) - 1]], 1, POLY)
    return CoverComplex((1, 1), [d], [["v"], ["e"]])


# -- mapping tori --------------------------------------------------------------------


def mapping_torus(boundaries, maps):
    """Cover complex of the mapping torus of a cellular self-map of a finite complex.

    ``boundaries[k]`` is the integer boundary from degree k+1 to degree k of the
    fibre (list of rows), ``maps[k]`` the integer chain map in degree k.  In
    degree k the cover has the fibre cells followed by the cells ``e x I`` for
    e of degree k-1, with ``d(e x I) = (-1)^dim(e) (t F(e) - e) + (d e) x I``.
    The deck transformation is the sheet shift t.
    """
    n = len(maps)
    ranks_f = [len(m) for m in maps]
    for k in range(n - 1):
        b = boundaries[k]
        if len(b) != ranks_f[k] or any(len(row) != ranks_f[k + 1] for row in b):
            raise ValueError("fibre boundary shapes do not match the maps")
    ranks_f = ranks_f + [0]
    ranks = [ranks_f[k] + (ranks_f[k - 1] if k >= 1 else 0) for k in range(n + 1)]
    diffs = []
    for k in range(n):
        # boundary from cover degree k+1 to degree k
        rows, cols = ranks[k], ranks[k + 1]
        m = [[LaurentPoly.zero()] * cols for _ in range(rows)]
        fk, fk1 = ranks_f[k], ranks_f[k + 1]
        if k + 1 < n:
            for i in range(fk):
                for j in range(fk1):
                    m[i][j] = LaurentPoly.constant(boundaries[k][i][j])
        sign = 1 if k % 2 == 0 else -1
        for i in range(fk):
            for j in range(fk):
                entry = t * maps[k][i][j] - (1 if i == j else 0)
                m[i][fk1 + j] = entry * sign
        if k >= 1:
            for i in range(ranks_f[k - 1]):
                for j in range(fk):
                    m[fk + i][fk1 + j] = LaurentPoly.constant(boundaries[k - 1][i][j])
        diffs.append(RingMatrix.from_rows(m, cols, POLY))
    return CoverComplex(ranks, diffs)


def rand_int_matrix(rng, n, bound=3):
    return [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]


def matpow_trace(a, k):
    return power_traces(a, k)[k - 1]


def power_traces(a, n):
    """``[tr(a), tr(a^2), ..., tr(a^n)]`` in integer arithmetic."""
    size = len(a)
    p = a
    out = []
    for _ in range(n):
        out.append(sum(p[i][i] for i in range(size)))
        p = [[sum(p[i][m] * a[m][j] for m in range(size)) for j in range(size)] for i in range(size)]
    return out


# -- Fox calculus ---------------------------------------------------------------------
# Words are lists of (generator, ±1).  The abelianization sends each generator to a
# power of t; Fox derivatives are pushed to Z[t, t^-1] as they are computed.


def word(s):
    """``word("s a S B")``: lower case letters are generators, upper case their inverses."""
    out = []
    for ch in s.split():
        out.append((ch.lower(), 1 if ch.islower() else -1))
    return out


def fox_derivative(w, g, phi):
    """Image under phi of the Fox derivative of the word w with respect to g."""
    total = LaurentPoly.zero()
    prefix = 0
    for x, e in w:
        if e == 1:
            if x == g:
                total = total + LaurentPoly.monomial(prefix)
            prefix += phi[x]
        else:
            prefix -= phi[x]
            if x == g:
                total = total - LaurentPoly.monomial(prefix)
    return total


def fox_cover_complex(generators, relators, phi, top=None):
    """Cover complex of the presentation complex, with an optional 3-cell.

    Boundary of generator g is ``t^phi(g) - 1``; the boundary of a relator cell
    is its Fox Jacobian column.  ``top`` gives the 3-cell boundary in terms of
    the relator cells.
    """
    gens = list(generators)
    d1 = RingMatrix.from_rows([[LaurentPoly.monomial(phi[g]) - 1 for g in gens]], len(gens), POLY)
    d2 = RingMatrix.from_rows([[fox_derivative(r, g, phi) for r in relators] for g in gens], len(relators), POLY)
    ranks = [1, len(gens), len(relators)]
    diffs = [d1, d2]
    if top is not None:
        ranks.append(1)
        diffs.append(RingMatrix.from_rows([[x] for x in top], 1, POLY))
    return CoverComplex(ranks, diffs)


def torus_bundle_presentation(monodromy_words):
    """Presentation of the mapping torus of a torus map given on the generators a, b.

    Relators: the fibre commutator and ``s g s^-1 phi(g)^-1`` for g in a, b.
    """
    rel_fibre = word("a b A B")
    rels = [rel_fibre]
    for g in ("a", "b"):
        img = monodromy_words[g]
        inv = [(x, -e) for x, e in reversed(img)]
        rels.append([("s", 1), (g, 1), ("s", -1)] + inv)
    return ["a", "b", "s"], rels


def torus_bundle_top_cell(relators, phi):
    """3-cell boundary of a torus bundle: ``(t - 1)`` on the fibre plus the Fox terms of its commutator."""
    fibre = relators[0]
    return [t - 1] + [-fox_derivative(fibre, g, phi) for g in ("a", "b")]


TREFOIL_MONODROMY = {"a": word("a B"), "b": word("a")}
