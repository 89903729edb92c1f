"""Closed orbits, fixed-point counts and the zeta function."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError
from .exactalg import LaurentPoly, RationalFunction, TruncatedSeries


@dataclass(frozen=True)
class Orbit:
    k: int
    sign: int
    homology_class: tuple | None = None

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 1:
            raise ValueError(f"orbit degree must be a positive integer, got {self.k!r}")
        if self.sign not in (1, -1):
            raise ValueError(f"orbit sign must be +1 or -1, got {self.sign!r}")
        if self.homology_class is not None:
            object.__setattr__(self, "homology_class", tuple(int(x) for x in self.homology_class))


@dataclass(frozen=True)
class OrbitSet:
    orbits: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "orbits", tuple(self.orbits))

    def __iter__(self):
        return iter(self.orbits)

    def __len__(self):
        return len(self.orbits)

    @classmethod
    def of(cls, pairs):
        """Build from ``(k, sign)`` pairs."""
        return cls(tuple(Orbit(k, s) for k, s in pairs))

    def to_json(self):
        out = []
        for o in self.orbits:
            rec = {"k": o.k, "sign": o.sign}
            if o.homology_class is not None:
                rec["class"] = list(o.homology_class)
            out.append(rec)
        return {"orbits": out}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, dict):
            if set(data) != {"orbits"}:
                raise ParseError("orbits block needs exactly the key 'orbits'")
            data = data["orbits"]
        if not isinstance(data, list):
            raise ParseError("orbits must be a list")
        out = []
        for rec in data:
            if not isinstance(rec, dict) or not {"k", "sign"} <= set(rec) or set(rec) - {"k", "sign", "class"}:
                raise ParseError(f"bad orbit record {rec!r}")
            k, s = rec["k"], rec["sign"]
            if isinstance(k, bool) or not isinstance(k, int) or isinstance(s, bool) or not isinstance(s, int):
                raise ParseError(f"bad orbit record {rec!r}")
            cls_ = rec.get("class")
            if cls_ is not None and (not isinstance(cls_, list) or any(isinstance(x, bool) or not isinstance(x, int) for x in cls_)):
                raise ParseError(f"orbit class must be an integer vector: {cls_!r}")
            try:
                out.append(Orbit(k, s, cls_))
            except ValueError as exc:
                raise ParseError(str(exc)) from exc
        return cls(tuple(out))


@dataclass(frozen=True)
class FixCounts:
    """Signed fixed-point counts of f, f^2, ..., f^N."""

    counts: tuple
    N: int

    def __getitem__(self, m):
        """Fix(f^m) for 1 <= m <= N."""
        if not 1 <= m <= self.N:
            raise IndexError(m)
        return self.counts[m - 1]

    def series(self):
        """``sum Fix(f^k) t^k`` for k = 1..N, trusted below N+1."""
        return TruncatedSeries({m: c for m, c in enumerate(self.counts, 1)}, self.N + 1)


def fix_counts(orbits, N):
    if N < 1:
        raise ValueError("N must be at least 1")
    counts = [0] * N
    for o in orbits:
        for m in range(o.k, N + 1, o.k):
            counts[m - 1] += o.k * o.sign
    return FixCounts(tuple(counts), N)


def _factor(o):
    return LaurentPoly({0: 1, o.k: -1})


def zeta_rational(orbits):
    """The finite orbit product ``prod (1 - t^k)^(-sign)`` as an exact rational function."""
    num, den = LaurentPoly.one(), LaurentPoly.one()
    for o in orbits:
        if o.sign > 0:
            den = den * _factor(o)
        else:
            num = num * _factor(o)
    return RationalFunction(num, den)


def zeta_product(orbits, N):
    """Orbit product expanded as a Taylor series trusted below ``t^N``."""
    if N < 1:
        raise ValueError("N must be at least 1")
    acc = TruncatedSeries.one(N)
    for o in orbits:
        if o.sign > 0:
            acc = acc * TruncatedSeries({m: 1 for m in range(0, N, o.k)}, N)
        else:
            acc = acc * _factor(o)
    return acc


def zeta_exp(fc):
    """``exp(sum Fix(f^k) t^k / k)``; the counts determine it below ``t^(N+1)``."""
    s = TruncatedSeries({m: Fraction(c, m) for m, c in enumerate(fc.counts, 1)}, fc.N + 1)
    return s.exp()
