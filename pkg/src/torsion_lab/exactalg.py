"""Exact single-variable arithmetic over Z and Q.

Four value types live here:

``LaurentPoly``
    finite Laurent polynomials in ``t`` with ``int`` or ``Fraction`` coefficients.
``RationalFunction``
    elements of Q(t) kept in a reduced canonical form.
``TruncatedSeries``
    Laurent series known up to (but excluding) an explicit precision exponent.
``UnitClass``
    canonical representatives of nonzero elements of Q(t) modulo ``±t^k``
    (or modulo ``q·t^k`` with q a nonzero rational).

Everything is immutable and exact; there is no floating point anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from . import _kernels
from .errors import ParseError, PrecisionError

PM_TK = "pm_tk"
Q_TK = "q_tk"
AMBIGUITIES = (PM_TK, Q_TK)


def _clean(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    if isinstance(c, float):
        raise TypeError(f"inexact coefficient {c!r}")
    return c


def _trim(seq):
    """Strip zeros from both ends; return (offset of first kept entry, tuple)."""
    lo, hi = 0, len(seq)
    while lo < hi and not seq[lo]:
        lo += 1
    while hi > lo and not seq[hi - 1]:
        hi -= 1
    return lo, tuple(_clean(c) for c in seq[lo:hi])


def parse_number(x):
    """Parse an ``int`` or a ``"p/q"`` string into an exact number."""
    if isinstance(x, bool):
        raise ParseError(f"not a number: {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return _clean(x)
    if isinstance(x, str):
        try:
            return _clean(Fraction(x))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational number: {x!r}") from exc
    raise ParseError(f"not an exact number: {x!r}")


def format_number(c):
    return c if isinstance(c, int) else f"{c.numerator}/{c.denominator}"


class LaurentPoly:
    """Laurent polynomial ``sum c_e t^e`` with finitely many nonzero terms.

    Stored densely as the lowest exponent plus a coefficient tuple whose first
    and last entries are nonzero.  The zero polynomial has an empty tuple.
    """

    __slots__ = ("_low", "_c", "_hash")

    def __init__(self, coeffs=None):
        if coeffs is None:
            coeffs = {}
        if not isinstance(coeffs, dict):
            raise TypeError("LaurentPoly expects a mapping exponent -> coefficient")
        items = {int(e): c for e, c in coeffs.items() if c}
        if items:
            lo, hi = min(items), max(items)
            dense = [items.get(e, 0) for e in range(lo, hi + 1)]
        else:
            lo, dense = 0, []
        off, c = _trim(dense)
        self._low = lo + off if c else 0
        self._c = c
        self._hash = None

    @classmethod
    def _make(cls, low, seq):
        obj = object.__new__(cls)
        off, c = _trim(seq)
        obj._low = low + off if c else 0
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def from_dense(cls, low, coeffs):
        """Build from the lowest exponent and consecutive coefficients."""
        return cls._make(low, list(coeffs))

    @classmethod
    def monomial(cls, exponent, coeff=1):
        return cls._make(exponent, [coeff])

    @classmethod
    def constant(cls, c):
        return cls._make(0, [c])

    @classmethod
    def zero(cls):
        return cls._make(0, [])

    @classmethod
    def one(cls):
        return cls._make(0, [1])

    # -- queries ---------------------------------------------------------

    @property
    def coeffs(self):
        """Exponent -> nonzero coefficient."""
        return {self._low + i: c for i, c in enumerate(self._c) if c}

    @property
    def dense(self):
        return self._c

    @property
    def is_zero(self):
        return not self._c

    def __bool__(self):
        return bool(self._c)

    @property
    def valuation(self):
        if not self._c:
            raise ValueError("zero polynomial has no valuation")
        return self._low

    @property
    def degree(self):
        if not self._c:
            raise ValueError("zero polynomial has no degree")
        return self._low + len(self._c) - 1

    @property
    def span(self):
        """Degree minus valuation; the Euclidean size in Q[t, t^-1]."""
        return len(self._c) - 1

    @property
    def low_coeff(self):
        return self._c[0]

    @property
    def high_coeff(self):
        return self._c[-1]

    @property
    def is_integral(self):
        return all(type(c) is int for c in self._c)

    @property
    def is_monomial(self):
        return len(self._c) == 1

    def coefficient(self, e):
        i = e - self._low
        return self._c[i] if 0 <= i < len(self._c) else 0

    def terms(self):
        """(exponent, coefficient) pairs in increasing exponent order."""
        return [(self._low + i, c) for i, c in enumerate(self._c) if c]

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return LaurentPoly.constant(x)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other._c:
            return self
        if not self._c:
            return other
        lo = min(self._low, other._low)
        hi = max(self._low + len(self._c), other._low + len(other._c))
        out = [0] * (hi - lo)
        for i, c in enumerate(self._c):
            out[self._low - lo + i] += c
        for i, c in enumerate(other._c):
            out[other._low - lo + i] += c
        return LaurentPoly._make(lo, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._make(self._low, [-c for c in self._c])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                return LaurentPoly.zero()
            return LaurentPoly._make(self._low, [c * other for c in self._c])
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self._c or not other._c:
            return LaurentPoly.zero()
        return LaurentPoly._make(self._low + other._low, _kernels.convolve(self._c, other._c))

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if not self.is_monomial:
                raise ArithmeticError(f"{self} is not a unit of Q[t, t^-1]")
            return LaurentPoly.monomial(n * self._low, Fraction(1) / self._c[0] ** (-n))
        result, base = LaurentPoly.one(), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, k):
        """Multiply by ``t^k``."""
        if not self._c:
            return self
        return LaurentPoly._make(self._low + k, list(self._c))

    def divexact(self, other):
        """Exact quotient in Q[t, t^-1]; raises ArithmeticError if ``other`` does not divide."""
        other = self._coerce(other)
        if not other._c:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self._c:
            return self
        q = _kernels.divexact(self._c, other._c)
        if q is None:
            raise ArithmeticError(f"{other} does not divide {self}")
        return LaurentPoly._make(self._low - other._low, q)

    def euclid_divmod(self, other):
        """Division with remainder in Q[t, t^-1] measured by ``span``.

        Returns ``(q, r)`` with ``self = q*other + r`` and ``r`` zero or of
        span strictly less than ``other.span``.
        """
        if not other._c:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self._c:
            return LaurentPoly.zero(), LaurentPoly.zero()
        a = [Fraction(c) for c in self._c]
        b = other._c
        db = len(b) - 1
        q = [0] * max(len(a) - db, 0)
        lead = b[-1]
        for i in range(len(a) - 1, db - 1, -1):
            c = a[i]
            if not c:
                continue
            f = c / lead
            q[i - db] = f
            for j in range(db + 1):
                a[i - db + j] -= f * b[j]
        quot = LaurentPoly._make(self._low - other._low, q)
        rem = LaurentPoly._make(self._low, a[:db] if db else [])
        return quot, rem

    def divides(self, other):
        """True when ``self`` divides ``other`` in Q[t, t^-1]."""
        if not self._c:
            return not other._c
        return not other.euclid_divmod(self)[1]

    def derivative(self):
        return LaurentPoly._make(self._low - 1, [(self._low + i) * c for i, c in enumerate(self._c)])

    def __call__(self, x):
        """Evaluate at a nonzero exact number."""
        return sum((c * Fraction(x) ** (self._low + i) for i, c in enumerate(self._c) if c), 0)

    def substitute_power(self, k):
        """Substitute ``t -> t^k`` for a positive integer k."""
        return LaurentPoly({k * e: c for e, c in self.terms()})

    def content(self):
        """Positive gcd of the coefficients (a rational number for Q coefficients)."""
        if not self._c:
            return 0
        nums = abs(reduce(math.gcd, (Fraction(c).numerator for c in self._c)))
        dens = reduce(lambda x, y: x * y // math.gcd(x, y), (Fraction(c).denominator for c in self._c))
        return _clean(Fraction(nums, dens))

    def primitive_decomposition(self):
        """Split as ``scalar * t^v * p`` with p primitive over Z and ``p(0) > 0``.

        Returns ``(scalar, v, p)`` where ``p`` is a dense tuple of ints starting
        at the constant term.
        """
        if not self._c:
            raise ValueError("zero polynomial has no primitive decomposition")
        cont = Fraction(self.content())
        if self._c[0] < 0:
            cont = -cont
        p = tuple(int(Fraction(c) / cont) for c in self._c)
        return _clean(cont), self._low, p

    def normalized(self):
        """Representative modulo Q^* t^k: valuation 0 and constant term 1."""
        if not self._c:
            return self
        c0 = self._c[0]
        return LaurentPoly._make(0, [Fraction(c) / c0 for c in self._c])

    # -- comparison, hashing, io -------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._low == other._low and self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._low if self._c else 0, self._c))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        return format_terms(self.terms())

    def to_json(self):
        return [[e, format_number(c)] for e, c in self.terms()]

    @classmethod
    def from_json(cls, data):
        if isinstance(data, (int, str)) and not isinstance(data, bool):
            return cls.constant(parse_number(data))
        if not isinstance(data, list):
            raise ParseError(f"Laurent polynomial must be a list of [exponent, coefficient] pairs, got {data!r}")
        coeffs = {}
        last = None
        for pair in data:
            if not isinstance(pair, list) or len(pair) != 2 or not isinstance(pair[0], int) or isinstance(pair[0], bool):
                raise ParseError(f"bad [exponent, coefficient] pair: {pair!r}")
            e = pair[0]
            if last is not None and e <= last:
                raise ParseError("exponents must be strictly increasing")
            last = e
            coeffs[e] = parse_number(pair[1])
        return cls(coeffs)


def format_terms(terms, var="t"):
    """Render (exponent, coefficient) pairs as ``1 - 2*t + t^3``."""
    if not terms:
        return "0"
    out = []
    for e, c in terms:
        neg = c < 0
        a = -c if neg else c
        if e == 0:
            body = str(a)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if a == 1 else f"{a}*{mono}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(out)


T = LaurentPoly.monomial(1)


# -- polynomial gcd over Z[t] ---------------------------------------------------


def _trim_high(r):
    while r and not r[-1]:
        r.pop()
    return r


def _prem(a, b):
    """Pseudo-remainder ``lc(b)^(deg a - deg b + 1) * a mod b`` (dense, low first)."""
    r = list(a)
    lb = b[-1]
    e = len(a) - len(b) + 1
    nb = len(b)
    while r and len(r) >= nb:
        lr = r[-1]
        shift = len(r) - nb
        r = [x * lb for x in r]
        for i, bi in enumerate(b):
            r[shift + i] -= lr * bi
        _trim_high(r)
        e -= 1
    if e > 0 and r:
        m = lb**e
        r = [x * m for x in r]
    return r


def _primitive(p):
    g = abs(reduce(math.gcd, p))
    if p[0] < 0:
        g = -g
    return [x // g for x in p]


def poly_gcd_primitive(a, b):
    """Subresultant PRS gcd of primitive integer polynomials (dense, low first).

    Both inputs need a nonzero constant term; the result is primitive with a
    positive constant term.
    """
    a, b = list(a), list(b)
    if len(a) < len(b):
        a, b = b, a
    if len(b) == 1:
        return [1]
    g = h = 1
    while True:
        delta = len(a) - len(b)
        r = _prem(a, b)
        if not r:
            return _primitive(b)
        if len(r) == 1:
            return [1]
        d = g * h**delta
        a, b = b, [x // d for x in r]
        g = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = g**delta // h ** (delta - 1)


def gcd_laurent(a, b):
    """Greatest common divisor in Z[t, t^-1], normalized up to ``±t^k``.

    The result has valuation 0 and a positive constant term.  ``gcd(0, 0)`` is 0.
    """
    a, b = LaurentPoly._coerce(a), LaurentPoly._coerce(b)
    if not (a.is_integral and b.is_integral):
        raise ValueError("gcd_laurent expects integer coefficients")
    if not a and not b:
        return LaurentPoly.zero()
    if not b:
        a, b = b, a
    if not a:
        s, _, p = b.primitive_decomposition()
        return LaurentPoly._make(0, [abs(s) * x for x in p])
    sa, _, pa = a.primitive_decomposition()
    sb, _, pb = b.primitive_decomposition()
    c = math.gcd(int(sa), int(sb))
    g = poly_gcd_primitive(pa, pb)
    return LaurentPoly._make(0, [c * x for x in g])


# -- rational functions -------------------------------------------------------------


def _divexact_dense(a, b):
    q = _kernels.divexact(a, b)
    if q is None:
        raise ArithmeticError("internal: inexact division in reduction")
    return tuple(q)


class RationalFunction:
    """Element of Q(t) in canonical form ``scalar * t^shift * num / den``.

    ``num`` and ``den`` are primitive integer polynomials with positive
    constant term and no common factor, stored densely from the constant term.
    The zero function has ``scalar == 0``.
    """

    __slots__ = ("_scalar", "_shift", "_num", "_den", "_hash")

    def __init__(self, num=0, den=1):
        num = _as_poly(num)
        den = _as_poly(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            self._set(Fraction(0), 0, (1,), (1,))
            return
        sn, vn, pn = num.primitive_decomposition()
        sd, vd, pd = den.primitive_decomposition()
        if len(pn) > 1 and len(pd) > 1:
            g = poly_gcd_primitive(pn, pd)
            if len(g) > 1:
                pn, pd = _divexact_dense(pn, g), _divexact_dense(pd, g)
        self._set(Fraction(sn) / Fraction(sd), vn - vd, pn, pd)

    def _set(self, scalar, shift, num, den):
        self._scalar = scalar
        self._shift = shift
        self._num = tuple(num)
        self._den = tuple(den)
        self._hash = None

    @classmethod
    def _raw(cls, scalar, shift, num, den):
        obj = object.__new__(cls)
        obj._set(scalar, shift, num, den)
        return obj

    @classmethod
    def zero(cls):
        return cls(0)

    @classmethod
    def one(cls):
        return cls(1)

    # -- parts -----------------------------------------------------------

    @property
    def scalar(self):
        return _clean(self._scalar)

    @property
    def shift(self):
        return self._shift

    @property
    def num_part(self):
        """Primitive numerator factor (valuation 0, positive constant term)."""
        return LaurentPoly._make(0, self._num)

    @property
    def den_part(self):
        return LaurentPoly._make(0, self._den)

    @property
    def numerator(self):
        """Integer Laurent numerator: ``p * t^shift * num``."""
        s = self._scalar
        return LaurentPoly._make(self._shift, [s.numerator * c for c in self._num])

    @property
    def denominator(self):
        return LaurentPoly._make(0, [self._scalar.denominator * c for c in self._den])

    @property
    def is_zero(self):
        return not self._scalar

    def __bool__(self):
        return bool(self._scalar)

    @property
    def is_polynomial(self):
        return len(self._den) == 1

    def as_poly(self):
        """The Laurent polynomial equal to this function; ValueError if none."""
        if not self.is_polynomial:
            raise ValueError(f"{self} is not a Laurent polynomial")
        if not self._scalar:
            return LaurentPoly.zero()
        return LaurentPoly._make(self._shift, [self._scalar * c for c in self._num])

    @property
    def valuation(self):
        """Lowest exponent of the Laurent expansion."""
        if not self._scalar:
            raise ValueError("zero has no valuation")
        return self._shift

    def leading_coefficient(self):
        """Lowest-order coefficient of the Laurent expansion."""
        return _clean(self._scalar * self._num[0] / self._den[0])

    # -- arithmetic ------------------------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, LaurentPoly) or (isinstance(x, (int, Fraction)) and not isinstance(x, bool)):
            return RationalFunction(x)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other._scalar:
            return self
        if not self._scalar:
            return other
        return RationalFunction(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(-self._scalar, self._shift, self._num, self._den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self._scalar or not other._scalar:
            return RationalFunction.zero()
        p1, q1, p2, q2 = self._num, self._den, other._num, other._den
        if len(p1) > 1 and len(q2) > 1:
            g = poly_gcd_primitive(p1, q2)
            if len(g) > 1:
                p1, q2 = _divexact_dense(p1, g), _divexact_dense(q2, g)
        if len(p2) > 1 and len(q1) > 1:
            g = poly_gcd_primitive(p2, q1)
            if len(g) > 1:
                p2, q1 = _divexact_dense(p2, g), _divexact_dense(q1, g)
        return RationalFunction._raw(
            self._scalar * other._scalar,
            self._shift + other._shift,
            _kernels.convolve(p1, p2),
            _kernels.convolve(q1, q2),
        )

    __rmul__ = __mul__

    def inverse(self):
        if not self._scalar:
            raise ZeroDivisionError("inverse of the zero rational function")
        s = 1 / self._scalar
        return RationalFunction._raw(s, -self._shift, self._den, self._num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    divexact = __truediv__

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = RationalFunction.one(), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def derivative(self):
        n, d = self.numerator, self.denominator
        return RationalFunction(n.derivative() * d - n * d.derivative(), d * d)

    def log_derivative(self):
        """``t * f'/f``; insensitive to scalars and shifts up to a constant."""
        if not self._scalar:
            raise ZeroDivisionError("log derivative of zero")
        p, q = self.num_part, self.den_part
        top = self._shift * p * q + T * (p.derivative() * q - q.derivative() * p)
        return RationalFunction(top, p * q)

    def __call__(self, x):
        return self.numerator(x) / self.denominator(x)

    # -- comparison and io ------------------------------------------------------

    def _key(self):
        if not self._scalar:
            return (Fraction(0), 0, (1,), (1,))
        return (self._scalar, self._shift, self._num, self._den)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        num = str(self.numerator)
        if self.is_polynomial and self._scalar.denominator == 1:
            return num
        return f"({num})/({self.denominator})"

    def to_json(self):
        return {"num": self.numerator.to_json(), "den": self.denominator.to_json()}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, dict):
            if set(data) - {"num", "den"} or "num" not in data:
                raise ParseError(f"rational function needs keys num/den, got {sorted(data)}")
            den = LaurentPoly.from_json(data.get("den", [[0, 1]]))
            if not den:
                raise ParseError("rational function with zero denominator")
            return cls(LaurentPoly.from_json(data["num"]), den)
        return cls(LaurentPoly.from_json(data))


def _as_poly(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return LaurentPoly.constant(x)
    if isinstance(x, RationalFunction):
        return x.as_poly()
    raise TypeError(f"cannot use {type(x).__name__} as a Laurent polynomial")


# -- truncated Laurent series -------------------------------------------------------


class TruncatedSeries:
    """Laurent series with coefficients trusted for exponents below ``precision``.

    ``lower`` is the lowest exponent carrying a nonzero coefficient, or the
    precision itself when no nonzero coefficient is known.
    """

    __slots__ = ("_low", "_c", "_prec")

    def __init__(self, coeffs=None, precision=0):
        coeffs = {int(e): c for e, c in (coeffs or {}).items() if c and e < precision}
        if coeffs:
            lo = min(coeffs)
            dense = [coeffs.get(e, 0) for e in range(lo, max(coeffs) + 1)]
        else:
            lo, dense = precision, []
        self._init(lo, dense, precision)

    def _init(self, low, seq, precision):
        seq = list(seq[: max(precision - low, 0)])
        off, c = _trim(seq)
        self._low = low + off if c else precision
        self._c = c
        self._prec = precision

    @classmethod
    def _make(cls, low, seq, precision):
        obj = object.__new__(cls)
        obj._init(low, seq, precision)
        return obj

    @classmethod
    def from_poly(cls, p, precision):
        p = _as_poly(p)
        if not p:
            return cls._make(precision, [], precision)
        return cls._make(p.valuation, list(p.dense), precision)

    @classmethod
    def zero(cls, precision):
        return cls._make(precision, [], precision)

    @classmethod
    def one(cls, precision):
        return cls._make(0, [1], precision)

    # -- queries -------------------------------------------------------------

    @property
    def precision(self):
        return self._prec

    @property
    def lower(self):
        return self._low

    @property
    def coeffs(self):
        return {self._low + i: c for i, c in enumerate(self._c) if c}

    @property
    def is_zero(self):
        """No nonzero coefficient below the precision."""
        return not self._c

    def coefficient(self, e):
        if e >= self._prec:
            raise PrecisionError(f"coefficient of t^{e} is beyond precision {self._prec}")
        i = e - self._low
        return self._c[i] if 0 <= i < len(self._c) else 0

    def terms(self):
        return [(self._low + i, c) for i, c in enumerate(self._c) if c]

    def to_poly(self):
        """The known terms as a Laurent polynomial (drops the O(t^N) tail)."""
        return LaurentPoly._make(self._low, list(self._c)) if self._c else LaurentPoly.zero()

    def truncate(self, precision):
        if precision > self._prec:
            raise PrecisionError(f"cannot raise precision from {self._prec} to {precision}")
        return TruncatedSeries._make(self._low, list(self._c), precision)

    def agrees_with(self, other):
        """Equality on the common trusted range."""
        n = min(self._prec, other._prec)
        return self.truncate(n) == other.truncate(n)

    # -- arithmetic ------------------------------------------------------------

    def _dense_from(self, lo, hi):
        out = [0] * (hi - lo)
        for i, c in enumerate(self._c):
            e = self._low + i
            if lo <= e < hi:
                out[e - lo] = c
        return out

    def __add__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)) and not isinstance(other, bool):
            other = TruncatedSeries.from_poly(other, self._prec)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        prec = min(self._prec, other._prec)
        lo = min(self._low, other._low, prec)
        a = self._dense_from(lo, prec)
        b = other._dense_from(lo, prec)
        return TruncatedSeries._make(lo, [x + y for x, y in zip(a, b)], prec)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries._make(self._low, [-c for c in self._c], self._prec)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)) and not isinstance(other, bool):
            other = TruncatedSeries.from_poly(other, self._prec)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return TruncatedSeries._make(self._low, [c * other for c in self._c], self._prec)
        if isinstance(other, LaurentPoly):
            if not other:
                return TruncatedSeries.zero(self._prec)
            vp = other.valuation
            prec = self._prec + vp
            low = self._low + vp
            return TruncatedSeries._make(low, _kernels.convolve_trunc(self._c, other.dense, prec - low), prec)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        prec = min(self._prec + other._low, other._prec + self._low)
        low = self._low + other._low
        return TruncatedSeries._make(low, _kernels.convolve_trunc(self._c, other._c, prec - low), prec)

    __rmul__ = __mul__

    def shift(self, k):
        """Multiply by ``t^k``."""
        return TruncatedSeries._make(self._low + k, list(self._c), self._prec + k)

    def inverse(self):
        if not self._c:
            raise PrecisionError("cannot invert a series with no known nonzero coefficient")
        v = self._low
        n = self._prec - v
        inv = _kernels.series_div([1], self._c, n)
        return TruncatedSeries._make(-v, inv, self._prec - 2 * v)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self * (Fraction(1) / other)
        if isinstance(other, LaurentPoly):
            # enough terms of 1/p that the product keeps precision N - val(p)
            n = self._prec - other.valuation - min(self._low, self._prec)
            return self * series_expand(RationalFunction(1, other), n)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = TruncatedSeries.one(self._prec - self._low if self._c else self._prec)
        for _ in range(n):
            result = result * self
        return result

    def derivative(self):
        return TruncatedSeries._make(self._low - 1, [(self._low + i) * c for i, c in enumerate(self._c)], self._prec - 1)

    def t_derivative(self):
        """``t * d/dt``; keeps the precision."""
        return TruncatedSeries._make(self._low, [(self._low + i) * c for i, c in enumerate(self._c)], self._prec)

    def exp(self):
        """Formal exponential; requires every known exponent to be positive."""
        if self._c and self._low < 1:
            raise ValueError("exp needs a series with only positive exponents")
        n = self._prec
        if n <= 0:
            raise PrecisionError("exp of a series with precision <= 0 has no trusted terms")
        s = self._dense_from(0, n)
        ks = [k * s[k] for k in range(n)]
        e = [Fraction(1)] + [Fraction(0)] * (n - 1)
        for m in range(1, n):
            acc = Fraction(0)
            for k in range(1, m + 1):
                if ks[k]:
                    acc += ks[k] * e[m - k]
            e[m] = acc / m
        return TruncatedSeries._make(0, e, n)

    def log(self):
        """Formal logarithm; requires no negative exponents and constant term 1."""
        if self._c and self._low < 0:
            raise ValueError("log needs a series without negative exponents")
        if self._prec <= 0 or self.coefficient(0) != 1:
            raise ValueError("log needs constant term 1")
        n = self._prec
        s = self._dense_from(0, n)
        lk = [Fraction(0)] * n  # lk[k] = k * l_k
        for m in range(1, n):
            acc = Fraction(m * s[m])
            for k in range(1, m):
                if lk[k] and s[m - k]:
                    acc -= lk[k] * s[m - k]
            lk[m] = acc
        return TruncatedSeries._make(0, [0] + [lk[m] / m for m in range(1, n)], n)

    # -- comparison and io ------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self._prec == other._prec and self._c == other._c and (not self._c or self._low == other._low)

    def __hash__(self):
        return hash((self._prec, self._low if self._c else None, self._c))

    def __repr__(self):
        return f"TruncatedSeries({self})"

    def __str__(self):
        body = format_terms(self.terms())
        tail = f"O(t^{self._prec})"
        return tail if body == "0" else f"{body} + {tail}"

    def to_json(self):
        return {"precision": self._prec, "coeffs": [[e, format_number(c)] for e, c in self.terms()]}

    @classmethod
    def from_json(cls, data):
        try:
            prec = data["precision"]
            pairs = data["coeffs"]
        except (KeyError, TypeError) as exc:
            raise ParseError("series needs keys precision/coeffs") from exc
        return cls({int(e): parse_number(c) for e, c in pairs}, prec)


def series_expand(f, N):
    """Image of ``f`` in the Laurent-series field, trusted for exponents < N."""
    f = RationalFunction._coerce(f)
    if f is None:
        raise TypeError("series_expand needs a rational function")
    if not f:
        return TruncatedSeries.zero(N)
    a = f.shift
    coeffs = _kernels.series_div(f._num, f._den, N - a)
    s = f._scalar
    return TruncatedSeries._make(a, [s * c for c in coeffs], N)


def series_exp(s):
    return s.exp()


def series_log(s):
    return s.log()


# -- unit classes --------------------------------------------------------------------


@dataclass(frozen=True)
class UnitClass:
    """Canonical representative of a nonzero element of Q(t) modulo units.

    With ``ambiguity == "pm_tk"`` the class is modulo ``±t^k`` and ``scalar``
    is the positive rational part.  With ``"q_tk"`` the class is modulo any
    nonzero rational times ``t^k`` and ``scalar`` is always 1.  ``num`` and
    ``den`` are primitive integer polynomials with positive constant term.
    A scalar of 0 encodes the zero class (used for orders of non-torsion
    modules).
    """

    scalar: Fraction
    num: LaurentPoly
    den: LaurentPoly
    ambiguity: str = PM_TK

    @classmethod
    def zero(cls, ambiguity=PM_TK):
        return cls(Fraction(0), LaurentPoly.one(), LaurentPoly.one(), ambiguity)

    @property
    def is_zero(self):
        return not self.scalar

    def to_rational(self):
        if self.is_zero:
            return RationalFunction.zero()
        return RationalFunction(self.num * self.scalar, self.den)

    def __mul__(self, other):
        if not isinstance(other, UnitClass):
            return NotImplemented
        amb = PM_TK if self.ambiguity == other.ambiguity == PM_TK else Q_TK
        if self.is_zero or other.is_zero:
            return UnitClass.zero(amb)
        return normalize_unit_class(self.to_rational() * other.to_rational(), amb)

    def inverse(self):
        return normalize_unit_class(self.to_rational().inverse(), self.ambiguity)

    def __truediv__(self, other):
        if not isinstance(other, UnitClass):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, n):
        return normalize_unit_class(self.to_rational() ** n, self.ambiguity)

    def with_ambiguity(self, ambiguity):
        if self.is_zero:
            return UnitClass.zero(ambiguity)
        return normalize_unit_class(self.to_rational(), ambiguity)

    def __str__(self):
        if self.is_zero:
            return "0"
        s = "" if self.scalar == 1 else f"{format_number(_clean(self.scalar))} * "
        num, den = str(self.num), str(self.den)
        if den == "1":
            return f"{s}({num})"
        return f"{s}({num}) / ({den})"

    def to_json(self):
        sc = _clean(Fraction(self.scalar))
        scalar = f"{sc.numerator}/{sc.denominator}" if isinstance(sc, Fraction) else f"{sc}/1"
        return {"scalar": scalar, "num": self.num.to_json(), "den": self.den.to_json(), "ambiguity": self.ambiguity}

    @classmethod
    def from_json(cls, data):
        try:
            amb = data.get("ambiguity", PM_TK)
            scalar = Fraction(parse_number(data["scalar"]))
            num = LaurentPoly.from_json(data["num"])
            den = LaurentPoly.from_json(data["den"])
        except (KeyError, AttributeError) as exc:
            raise ParseError("unit class needs scalar/num/den") from exc
        if amb not in AMBIGUITIES:
            raise ParseError(f"unknown ambiguity {amb!r}")
        if not scalar:
            return cls.zero(amb)
        return normalize_unit_class(RationalFunction(num * scalar, den), amb)


def normalize_unit_class(f, ambiguity=PM_TK):
    """Canonical representative of ``f`` modulo the chosen unit group."""
    if ambiguity not in AMBIGUITIES:
        raise ValueError(f"unknown ambiguity {ambiguity!r}")
    f = RationalFunction._coerce(f)
    if f is None:
        raise TypeError("normalize_unit_class needs a rational function")
    if not f:
        raise ValueError("the zero element has no unit class")
    scalar = abs(f._scalar) if ambiguity == PM_TK else Fraction(1)
    return UnitClass(scalar, f.num_part, f.den_part, ambiguity)
