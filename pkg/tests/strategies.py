"""Hypothesis strategies for exact algebra values."""

from fractions import Fraction

from hypothesis import strategies as st

from torsion_lab.exactalg import LaurentPoly, RationalFunction, TruncatedSeries
from torsion_lab.matrices import POLY, RingMatrix


def laurent(low=-3, high=3, coeff=5, nonzero=False):
    s = st.dictionaries(st.integers(low, high), st.integers(-coeff, coeff), max_size=high - low + 1).map(LaurentPoly)
    return s.filter(bool) if nonzero else s


def rational_functions(**kw):
    return st.builds(RationalFunction, laurent(**kw), laurent(nonzero=True, **kw))


def units():
    return st.builds(LaurentPoly.monomial, st.integers(-5, 5), st.sampled_from((1, -1)))


def positive_series(precision=20):
    """Series with only positive exponents, suitable for exp."""
    coeffs = st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=precision - 1, max_size=precision - 1)
    return coeffs.map(lambda cs: TruncatedSeries({i + 1: Fraction(c) for i, c in enumerate(cs)}, precision))


def matrices(n, **kw):
    return st.lists(laurent(**kw), min_size=n * n, max_size=n * n).map(lambda es: RingMatrix(n, n, es, POLY))


def square_matrices(max_n=4, **kw):
    return st.integers(1, max_n).flatmap(lambda n: matrices(n, **kw))
