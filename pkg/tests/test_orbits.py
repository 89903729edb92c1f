import random

import pytest
from helpers import t
from hypothesis import given, settings
from hypothesis import strategies as st

from torsion_lab.errors import ParseError
from torsion_lab.exactalg import RationalFunction, TruncatedSeries, series_expand
from torsion_lab.orbits import (
    Orbit,
    OrbitSet,
    fix_counts,
    zeta_exp,
    zeta_product,
    zeta_rational,
)

orbit_sets = st.lists(st.tuples(st.integers(1, 8), st.sampled_from((1, -1))), max_size=10).map(OrbitSet.of)


def integer_product(pairs, n):
    """Orbit product by plain integer convolution, independent of the series type."""
    acc = [1] + [0] * (n - 1)
    for k, s in pairs:
        if s > 0:
            for m in range(k, n):
                acc[m] += acc[m - k]
        else:
            for m in range(n - 1, k - 1, -1):
                acc[m] -= acc[m - k]
    return acc


def test_fix_count_examples():
    assert fix_counts(OrbitSet(), 5).counts == (0,) * 5
    assert fix_counts(OrbitSet.of([(1, 1)]), 5).counts == (1,) * 5
    assert fix_counts(OrbitSet.of([(2, -1)]), 6).counts == (0, -2, 0, -2, 0, -2)


def test_fix_counts_indexing():
    fc = fix_counts(OrbitSet.of([(3, 1)]), 6)
    assert fc[3] == 3 and fc[6] == 3 and fc[4] == 0
    with pytest.raises(IndexError):
        fc[7]
    with pytest.raises(ValueError):
        fix_counts(OrbitSet(), 0)


def test_zeta_product_examples():
    assert zeta_product(OrbitSet(), 6) == TruncatedSeries.one(6)
    assert zeta_product(OrbitSet.of([(1, 1)]), 6) == series_expand(RationalFunction(1, 1 - t), 6)
    assert zeta_product(OrbitSet.of([(2, -1)]), 6) == TruncatedSeries({0: 1, 2: -1}, 6)


def test_zeta_exp_examples():
    assert zeta_exp(fix_counts(OrbitSet(), 5)).agrees_with(TruncatedSeries.one(5))
    assert zeta_exp(fix_counts(OrbitSet.of([(1, 1)]), 5)).agrees_with(series_expand(RationalFunction(1, 1 - t), 5))
    assert zeta_exp(fix_counts(OrbitSet.of([(2, -1)]), 5)).agrees_with(TruncatedSeries({0: 1, 2: -1}, 5))


def test_mixed_orbits_cancel():
    o = OrbitSet.of([(1, 1), (2, -1)])
    assert zeta_rational(o) == RationalFunction(1 + t)
    assert zeta_product(o, 4) == TruncatedSeries({0: 1, 1: 1}, 4)


def test_repeated_orbits_multiply():
    o = OrbitSet.of([(1, 1), (1, 1)])
    assert zeta_rational(o) == RationalFunction(1, (1 - t) ** 2)


def test_invalid_orbits():
    with pytest.raises(ValueError):
        Orbit(0, 1)
    with pytest.raises(ValueError):
        Orbit(2, 0)


def test_wire_format():
    data = {"orbits": [{"k": 2, "sign": -1, "class": [1, 0]}, {"k": 1, "sign": 1}]}
    o = OrbitSet.from_json(data)
    assert o.orbits[0].homology_class == (1, 0)
    assert o.to_json() == data
    for bad in ({"orbits": [{"k": 0, "sign": 1}]}, {"orbits": [{"k": 1, "sign": True}]}, {"orbits": [], "x": 1}, [{"k": 1}]):
        with pytest.raises(ParseError):
            OrbitSet.from_json(bad)


def test_random_orbit_sets_against_integer_convolution():
    rng = random.Random(3)
    for _ in range(40):
        pairs = [(rng.randint(1, 8), rng.choice((1, -1))) for _ in range(rng.randint(0, 10))]
        z = zeta_product(OrbitSet.of(pairs), 30)
        assert [z.coefficient(m) for m in range(30)] == integer_product(pairs, 30)


@settings(max_examples=60, deadline=None)
@given(orbit_sets)
def test_product_and_exponential_forms_agree(o):
    n = 30
    assert zeta_exp(fix_counts(o, n)).truncate(n) == zeta_product(o, n)


@given(orbit_sets)
def test_leading_coefficient_is_one(o):
    z = zeta_product(o, 12)
    assert z.lower == 0 and z.coefficient(0) == 1


@given(orbit_sets)
def test_product_is_the_rational_expansion(o):
    assert zeta_product(o, 15) == series_expand(zeta_rational(o), 15)
