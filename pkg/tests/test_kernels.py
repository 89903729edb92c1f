import os
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torsion_lab import _kernels
from torsion_lab._kernels import pure

compiled = _kernels.compiled
needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled kernels not built")

small = st.integers(-50, 50)
huge = st.integers(-(2**70), 2**70)
fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)
coeffs = st.lists(st.one_of(small, huge, fractions), max_size=12)
ints = st.lists(st.one_of(small, huge), max_size=12)
unit_lead = st.lists(small, max_size=10).map(lambda xs: [1] + xs)


def test_pure_examples():
    assert pure.convolve([1, 1], [1, -1]) == [1, 0, -1]
    assert pure.convolve_trunc([1, 1], [1, -1], 2) == [1, 0]
    assert pure.series_div([1], [1, -1], 4) == [1, 1, 1, 1]
    assert pure.divexact([1, 0, 0, -1], [1, -1]) == [1, 1, 1]
    assert pure.divexact([1, 1], [1, -1]) is None
    assert pure.series_div([1], [2], 1) == [Fraction(1, 2)]


def test_backend_name():
    assert _kernels.BACKEND == ("cython" if compiled is not None else "python")


def test_pure_backend_can_be_forced():
    env = dict(os.environ, TORSION_LAB_PURE="1")
    proc = subprocess.run([sys.executable, "-c", "import torsion_lab._kernels as k; print(k.BACKEND)"], env=env, capture_output=True, text=True)
    assert proc.stdout.strip() == "python"


@needs_compiled
@settings(max_examples=200, deadline=None)
@given(coeffs, coeffs)
def test_convolve_backends_agree(a, b):
    assert compiled.convolve(a, b) == pure.convolve(a, b)


@needs_compiled
@settings(max_examples=200, deadline=None)
@given(coeffs, coeffs, st.integers(0, 15))
def test_truncated_convolve_backends_agree(a, b, n):
    assert compiled.convolve_trunc(a, b, n) == pure.convolve_trunc(a, b, n)


@needs_compiled
@settings(max_examples=200, deadline=None)
@given(ints, st.one_of(unit_lead, st.lists(small, min_size=1, max_size=6).filter(lambda b: b[0])), st.integers(0, 15))
def test_series_division_backends_agree(a, b, n):
    assert compiled.series_div(a, b, n) == pure.series_div(a, b, n)


@needs_compiled
@settings(max_examples=200, deadline=None)
@given(st.lists(small, min_size=1, max_size=6).filter(lambda q: q[0]), unit_lead, st.booleans())
def test_exact_division_backends_agree(q, b, perturb):
    a = pure.convolve(q, b)
    if perturb:
        a[-1] += 1
    assert compiled.divexact(a, b) == pure.divexact(a, b)
    if not perturb:
        assert pure.divexact(a, b) == q


@needs_compiled
def test_overflow_falls_back_to_objects():
    big = [2**62, 2**62]
    assert compiled.convolve(big, big) == pure.convolve(big, big)
    assert compiled.series_div([2**62], [1, -(2**62)], 4) == pure.series_div([2**62], [1, -(2**62)], 4)
