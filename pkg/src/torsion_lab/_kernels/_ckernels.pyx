# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled coefficient kernels.

Same contract as ``_pykernels``.  Each kernel first tries a 64-bit integer
path with overflow detection and drops to a Python-object loop when any
input is not a machine-sized ``int`` or an intermediate overflows.
"""

from fractions import Fraction
from libc.limits cimport LLONG_MIN
from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    static inline int tl_mul(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int tl_add(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    static inline int tl_sub(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    bint tl_mul(long long a, long long b, long long *r) nogil
    bint tl_add(long long a, long long b, long long *r) nogil
    bint tl_sub(long long a, long long b, long long *r) nogil


cdef long long* _load(seq, Py_ssize_t n):
    """Copy ``seq`` into a fresh C array, or return NULL if it does not fit."""
    cdef long long* buf = <long long*> malloc((n if n > 0 else 1) * sizeof(long long))
    cdef Py_ssize_t i
    if buf == NULL:
        raise MemoryError()
    for i in range(n):
        x = seq[i]
        if type(x) is not int or x > 4611686018427387903 or x < -4611686018427387903:
            free(buf)
            return NULL
        buf[i] = x
    return buf


cdef list _unload(long long* buf, Py_ssize_t n):
    cdef Py_ssize_t i
    return [buf[i] for i in range(n)]


cdef list _convolve_ll(long long* a, Py_ssize_t la, long long* b, Py_ssize_t lb, Py_ssize_t n):
    """Truncated product on machine ints; None on overflow."""
    cdef long long* out = <long long*> malloc(n * sizeof(long long))
    cdef Py_ssize_t i, j, jmax
    cdef long long p
    cdef bint bad = False
    if out == NULL:
        raise MemoryError()
    for i in range(n):
        out[i] = 0
    with nogil:
        for i in range(la):
            if i >= n or bad:
                break
            if a[i] == 0:
                continue
            jmax = lb if lb < n - i else n - i
            for j in range(jmax):
                if tl_mul(a[i], b[j], &p) or tl_add(out[i + j], p, &out[i + j]):
                    bad = True
                    break
    if bad:
        free(out)
        return None
    res = _unload(out, n)
    free(out)
    return res


cdef list _convolve_obj(a, b, Py_ssize_t n):
    cdef Py_ssize_t la = len(a), lb = len(b), i, j, jmax
    cdef list out = [0] * n
    for i in range(la):
        if i >= n:
            break
        x = a[i]
        if not x:
            continue
        jmax = lb if lb < n - i else n - i
        for j in range(jmax):
            out[i + j] = out[i + j] + x * b[j]
    return out


cdef list _convolve(a, b, Py_ssize_t n):
    cdef Py_ssize_t la = len(a), lb = len(b)
    cdef long long* ca
    cdef long long* cb
    if n <= 0:
        return []
    if la == 0 or lb == 0:
        return [0] * n
    ca = _load(a, la)
    if ca != NULL:
        cb = _load(b, lb)
        if cb != NULL:
            res = _convolve_ll(ca, la, cb, lb, n)
            free(ca)
            free(cb)
            if res is not None:
                return res
        else:
            free(ca)
    return _convolve_obj(a, b, n)


def convolve(a, b):
    """Full product of two dense coefficient sequences."""
    if not a or not b:
        return []
    return _convolve(a, b, len(a) + len(b) - 1)


def convolve_trunc(a, b, Py_ssize_t n):
    """First ``n`` coefficients of the product of ``a`` and ``b``."""
    if n <= 0:
        return []
    return _convolve(a, b, n)


cdef list _series_div_ll(long long* a, Py_ssize_t la, long long* b, Py_ssize_t lb, Py_ssize_t n):
    cdef long long* out = <long long*> malloc(n * sizeof(long long))
    cdef Py_ssize_t i, j, jmax
    cdef long long s, p
    cdef long long b0 = b[0]
    cdef bint bad = False
    if out == NULL:
        raise MemoryError()
    with nogil:
        for i in range(n):
            s = a[i] if i < la else 0
            jmax = lb if lb < i + 1 else i + 1
            for j in range(1, jmax):
                if tl_mul(b[j], out[i - j], &p) or tl_sub(s, p, &s):
                    bad = True
                    break
            if bad or s % b0 != 0 or (b0 == -1 and s == LLONG_MIN):
                bad = True
                break
            out[i] = s / b0
    if bad:
        free(out)
        return None
    res = _unload(out, n)
    free(out)
    return res


cdef list _series_div_obj(a, b, Py_ssize_t n):
    cdef Py_ssize_t la = len(a), lb = len(b), i, j, jmax
    cdef list out = []
    b0 = b[0]
    for i in range(n):
        s = a[i] if i < la else 0
        jmax = lb if lb < i + 1 else i + 1
        for j in range(1, jmax):
            s = s - b[j] * out[i - j]
        if type(s) is int and type(b0) is int and s % b0 == 0:
            out.append(s // b0)
        else:
            out.append(Fraction(s) / b0)
    return out


def series_div(a, b, Py_ssize_t n):
    """First ``n`` coefficients of the power series ``a / b``; needs ``b[0] != 0``."""
    cdef Py_ssize_t la = len(a), lb = len(b)
    cdef long long* ca
    cdef long long* cb
    if n <= 0:
        return []
    ca = _load(a, la)
    if ca != NULL:
        cb = _load(b, lb)
        if cb != NULL:
            res = _series_div_ll(ca, la, cb, lb, n)
            free(ca)
            free(cb)
            if res is not None:
                return res
        else:
            free(ca)
    return _series_div_obj(a, b, n)


def divexact(a, b):
    """Exact quotient ``a / b`` of dense polynomials, or ``None`` if inexact."""
    cdef Py_ssize_t la = len(a), lb = len(b), nq, i, j, jlo, jhi
    if lb == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    if la < lb:
        return None
    nq = la - lb + 1
    q = series_div(a, b, nq)
    for i in range(nq, la):
        s = a[i]
        jlo = i - nq + 1 if i - nq + 1 > 0 else 0
        jhi = lb if lb < i + 1 else i + 1
        for j in range(jlo, jhi):
            s = s - b[j] * q[i - j]
        if s:
            return None
    return q
