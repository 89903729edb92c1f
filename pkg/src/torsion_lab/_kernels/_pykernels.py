"""Pure-Python coefficient kernels.

All kernels work on dense coefficient sequences ordered from the lowest
exponent upwards.  Coefficients are Python ``int`` or ``Fraction`` values.
"""

from fractions import Fraction


def convolve(a, b):
    """Full product of two dense coefficient sequences."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def convolve_trunc(a, b, n):
    """First ``n`` coefficients of the product of ``a`` and ``b``."""
    if n <= 0 or not a or not b:
        return [0] * max(n, 0)
    out = [0] * n
    lb = len(b)
    for i, x in enumerate(a):
        if i >= n:
            break
        if not x:
            continue
        for j in range(min(lb, n - i)):
            out[i + j] += x * b[j]
    return out


def _quo(x, y):
    if isinstance(x, int) and isinstance(y, int):
        q, r = divmod(x, y)
        if not r:
            return q
    return Fraction(x) / y


def series_div(a, b, n):
    """First ``n`` coefficients of the power series ``a / b``; needs ``b[0] != 0``."""
    if n <= 0:
        return []
    b0 = b[0]
    lb = len(b)
    out = []
    for i in range(n):
        s = a[i] if i < len(a) else 0
        for j in range(1, min(lb, i + 1)):
            s -= b[j] * out[i - j]
        out.append(_quo(s, b0))
    return out


def divexact(a, b):
    """Exact quotient ``a / b`` of dense polynomials, or ``None`` if inexact.

    Both sequences must have nonzero constant term; division proceeds from the
    low end so that a remainder shows up as nonzero high coefficients.
    """
    la, lb = len(a), len(b)
    if lb == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    if la < lb:
        return None
    nq = la - lb + 1
    q = series_div(a, b, nq)
    # check the coefficients above the quotient's reach
    for i in range(nq, la):
        s = a[i]
        for j in range(max(0, i - nq + 1), min(lb, i + 1)):
            s -= b[j] * q[i - j]
        if s:
            return None
    return q
