"""Pure-Python coefficient kernels.

Hot loops shared by the field and polynomial layers: coefficient vectors are
tuples of Fraction of length phi(m), monomial maps are plain dicts from
exponent tuples to coefficient vectors.  The compiled module _speedups
implements the same six functions; _core/__init__ picks one at import time.
"""
from fractions import Fraction

BACKEND = "pure"

_ZERO = Fraction(0)


def cv_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def cv_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def cv_neg(a):
    return tuple(-x for x in a)


def cv_scale(a, c):
    return tuple(x * c for x in a)


def cv_mul(a, b, red):
    """Product of two coefficient vectors modulo Phi_m.

    red[k] is the coefficient vector of x^(deg+k) reduced mod Phi_m, for
    0 <= k <= deg-2; degree-1 vectors shortcut to plain rational product.
    """
    deg = len(a)
    if deg == 1:
        return (a[0] * b[0],)
    conv = [_ZERO] * (2 * deg - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    conv[i + j] += x * y
    out = conv[:deg]
    for k in range(deg, 2 * deg - 1):
        c = conv[k]
        if c:
            row = red[k - deg]
            for i in range(deg):
                r = row[i]
                if r:
                    out[i] += c * r
    return tuple(out)


def poly_add_into(acc, terms):
    """acc[e] += c for every (e, c) in terms, dropping exact zeros."""
    for e, c in terms:
        old = acc.get(e)
        if old is None:
            if any(c):
                acc[e] = c
        else:
            s = tuple(x + y for x, y in zip(old, c))
            if any(s):
                acc[e] = s
            else:
                del acc[e]
    return acc


def poly_scale(p, c, red):
    out = {}
    for e, v in p.items():
        w = cv_mul(v, c, red)
        if any(w):
            out[e] = w
    return out


def poly_mul(p, q, red):
    """Sparse product; zero coefficients produced by cancellation are dropped."""
    if len(p) > len(q):
        p, q = q, p
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(map(int.__add__, e1, e2))
            c = cv_mul(c1, c2, red)
            old = out.get(e)
            if old is not None:
                c = tuple(x + y for x, y in zip(old, c))
            if any(c):
                out[e] = c
            elif old is not None:
                del out[e]
    return out
