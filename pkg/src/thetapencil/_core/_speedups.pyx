# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of _pykernel.

Coefficients stay exact Python objects (Fraction); the win comes from doing
the loop bookkeeping, tuple construction and dict traffic at C level.  Any
semantic change here must be mirrored in _pykernel.py, which is the reference.
"""
from fractions import Fraction

BACKEND = "compiled"

cdef object _ZERO = Fraction(0)


def cv_add(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef tuple out = tuple.__new__(tuple, a)
    cdef list tmp = [None] * n
    for i in range(n):
        tmp[i] = a[i] + b[i]
    return tuple(tmp)


def cv_sub(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef list tmp = [None] * n
    for i in range(n):
        tmp[i] = a[i] - b[i]
    return tuple(tmp)


def cv_neg(tuple a):
    cdef Py_ssize_t i, n = len(a)
    cdef list tmp = [None] * n
    for i in range(n):
        tmp[i] = -a[i]
    return tuple(tmp)


def cv_scale(tuple a, c):
    cdef Py_ssize_t i, n = len(a)
    cdef list tmp = [None] * n
    for i in range(n):
        tmp[i] = a[i] * c
    return tuple(tmp)


def cv_mul(tuple a, tuple b, tuple red):
    cdef Py_ssize_t i, j, k, deg = len(a)
    cdef object x, y, c, r
    cdef tuple row
    if deg == 1:
        return (a[0] * b[0],)
    cdef list conv = [_ZERO] * (2 * deg - 1)
    for i in range(deg):
        x = a[i]
        if x:
            for j in range(deg):
                y = b[j]
                if y:
                    conv[i + j] = conv[i + j] + x * y
    cdef list out = conv[:deg]
    for k in range(deg, 2 * deg - 1):
        c = conv[k]
        if c:
            row = red[k - deg]
            for i in range(deg):
                r = row[i]
                if r:
                    out[i] = out[i] + c * r
    return tuple(out)


def poly_add_into(dict acc, terms):
    cdef tuple e, c, old, s
    cdef Py_ssize_t i, n
    for e, c in terms:
        old = acc.get(e)
        if old is None:
            if any(c):
                acc[e] = c
        else:
            n = len(old)
            s_list = [None] * n
            for i in range(n):
                s_list[i] = old[i] + c[i]
            s = tuple(s_list)
            if any(s):
                acc[e] = s
            else:
                del acc[e]
    return acc


def poly_scale(dict p, tuple c, tuple red):
    cdef dict out = {}
    cdef tuple e, v, w
    for e, v in p.items():
        w = cv_mul(v, c, red)
        if any(w):
            out[e] = w
    return out


def poly_mul(dict p, dict q, tuple red):
    cdef dict out = {}
    cdef tuple e1, e2, c1, c2, e, c, old
    cdef Py_ssize_t i, nv
    if len(p) > len(q):
        p, q = q, p
    for e1, c1 in p.items():
        nv = len(e1)
        for e2, c2 in q.items():
            elist = [0] * nv
            for i in range(nv):
                elist[i] = e1[i] + e2[i]
            e = tuple(elist)
            c = cv_mul(c1, c2, red)
            old = out.get(e)
            if old is not None:
                clist = [None] * len(c)
                for i in range(len(c)):
                    clist[i] = old[i] + c[i]
                c = tuple(clist)
            if any(c):
                out[e] = c
            elif old is not None:
                del out[e]
    return out
