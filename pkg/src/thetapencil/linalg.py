"""Exact linear algebra over Q(zeta_m) and over polynomial entries.

Field entries (CycloNum) go through ordinary Gaussian elimination; entries
from an integral domain without division (MultiPoly) go through fraction-free
Bareiss elimination, which only ever performs exact divisions.  Matrices are
sequences of row sequences; functions return fresh tuples and never mutate
their inputs.
"""
from __future__ import annotations

from .field import CycloNum


def zero_like(entry):
    return CycloNum.zero(entry.m)


def identity(n: int, conductor: int = 1):
    one = CycloNum.one(conductor)
    zero = CycloNum.zero(conductor)
    return tuple(
        tuple(one if i == j else zero for j in range(n)) for i in range(n)
    )


def transpose(rows):
    return tuple(zip(*rows))


def matvec(rows, vec):
    out = []
    for row in rows:
        acc = None
        for a, x in zip(row, vec):
            if a and x:
                acc = a * x if acc is None else acc + a * x
        out.append(acc if acc is not None else zero_like(row[0]))
    return tuple(out)


def matmul(a, b):
    bt = transpose(b)
    return tuple(tuple(_dot(row, col) for col in bt) for row in a)


def _dot(u, v):
    acc = None
    for x, y in zip(u, v):
        if x and y:
            acc = x * y if acc is None else acc + x * y
    return acc if acc is not None else zero_like(u[0])


def rref(rows):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    m = [list(r) for r in rows]
    if not m:
        return (), ()
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = m[r][c].inv()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m[:r]), tuple(pivots)


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows, ncols=None, conductor=None):
    """Echelon basis of the right null space {v : A v = 0}."""
    if not rows:
        raise ValueError("need at least the column count; pass ncols")
    ncols = ncols if ncols is not None else len(rows[0])
    conductor = conductor if conductor is not None else rows[0][0].m
    red, pivots = rref(rows)
    one = CycloNum.one(conductor)
    zero = CycloNum.zero(conductor)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(tuple(v))
    return tuple(basis)


def det(rows):
    """Exact determinant over the field by elimination."""
    n = len(rows)
    if n == 0:
        return CycloNum.one(1)
    m = [list(r) for r in rows]
    result = CycloNum.one(m[0][0].m)
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if m[i][c]), None)
        if pivot_row is None:
            return CycloNum.zero(m[0][0].m)
        if pivot_row != c:
            m[c], m[pivot_row] = m[pivot_row], m[c]
            result = -result
        piv = m[c][c]
        result = result * piv
        inv = piv.inv()
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return result


def inverse(rows):
    n = len(rows)
    conductor = rows[0][0].m
    aug = [list(r) + list(idr) for r, idr in zip(rows, identity(n, conductor))]
    red, pivots = rref(aug)
    if list(pivots) != list(range(n)):
        raise ArithmeticError("matrix is singular")
    return tuple(tuple(row[n:]) for row in red)


def solve_in_span(columns, target):
    """Coordinates of target in the span of the given column vectors.

    Returns None when target is outside the span; raises on an ambiguous
    (linearly dependent) column set.
    """
    if not columns:
        return None if any(target) else ()
    ncols = len(columns)
    aug = [list(col_row) + [t] for col_row, t in zip(zip(*columns), target)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    if len(pivots) != ncols:
        raise ArithmeticError("columns are linearly dependent")
    conductor = target[0].m
    coords = [CycloNum.zero(conductor)] * ncols
    for r, pc in enumerate(pivots):
        coords[pc] = red[r][ncols]
    return tuple(coords)


class Span:
    """Row-space accumulator with exact membership tests."""

    def __init__(self, ncols: int, conductor: int):
        self.ncols = ncols
        self.conductor = conductor
        self._rows: list = []
        self._pivots: list = []

    @property
    def dim(self) -> int:
        return len(self._rows)

    def _reduce(self, vec):
        v = list(vec)
        for row, p in zip(self._rows, self._pivots):
            if v[p]:
                f = v[p]
                v = [x - f * y for x, y in zip(v, row)]
        return v

    def contains(self, vec) -> bool:
        return not any(self._reduce(vec))

    def add(self, vec) -> bool:
        """Insert a vector; True when it enlarged the span."""
        v = self._reduce(vec)
        p = next((i for i, x in enumerate(v) if x), None)
        if p is None:
            return False
        inv = v[p].inv()
        v = [x * inv for x in v]
        for i, (row, q) in enumerate(zip(self._rows, self._pivots)):
            if row[p]:
                f = row[p]
                self._rows[i] = [x - f * y for x, y in zip(row, v)]
        self._rows.append(v)
        self._pivots.append(p)
        return True

    def extend(self, vectors) -> int:
        return sum(1 for v in vectors if self.add(v))

    def basis(self):
        order = sorted(range(len(self._rows)), key=lambda i: self._pivots[i])
        return tuple(tuple(self._rows[i]) for i in order)

    def __eq__(self, other):
        if not isinstance(other, Span):
            return NotImplemented
        if self.dim != other.dim or self.ncols != other.ncols:
            return False
        return all(other.contains(r) for r in self.basis())


def span_of(vectors, ncols: int, conductor: int) -> Span:
    s = Span(ncols, conductor)
    s.extend(vectors)
    return s


def _default_weight(entry):
    return getattr(entry, "term_count", 1)


def bareiss_rank(rows, pivot_weight=_default_weight) -> int:
    """Rank by fraction-free elimination; entries need mul, sub, bool
    and exact_div.  Works over polynomial rings, hence over function
    fields, without ever forming fractions."""
    m = [list(r) for r in rows]
    if not m or not m[0]:
        return 0
    nr, nc = len(m), len(m[0])
    prev = None
    r = 0
    while r < min(nr, nc):
        best = None
        for i in range(r, nr):
            for j in range(r, nc):
                if m[i][j]:
                    w = pivot_weight(m[i][j])
                    if best is None or w < best[0]:
                        best = (w, i, j)
        if best is None:
            return r
        _, bi, bj = best
        if bi != r:
            m[r], m[bi] = m[bi], m[r]
        if bj != r:
            for row in m:
                row[r], row[bj] = row[bj], row[r]
        piv = m[r][r]
        for i in range(r + 1, nr):
            for j in range(r + 1, nc):
                num = m[i][j] * piv - m[i][r] * m[r][j]
                m[i][j] = num.exact_div(prev) if prev is not None else num
        prev = piv
        r += 1
    return r


def bareiss_det(rows, pivot_weight=_default_weight):
    """Exact determinant over an integral domain (fraction-free).

    Row and column swaps only flip the sign; the final pivot is the
    determinant.  Returns None only for the empty matrix.
    """
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return None
    sign = 1
    prev = None
    for r in range(n):
        best = None
        for i in range(r, n):
            for j in range(r, n):
                if m[i][j]:
                    w = pivot_weight(m[i][j])
                    if best is None or w < best[0]:
                        best = (w, i, j)
        if best is None:
            zero = m[0][0] - m[0][0]
            return zero
        _, bi, bj = best
        if bi != r:
            m[r], m[bi] = m[bi], m[r]
            sign = -sign
        if bj != r:
            for row in m:
                row[r], row[bj] = row[bj], row[r]
            sign = -sign
        piv = m[r][r]
        for i in range(r + 1, n):
            for j in range(r + 1, n):
                num = m[i][j] * piv - m[i][r] * m[r][j]
                m[i][j] = num.exact_div(prev) if prev is not None else num
        prev = piv
    result = m[n - 1][n - 1]
    return result if sign == 1 else -result
