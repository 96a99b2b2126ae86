"""Lie algebras by structure constants, classical families, and periodic
gradings cut out by finite-order automorphisms.

Brackets are stored sparsely for i < j only; antisymmetry is implicit.  Every
constructor re-verifies the Jacobi identity and, when a bilinear form is
attached, its invariance, so downstream code never has to re-prove that an
algebra is an algebra.
"""
from __future__ import annotations

from fractions import Fraction

from . import linalg
from .errors import (
    GradingFailure,
    OrderMismatch,
    UnsupportedAlgebra,
    UnsupportedParameters,
    ValidationError,
)
from .field import CycloNum, zeta
from .poisson import StructureTensor, _lcm_conductor


def _cy(x, conductor):
    if isinstance(x, CycloNum):
        return x if x.m == conductor else x.embed(conductor)
    return CycloNum.from_rational(x, conductor)


class LieAlgebra:
    """Structure constants plus an optional invariant symmetric form.

    form is None for contracted brackets (the trace form stops being
    invariant there); classical constructors always attach one.
    """

    __slots__ = ("dim", "conductor", "basis_labels", "tensor", "form", "meta")

    def __init__(
        self,
        dim: int,
        structure,
        *,
        labels=None,
        form=None,
        conductor: int = 1,
        meta=None,
    ):
        if dim < 1:
            raise UnsupportedParameters("dim must be positive")
        tensor = StructureTensor(dim, conductor, structure)
        labels = tuple(labels) if labels else tuple(f"b{i+1}" for i in range(dim))
        if len(labels) != dim:
            raise UnsupportedParameters("need one label per basis vector")
        if form is not None:
            form = tuple(
                tuple(_cy(x, conductor) for x in row) for row in form
            )
            if len(form) != dim or any(len(r) != dim for r in form):
                raise UnsupportedParameters("form must be dim x dim")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "basis_labels", labels)
        object.__setattr__(self, "tensor", tensor)
        object.__setattr__(self, "form", form)
        object.__setattr__(self, "meta", dict(meta or {}))
        self._verify_jacobi()
        if form is not None:
            self._verify_form()

    def __setattr__(self, *a):
        raise AttributeError("LieAlgebra is immutable")

    # -- bracket ------------------------------------------------------------

    def bracket_basis(self, i: int, j: int):
        """[b_i, b_j] as a list of (k, coefficient)."""
        if i == j:
            return []
        if i < j:
            return [
                (k, CycloNum(self.conductor, v))
                for k, v in self.tensor.entries.get((i, j), ())
            ]
        return [
            (k, -CycloNum(self.conductor, v))
            for k, v in self.tensor.entries.get((j, i), ())
        ]

    def bracket_vectors(self, u, v):
        """[u, v] for coordinate vectors; returns a dim-tuple.

        Scalars are lifted to the smallest common cyclotomic field, so the
        vectors may live over an extension of the algebra's own field.
        """
        conductor = self.conductor
        for x in list(u) + list(v):
            if isinstance(x, CycloNum):
                conductor = _lcm_conductor(conductor, x.m)
        u = [_cy(x, conductor) for x in u]
        v = [_cy(x, conductor) for x in v]
        acc = [CycloNum.zero(conductor)] * self.dim
        for (i, j), lin in self.tensor.entries.items():
            c = u[i] * v[j] - u[j] * v[i]
            if not c:
                continue
            for k, vec in lin:
                acc[k] = acc[k] + c * CycloNum(self.conductor, vec).embed(conductor)
        return tuple(acc)

    def form_value(self, u, v) -> CycloNum:
        if self.form is None:
            raise UnsupportedAlgebra("no invariant form attached")
        conductor = self.conductor
        for x in list(u) + list(v):
            if isinstance(x, CycloNum):
                conductor = _lcm_conductor(conductor, x.m)
        u = [_cy(x, conductor) for x in u]
        v = [_cy(x, conductor) for x in v]
        total = CycloNum.zero(conductor)
        for i, ui in enumerate(u):
            if not ui:
                continue
            row = self.form[i]
            for j, vj in enumerate(v):
                if vj:
                    total = total + ui * row[j] * vj
        return total

    # -- construction checks --------------------------------------------------

    def _verify_jacobi(self):
        zero = CycloNum.zero(self.conductor)
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                bij = self.bracket_basis(i, j)
                for k in range(j + 1, self.dim):
                    acc = [zero] * self.dim
                    for pair in (
                        (bij, k),
                        (self.bracket_basis(j, k), i),
                        (self.bracket_basis(k, i), j),
                    ):
                        lin, t = pair
                        for l, c in lin:
                            for s, d in self.bracket_basis(l, t):
                                acc[s] = acc[s] + c * d
                    if any(acc):
                        li, lj, lk = (
                            self.basis_labels[i],
                            self.basis_labels[j],
                            self.basis_labels[k],
                        )
                        raise ValidationError(
                            f"Jacobi identity fails on ({li}, {lj}, {lk})"
                        )

    def _verify_form(self):
        for i in range(self.dim):
            for j in range(self.dim):
                if self.form[i][j] != self.form[j][i]:
                    raise ValidationError("form is not symmetric")
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                bij = self.bracket_basis(i, j)
                for k in range(self.dim):
                    # form([b_i,b_j], b_k) = form(b_i, [b_j, b_k])
                    lhs = CycloNum.zero(self.conductor)
                    for l, c in bij:
                        lhs = lhs + c * self.form[l][k]
                    rhs = CycloNum.zero(self.conductor)
                    for l, c in self.bracket_basis(j, k):
                        rhs = rhs + c * self.form[i][l]
                    if lhs != rhs:
                        raise ValidationError(
                            "form is not invariant on "
                            f"({self.basis_labels[i]}, {self.basis_labels[j]}, "
                            f"{self.basis_labels[k]})"
                        )

    @property
    def rank(self):
        return self.meta.get("rank")

    def __repr__(self):
        name = self.meta.get("name", "LieAlgebra")
        return f"{name}(dim={self.dim}, m={self.conductor})"


# -- classical families -----------------------------------------------------------


def _emat(n, i, j):
    return tuple(
        tuple(Fraction(int(r == i and c == j)) for c in range(n)) for r in range(n)
    )


def _madd(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _mneg(a):
    return tuple(tuple(-x for x in row) for row in a)


def _mmul(a, b):
    bt = list(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def _mtrace(a):
    return sum(a[i][i] for i in range(len(a)))


def _mtranspose(a):
    return tuple(map(tuple, zip(*a)))


def _flatten_cy(mat):
    return tuple(CycloNum.from_rational(x) for row in mat for x in row)


def _matrix_structure(mats):
    """Structure constants of a matrix Lie algebra given a basis."""
    columns = [_flatten_cy(m) for m in mats]
    structure = {}
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            br = _madd(_mmul(mats[i], mats[j]), _mneg(_mmul(mats[j], mats[i])))
            coords = linalg.solve_in_span(columns, _flatten_cy(br))
            if coords is None:
                raise UnsupportedParameters("matrices do not close under bracket")
            lin = [(k, c) for k, c in enumerate(coords) if c]
            if lin:
                structure[(i, j)] = lin
    return structure


def _trace_form(mats):
    n = len(mats)
    return tuple(
        tuple(CycloNum.from_rational(_mtrace(_mmul(mats[i], mats[j]))) for j in range(n))
        for i in range(n)
    )


def _sl_basis(n):
    mats, labels = [], []
    for i in range(n):
        for j in range(i + 1, n):
            mats.append(_emat(n, i, j))
            labels.append(f"E{i+1}{j+1}")
    for i in range(n - 1):
        mats.append(_madd(_emat(n, i, i), _mneg(_emat(n, i + 1, i + 1))))
        labels.append(f"H{i+1}")
    for j in range(n):
        for i in range(j + 1, n):
            mats.append(_emat(n, i, j))
            labels.append(f"E{i+1}{j+1}")
    return mats, labels


def _so_basis(n):
    mats, labels = [], []
    for i in range(n):
        for j in range(i + 1, n):
            mats.append(_madd(_emat(n, i, j), _mneg(_emat(n, j, i))))
            labels.append(f"A{i+1}{j+1}")
    return mats, labels


def _sp_basis(n):
    k = n // 2
    mats, labels = [], []
    for i in range(k):
        for j in range(k):
            mats.append(
                _madd(_emat(n, i, j), _mneg(_emat(n, k + j, k + i)))
            )
            labels.append(f"A{i+1}{j+1}")
    for i in range(k):
        for j in range(i, k):
            if i == j:
                mats.append(_emat(n, i, k + i))
            else:
                mats.append(_madd(_emat(n, i, k + j), _emat(n, j, k + i)))
            labels.append(f"B{i+1}{j+1}")
    for i in range(k):
        for j in range(i, k):
            if i == j:
                mats.append(_emat(n, k + i, i))
            else:
                mats.append(_madd(_emat(n, k + i, j), _emat(n, k + j, i)))
            labels.append(f"C{i+1}{j+1}")
    return mats, labels


def build_classical(type: str, n: int) -> LieAlgebra:
    """sl(n), so(n), or sp(n) with the trace form of the defining matrices."""
    if type == "sl":
        if n < 2:
            raise UnsupportedParameters("sl needs n >= 2")
        mats, labels = _sl_basis(n)
        rank = n - 1
    elif type == "so":
        if n < 3:
            raise UnsupportedParameters("so needs n >= 3")
        mats, labels = _so_basis(n)
        rank = n // 2
    elif type == "sp":
        if n < 2 or n % 2:
            raise UnsupportedParameters("sp needs even n >= 2")
        mats, labels = _sp_basis(n)
        rank = n // 2
    else:
        raise UnsupportedParameters(f"unknown family {type!r}")
    structure = _matrix_structure(mats)
    return LieAlgebra(
        len(mats),
        structure,
        labels=labels,
        form=_trace_form(mats),
        meta={
            "name": f"{type}({n})",
            "family": type,
            "n": n,
            "rank": rank,
            "reductive": True,
            "semisimple": True,
            "matrices": tuple(mats),
        },
    )


def direct_sum(h: LieAlgebra, n: int) -> LieAlgebra:
    """n commuting copies of h with block-diagonal structure and form."""
    if n < 1:
        raise UnsupportedParameters("need at least one copy")
    d = h.dim
    structure = {}
    for c in range(n):
        off = c * d
        for (i, j), lin in h.tensor.entries.items():
            structure[(i + off, j + off)] = [
                (k + off, CycloNum(h.conductor, v)) for k, v in lin
            ]
    labels = [f"{lab}.{c+1}" for c in range(n) for lab in h.basis_labels]
    form = None
    if h.form is not None:
        zero = CycloNum.zero(h.conductor)
        form = [[zero] * (n * d) for _ in range(n * d)]
        for c in range(n):
            off = c * d
            for i in range(d):
                for j in range(d):
                    form[off + i][off + j] = h.form[i][j]
    rank = h.rank * n if h.rank is not None else None
    return LieAlgebra(
        n * d,
        structure,
        labels=labels,
        form=form,
        conductor=h.conductor,
        meta={
            "name": f"{h.meta.get('name', 'h')}^{n}",
            "rank": rank,
            "reductive": h.meta.get("reductive"),
            "semisimple": h.meta.get("semisimple"),
            "base": h,
            "copies": n,
            "copy_spans": tuple((c * d, (c + 1) * d) for c in range(n)),
        },
    )


# -- automorphisms ---------------------------------------------------------------


class Automorphism:
    """Invertible matrix of exact finite order preserving bracket and form.

    Columns are images: theta(b_j) = sum_i matrix[i][j] b_i.
    """

    __slots__ = ("algebra", "matrix", "order_m")

    def __init__(self, algebra: LieAlgebra, matrix, order_m: int | None = None):
        conductor = algebra.conductor
        for row in matrix:
            for x in row:
                if isinstance(x, CycloNum):
                    conductor = _lcm_conductor(conductor, x.m)
        mat = tuple(tuple(_cy(x, conductor) for x in row) for row in matrix)
        if len(mat) != algebra.dim or any(len(r) != algebra.dim for r in mat):
            raise UnsupportedParameters("matrix must be dim x dim")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "matrix", mat)
        ident = linalg.identity(algebra.dim, conductor)
        power = mat
        found = None
        cap = order_m if order_m is not None else 960
        for j in range(1, cap + 1):
            if power == ident:
                found = j
                break
            power = linalg.matmul(power, mat)
        if order_m is not None:
            if found != order_m:
                raise OrderMismatch(
                    f"declared order {order_m}, computed {found or f'> {cap}'}"
                )
        elif found is None:
            raise OrderMismatch(f"no finite order up to {cap}")
        object.__setattr__(self, "order_m", found)
        self._verify_bracket()
        if algebra.form is not None:
            self._verify_form()

    def __setattr__(self, *a):
        raise AttributeError("Automorphism is immutable")

    @property
    def conductor(self):
        return self.matrix[0][0].m

    def column(self, j: int):
        return tuple(row[j] for row in self.matrix)

    def apply(self, vec):
        return linalg.matvec(self.matrix, [_cy(x, self.conductor) for x in vec])

    def matrix_power(self, k: int):
        k %= self.order_m
        out = linalg.identity(self.algebra.dim, self.conductor)
        base = self.matrix
        while k:
            if k & 1:
                out = linalg.matmul(out, base)
            base = linalg.matmul(base, base)
            k >>= 1
        return out

    def _verify_bracket(self):
        g = self.algebra
        for i in range(g.dim):
            col_i = self.column(i)
            for j in range(i + 1, g.dim):
                rhs = g.bracket_vectors(col_i, self.column(j))
                lhs = [CycloNum.zero(self.conductor)] * g.dim
                for k, c in g.bracket_basis(i, j):
                    col = self.column(k)
                    for t in range(g.dim):
                        if col[t]:
                            lhs[t] = lhs[t] + c * col[t]
                if tuple(lhs) != tuple(rhs):
                    raise ValidationError(
                        "matrix does not preserve the bracket on "
                        f"({g.basis_labels[i]}, {g.basis_labels[j]})"
                    )

    def _verify_form(self):
        g = self.algebra
        k = tuple(tuple(_cy(x, self.conductor) for x in row) for row in g.form)
        mt = linalg.transpose(self.matrix)
        if linalg.matmul(mt, linalg.matmul(k, self.matrix)) != k:
            raise ValidationError("matrix does not preserve the form")

    def __repr__(self):
        return f"Automorphism(order={self.order_m}, dim={self.algebra.dim})"


def identity_automorphism(h: LieAlgebra) -> Automorphism:
    return Automorphism(h, linalg.identity(h.dim, h.conductor), 1)


def cyclic_permutation(h: LieAlgebra, n: int) -> Automorphism:
    """theta(x_1, ..., x_n) = (x_n, x_1, ..., x_{n-1}) on h^n."""
    if n < 2:
        raise UnsupportedParameters("cyclic permutation needs n >= 2")
    g = direct_sum(h, n)
    d = h.dim
    one = CycloNum.one(h.conductor)
    zero = CycloNum.zero(h.conductor)
    mat = [[zero] * g.dim for _ in range(g.dim)]
    for c in range(n):
        tgt = (c + 1) % n
        for i in range(d):
            mat[tgt * d + i][c * d + i] = one
    return Automorphism(g, mat, n)


def twisted_cycle(h: LieAlgebra, inner: Automorphism, n: int) -> Automorphism:
    """Cyclic shift on h^n composed with `inner` on the first transition.

    Copy c feeds copy c+1 (wrapping), and the element leaving copy 1 passes
    through `inner`; so the n-th power acts as `inner` on every copy and the
    order is exactly n * inner.order_m.
    """
    if n < 1:
        raise UnsupportedParameters("need at least one copy")
    if inner.algebra is not h:
        raise UnsupportedParameters("inner must be an automorphism of h itself")
    g = direct_sum(h, n)
    d = h.dim
    conductor = _lcm_conductor(h.conductor, inner.conductor)
    one = CycloNum.one(conductor)
    zero = CycloNum.zero(conductor)
    mat = [[zero] * g.dim for _ in range(g.dim)]
    for c in range(n):
        tgt = (c + 1) % n
        if c == 0:
            for i in range(d):
                col = inner.column(i)
                for t in range(d):
                    if col[t]:
                        mat[tgt * d + t][i] = _cy(col[t], conductor)
        else:
            for i in range(d):
                mat[tgt * d + i][c * d + i] = one
    return Automorphism(g, mat, n * inner.order_m)


def cartan_involution(h: LieAlgebra) -> Automorphism:
    """x -> -x^T in the defining representation; only for sl(n)."""
    if h.meta.get("family") != "sl":
        raise UnsupportedAlgebra("Cartan involution helper only covers sl(n)")
    mats = h.meta["matrices"]
    columns = [_flatten_cy(m) for m in mats]
    cols = []
    for m in mats:
        coords = linalg.solve_in_span(columns, _flatten_cy(_mneg(_mtranspose(m))))
        cols.append(coords)
    mat = [[cols[j][i] for j in range(h.dim)] for i in range(h.dim)]
    return Automorphism(h, mat, 2)


# -- periodic gradings ----------------------------------------------------------------


class PeriodicGrading:
    """Eigenspace decomposition of a finite-order automorphism.

    components[j] is a basis of the zeta^j eigenspace in original
    coordinates; P stacks them as columns (grades ascending), so the adapted
    algebra has every basis vector homogeneous and grade_of_var is constant
    on each block.
    """

    __slots__ = (
        "automorphism",
        "components",
        "grade_of_var",
        "conductor",
        "P",
        "P_inv",
        "adapted",
    )

    def __init__(self, automorphism, components, grade_of_var, conductor, P, P_inv, adapted):
        object.__setattr__(self, "automorphism", automorphism)
        object.__setattr__(self, "components", components)
        object.__setattr__(self, "grade_of_var", grade_of_var)
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "P_inv", P_inv)
        object.__setattr__(self, "adapted", adapted)

    def __setattr__(self, *a):
        raise AttributeError("PeriodicGrading is immutable")

    @property
    def order(self) -> int:
        return self.automorphism.order_m

    @property
    def algebra(self) -> LieAlgebra:
        return self.automorphism.algebra

    def component_dims(self):
        return tuple(len(c) for c in self.components)

    def to_adapted_poly(self, F):
        """Rewrite a polynomial in original coordinates in adapted ones."""
        rows = [
            tuple(self.P_inv[a][i] for a in range(self.algebra.dim))
            for i in range(self.algebra.dim)
        ]
        return F.substitute_linear(rows)

    def from_adapted_poly(self, F):
        rows = [
            tuple(self.P[i][a] for i in range(self.algebra.dim))
            for a in range(self.algebra.dim)
        ]
        return F.substitute_linear(rows)

    def point_to_adapted(self, xi):
        """Coordinates of a dual-space point in the adapted variables."""
        xi = [_cy(x, self.conductor) for x in xi]
        return linalg.matvec(linalg.transpose(self.P), xi)

    def point_from_adapted(self, eta):
        eta = [_cy(x, self.conductor) for x in eta]
        return linalg.matvec(linalg.transpose(self.P_inv), eta)


def eigenspace_grading(theta: Automorphism) -> PeriodicGrading:
    g = theta.algebra
    m = theta.order_m
    conductor = _lcm_conductor(g.conductor, m)
    mat = tuple(
        tuple(_cy(x, conductor) for x in row) for row in theta.matrix
    )
    components = []
    for j in range(m):
        ev = zeta(m, j).embed(conductor) if m > 1 else CycloNum.one(conductor)
        shifted = [
            tuple(mat[r][c] - (ev if r == c else 0) for c in range(g.dim))
            for r in range(g.dim)
        ]
        components.append(linalg.nullspace(shifted, ncols=g.dim, conductor=conductor))
    if sum(len(c) for c in components) != g.dim:
        raise GradingFailure(
            "eigenspace dimensions sum to "
            f"{sum(len(c) for c in components)}, expected {g.dim}"
        )
    columns = [v for comp in components for v in comp]
    grades = tuple(j for j, comp in enumerate(components) for _ in comp)
    P = tuple(
        tuple(columns[a][i] for a in range(g.dim)) for i in range(g.dim)
    )
    P_inv = linalg.inverse(P)
    structure = {}
    for a in range(g.dim):
        for b in range(a + 1, g.dim):
            w = g.bracket_vectors(columns[a], columns[b])
            coords = linalg.matvec(P_inv, w)
            lin = [(k, c) for k, c in enumerate(coords) if c]
            for k, _ in lin:
                if grades[k] != (grades[a] + grades[b]) % m:
                    raise GradingFailure(
                        f"bracket of grades {grades[a]}, {grades[b]} "
                        f"meets grade {grades[k]}"
                    )
            if lin:
                structure[(a, b)] = lin
    counts: dict[int, int] = {}
    labels = []
    for j in grades:
        counts[j] = counts.get(j, 0) + 1
        labels.append(f"g{j}.{counts[j]}")
    form = None
    if g.form is not None:
        k = tuple(tuple(_cy(x, conductor) for x in row) for row in g.form)
        form = linalg.matmul(linalg.transpose(P), linalg.matmul(k, P))
    adapted = LieAlgebra(
        g.dim,
        structure,
        labels=labels,
        form=form,
        conductor=conductor,
        meta={
            "name": f"{g.meta.get('name', 'g')}~adapted",
            "rank": g.rank,
            "reductive": g.meta.get("reductive"),
            "semisimple": g.meta.get("semisimple"),
            "grades": grades,
            "order": m,
        },
    )
    return PeriodicGrading(theta, tuple(components), grades, conductor, P, P_inv, adapted)


def fixed_subalgebra(grading: PeriodicGrading) -> LieAlgebra:
    """g_0 as a standalone algebra in the adapted grade-0 basis."""
    adapted = grading.adapted
    idx = [a for a, j in enumerate(grading.grade_of_var) if j == 0]
    pos = {a: t for t, a in enumerate(idx)}
    structure = {}
    for (a, b), lin in adapted.tensor.entries.items():
        if a in pos and b in pos:
            structure[(pos[a], pos[b])] = [
                (pos[k], CycloNum(adapted.conductor, v)) for k, v in lin
            ]
    form = None
    if adapted.form is not None:
        form = [[adapted.form[a][b] for b in idx] for a in idx]
    g = grading.algebra
    return LieAlgebra(
        len(idx),
        structure,
        labels=[adapted.basis_labels[a] for a in idx],
        form=form,
        conductor=adapted.conductor,
        meta={
            "name": f"{g.meta.get('name', 'g')}^theta",
            "reductive": g.meta.get("reductive"),
            "adapted_indices": tuple(idx),
            "embedding_columns": tuple(
                tuple(grading.P[i][a] for i in range(g.dim)) for a in idx
            ),
        },
    )
