"""The compatible bracket pencil of a periodic grading, its limit algebras,
Takiff algebras and twisted truncations, and index machinery.

Everything here works in the grading-adapted basis: each variable carries a
grade, and the pencil splits a structure constant by whether the grades of
its arguments sum below the order or not.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

from . import linalg
from .errors import (
    SymbolicTooLarge,
    UnsupportedParameters,
    ValidationError,
)
from .field import CycloNum, ScalarStream
from .liealg import (
    Automorphism,
    LieAlgebra,
    PeriodicGrading,
    eigenspace_grading,
    fixed_subalgebra,
)
from .poisson import StructureTensor, _lcm_conductor

SYMBOLIC_CAP = 20
MC_BOUND = 10**6


# -- the parameter line ------------------------------------------------------------


@dataclass(frozen=True)
class ParamValue:
    """A point of the projective parameter line: finite value or infinity."""

    tag: str
    value: CycloNum | None = None

    @classmethod
    def finite(cls, value, conductor: int = 1) -> "ParamValue":
        if isinstance(value, CycloNum):
            return cls("finite", value)
        return cls("finite", CycloNum.from_rational(value, conductor))

    @classmethod
    def infinity(cls) -> "ParamValue":
        return cls("infinity", None)

    @property
    def is_infinite(self) -> bool:
        return self.tag == "infinity"

    def __str__(self):
        return "inf" if self.is_infinite else str(self.value)


INFINITY = ParamValue.infinity()


def param(t) -> ParamValue:
    if isinstance(t, ParamValue):
        return t
    return ParamValue.finite(t)


# -- reports -----------------------------------------------------------------------


@dataclass(frozen=True)
class IndexReport:
    dim: int
    max_rank_observed: int
    index_estimate: int
    trials: int
    seed: int
    method: str
    exact: bool


@dataclass(frozen=True)
class LSubspace:
    basis: tuple
    dim: int
    saturated: bool
    used_ts: tuple
    discarded_ts: tuple


# -- the pencil ---------------------------------------------------------------------


class BracketPencil:
    """pi0 keeps brackets with grade sum < m, piInf those with sum >= m."""

    __slots__ = ("grading", "pi0", "piInf")

    def __init__(self, grading: PeriodicGrading, pi0, piInf):
        object.__setattr__(self, "grading", grading)
        object.__setattr__(self, "pi0", pi0)
        object.__setattr__(self, "piInf", piInf)

    def __setattr__(self, *a):
        raise AttributeError("BracketPencil is immutable")

    @property
    def dim(self) -> int:
        return self.grading.algebra.dim

    @property
    def conductor(self) -> int:
        return self.grading.adapted.conductor

    def tensor_at(self, t: ParamValue) -> StructureTensor:
        """Structure tensor of {,}_t = {,}_0 + t {,}_inf."""
        t = param(t)
        if t.is_infinite:
            return self.piInf
        conductor = _lcm_conductor(self.conductor, t.value.m)
        scale = t.value.embed(conductor) if t.value.m != conductor else t.value
        entries: dict = {}
        for key, lin in self.pi0.entries.items():
            acc = {k: CycloNum(self.conductor, v).embed(conductor) for k, v in lin}
            entries[key] = acc
        if scale:
            for key, lin in self.piInf.entries.items():
                acc = entries.setdefault(key, {})
                for k, v in lin:
                    c = scale * CycloNum(self.conductor, v).embed(conductor)
                    acc[k] = acc.get(k, CycloNum.zero(conductor)) + c
        return StructureTensor(
            self.dim,
            conductor,
            {
                key: [(k, c) for k, c in sorted(acc.items()) if c]
                for key, acc in entries.items()
            },
        )


def build_pencil(grading: PeriodicGrading) -> BracketPencil:
    adapted = grading.adapted
    m = grading.order
    grades = grading.grade_of_var
    lo: dict = {}
    hi: dict = {}
    for (i, j), lin in adapted.tensor.entries.items():
        target = lo if grades[i] + grades[j] < m else hi
        target[(i, j)] = [(k, CycloNum(adapted.conductor, v)) for k, v in lin]
    pi0 = StructureTensor(adapted.dim, adapted.conductor, lo)
    piInf = StructureTensor(adapted.dim, adapted.conductor, hi)
    # the split must reassemble the bracket exactly
    merged: dict = {}
    for src in (pi0.entries, piInf.entries):
        for key, lin in src.items():
            if key in merged:
                raise ValidationError("pencil split is not a partition")
            merged[key] = lin
    if merged != adapted.tensor.entries:
        raise ValidationError("pi0 + piInf does not reproduce the bracket")
    return BracketPencil(grading, pi0, piInf)


def algebra_at(pencil: BracketPencil, t) -> LieAlgebra:
    """The Lie algebra with bracket {,}_t; no invariant form is attached
    (the trace form of the original algebra is not invariant off t=1)."""
    t = param(t)
    tensor = pencil.tensor_at(t)
    adapted = pencil.grading.adapted
    q = LieAlgebra(
        adapted.dim,
        {
            key: [(k, CycloNum(tensor.conductor, v)) for k, v in lin]
            for key, lin in tensor.entries.items()
        },
        labels=adapted.basis_labels,
        conductor=tensor.conductor,
        meta={
            "name": f"{adapted.meta.get('name', 'g')}@t={t}",
            "grades": pencil.grading.grade_of_var,
            "pencil_t": str(t),
        },
    )
    if t.is_infinite:
        grades = pencil.grading.grade_of_var
        zeros = [a for a, j in enumerate(grades) if j == 0]
        for (i, j) in q.tensor.entries:
            if i in zeros or j in zeros:
                raise ValidationError("grade-0 part is not central at infinity")
    return q


def lower_central_depth(q: LieAlgebra):
    """Nilpotency class: least c with C^{c+1} = 0; None when the lower
    central series stabilizes at a nonzero term."""
    conductor = q.conductor
    basis = [
        tuple(CycloNum.from_rational(int(i == t), conductor) for i in range(q.dim))
        for t in range(q.dim)
    ]
    current = basis
    steps = 0
    while True:
        nxt = linalg.Span(q.dim, conductor)
        for b in basis:
            for v in current:
                w = q.bracket_vectors(b, v)
                if any(w):
                    nxt.add(w)
        steps += 1
        if nxt.dim == 0:
            return steps
        if nxt.dim >= len(current):
            return None
        current = list(nxt.basis())


# -- index ----------------------------------------------------------------------------


def index(
    q: LieAlgebra,
    trials: int = 12,
    seed: int = 0,
    method: str = "monte_carlo",
    cap: int = SYMBOLIC_CAP,
) -> IndexReport:
    """dim minus the (generic) rank of the Lie--Poisson tensor.

    monte_carlo maxes the rank over seeded random rational points, giving a
    certified upper bound on the index; symbolic runs fraction-free
    elimination on the matrix of linear forms and is exact.
    """
    if method == "symbolic":
        if q.dim > cap:
            raise SymbolicTooLarge(f"dim {q.dim} exceeds symbolic cap {cap}")
        sym = q.tensor.symbolic_matrix()
        rank = linalg.bareiss_rank(sym, pivot_weight=lambda e: e.term_count)
        assert rank % 2 == 0
        return IndexReport(q.dim, rank, q.dim - rank, 0, seed, "symbolic", True)
    if method != "monte_carlo":
        raise UnsupportedParameters(f"unknown method {method!r}")
    if trials < 1:
        raise UnsupportedParameters("monte_carlo needs trials >= 1")
    best = 0
    for trial in range(trials):
        point = ScalarStream(seed + trial).point(q.dim, MC_BOUND)
        rank = linalg.rank(q.tensor.matrix_at(point))
        if rank > best:
            best = rank
    assert best % 2 == 0
    return IndexReport(q.dim, best, q.dim - best, trials, seed, "monte_carlo", False)


def _exact_index(q: LieAlgebra, seed: int = 0) -> int:
    """Index via metadata, symbolic elimination, or two agreeing seeds."""
    rank = q.meta.get("rank")
    if rank is not None and q.meta.get("reductive"):
        return rank
    if q.dim <= SYMBOLIC_CAP:
        return index(q, method="symbolic").index_estimate
    a = index(q, trials=8, seed=seed).index_estimate
    b = index(q, trials=8, seed=seed + 7919).index_estimate
    if a != b:
        return min(a, b)
    return a


def reductive_rank(q: LieAlgebra, seed: int = 0) -> int:
    """rank = index for reductive algebras; trusts metadata when present."""
    return _exact_index(q, seed)


# -- kernels and L(xi) ------------------------------------------------------------------


def kernel_at(pencil: BracketPencil, t, xi):
    """Exact basis of ker pi_t(xi); xi in adapted coordinates."""
    tensor = pencil.tensor_at(param(t))
    return linalg.nullspace(
        tensor.matrix_at(xi), ncols=pencil.dim, conductor=tensor.conductor
    )


DEFAULT_SAMPLE_TS = (2, 3, 5, 7, 11)


def L_of_xi(pencil: BracketPencil, xi, sample_ts=None) -> LSubspace:
    """Span of ker pi_t(xi) over sampled t of maximal rank.

    Samples whose rank falls below the maximum are discarded with a warning;
    saturation means two consecutive kernels added nothing new.
    """
    ts = [param(t) for t in (sample_ts if sample_ts is not None else DEFAULT_SAMPLE_TS)]
    if any(t.is_infinite or not t.value for t in ts):
        raise UnsupportedParameters("sample ts must be finite and nonzero")
    evaluated = []
    for t in ts:
        tensor = pencil.tensor_at(t)
        mat = tensor.matrix_at(xi)
        evaluated.append((t, linalg.rank(mat), mat, tensor.conductor))
    max_rank = max(r for _, r, _, _ in evaluated)
    conductor = max(
        (c for _, r, _, c in evaluated if r == max_rank),
        default=pencil.conductor,
    )
    span = linalg.Span(pencil.dim, conductor)
    used, discarded = [], []
    stale = 0
    saturated = False
    for t, rank, mat, _ in evaluated:
        if rank != max_rank:
            discarded.append(t)
            warnings.warn(
                f"t={t} has rank {rank} < {max_rank}; kernel discarded",
                stacklevel=2,
            )
            continue
        if saturated:
            continue
        used.append(t)
        grew = False
        for v in linalg.nullspace(mat, ncols=pencil.dim, conductor=conductor):
            if span.add(v):
                grew = True
        stale = 0 if grew else stale + 1
        if stale >= 2:
            saturated = True
    return LSubspace(
        basis=tuple(span.basis()),
        dim=span.dim,
        saturated=saturated,
        used_ts=tuple(used),
        discarded_ts=tuple(discarded),
    )


def restricted_rank_check(pencil: BracketPencil, xi):
    """Rank of pi(xi) restricted to V = ker pi_inf(xi) vs dim V - rk g."""
    v_basis = linalg.nullspace(
        pencil.piInf.matrix_at(xi), ncols=pencil.dim, conductor=pencil.conductor
    )
    m_full = pencil.tensor_at(ParamValue.finite(1)).matrix_at(xi)
    rank = 0
    if v_basis:
        restricted = linalg.matmul(
            linalg.matmul(v_basis, m_full), linalg.transpose(v_basis)
        )
        rank = linalg.rank(restricted)
    rk_g = pencil.grading.adapted.meta.get("rank")
    if rk_g is None:
        rk_g = reductive_rank(pencil.grading.adapted)
    matches = rank == len(v_basis) - rk_g
    return len(v_basis), rank, matches


# -- the numerology -----------------------------------------------------------------


def b_of(q: LieAlgebra) -> int:
    """(dim + ind)/2, the dimension of a Borel for reductive q."""
    ind = _exact_index(q)
    if (q.dim + ind) % 2:
        raise ValidationError(f"dim {q.dim} + ind {ind} is odd")
    return (q.dim + ind) // 2


def b_theta(grading: PeriodicGrading) -> int:
    """b(g) - b(g_0) + rk g_0."""
    g = grading.adapted
    g0 = fixed_subalgebra(grading)
    rk0 = reductive_rank(g0)
    b_g = b_of(g)
    b_g0 = (g0.dim + rk0) // 2
    if (g0.dim + rk0) % 2:
        raise ValidationError("dim g_0 + rk g_0 is odd")
    return b_g - b_g0 + rk0


def D_theta(grading: PeriodicGrading) -> int:
    """Sum of j * dim g_j; equals (m/2)(dim g - dim g_0)."""
    dims = grading.component_dims()
    m = grading.order
    d = sum(j * dims[j] for j in range(m))
    if 2 * d != m * (grading.algebra.dim - dims[0]):
        raise ValidationError("grading violates the degree-sum identity")
    return d


# -- Takiff algebras and twisted truncations ----------------------------------------------


def takiff(h: LieAlgebra, n: int) -> LieAlgebra:
    """h ⊗ k[t]/(t^n) with [x t^a, y t^b] = [x,y] t^(a+b)."""
    if n < 1:
        raise UnsupportedParameters("takiff needs n >= 1")
    structure = {}
    d = h.dim
    for p in range(n * d):
        a, i = divmod(p, d)
        for q in range(p + 1, n * d):
            b, j = divmod(q, d)
            if a + b >= n:
                continue
            lin = [
                (k + (a + b) * d, c) for k, c in h.bracket_basis(i, j) if c
            ]
            if lin:
                structure[(p, q)] = lin
    labels = [f"{lab}.t{a}" for a in range(n) for lab in h.basis_labels]
    return LieAlgebra(
        n * d,
        structure,
        labels=labels,
        conductor=h.conductor,
        meta={
            "name": f"takiff({h.meta.get('name', 'h')},{n})",
            "base": h,
            "layers": n,
            "layer_of_var": tuple(a for a in range(n) for _ in range(d)),
        },
    )


def takiff_nilradical(h: LieAlgebra, n: int) -> LieAlgebra:
    """The ideal of positive t-layers in takiff(h, n)."""
    if n < 2:
        raise UnsupportedParameters("nilradical needs n >= 2")
    structure = {}
    d = h.dim
    dim = (n - 1) * d
    for p in range(dim):
        a, i = divmod(p, d)
        for q in range(p + 1, dim):
            b, j = divmod(q, d)
            if (a + 1) + (b + 1) >= n:
                continue
            lin = [
                (k + (a + b + 1) * d, c) for k, c in h.bracket_basis(i, j) if c
            ]
            if lin:
                structure[(p, q)] = lin
    labels = [f"{lab}.t{a}" for a in range(1, n) for lab in h.basis_labels]
    return LieAlgebra(
        (n - 1) * d,
        structure,
        labels=labels,
        conductor=h.conductor,
        meta={
            "name": f"takiff_nil({h.meta.get('name', 'h')},{n})",
            "base": h,
            "layers": n,
        },
    )


def twisted_truncation(
    h: LieAlgebra, theta: Automorphism, n: int, modulus: str = "nilpotent"
) -> LieAlgebra:
    """Theta-equivariant truncated loop algebra on h.

    Basis slots k = 0..N-1 (N = n * order) carry the eigencomponent of grade
    k mod order; t-powers multiply modulo t^N - 1 (unit) or t^N (nilpotent).
    """
    if n < 1:
        raise UnsupportedParameters("need n >= 1")
    if modulus not in ("unit", "nilpotent"):
        raise UnsupportedParameters(f"unknown modulus {modulus!r}")
    if theta.algebra is not h:
        raise UnsupportedParameters("theta must be an automorphism of h itself")
    grading = eigenspace_grading(theta)
    m = theta.order_m
    N = n * m
    adapted = grading.adapted
    grades = grading.grade_of_var
    conductor = adapted.conductor
    positions: dict[tuple[int, int], int] = {}
    labels = []
    for k in range(N):
        for a in range(adapted.dim):
            if grades[a] == k % m:
                positions[(k, a)] = len(labels)
                labels.append(f"{adapted.basis_labels[a]}.t{k}")
    structure: dict = {}
    for (k1, a), p in positions.items():
        for (k2, b), q in positions.items():
            if p >= q:
                continue
            total = k1 + k2
            if modulus == "unit":
                slot = total % N
            elif total <= N - 1:
                slot = total
            else:
                continue
            lin = [
                (positions[(slot, k)], c)
                for k, c in adapted.bracket_basis(a, b)
                if c
            ]
            if lin:
                structure[(p, q)] = lin
    return LieAlgebra(
        len(labels),
        structure,
        labels=labels,
        conductor=conductor,
        meta={
            "name": f"twist({h.meta.get('name', 'h')},{m},{n},{modulus})",
            "base": h,
            "grading": grading,
            "modulus": modulus,
            "copies": n,
            "order": m,
            "slot_of_var": tuple(
                k for (k, a), p in sorted(positions.items(), key=lambda kv: kv[1])
            ),
            "hvar_of_var": tuple(
                a for (k, a), p in sorted(positions.items(), key=lambda kv: kv[1])
            ),
        },
    )
