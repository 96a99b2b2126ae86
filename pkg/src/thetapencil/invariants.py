"""Invariant generator families and their behaviour under coordinate scalings.

Families come from characteristic-polynomial coefficients of the generic
matrix, written in the trace-dual basis so that the coefficients are genuinely
central for the coordinate bracket.  The scaling that multiplies grade-j
coordinates by s^j splits each generator into weight components; the top
component and its weight drive the generating-set tests.
"""

import warnings
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import (
    SelectionFailure,
    UnsupportedAlgebra,
    ValidationError,
    ZeroPolynomial,
)
from .field import CycloNum, ScalarStream
from .liealg import Automorphism, LieAlgebra, PeriodicGrading, eigenspace_grading
from .pencil import D_theta
from .poisson import MultiPoly, jacobian_rank, poisson_bracket

__all__ = [
    "InvariantFamily",
    "BiHomComponent",
    "casimir_family",
    "bihom_decompose",
    "top_component",
    "phi_degree",
    "is_ggs",
    "eigenvector_correction",
    "apply_automorphism",
]


@dataclass(frozen=True)
class InvariantFamily:
    """Algebraically independent central generators H_1..H_l.

    Generators live in the coordinates of `algebra`.  eigen_exponents stays
    None until the family has been adapted to a finite-order automorphism.
    """

    algebra: LieAlgebra
    generators: tuple
    degrees: tuple
    eigen_exponents: tuple | None = None

    def __len__(self):
        return len(self.generators)


@dataclass(frozen=True)
class BiHomComponent:
    parent_index: int
    phi_degree: int
    poly: MultiPoly


def _dual_generic_matrix(g: LieAlgebra):
    """N x N matrix of linear forms, sum_i x_i B^i with tr(B^i b_j) = delta_ij."""
    mats = g.meta["matrices"]
    size = len(mats[0])
    kinv = linalg.inverse([list(row) for row in g.form])
    rows = []
    for r in range(size):
        row = []
        for c in range(size):
            coeffs = []
            for i in range(g.dim):
                acc = CycloNum.zero(g.conductor)
                for j in range(g.dim):
                    v = mats[j][r][c]
                    if v:
                        acc = acc + kinv[i][j] * Fraction(v)
                coeffs.append(acc)
            row.append(MultiPoly.linear(coeffs, g.conductor))
        rows.append(row)
    return rows


def _char_coefficients(rows):
    """Faddeev-LeVerrier; returns c_1..c_N of det(lambda*I - A)."""
    size = len(rows)
    nvars = rows[0][0].nvars
    conductor = rows[0][0].conductor
    zero = MultiPoly.zero(nvars, conductor)
    coeffs = []
    m = [list(r) for r in rows]
    for k in range(1, size + 1):
        tr = zero
        for i in range(size):
            tr = tr + m[i][i]
        ck = tr * Fraction(-1, k)
        coeffs.append(ck)
        if k == size:
            break
        shifted = [[m[i][j] + (ck if i == j else zero) for j in range(size)]
                   for i in range(size)]
        m = [
            [
                sum((rows[i][t] * shifted[t][j] for t in range(size)), zero)
                for j in range(size)
            ]
            for i in range(size)
        ]
    return coeffs


def _pfaffian(rows):
    size = len(rows)
    if size == 0:
        return None
    if size == 2:
        return rows[0][1]
    acc = None
    for j in range(1, size):
        keep = [i for i in range(size) if i not in (0, j)]
        minor = [[rows[a][b] for b in keep] for a in keep]
        term = rows[0][j] * _pfaffian(minor)
        if j % 2 == 0:
            term = term * Fraction(-1)
        acc = term if acc is None else acc + term
    return acc


def _verify_central(g: LieAlgebra, gens):
    for h in gens:
        for i in range(g.dim):
            xi = MultiPoly.variable(i, g.dim, h.conductor)
            if poisson_bracket(h, xi, g.tensor):
                raise ValidationError(
                    f"generator of degree {h.total_degree()} fails to commute "
                    f"with {g.basis_labels[i]}"
                )


def casimir_family(g: LieAlgebra) -> InvariantFamily:
    """Central generators of the coordinate ring, one family per classical type.

    sl: characteristic coefficients of degrees 2..n.  so: the even
    coefficients, plus the Pfaffian when the matrix size is even.  sp: the
    even coefficients.  Direct sums take the union of per-copy families.
    """
    if "base" in g.meta:
        base = g.meta["base"]
        inner = casimir_family(base)
        gens = []
        degrees = []
        for (start, _stop) in g.meta["copy_spans"]:
            images = [
                MultiPoly.variable(start + i, g.dim, g.conductor)
                for i in range(base.dim)
            ]
            for h, d in zip(inner.generators, inner.degrees):
                gens.append(h.compose(images))
                degrees.append(d)
        _verify_central(g, gens)
        return InvariantFamily(g, tuple(gens), tuple(degrees))

    family = g.meta.get("family")
    if family not in ("sl", "so", "sp"):
        raise UnsupportedAlgebra(
            "invariant families cover classical algebras and their direct sums"
        )
    generic = _dual_generic_matrix(g)
    coeffs = _char_coefficients(generic)
    size = len(generic)
    picked = []
    if family == "sl":
        if coeffs[0]:
            raise ValidationError("trace coefficient should vanish on sl")
        picked = [(k, coeffs[k - 1]) for k in range(2, size + 1)]
    elif family == "sp":
        picked = [(k, coeffs[k - 1]) for k in range(2, size + 1, 2)]
    else:
        for k in range(1, size + 1, 2):
            if coeffs[k - 1]:
                raise ValidationError("odd coefficient should vanish on so")
        top = size - 2 if size % 2 == 0 else size - 1
        picked = [(k, coeffs[k - 1]) for k in range(2, top + 1, 2)]
        if size % 2 == 0:
            pf = _pfaffian(generic)
            if pf * pf != coeffs[size - 1]:
                raise ValidationError("Pfaffian square disagrees with the determinant")
            picked.append((size // 2, pf))
    picked.sort(key=lambda kv: kv[0])
    gens = tuple(h for _, h in picked)
    degrees = tuple(k for k, _ in picked)
    if len(gens) != g.rank:
        raise ValidationError("family size differs from the rank")
    for h, d in zip(gens, degrees):
        if not h.is_homogeneous() or h.total_degree() != d:
            raise ValidationError("generator degree mismatch")
    _verify_central(g, gens)
    return InvariantFamily(g, gens, degrees)


def bihom_decompose(F: MultiPoly, grading: PeriodicGrading, parent_index: int = 0):
    """Split F (in grading-adapted coordinates) by scaling weight."""
    comps = F.weight_components(grading.grade_of_var)
    return [
        BiHomComponent(parent_index, w, poly) for w, poly in sorted(comps.items())
    ]


def phi_degree(F: MultiPoly, grading: PeriodicGrading) -> int:
    if not F:
        raise ZeroPolynomial("the zero polynomial has no weight")
    return max(F.weight_components(grading.grade_of_var))


def top_component(
    F: MultiPoly, grading: PeriodicGrading, parent_index: int = 0
) -> BiHomComponent:
    if not F:
        raise ZeroPolynomial("the zero polynomial has no top component")
    comps = F.weight_components(grading.grade_of_var)
    w = max(comps)
    return BiHomComponent(parent_index, w, comps[w])


def _independent_at_seeds(polys, nvars, conductor, seeds=(0, 1, 2)):
    want = len(polys)
    for seed in seeds:
        pt = ScalarStream(97 + seed).point(nvars, 10 ** 6, conductor)
        if jacobian_rank(polys, pt) == want:
            return True
    return False


def is_ggs(family: InvariantFamily, grading: PeriodicGrading):
    """(flag, sum of top weights, target sum).

    The flag compares the summed top weights with the grading's target; the
    top components are also checked for algebraic independence at random
    points and the two verdicts must agree.
    """
    adapted = [grading.to_adapted_poly(h) for h in family.generators]
    tops = []
    total = 0
    for j, h in enumerate(adapted):
        comp = top_component(h, grading, parent_index=j)
        tops.append(comp.poly)
        total += comp.phi_degree
    target = D_theta(grading)
    flag = total == target
    independent = _independent_at_seeds(
        tops, grading.algebra.dim, grading.conductor
    )
    if flag != independent:
        raise ValidationError(
            "degree-sum and independence certificates disagree; "
            "likely an invalid input family"
        )
    return flag, total, target


def apply_automorphism(F: MultiPoly, theta: Automorphism) -> MultiPoly:
    """Push F through theta: variable i maps to the i-th column of the matrix."""
    mat = theta.matrix
    n = theta.algebra.dim
    rows = [[mat[j][i] for j in range(n)] for i in range(n)]
    return F.substitute_linear(rows)


def _residue_projections(comps, m):
    """Weight components grouped by weight residue; residue -> (poly, top weight)."""
    out = {}
    for w, poly in comps.items():
        cur = out.get(w % m)
        if cur is None:
            out[w % m] = (poly, w)
        else:
            out[w % m] = (cur[0] + poly, max(cur[1], w))
    return out


def eigenvector_correction(
    family: InvariantFamily, theta: Automorphism
) -> InvariantFamily:
    """Replace each generator by a weight-residue projection of itself.

    The projection keeping the top component is tried first; if it collapses
    the family onto fewer independent generators, the other residues are
    tried in decreasing order of their top weight.
    """
    grading = eigenspace_grading(theta)
    m = grading.order
    flag, total, target = is_ggs(family, grading)
    if not flag:
        warnings.warn(
            f"input family has weight sum {total}, target {target}; "
            "correcting anyway",
            stacklevel=2,
        )
    current = [grading.to_adapted_poly(h) for h in family.generators]
    exponents = [0] * len(current)
    nvars = grading.algebra.dim
    for idx, h in enumerate(current):
        comps = h.weight_components(grading.grade_of_var)
        projections = _residue_projections(comps, m)
        if len(projections) == 1:
            exponents[idx] = next(iter(projections))
            continue
        d_top = max(w for _, w in projections.values())
        order = sorted(
            projections.items(),
            key=lambda kv: (kv[1][1] != d_top, -kv[1][1]),
        )
        for r, (poly, _w) in order:
            trial = list(current)
            trial[idx] = poly
            if _independent_at_seeds(trial, nvars, grading.conductor):
                current[idx] = poly
                exponents[idx] = r
                break
        else:
            raise SelectionFailure(
                f"generator {idx}: no residue projection keeps the family "
                "algebraically independent"
            )
    out = InvariantFamily(
        family.algebra,
        tuple(grading.from_adapted_poly(p) for p in current),
        family.degrees,
        tuple(exponents),
    )
    new_flag, _, _ = is_ggs(out, grading)
    if flag and not new_flag:
        raise SelectionFailure("correction destroyed the generating property")
    return out
