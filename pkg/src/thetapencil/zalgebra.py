"""Poisson-commutative generator sets attached to a pencil.

The bi-homogeneous components of an eigen-adapted generating family span the
algebra Z_x; depending on where the closure parameter sits relative to the
singular set, Z adjoins a basis of the fixed subalgebra, and Z-tilde swaps the
weight-zero generators for the fixed subalgebra's own Casimirs.  Polarization
and Gaudin constructions realize the same spans from the loop-algebra side.
Certificates record exact pairwise brackets, measured ranks, and (optionally)
the minor-gcd freeness test.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import linalg
from .errors import (
    DimensionMismatch,
    BudgetExhausted,
    NonHomogeneous,
    RepeatedParameters,
    UnhandledCase,
    UnsupportedAlgebra,
    UnsupportedParameters,
    UnsupportedTheta,
    ValidationError,
)
from .field import CycloNum, ScalarStream, to_conductor, zeta
from .invariants import (
    InvariantFamily,
    bihom_decompose,
    casimir_family,
    eigenvector_correction,
    is_ggs,
    phi_degree,
)
from .liealg import (
    Automorphism,
    LieAlgebra,
    PeriodicGrading,
    cyclic_permutation,
    eigenspace_grading,
    fixed_subalgebra,
)
from .pencil import (
    INFINITY,
    BracketPencil,
    _exact_index,
    algebra_at,
    b_theta,
    build_pencil,
    param,
    reductive_rank,
    twisted_truncation,
)
from .poisson import MultiPoly, jacobian_rank, minor_gcd, poisson_bracket

__all__ = [
    "ZGeneratorSet",
    "CommutativityCertificate",
    "z_cross_generators",
    "z_full_generators",
    "z_tilde_generators",
    "g0_casimir_family",
    "certify",
    "poly_span_rank",
    "poly_span_equal",
    "phi_polarizations",
    "gaudin_hamiltonians",
    "rho_symbol",
    "twisted_polarizations",
]


@dataclass(frozen=True)
class ZGeneratorSet:
    """Generators of a commutative subalgebra, in `algebra`'s coordinates.

    For the z_* kinds the coordinates are the grading-adapted ones; for kind
    "twisted" they belong to the twisted truncation and `grading` keeps the
    eigenspace decomposition of the base involution for reference.  `free`
    goes false when the input family failed the generating-set test; the
    components are still emitted for inspection.
    """

    algebra: LieAlgebra
    grading: PeriodicGrading
    generators: tuple
    provenance: tuple
    expected_count: int
    kind: str
    free: bool = True

    def __len__(self):
        return len(self.generators)


@dataclass(frozen=True)
class CommutativityCertificate:
    """Outcome of the pairwise bracket run plus rank measurements.

    minor_gcd_constant is None when no budget was given or the budget ran out
    before the scan could certify either answer.
    """

    pair_count: int
    all_zero: bool
    witnesses: tuple
    brackets_checked: tuple
    jacobian_rank_at_seed: int
    minor_gcd_constant: "bool | None" = None
    seed: int = 0


def _weight_of(F: MultiPoly, grading: PeriodicGrading) -> int:
    comps = F.weight_components(grading.grade_of_var)
    if len(comps) != 1:
        raise ValidationError("generator is not weight-homogeneous")
    return next(iter(comps))


def _grade0_vars(grading: PeriodicGrading):
    return [a for a, j in enumerate(grading.grade_of_var) if j == 0]


def _check_g0_invariance(gens, grading: PeriodicGrading):
    # Z sits inside S(g)^{g_0}: the full bracket with every grade-0
    # coordinate has to vanish identically, not just at points.
    adapted = grading.adapted
    for idx, F in enumerate(gens):
        for a in _grade0_vars(grading):
            x = MultiPoly.variable(a, adapted.dim, F.conductor)
            if poisson_bracket(x, F, adapted.tensor):
                raise ValidationError(
                    f"generator {idx} is not invariant under "
                    f"{adapted.basis_labels[a]}"
                )


def z_cross_generators(
    family: InvariantFamily, grading: PeriodicGrading
) -> ZGeneratorSet:
    """All nonzero bi-homogeneous components of an eigen-adapted family.

    When the family passes the generating-set test the number of components
    must land exactly on the expected count; otherwise the set is emitted
    with free=False and no count promise.
    """
    if family.eigen_exponents is None:
        raise UnsupportedParameters(
            "family must be eigenvector-corrected for the automorphism first"
        )
    if family.algebra is not grading.algebra:
        raise UnsupportedParameters("family and grading disagree on the algebra")
    flag, _total, _target = is_ggs(family, grading)
    gens = []
    prov = []
    for j, F in enumerate(family.generators):
        adapted = grading.to_adapted_poly(F)
        for comp in bihom_decompose(adapted, grading, parent_index=j):
            gens.append(comp.poly)
            prov.append(f"H{j + 1} phi-degree {comp.phi_degree}")
    expected = b_theta(grading)
    if flag and len(gens) != expected:
        raise ValidationError(
            f"{len(gens)} components where the count identity demands {expected}"
        )
    _check_g0_invariance(gens, grading)
    return ZGeneratorSet(
        grading.adapted,
        grading,
        tuple(gens),
        tuple(prov),
        expected,
        "z_cross",
        free=flag,
    )


def z_full_generators(zcross: ZGeneratorSet, pencil: BracketPencil) -> ZGeneratorSet:
    """Close Z_x up to Z, depending on where infinity sits.

    Singular infinity keeps the set as is.  Regular infinity forces the fixed
    subalgebra to be abelian; for inner automorphisms its coordinate basis
    replaces the weight-zero generators, and the outer case is left alone on
    purpose.
    """
    grading = zcross.grading
    ind_g = _exact_index(grading.adapted)
    ind_inf = _exact_index(algebra_at(pencil, INFINITY))
    if ind_inf > ind_g:
        return ZGeneratorSet(
            zcross.algebra,
            grading,
            zcross.generators,
            zcross.provenance,
            zcross.expected_count,
            "z_full",
            free=zcross.free,
        )
    g0 = fixed_subalgebra(grading)
    if reductive_rank(g0) != ind_g:
        raise UnhandledCase(
            "regular infinity with an outer automorphism has no construction here"
        )
    adapted = grading.adapted
    gens = []
    prov = []
    for F, tag in zip(zcross.generators, zcross.provenance):
        if _weight_of(F, grading) != 0:
            gens.append(F)
            prov.append(tag)
    for a in _grade0_vars(grading):
        gens.append(MultiPoly.variable(a, adapted.dim, adapted.conductor))
        prov.append(f"g_0 basis {adapted.basis_labels[a]}")
    _check_g0_invariance(gens, grading)
    return ZGeneratorSet(
        zcross.algebra,
        grading,
        tuple(gens),
        tuple(prov),
        zcross.expected_count,
        "z_full",
        free=zcross.free,
    )


def z_tilde_generators(
    zfull: ZGeneratorSet, g0_family: InvariantFamily
) -> ZGeneratorSet:
    """Swap the weight-zero generators for the fixed subalgebra's Casimirs.

    g0_family lives on the standalone fixed subalgebra; its generators are
    re-expressed through the grade-0 adapted coordinates.  For abelian g_0
    the coordinate family (all degrees 1) is the right input.
    """
    grading = zfull.grading
    g0 = g0_family.algebra
    idx = g0.meta.get("adapted_indices")
    if idx is None:
        raise UnsupportedParameters(
            "g0_family must live on the fixed subalgebra of this grading"
        )
    if any(grading.grade_of_var[a] != 0 for a in idx) or g0.dim != len(
        _grade0_vars(grading)
    ):
        raise UnsupportedParameters("fixed subalgebra does not match the grading")
    adapted = grading.adapted
    images = [
        MultiPoly.variable(idx[t], adapted.dim, adapted.conductor)
        for t in range(g0.dim)
    ]
    gens = []
    prov = []
    for F, tag in zip(zfull.generators, zfull.provenance):
        if _weight_of(F, grading) != 0:
            gens.append(F)
            prov.append(tag)
    for C, d in zip(g0_family.generators, g0_family.degrees):
        gens.append(C.compose(images))
        prov.append(f"g_0 casimir degree {d}")
    _check_g0_invariance(gens, grading)
    return ZGeneratorSet(
        zfull.algebra,
        grading,
        tuple(gens),
        tuple(prov),
        zfull.expected_count,
        "z_tilde",
        free=zfull.free,
    )


def g0_casimir_family(
    grading: PeriodicGrading, base_family: InvariantFamily
) -> InvariantFamily:
    """Casimir family of g_0 when g_0 is the diagonal copy of the summand.

    Transports base_family along x -> (x, ..., x); the construction checks
    that the diagonal really is fixed and refuses gradings where it is not.
    """
    g = grading.algebra
    base = base_family.algebra
    spans = g.meta.get("copy_spans")
    if spans is None or g.meta.get("base") is not base:
        raise UnsupportedParameters(
            "grading must live on a direct sum of the family's algebra"
        )
    g0 = fixed_subalgebra(grading)
    idx = g0.meta["adapted_indices"]
    rows = []
    for a in range(base.dim):
        vec = [to_conductor(0, grading.conductor) for _ in range(g.dim)]
        for start, _stop in spans:
            vec[start + a] = to_conductor(1, grading.conductor)
        ad = linalg.matvec(grading.P_inv, vec)
        for i, v in enumerate(ad):
            if v and grading.grade_of_var[i] != 0:
                raise UnsupportedParameters(
                    "the grading does not fix the diagonal subalgebra"
                )
        rows.append([ad[i] for i in idx])
    gens = tuple(C.substitute_linear(rows) for C in base_family.generators)
    for C in gens:
        for t in range(g0.dim):
            x = MultiPoly.variable(t, g0.dim, C.conductor)
            if poisson_bracket(x, C, g0.tensor):
                raise ValidationError("transported generator is not central")
    return InvariantFamily(g0, gens, base_family.degrees)


# -- certificates --------------------------------------------------------------------


def certify(
    genset: ZGeneratorSet,
    pencil,
    seed: int = 0,
    minor_budget: "int | None" = None,
) -> CommutativityCertificate:
    """Pairwise brackets, Jacobian rank at a seeded point, optional minor gcd.

    `pencil` is either a BracketPencil (brackets checked at t = 0 and t = 1,
    which settles every t by linearity) or a plain LieAlgebra whose single
    bracket is used, as with the twisted truncations.
    """
    gens = genset.generators
    if isinstance(pencil, BracketPencil):
        tagged = [("0", pencil.tensor_at(param(0))), ("1", pencil.tensor_at(param(1)))]
    elif isinstance(pencil, LieAlgebra):
        tagged = [("lie", pencil.tensor)]
    else:
        raise UnsupportedParameters("expected a BracketPencil or a LieAlgebra")
    witnesses = []
    pair_count = 0
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            pair_count += 1
            for tag, tensor in tagged:
                if poisson_bracket(gens[i], gens[j], tensor):
                    witnesses.append((i, j, tag))
    rank = 0
    if gens:
        conductor = 1
        for F in gens:
            conductor = lcm(conductor, F.conductor)
        pt = ScalarStream(1009 + seed).point(gens[0].nvars, 10 ** 6, conductor)
        rank = jacobian_rank(gens, pt)
    if rank > genset.expected_count:
        raise ValidationError(
            f"rank {rank} exceeds the expected count {genset.expected_count}"
        )
    gcd_flag = None
    if minor_budget is not None and gens:
        try:
            _g, certified = minor_gcd(list(gens), budget=minor_budget)
            gcd_flag = certified
        except BudgetExhausted:
            gcd_flag = None
    return CommutativityCertificate(
        pair_count,
        not witnesses,
        tuple(witnesses),
        tuple(tag for tag, _ in tagged),
        rank,
        gcd_flag,
        seed,
    )


# -- span comparisons ------------------------------------------------------------------


def _coeff_matrix(polys, support, conductor):
    rows = []
    for p in polys:
        row = []
        for e in support:
            vec = p.terms.get(e)
            c = CycloNum(p.conductor, vec) if vec else CycloNum.zero(p.conductor)
            row.append(c.embed(conductor))
        rows.append(row)
    return rows


def poly_span_rank(polys) -> int:
    polys = list(polys)
    if not polys:
        return 0
    nvars = polys[0].nvars
    if any(p.nvars != nvars for p in polys):
        raise DimensionMismatch("span comparison needs a common variable count")
    conductor = 1
    for p in polys:
        conductor = lcm(conductor, p.conductor)
    support = sorted({e for p in polys for e in p.terms})
    return linalg.rank(_coeff_matrix(polys, support, conductor))


def poly_span_equal(polys_a, polys_b) -> bool:
    """Exact equality of coefficient spans over the common monomial support."""
    a = list(polys_a)
    b = list(polys_b)
    ra = poly_span_rank(a)
    rb = poly_span_rank(b)
    return ra == rb == poly_span_rank(a + b)


# -- polarizations ---------------------------------------------------------------------


def phi_polarizations(F: MultiPoly, h: LieAlgebra, m: int):
    """Components of F along the scaling parameter, as polynomials on m copies.

    Copy c of the coordinates occupies variables c*dim .. c*dim+dim-1.  The
    substitution sends a coordinate to the sum over eigen-embeddings weighted
    by s-powers; collecting the powers of s yields the d(m-1)+1 entries, the
    later ones zero by convention.
    """
    if m < 1:
        raise UnsupportedParameters("need m >= 1")
    if not F:
        raise NonHomogeneous("the zero polynomial has no polarizations")
    if not F.is_homogeneous():
        raise NonHomogeneous("polarizations need a homogeneous argument")
    if F.nvars != h.dim:
        raise DimensionMismatch("F must use the coordinates of h")
    d = F.total_degree()
    dim = h.dim
    nvars = m * dim + 1
    conductor = lcm(m, F.conductor, h.conductor)
    s = MultiPoly.variable(nvars - 1, nvars, conductor)
    spow = [s ** k for k in range(m)]
    inv_m = Fraction(1, m)
    images = []
    for a in range(dim):
        img = MultiPoly.zero(nvars, conductor)
        for j in range(m):
            coeffs = [CycloNum.zero(conductor)] * nvars
            for c in range(m):
                coeffs[c * dim + a] = zeta(m, (-c * j) % m).embed(conductor) * inv_m
            img = img + spow[m - 1 - j] * MultiPoly.linear(coeffs, conductor)
        images.append(img)
    full = F.compose(images)
    weights = [0] * (m * dim) + [1]
    comps = full.weight_components(weights)
    out = []
    for k in range(d * (m - 1) + 1):
        comp = comps.get(k)
        if comp is None:
            out.append(MultiPoly.zero(m * dim, conductor))
            continue
        terms = {
            e[:-1]: CycloNum(comp.conductor, vec) for e, vec in comp.terms.items()
        }
        out.append(MultiPoly(m * dim, comp.conductor, terms))
    if any(k > d * (m - 1) for k in comps):
        raise ValidationError("polarization weight exceeded the degree bound")
    return out


# -- Gaudin symbols --------------------------------------------------------------------


def _split_casimir(kinv, dim, k, j, nvars, conductor):
    terms = {}
    for i in range(dim):
        for p in range(dim):
            c = kinv[i][p]
            if not c:
                continue
            e = [0] * nvars
            e[k * dim + i] += 1
            e[j * dim + p] += 1
            terms[tuple(e)] = to_conductor(c, conductor)
    return MultiPoly(nvars, conductor, terms)


def gaudin_hamiltonians(h: LieAlgebra, n: int, z):
    """Quadratic Hamiltonians on n copies of h at pairwise distinct points.

    The inner sum is the split Casimir in mutually dual bases of the trace
    form; independence of the basis choice is asserted by recomputing the
    first pair against a permuted basis.
    """
    if h.meta.get("family") not in ("sl", "so", "sp"):
        raise UnsupportedAlgebra("Gaudin symbols need a simple classical algebra")
    if n < 2:
        raise UnsupportedParameters("need at least two points")
    if len(z) != n:
        raise DimensionMismatch(f"expected {n} points, got {len(z)}")
    conductor = h.conductor
    zs = []
    for v in z:
        c = to_conductor(v, conductor if not isinstance(v, CycloNum) else v.m)
        zs.append(c)
        conductor = lcm(conductor, c.m)
    zs = [c.embed(conductor) for c in zs]
    for i in range(n):
        for j in range(i + 1, n):
            if zs[i] == zs[j]:
                raise RepeatedParameters(f"points {i + 1} and {j + 1} coincide")
    dim = h.dim
    nvars = n * dim
    kinv = linalg.inverse([list(row) for row in h.form])
    perm = list(reversed(range(dim)))
    kperm = linalg.inverse([[h.form[perm[a]][perm[b]] for b in range(dim)] for a in range(dim)])
    direct = _split_casimir(kinv, dim, 0, 1, nvars, conductor)
    terms = {}
    for a in range(dim):
        for b in range(dim):
            c = kperm[a][b]
            if not c:
                continue
            e = [0] * nvars
            e[perm[a]] += 1
            e[dim + perm[b]] += 1
            terms[tuple(e)] = to_conductor(c, conductor)
    if MultiPoly(nvars, conductor, terms) != direct:
        raise ValidationError("split Casimir depends on the basis choice")
    hams = []
    for k in range(n):
        acc = MultiPoly.zero(nvars, conductor)
        for j in range(n):
            if j == k:
                continue
            omega = _split_casimir(kinv, dim, k, j, nvars, conductor)
            acc = acc + omega * (zs[k] - zs[j]).inv()
        hams.append(acc)
    return hams


def rho_symbol(a: int, x, n: int, z):
    """Evaluation symbol of x t^(-a) at the points z, as a vector on n copies.

    With the roots-of-unity points the outcome is an eigenvector of the cycle
    and the membership in the matching eigenspace is verified exactly.
    """
    if not isinstance(a, int) or a < 1:
        raise UnsupportedParameters("need a positive integer power")
    if len(z) != n:
        raise DimensionMismatch(f"expected {n} points, got {len(z)}")
    dim = len(x)
    conductor = n
    for v in z:
        if isinstance(v, CycloNum):
            conductor = lcm(conductor, v.m)
    zs = [to_conductor(v, conductor) for v in z]
    xv = [to_conductor(v, conductor) for v in x]
    out = []
    for c in range(n):
        w = zs[c] ** (-a)
        out.extend(w * v for v in xv)
    canonical = all(zs[c] == zeta(n, (-c) % n).embed(conductor) for c in range(n))
    if canonical and any(out):
        j = (a - 1) % n + 1
        target = (n - j) % n
        base = LieAlgebra(dim, {})
        grading = eigenspace_grading(cyclic_permutation(base, n))
        big = lcm(conductor, grading.conductor)
        ad = linalg.matvec(
            [[v.embed(big) for v in row] for row in grading.P_inv],
            [v.embed(big) for v in out],
        )
        for i, v in enumerate(ad):
            if v and grading.grade_of_var[i] != target:
                raise ValidationError(
                    f"symbol escaped the expected eigenspace {target}"
                )
    return out


# -- twisted polarizations -------------------------------------------------------------


def twisted_polarizations(
    h: LieAlgebra, theta: Automorphism, n: int
) -> ZGeneratorSet:
    """Generator set on the twisted truncation at level n*order.

    Realizes, for each Casimir of h, the n polarization components whose
    s-weights are congruent to the distinguished one modulo the order; each
    output is verified to be a full invariant of the truncation, which makes
    pairwise commutativity automatic.
    """
    if theta.order_m > 2:
        raise UnsupportedTheta(
            "twisted polarizations are certified for involutions only"
        )
    if theta.algebra is not h:
        raise UnsupportedParameters("theta must be an automorphism of h itself")
    if n < 1:
        raise UnsupportedParameters("need n >= 1")
    grading = eigenspace_grading(theta)
    rk = reductive_rank(h)
    contraction = algebra_at(build_pencil(grading), 0)
    if _exact_index(contraction) != rk:
        raise ValidationError("the contraction index does not match the rank")
    family = eigenvector_correction(casimir_family(h), theta)
    m = theta.order_m
    N = n * m
    W = twisted_truncation(h, theta, n, modulus="nilpotent")
    slot = W.meta["slot_of_var"]
    hvar = W.meta["hvar_of_var"]
    pos = {(slot[p], hvar[p]): p for p in range(W.dim)}
    nvars = W.dim + 1
    conductor = lcm(W.conductor, grading.conductor)
    s = MultiPoly.variable(nvars - 1, nvars, conductor)
    spow = [s ** k for k in range(N)]
    images = []
    for a in range(grading.adapted.dim):
        img = MultiPoly.zero(nvars, conductor)
        for k in range(N):
            if k % m != grading.grade_of_var[a]:
                continue
            w = MultiPoly.variable(pos[(k, a)], nvars, conductor)
            img = img + spow[N - 1 - k] * w
        images.append(img)
    weights = [0] * W.dim + [1]
    gens = []
    prov = []
    for i, F in enumerate(family.generators):
        adapted = grading.to_adapted_poly(F)
        b = F.total_degree()
        b_top = phi_degree(adapted, grading)
        b_low = b * (m - 1) - b_top
        comps = adapted.compose(images).weight_components(weights)
        for k in range(n):
            key = b_low + k * m
            comp = comps.get(key)
            if comp is None:
                raise ValidationError(
                    f"polarization {key} of generator {i + 1} vanished"
                )
            terms = {
                e[:-1]: CycloNum(comp.conductor, vec)
                for e, vec in comp.terms.items()
            }
            gens.append(MultiPoly(W.dim, comp.conductor, terms))
            prov.append(f"F{i + 1}[{key}]")
    for idx, F in enumerate(gens):
        for p in range(W.dim):
            x = MultiPoly.variable(p, W.dim, F.conductor)
            if poisson_bracket(x, F, W.tensor):
                raise ValidationError(
                    f"generator {idx} is not invariant under {W.basis_labels[p]}"
                )
    return ZGeneratorSet(
        W,
        grading,
        tuple(gens),
        tuple(prov),
        n * rk,
        "twisted",
    )
