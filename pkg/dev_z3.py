import functools, itertools, warnings
print = functools.partial(print, flush=True)

from fractions import Fraction
from thetapencil.field import CycloNum, zeta
from thetapencil.liealg import (
    build_classical, cyclic_permutation, direct_sum, eigenspace_grading,
)
from thetapencil.invariants import casimir_family, eigenvector_correction
from thetapencil.poisson import MultiPoly, poisson_bracket
from thetapencil.zalgebra import (
    gaudin_hamiltonians, phi_polarizations, poly_span_equal, poly_span_rank,
    rho_symbol, z_cross_generators,
)
from thetapencil.errors import NonHomogeneous, RepeatedParameters, ValidationError

sl2 = build_classical("sl", 2)
sl3 = build_classical("sl", 3)

# --- Example: linear F = x_a, general m: x_[k] has copy-c coefficient (1/m) zeta^{-c i}, i = m-1-k
for m in (2, 3):
    for a in range(3):
        x = MultiPoly.variable(a, 3, 1)
        pols = phi_polarizations(x, sl2, m)
        assert len(pols) == m  # d=1: d(m-1)+1 = m
        for k, P in enumerate(pols):
            i = m - 1 - k
            want = {}
            for c in range(m):
                e = [0] * (3 * m)
                e[c * 3 + a] = 1
                want[tuple(e)] = zeta(m, (-c * i) % m) * Fraction(1, m)
            assert P == MultiPoly(3 * m, P.conductor, want), (m, a, k)
print("linear polarization formula OK (m=2,3)")

# --- sl2 Casimir m=2: 3 polarizations; span == bihom components of eigen family
def eigen_components_original(h, m):
    theta = cyclic_permutation(h, m)
    grading = eigenspace_grading(theta)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        fam = eigenvector_correction(casimir_family(theta.algebra), theta)
    zc = z_cross_generators(fam, grading)
    return [grading.from_adapted_poly(F) for F in zc.generators], grading

C = casimir_family(sl2).generators[0]
for m in (2, 3):
    pols = [P for P in phi_polarizations(C, sl2, m) if P]
    comps, grading = eigen_components_original(sl2, m)
    print(f"sl2 m={m}: {len(pols)} nonzero polarizations, {len(comps)} components,",
          "span equal:", poly_span_equal(pols, comps))

fam3 = casimir_family(sl3)
pols3 = []
for F in fam3.generators:
    pols3.extend(P for P in phi_polarizations(F, sl3, 2) if P)
comps3, gr3 = eigen_components_original(sl3, 2)
print("sl3 m=2: counts", len(pols3), "= 2+5?", len(pols3) == 7,
      "components", len(comps3), "span equal:", poly_span_equal(pols3, comps3))

try:
    phi_polarizations(C + MultiPoly.variable(0, 3, 1), sl2, 2)
    print("NonHomogeneous NOT raised (bad)")
except NonHomogeneous:
    print("NonHomogeneous raised OK")

# --- rho_symbol
for n in (2, 3):
    zs = [zeta(n, (-c) % n) for c in range(n)]
    for a in range(1, 3 * n + 1):
        for bi in range(3):
            x = [0, 0, 0]
            x[bi] = 1
            v = rho_symbol(a, x, n, zs)  # raises if membership fails
    print(f"rho membership OK for n={n}, a <= {3*n}")
v = rho_symbol(2, [1, 0, 0], 2, [1, -1])
print("rho n=2 a=2 diagonal:", [str(c) for c in v])
v = rho_symbol(1, [0, 1, 0], 2, [1, -1])
print("rho n=2 a=1:", [str(c) for c in v])

# --- gaudin
H = gaudin_hamiltonians(sl2, 2, [1, -1])
print("n=2: H1 == -H2:", H[0] == -H[1])
om = H[0] * Fraction(2)
print("n=2: 2*H1 terms:", sorted(om.terms))
z3 = [zeta(3, 0), zeta(3, 1), zeta(3, 2)]
H3 = gaudin_hamiltonians(sl2, 3, z3)
g3 = direct_sum(sl2, 3)
ok = all(not poisson_bracket(H3[i], H3[j], g3.tensor)
         for i, j in itertools.combinations(range(3), 2))
print("n=3 pairwise zero:", ok)
diag_ok = True
for bi in range(3):
    coeffs = [CycloNum.zero(3)] * 9
    for c in range(3):
        coeffs[c * 3 + bi] = CycloNum.one(3)
    x = MultiPoly.linear(coeffs, 3)
    diag_ok &= all(not poisson_bracket(Hk, x, g3.tensor) for Hk in H3)
print("n=3 diagonal invariance:", diag_ok)
try:
    gaudin_hamiltonians(sl2, 2, [1, 1])
    print("RepeatedParameters NOT raised (bad)")
except RepeatedParameters:
    print("RepeatedParameters raised OK")

# --- gaudin vs Z generators: {H_k, F} = 0 with z_k = zeta^{1-k}
comps_orig, grading2 = eigen_components_original(sl2, 3)
ok = all(not poisson_bracket(Hk, F, g3.tensor) for Hk in H3 for F in comps_orig)
print("n=3 {H_k, Z-gen} = 0:", ok)
