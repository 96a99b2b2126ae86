import functools, itertools, warnings
print = functools.partial(print, flush=True)

from thetapencil.field import zeta
from thetapencil.liealg import build_classical, cyclic_permutation, direct_sum, eigenspace_grading
from thetapencil.invariants import casimir_family, eigenvector_correction
from thetapencil.poisson import poisson_bracket
from thetapencil.zalgebra import (
    gaudin_hamiltonians, poly_span_rank, poly_span_equal, z_cross_generators,
)

sl2 = build_classical("sl", 2)
theta = cyclic_permutation(sl2, 3)
grading = eigenspace_grading(theta)
with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    fam = eigenvector_correction(casimir_family(theta.algebra), theta)
zc = z_cross_generators(fam, grading)
comps = [grading.from_adapted_poly(F) for F in zc.generators]
quad = [F for F in comps if F.total_degree() == 2]
print("quadratic Z gens:", len(quad), "span rank:", poly_span_rank(quad))

g3 = direct_sum(sl2, 3)
for tag, zs in [("1-k", [zeta(3, (-c) % 3) for c in range(3)]),
                ("k-1", [zeta(3, c) for c in range(3)])]:
    H = gaudin_hamiltonians(sl2, 3, zs)
    inside = poly_span_rank(quad) == poly_span_rank(quad + H)
    zero = all(not poisson_bracket(Hk, F, g3.tensor) for Hk in H for F in comps)
    print(f"z_k = zeta^({tag}): H in quad span: {inside}, all brackets zero: {zero}")

# also: which does theta do? print the permutation on copy indices
print("theta matrix row pattern (first column images):")
mat = theta.matrix
# basis vector 0 (copy 0, var 0) maps to?
for src in (0, 3, 6):
    img = [r for r in range(9) if mat[r][src]]
    print(f"  b{src} -> positions {img}")
