import warnings
from thetapencil.liealg import (
    build_classical, direct_sum, cyclic_permutation, eigenspace_grading,
    fixed_subalgebra,
)
from thetapencil.invariants import casimir_family, eigenvector_correction, InvariantFamily
from thetapencil.pencil import build_pencil, b_theta
from thetapencil.poisson import MultiPoly
from thetapencil.zalgebra import (
    z_cross_generators, z_full_generators, z_tilde_generators,
    g0_casimir_family, certify, poly_span_equal, poly_span_rank,
)

def setup(base_name, nn, copies):
    h = build_classical(base_name, nn)
    theta = cyclic_permutation(h, copies)
    g = theta.algebra
    grading = eigenspace_grading(theta)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        fam = eigenvector_correction(casimir_family(g), theta)
    return h, g, theta, grading, fam

import functools, sys
print = functools.partial(print, flush=True)

for (name, nn, copies, want) in [("sl", 2, 2, 3), ("sl", 2, 3, 5), ("sl", 3, 2, 7)]:
    h, g, theta, grading, fam = setup(name, nn, copies)
    zc = z_cross_generators(fam, grading)
    pen = build_pencil(grading)
    budget = 200 if g.dim < 12 else None
    cert = certify(zc, pen, minor_budget=budget)
    print(f"{name}{nn}^{copies}: count={len(zc)} expected={zc.expected_count} want={want} "
          f"free={zc.free} all_zero={cert.all_zero} rank={cert.jacobian_rank_at_seed} "
          f"pairs={cert.pair_count} gcd={cert.minor_gcd_constant}")
    print("  prov:", list(zc.provenance))
    zf = z_full_generators(zc, pen)
    print(f"  zfull kind={zf.kind} count={len(zf)} (same gens: {zf.generators == zc.generators})")
    g0fam = g0_casimir_family(grading, casimir_family(h))
    zt = z_tilde_generators(zf, g0fam)
    certt = certify(zt, pen)
    print(f"  ztilde count={len(zt)} all_zero={certt.all_zero} rank={certt.jacobian_rank_at_seed}")
    print("  ztilde prov:", list(zt.provenance))
