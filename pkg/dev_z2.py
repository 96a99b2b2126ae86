import functools, time, warnings
print = functools.partial(print, flush=True)

from thetapencil.liealg import (
    Automorphism, LieAlgebra, build_classical, cartan_involution,
    cyclic_permutation, eigenspace_grading, fixed_subalgebra,
    identity_automorphism, twisted_cycle,
)
from thetapencil.invariants import InvariantFamily, casimir_family, eigenvector_correction
from thetapencil.pencil import build_pencil, b_theta
from thetapencil.poisson import MultiPoly
from thetapencil.zalgebra import (
    ZGeneratorSet, certify, g0_casimir_family, poly_span_equal, poly_span_rank,
    z_cross_generators, z_full_generators, z_tilde_generators,
)
from thetapencil.errors import UnhandledCase

sl2 = build_classical("sl", 2)

# --- inner involution with abelian g_0: Ad diag(1,-1): e->-e, h->h, f->-f
inner = Automorphism(sl2, [[-1, 0, 0], [0, 1, 0], [0, 0, -1]])
print("inner order:", inner.order_m)
gr_in = eigenspace_grading(inner)
print("inner dims:", gr_in.component_dims(), "b_theta:", b_theta(gr_in))
fam_in = eigenvector_correction(casimir_family(sl2), inner)
print("inner exponents:", fam_in.eigen_exponents)
zc = z_cross_generators(fam_in, gr_in)
print("inner zcross count:", len(zc), "prov:", list(zc.provenance), "free:", zc.free)
pen_in = build_pencil(gr_in)
zf = z_full_generators(zc, pen_in)
print("inner zfull count:", len(zf), "prov:", list(zf.provenance))
cert = certify(zf, pen_in)
print("inner zfull cert:", cert.all_zero, cert.jacobian_rank_at_seed)
# ztilde with coordinate family on abelian g0
g0 = fixed_subalgebra(gr_in)
print("g0 dim:", g0.dim, "abelian:", not g0.tensor.entries)
coord_fam = InvariantFamily(
    g0,
    tuple(MultiPoly.variable(i, g0.dim, g0.conductor) for i in range(g0.dim)),
    (1,) * g0.dim,
)
zt = z_tilde_generators(zf, coord_fam)
print("inner ztilde == zfull gens:", zt.generators == zf.generators, list(zt.provenance))

# --- outer + regular infinity: twisted cycle of cartan on 2 copies
tw = twisted_cycle(sl2, cartan_involution(sl2), 2)
gr_tw = eigenspace_grading(tw)
print("twisted dims:", gr_tw.component_dims())
with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    fam_tw = eigenvector_correction(casimir_family(tw.algebra), tw)
zc_tw = z_cross_generators(fam_tw, gr_tw)
print("twisted zcross count:", len(zc_tw), "expected:", zc_tw.expected_count, "free:", zc_tw.free)
try:
    z_full_generators(zc_tw, build_pencil(gr_tw))
    print("twisted zfull: NO ERROR (bad)")
except UnhandledCase as e:
    print("twisted zfull UnhandledCase:", e)

# --- m=1 degenerate
ident = identity_automorphism(sl2)
gr_id = eigenspace_grading(ident)
fam_id = eigenvector_correction(casimir_family(sl2), ident)
zc_id = z_cross_generators(fam_id, gr_id)
print("m=1 zcross:", len(zc_id), "expected:", zc_id.expected_count, list(zc_id.provenance))
zf_id = z_full_generators(zc_id, build_pencil(gr_id))
print("m=1 zfull prov:", list(zf_id.provenance), "count:", len(zf_id))

# --- swap ztilde degree-2 span equality
theta = cyclic_permutation(sl2, 2)
g = theta.algebra
grading = eigenspace_grading(theta)
with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    fam = eigenvector_correction(casimir_family(g), theta)
zc2 = z_cross_generators(fam, grading)
pen2 = build_pencil(grading)
zf2 = z_full_generators(zc2, pen2)
g0fam = g0_casimir_family(grading, casimir_family(sl2))
zt2 = z_tilde_generators(zf2, g0fam)
deg2_full = [F for F in zf2.generators if F.total_degree() == 2]
deg2_tilde = [F for F in zt2.generators if F.total_degree() == 2]
print("swap deg2 spans equal:", poly_span_equal(deg2_full, deg2_tilde),
      poly_span_rank(deg2_full), poly_span_rank(deg2_tilde))

# --- corrupted generator -> witness
bad = list(zc2.generators)
bad[0] = bad[0] + MultiPoly.variable(1, g.dim, bad[0].conductor) * MultiPoly.variable(3, g.dim, bad[0].conductor)
bad_set = ZGeneratorSet(zc2.algebra, grading, tuple(bad), zc2.provenance, zc2.expected_count, "z_cross", free=False)
cert_bad = certify(bad_set, pen2)
print("corrupted all_zero:", cert_bad.all_zero, "witnesses:", cert_bad.witnesses[:3])

# --- timing of sl3^2 z pipeline for test budgeting
t0 = time.time()
theta3 = cyclic_permutation(build_classical("sl", 3), 2)
gr3 = eigenspace_grading(theta3)
with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    fam3 = eigenvector_correction(casimir_family(theta3.algebra), theta3)
t1 = time.time()
zc3 = z_cross_generators(fam3, gr3)
t2 = time.time()
cert3 = certify(zc3, build_pencil(gr3))
t3 = time.time()
print(f"sl3^2 timing: family {t1-t0:.1f}s zcross {t2-t1:.1f}s certify {t3-t2:.1f}s")
