import functools, itertools
print = functools.partial(print, flush=True)

from thetapencil.field import zeta
from thetapencil.liealg import (
    build_classical, cartan_involution, cyclic_permutation, eigenspace_grading,
    identity_automorphism,
)
from thetapencil.invariants import casimir_family, top_component
from thetapencil.pencil import index, twisted_truncation
from thetapencil.poisson import MultiPoly, poisson_bracket
from thetapencil.zalgebra import (
    certify, phi_polarizations, poly_span_equal, twisted_polarizations,
)
from thetapencil.errors import UnsupportedTheta

sl2 = build_classical("sl", 2)
cart = cartan_involution(sl2)

# n=1: single generator == top component of the adapted Casimir
tp1 = twisted_polarizations(sl2, cart, 1)
print("n=1 count:", len(tp1), "prov:", list(tp1.provenance), "expected:", tp1.expected_count)
grading = eigenspace_grading(cart)
C = casimir_family(sl2).generators[0]
topc = top_component(grading.to_adapted_poly(C), grading)
print("n=1 gen == F_bullet:", tp1.generators[0] == topc.poly, "| weight:", topc.phi_degree)
print("n=1 W index:", index(tp1.algebra, method="symbolic").index_estimate)
cert1 = certify(tp1, tp1.algebra)
print("n=1 cert:", cert1.all_zero, cert1.jacobian_rank_at_seed, cert1.brackets_checked)

# n=2: 2 generators, commuting, rank 2, W index 2
tp2 = twisted_polarizations(sl2, cart, 2)
print("n=2 count:", len(tp2), "prov:", list(tp2.provenance))
cert2 = certify(tp2, tp2.algebra)
print("n=2 cert:", cert2.all_zero, cert2.jacobian_rank_at_seed)
print("n=2 W index:", index(tp2.algebra, method="symbolic").index_estimate)
print("n=2 degrees:", [F.total_degree() for F in tp2.generators])

# theta = id: Rais-Tauvel reduction
for n in (2, 3):
    tpid = twisted_polarizations(sl2, identity_automorphism(sl2), n)
    cert = certify(tpid, tpid.algebra)
    print(f"id n={n}: count {len(tpid)} cert {cert.all_zero} rank {cert.jacobian_rank_at_seed}",
          list(tpid.provenance))

# Fourier cross-check at n=2: push twisted gens to h^2 coordinates, compare with
# the first two phi polarizations of the Casimir
n = 2
tpid = twisted_polarizations(sl2, identity_automorphism(sl2), n)
W = tpid.algebra
rows = []
for p in range(W.dim):
    k = W.meta["slot_of_var"][p]
    a = W.meta["hvar_of_var"][p]
    row = [zeta(n, 0) * 0] * (3 * n)
    for c in range(n):
        row[c * 3 + a] = zeta(n, (-k * c) % n)
    rows.append(row)
pushed = [F.substitute_linear(rows) for F in tpid.generators]
pols = phi_polarizations(C, sl2, n)
print("fourier n=2: pushed == pols[0:2]:", pushed[0] == pols[0], pushed[1] == pols[1])
print("fourier n=2 span equal:", poly_span_equal(pushed, pols[:2]))

try:
    bad = cyclic_permutation(sl2, 3)
    twisted_polarizations(bad.algebra, bad, 1)
    print("UnsupportedTheta NOT raised (bad)")
except UnsupportedTheta:
    print("UnsupportedTheta raised OK")
