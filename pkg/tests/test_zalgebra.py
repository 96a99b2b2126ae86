import itertools
import warnings
from fractions import Fraction

import pytest

from thetapencil.errors import (
    DimensionMismatch,
    NonHomogeneous,
    RepeatedParameters,
    UnhandledCase,
    UnsupportedAlgebra,
    UnsupportedParameters,
    UnsupportedTheta,
    ValidationError,
)
from thetapencil.field import CycloNum, zeta
from thetapencil.invariants import (
    InvariantFamily,
    casimir_family,
    eigenvector_correction,
    top_component,
)
from thetapencil.liealg import (
    Automorphism,
    LieAlgebra,
    build_classical,
    cartan_involution,
    cyclic_permutation,
    direct_sum,
    eigenspace_grading,
    fixed_subalgebra,
    identity_automorphism,
    twisted_cycle,
)
from thetapencil.pencil import build_pencil, index
from thetapencil.poisson import MultiPoly, poisson_bracket
from thetapencil.zalgebra import (
    CommutativityCertificate,
    ZGeneratorSet,
    certify,
    g0_casimir_family,
    gaudin_hamiltonians,
    phi_polarizations,
    poly_span_equal,
    poly_span_rank,
    rho_symbol,
    twisted_polarizations,
    z_cross_generators,
    z_full_generators,
    z_tilde_generators,
)

sl2 = build_classical("sl", 2)
sl3 = build_classical("sl", 3)


def cyclic_setup(h, copies):
    """Grading, corrected family and pencil for the cycle on h^copies."""
    theta = cyclic_permutation(h, copies)
    grading = eigenspace_grading(theta)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        family = eigenvector_correction(casimir_family(theta.algebra), theta)
    return theta, grading, family


def inner_involution():
    # Ad of diag(1,-1): e -> -e, h -> h, f -> -f; fixed algebra is the Cartan.
    return Automorphism(sl2, [[-1, 0, 0], [0, 1, 0], [0, 0, -1]])


class TestZCross:
    def test_swap_sl2_counts(self):
        _theta, grading, family = cyclic_setup(sl2, 2)
        zc = z_cross_generators(family, grading)
        assert len(zc) == 3
        assert zc.expected_count == 3
        assert zc.kind == "z_cross"
        assert zc.free
        assert list(zc.provenance) == [
            "H1 phi-degree 0",
            "H1 phi-degree 2",
            "H2 phi-degree 1",
        ]

    def test_cycle_sl2_cubed_counts(self):
        _theta, grading, family = cyclic_setup(sl2, 3)
        zc = z_cross_generators(family, grading)
        assert len(zc) == 5
        assert zc.expected_count == 5
        assert sorted(zc.provenance) == [
            "H1 phi-degree 1",
            "H1 phi-degree 4",
            "H2 phi-degree 0",
            "H2 phi-degree 3",
            "H3 phi-degree 2",
        ]

    def test_swap_sl3_counts(self):
        _theta, grading, family = cyclic_setup(sl3, 2)
        zc = z_cross_generators(family, grading)
        assert len(zc) == 7
        assert zc.expected_count == 7
        assert zc.free

    def test_generators_are_weight_homogeneous(self):
        _theta, grading, family = cyclic_setup(sl2, 2)
        zc = z_cross_generators(family, grading)
        for F in zc.generators:
            assert len(F.weight_components(grading.grade_of_var)) == 1

    def test_rejects_uncorrected_family(self):
        theta, grading, _family = cyclic_setup(sl2, 2)
        raw = casimir_family(theta.algebra)
        with pytest.raises(UnsupportedParameters):
            z_cross_generators(raw, grading)

    def test_rejects_foreign_grading(self):
        _theta, _grading, family = cyclic_setup(sl2, 2)
        other = eigenspace_grading(cyclic_permutation(sl2, 2))
        with pytest.raises(UnsupportedParameters):
            z_cross_generators(family, other)

    def test_non_ggs_family_is_flagged_non_free(self):
        _theta, grading, family = cyclic_setup(sl2, 2)
        repeated = InvariantFamily(
            family.algebra,
            (family.generators[0], family.generators[0]),
            (family.degrees[0], family.degrees[0]),
            (family.eigen_exponents[0], family.eigen_exponents[0]),
        )
        zc = z_cross_generators(repeated, grading)
        assert not zc.free
        assert len(zc) == 4


class TestZFull:
    def test_singular_infinity_keeps_the_set(self):
        for copies in (2, 3):
            _theta, grading, family = cyclic_setup(sl2, copies)
            zc = z_cross_generators(family, grading)
            zf = z_full_generators(zc, build_pencil(grading))
            assert zf.kind == "z_full"
            assert zf.generators == zc.generators
            assert zf.provenance == zc.provenance

    def test_inner_abelian_adjoins_g0_basis(self):
        theta = inner_involution()
        grading = eigenspace_grading(theta)
        family = eigenvector_correction(casimir_family(sl2), theta)
        zc = z_cross_generators(family, grading)
        assert list(zc.provenance) == ["H1 phi-degree 0", "H1 phi-degree 2"]
        zf = z_full_generators(zc, build_pencil(grading))
        assert len(zf) == 2
        assert zf.provenance[0] == "H1 phi-degree 2"
        assert zf.provenance[1].startswith("g_0 basis")
        cert = certify(zf, build_pencil(grading))
        assert cert.all_zero
        assert cert.jacobian_rank_at_seed == 2

    def test_outer_regular_infinity_unhandled(self):
        theta = twisted_cycle(sl2, cartan_involution(sl2), 2)
        grading = eigenspace_grading(theta)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            family = eigenvector_correction(casimir_family(theta.algebra), theta)
        zc = z_cross_generators(family, grading)
        assert len(zc) == zc.expected_count == 4
        with pytest.raises(UnhandledCase):
            z_full_generators(zc, build_pencil(grading))

    def test_trivial_order_returns_the_centre(self):
        theta = identity_automorphism(sl2)
        grading = eigenspace_grading(theta)
        family = eigenvector_correction(casimir_family(sl2), theta)
        zc = z_cross_generators(family, grading)
        assert len(zc) == zc.expected_count == 1
        zf = z_full_generators(zc, build_pencil(grading))
        assert zf.generators == zc.generators


class TestZTilde:
    def test_swap_replaces_the_delta_casimir(self):
        _theta, grading, family = cyclic_setup(sl2, 2)
        zc = z_cross_generators(family, grading)
        pen = build_pencil(grading)
        zf = z_full_generators(zc, pen)
        g0fam = g0_casimir_family(grading, casimir_family(sl2))
        zt = z_tilde_generators(zf, g0fam)
        assert zt.kind == "z_tilde"
        assert len(zt) == 3
        assert zt.provenance[-1] == "g_0 casimir degree 2"
        deg2_full = [F for F in zf.generators if F.total_degree() == 2]
        deg2_tilde = [F for F in zt.generators if F.total_degree() == 2]
        assert poly_span_equal(deg2_full, deg2_tilde)
        cert = certify(zt, pen)
        assert cert.all_zero
        assert cert.jacobian_rank_at_seed == 3

    def test_cycle_rank_five(self):
        _theta, grading, family = cyclic_setup(sl2, 3)
        zc = z_cross_generators(family, grading)
        pen = build_pencil(grading)
        zf = z_full_generators(zc, pen)
        zt = z_tilde_generators(zf, g0_casimir_family(grading, casimir_family(sl2)))
        assert len(zt) == 5
        cert = certify(zt, pen)
        assert cert.all_zero
        assert cert.jacobian_rank_at_seed == 5

    def test_abelian_fixed_algebra_changes_nothing(self):
        theta = inner_involution()
        grading = eigenspace_grading(theta)
        family = eigenvector_correction(casimir_family(sl2), theta)
        zf = z_full_generators(
            z_cross_generators(family, grading), build_pencil(grading)
        )
        g0 = fixed_subalgebra(grading)
        coords = InvariantFamily(
            g0,
            tuple(
                MultiPoly.variable(i, g0.dim, g0.conductor) for i in range(g0.dim)
            ),
            (1,) * g0.dim,
        )
        zt = z_tilde_generators(zf, coords)
        assert zt.generators == zf.generators

    def test_rejects_family_without_embedding(self):
        _theta, grading, family = cyclic_setup(sl2, 2)
        zf = z_full_generators(
            z_cross_generators(family, grading), build_pencil(grading)
        )
        with pytest.raises(UnsupportedParameters):
            z_tilde_generators(zf, casimir_family(sl2))


class TestG0CasimirFamily:
    def test_transport_to_the_diagonal(self):
        _theta, grading, _family = cyclic_setup(sl2, 2)
        fam = g0_casimir_family(grading, casimir_family(sl2))
        assert fam.degrees == (2,)
        assert fam.algebra.dim == 3
        assert fam.generators[0].total_degree() == 2

    def test_rejects_wrong_base(self):
        _theta, grading, _family = cyclic_setup(sl2, 2)
        with pytest.raises(UnsupportedParameters):
            g0_casimir_family(grading, casimir_family(sl3))


class TestCertify:
    def test_swap_certificate(self):
        _theta, grading, family = cyclic_setup(sl2, 2)
        zc = z_cross_generators(family, grading)
        cert = certify(zc, build_pencil(grading), minor_budget=200)
        assert cert.pair_count == 3
        assert cert.all_zero
        assert cert.witnesses == ()
        assert cert.brackets_checked == ("0", "1")
        assert cert.jacobian_rank_at_seed == 3
        assert cert.minor_gcd_constant is True

    def test_cycle_certificate_with_budget(self):
        _theta, grading, family = cyclic_setup(sl2, 3)
        zc = z_cross_generators(family, grading)
        cert = certify(zc, build_pencil(grading), minor_budget=200)
        assert cert.pair_count == 10
        assert cert.all_zero
        assert cert.jacobian_rank_at_seed == 5
        assert cert.minor_gcd_constant is True

    def test_exhausted_budget_reports_unknown(self):
        _theta, grading, family = cyclic_setup(sl2, 2)
        zc = z_cross_generators(family, grading)
        cert = certify(zc, build_pencil(grading), minor_budget=0)
        assert cert.minor_gcd_constant is None

    def test_corrupted_generator_produces_witness(self):
        _theta, grading, family = cyclic_setup(sl2, 2)
        zc = z_cross_generators(family, grading)
        bad = list(zc.generators)
        dim = grading.algebra.dim
        bad[0] = bad[0] + MultiPoly.variable(1, dim, bad[0].conductor) * (
            MultiPoly.variable(3, dim, bad[0].conductor)
        )
        bad_set = ZGeneratorSet(
            zc.algebra,
            grading,
            tuple(bad),
            zc.provenance,
            zc.expected_count,
            "z_cross",
            free=False,
        )
        cert = certify(bad_set, build_pencil(grading))
        assert not cert.all_zero
        assert cert.witnesses
        assert cert.witnesses[0][:2] == (0, 1)

    def test_rejects_other_bracket_carriers(self):
        _theta, grading, family = cyclic_setup(sl2, 2)
        zc = z_cross_generators(family, grading)
        with pytest.raises(UnsupportedParameters):
            certify(zc, grading)


class TestSpanHelpers:
    def test_rank_and_equality(self):
        x0 = MultiPoly.variable(0, 2, 1)
        x1 = MultiPoly.variable(1, 2, 1)
        assert poly_span_rank([x0, x1, x0 + x1]) == 2
        assert poly_span_equal([x0, x1], [x0 + x1, x0 - x1])
        assert not poly_span_equal([x0], [x1])
        assert poly_span_rank([]) == 0

    def test_mixed_variable_counts_rejected(self):
        with pytest.raises(DimensionMismatch):
            poly_span_rank([MultiPoly.variable(0, 2, 1), MultiPoly.variable(0, 3, 1)])


class TestPhiPolarizations:
    def test_linear_formula(self):
        # the k-th polarization of a coordinate has copy-c coefficient
        # zeta^{-c i}/m with i = m-1-k
        for m in (2, 3):
            for a in range(3):
                x = MultiPoly.variable(a, 3, 1)
                pols = phi_polarizations(x, sl2, m)
                assert len(pols) == m
                for k, P in enumerate(pols):
                    i = m - 1 - k
                    want = {}
                    for c in range(m):
                        e = [0] * (3 * m)
                        e[c * 3 + a] = 1
                        want[tuple(e)] = zeta(m, (-c * i) % m) * Fraction(1, m)
                    assert P == MultiPoly(3 * m, P.conductor, want)

    def test_casimir_count_and_span(self):
        C = casimir_family(sl2).generators[0]
        for m in (2, 3):
            pols = phi_polarizations(C, sl2, m)
            assert len(pols) == 2 * (m - 1) + 1
            assert all(pols)
            _theta, grading, family = cyclic_setup(sl2, m)
            zc = z_cross_generators(family, grading)
            comps = [grading.from_adapted_poly(F) for F in zc.generators]
            assert poly_span_equal(pols, comps)

    def test_sl3_count_identity(self):
        fam = casimir_family(sl3)
        pols = []
        for F in fam.generators:
            pols.extend(P for P in phi_polarizations(F, sl3, 2) if P)
        # r + (m-1) b(h) = 2 + 5
        assert len(pols) == 7
        _theta, grading, family = cyclic_setup(sl3, 2)
        zc = z_cross_generators(family, grading)
        comps = [grading.from_adapted_poly(F) for F in zc.generators]
        assert poly_span_equal(pols, comps)

    def test_trivial_order_returns_the_input(self):
        C = casimir_family(sl2).generators[0]
        pols = phi_polarizations(C, sl2, 1)
        assert len(pols) == 1
        assert pols[0] == C

    def test_rejects_inhomogeneous_and_zero(self):
        C = casimir_family(sl2).generators[0]
        with pytest.raises(NonHomogeneous):
            phi_polarizations(C + MultiPoly.variable(0, 3, 1), sl2, 2)
        with pytest.raises(NonHomogeneous):
            phi_polarizations(MultiPoly.zero(3, 1), sl2, 2)

    def test_rejects_wrong_coordinates(self):
        with pytest.raises(DimensionMismatch):
            phi_polarizations(MultiPoly.variable(0, 4, 1), sl2, 2)


class TestGaudin:
    def test_two_point_antisymmetry(self):
        H = gaudin_hamiltonians(sl2, 2, [1, -1])
        assert H[0] == -H[1]
        # 2 H_1 is the split Casimir in the dual bases of the trace form
        omega = MultiPoly(
            6,
            1,
            {
                (1, 0, 0, 0, 0, 1): Fraction(1),
                (0, 1, 0, 0, 1, 0): Fraction(1, 2),
                (0, 0, 1, 1, 0, 0): Fraction(1),
            },
        )
        assert H[0] * Fraction(2) == omega

    def test_three_point_commutativity(self):
        zs = [zeta(3, (-c) % 3) for c in range(3)]
        H = gaudin_hamiltonians(sl2, 3, zs)
        g3 = direct_sum(sl2, 3)
        for i, j in itertools.combinations(range(3), 2):
            assert not poisson_bracket(H[i], H[j], g3.tensor)

    def test_diagonal_invariance(self):
        zs = [zeta(3, (-c) % 3) for c in range(3)]
        H = gaudin_hamiltonians(sl2, 3, zs)
        g3 = direct_sum(sl2, 3)
        for bi in range(3):
            coeffs = [CycloNum.zero(3)] * 9
            for c in range(3):
                coeffs[c * 3 + bi] = CycloNum.one(3)
            x = MultiPoly.linear(coeffs, 3)
            for Hk in H:
                assert not poisson_bracket(Hk, x, g3.tensor)

    def test_compatible_with_z_generators(self):
        # at the roots-of-unity points the Hamiltonians land inside Z
        _theta, grading, family = cyclic_setup(sl2, 3)
        zc = z_cross_generators(family, grading)
        comps = [grading.from_adapted_poly(F) for F in zc.generators]
        zs = [zeta(3, (-c) % 3) for c in range(3)]
        H = gaudin_hamiltonians(sl2, 3, zs)
        g3 = direct_sum(sl2, 3)
        for Hk in H:
            for F in comps:
                assert not poisson_bracket(Hk, F, g3.tensor)
        quad = [F for F in comps if F.total_degree() == 2]
        assert poly_span_rank(quad) == poly_span_rank(quad + H)

    def test_validation(self):
        with pytest.raises(RepeatedParameters):
            gaudin_hamiltonians(sl2, 2, [1, 1])
        with pytest.raises(DimensionMismatch):
            gaudin_hamiltonians(sl2, 2, [1, -1, 2])
        with pytest.raises(UnsupportedParameters):
            gaudin_hamiltonians(sl2, 1, [1])
        with pytest.raises(UnsupportedAlgebra):
            gaudin_hamiltonians(LieAlgebra(2, {}), 2, [1, -1])


class TestRhoSymbol:
    def test_diagonal_at_a_equal_n(self):
        v = rho_symbol(2, [1, 0, 0], 2, [1, -1])
        assert [str(c) for c in v] == ["1", "0", "0", "1", "0", "0"]

    def test_two_points_alternating(self):
        v = rho_symbol(1, [0, 1, 0], 2, [1, -1])
        assert [str(c) for c in v] == ["0", "1", "0", "0", "-1", "0"]

    def test_membership_for_small_powers(self):
        # the canonical points put x t^{-a} inside a single eigenspace;
        # rho_symbol raises internally when the projection leaks
        for n in (2, 3):
            zs = [zeta(n, (-c) % n) for c in range(n)]
            for a in range(1, 3 * n + 1):
                for bi in range(3):
                    x = [0, 0, 0]
                    x[bi] = 1
                    rho_symbol(a, x, n, zs)

    def test_generic_points_skip_the_eigen_check(self):
        v = rho_symbol(1, [1, 0, 0], 2, [1, 2])
        assert [str(c) for c in v] == ["1", "0", "0", "1/2", "0", "0"]

    def test_validation(self):
        with pytest.raises(UnsupportedParameters):
            rho_symbol(0, [1, 0, 0], 2, [1, -1])
        with pytest.raises(DimensionMismatch):
            rho_symbol(1, [1, 0, 0], 2, [1, -1, 2])


class TestTwistedPolarizations:
    def test_cartan_level_one_is_the_top_component(self):
        cart = cartan_involution(sl2)
        tp = twisted_polarizations(sl2, cart, 1)
        assert len(tp) == tp.expected_count == 1
        assert tp.kind == "twisted"
        assert list(tp.provenance) == ["F1[0]"]
        grading = eigenspace_grading(cart)
        C = casimir_family(sl2).generators[0]
        top = top_component(grading.to_adapted_poly(C), grading)
        assert tp.generators[0] == top.poly
        assert index(tp.algebra, method="symbolic").index_estimate == 1

    def test_cartan_level_two(self):
        cart = cartan_involution(sl2)
        tp = twisted_polarizations(sl2, cart, 2)
        assert len(tp) == tp.expected_count == 2
        assert list(tp.provenance) == ["F1[0]", "F1[2]"]
        assert [F.total_degree() for F in tp.generators] == [2, 2]
        cert = certify(tp, tp.algebra)
        assert cert.all_zero
        assert cert.brackets_checked == ("lie",)
        assert cert.jacobian_rank_at_seed == 2
        assert index(tp.algebra, method="symbolic").index_estimate == 2

    def test_identity_reduces_to_takiff_polarizations(self):
        for n in (2, 3):
            tp = twisted_polarizations(sl2, identity_automorphism(sl2), n)
            assert len(tp) == n
            assert list(tp.provenance) == [f"F1[{k}]" for k in range(n)]
            cert = certify(tp, tp.algebra)
            assert cert.all_zero
            assert cert.jacobian_rank_at_seed == n

    def test_identity_matches_polarizations_through_fourier(self):
        n = 2
        tp = twisted_polarizations(sl2, identity_automorphism(sl2), n)
        W = tp.algebra
        rows = []
        for p in range(W.dim):
            k = W.meta["slot_of_var"][p]
            a = W.meta["hvar_of_var"][p]
            row = [CycloNum.zero(n)] * (3 * n)
            for c in range(n):
                row[c * 3 + a] = zeta(n, (-k * c) % n)
            rows.append(row)
        pushed = [F.substitute_linear(rows) for F in tp.generators]
        C = casimir_family(sl2).generators[0]
        pols = phi_polarizations(C, sl2, n)
        assert poly_span_equal(pushed, pols[:n])

    def test_validation(self):
        cycle = cyclic_permutation(sl2, 3)
        with pytest.raises(UnsupportedTheta):
            twisted_polarizations(cycle.algebra, cycle, 1)
        with pytest.raises(UnsupportedParameters):
            twisted_polarizations(sl3, cartan_involution(sl2), 1)
        with pytest.raises(UnsupportedParameters):
            twisted_polarizations(sl2, cartan_involution(sl2), 0)
