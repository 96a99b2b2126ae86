from types import SimpleNamespace

import pytest
from fractions import Fraction

from thetapencil.errors import (
    GradingFailure,
    OrderMismatch,
    UnsupportedAlgebra,
    UnsupportedParameters,
    ValidationError,
)
from thetapencil.field import CycloNum, ScalarStream, zeta
from thetapencil import linalg
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
from thetapencil.poisson import MultiPoly, poisson_bracket


def bracket_dict(algebra, i, j):
    return {k: c for k, c in algebra.bracket_basis(i, j)}


class TestClassical:
    def test_sl2_relations(self):
        g = build_classical("sl", 2)
        assert g.dim == 3
        assert g.basis_labels == ("E12", "H1", "E21")
        assert bracket_dict(g, 0, 1) == {0: -2}   # [e,h] = -2e
        assert bracket_dict(g, 0, 2) == {1: 1}    # [e,f] = h
        assert bracket_dict(g, 1, 2) == {2: -2}   # [h,f] = -2f
        assert g.rank == 1

    def test_sl2_trace_form(self):
        g = build_classical("sl", 2)
        expected = [[0, 0, 1], [0, 2, 0], [1, 0, 0]]
        for i in range(3):
            for j in range(3):
                assert g.form[i][j] == expected[i][j]

    def test_sl3(self):
        g = build_classical("sl", 3)
        assert g.dim == 8
        assert g.rank == 2
        assert g.meta["reductive"]

    def test_so3_bracket(self):
        g = build_classical("so", 3)
        assert g.dim == 3
        assert g.basis_labels == ("A12", "A13", "A23")
        assert bracket_dict(g, 0, 1) == {2: -1}   # [A12, A13] = -A23

    def test_so5_form_determinant(self):
        g = build_classical("so", 5)
        assert g.dim == 10
        assert g.rank == 2
        # diagonal form with tr(A_ij^2) = -2, so det = (-2)^10
        assert linalg.det(g.form) == 1024

    def test_sp(self):
        assert build_classical("sp", 2).dim == 3
        g = build_classical("sp", 4)
        assert g.dim == 10
        assert g.rank == 2

    def test_unsupported(self):
        for fam, n in (("sl", 1), ("so", 2), ("sp", 3), ("sp", 0), ("g2", 2)):
            with pytest.raises(UnsupportedParameters):
                build_classical(fam, n)


class TestConstructionChecks:
    def test_jacobi_failure_names_triple(self):
        bad = {(0, 1): [(2, 1)], (0, 2): [(0, 1)]}
        with pytest.raises(ValidationError) as exc:
            LieAlgebra(3, bad)
        msg = str(exc.value)
        assert "b1" in msg and "b3" in msg

    def test_form_invariance_checked(self):
        g = build_classical("sl", 2)
        entries = {k: list(v_and_k(g, k)) for k in g.tensor.entries}
        with pytest.raises(ValidationError):
            LieAlgebra(3, entries, form=linalg.identity(3))

    def test_abelian(self):
        g = LieAlgebra(2, {})
        assert g.bracket_vectors((1, 0), (0, 1)) == (0, 0)


def v_and_k(g, key):
    return [(k, CycloNum(g.conductor, v)) for k, v in g.tensor.entries[key]]


class TestDirectSum:
    def test_two_copies(self):
        h = build_classical("sl", 2)
        g = direct_sum(h, 2)
        assert g.dim == 6
        assert g.rank == 2
        assert g.basis_labels[0] == "E12.1"
        assert g.basis_labels[3] == "E12.2"
        assert g.meta["copy_spans"] == ((0, 3), (3, 6))
        for i in range(3):
            for j in range(3, 6):
                assert not g.bracket_basis(i, j)
        assert bracket_dict(g, 3, 4) == {3: -2}

    def test_single_copy(self):
        h = build_classical("sl", 2)
        g = direct_sum(h, 1)
        assert g.dim == 3
        assert g.tensor.entries == h.tensor.entries


class TestAutomorphism:
    def test_swap(self):
        theta = cyclic_permutation(build_classical("sl", 2), 2)
        assert theta.order_m == 2
        vec = [0] * 6
        vec[0] = 1
        assert theta.apply(vec) == (0, 0, 0, 1, 0, 0)

    def test_cycle_direction(self):
        theta = cyclic_permutation(build_classical("sl", 2), 3)
        assert theta.order_m == 3
        # copy 3 feeds copy 1: theta(x,y,z) = (z,x,y)
        vec = [0] * 9
        vec[6] = 1
        assert theta.apply(vec)[0] == 1

    def test_order_mismatch(self):
        g = direct_sum(build_classical("sl", 2), 2)
        swap = cyclic_permutation(build_classical("sl", 2), 2).matrix
        with pytest.raises(OrderMismatch):
            Automorphism(g, swap, 3)
        with pytest.raises(OrderMismatch):
            Automorphism(g, swap, 1)

    def test_non_automorphism_rejected(self):
        # diag(1,1,-1) has order 2 but kills [e,f] = h
        g = build_classical("sl", 2)
        with pytest.raises(ValidationError):
            Automorphism(g, [[1, 0, 0], [0, 1, 0], [0, 0, -1]], 2)

    def test_cartan_involution(self):
        g = build_classical("sl", 2)
        sigma = cartan_involution(g)
        assert sigma.order_m == 2
        # e -> -f, h -> -h, f -> -e
        assert sigma.apply((1, 0, 0)) == (0, 0, -1)
        assert sigma.apply((0, 1, 0)) == (0, -1, 0)
        with pytest.raises(UnsupportedAlgebra):
            cartan_involution(build_classical("so", 3))

    def test_twisted_cycle_order(self):
        h = build_classical("sl", 2)
        sigma = cartan_involution(h)
        theta = twisted_cycle(h, sigma, 2)
        assert theta.order_m == 4
        assert theta.algebra.dim == 6
        # first transition twists: e in copy 1 lands on -f in copy 2
        assert theta.apply((1, 0, 0, 0, 0, 0)) == (0, 0, 0, 0, 0, -1)
        # second copy shifts plainly back to copy 1
        assert theta.apply((0, 0, 0, 1, 0, 0)) == (1, 0, 0, 0, 0, 0)

    def test_twisted_cycle_single_copy(self):
        h = build_classical("sl", 2)
        sigma = cartan_involution(h)
        theta = twisted_cycle(h, sigma, 1)
        assert theta.order_m == 2
        assert theta.matrix == sigma.matrix

    def test_twisted_cycle_foreign_inner(self):
        h = build_classical("sl", 2)
        sigma = cartan_involution(build_classical("sl", 2))
        with pytest.raises(UnsupportedParameters):
            twisted_cycle(h, sigma, 2)


class TestGrading:
    def test_swap_dims(self):
        theta = cyclic_permutation(build_classical("sl", 2), 2)
        grading = eigenspace_grading(theta)
        assert grading.component_dims() == (3, 3)
        assert grading.grade_of_var == (0, 0, 0, 1, 1, 1)

    def test_cycle_dims(self):
        theta = cyclic_permutation(build_classical("sl", 2), 3)
        grading = eigenspace_grading(theta)
        assert grading.component_dims() == (3, 3, 3)
        assert grading.conductor == 3

    def test_twisted_dims(self):
        h = build_classical("sl", 2)
        theta = twisted_cycle(h, cartan_involution(h), 2)
        grading = eigenspace_grading(theta)
        assert grading.component_dims() == (1, 2, 1, 2)

    def test_identity_edge(self):
        g = build_classical("sl", 2)
        grading = eigenspace_grading(identity_automorphism(g))
        assert grading.component_dims() == (3,)
        assert grading.adapted.tensor.entries == g.tensor.entries

    def test_mirror_symmetry(self):
        h = build_classical("sl", 2)
        for theta in (
            cyclic_permutation(h, 3),
            twisted_cycle(h, cartan_involution(h), 2),
        ):
            dims = eigenspace_grading(theta).component_dims()
            m = theta.order_m
            for j in range(1, m):
                assert dims[j] == dims[m - j]

    def test_grading_failure_on_fake_input(self):
        ab = LieAlgebra(2, {})
        fake = SimpleNamespace(
            algebra=ab,
            order_m=1,
            matrix=(
                (CycloNum.from_rational(1), CycloNum.from_rational(1)),
                (CycloNum.from_rational(0), CycloNum.from_rational(1)),
            ),
        )
        with pytest.raises(GradingFailure):
            eigenspace_grading(fake)

    def test_adapted_bracket_is_poisson_morphism(self):
        theta = cyclic_permutation(build_classical("sl", 2), 2)
        grading = eigenspace_grading(theta)
        g = theta.algebra
        stream = ScalarStream(314)
        for _ in range(3):
            f1 = MultiPoly(6, 1, {tuple(stream.integer(1) % 2 for _ in range(6)): stream.rational(3)})
            f2 = MultiPoly(6, 1, {tuple(stream.integer(1) % 2 for _ in range(6)): stream.rational(3)})
            lhs = grading.to_adapted_poly(poisson_bracket(f1, f2, g.tensor))
            rhs = poisson_bracket(
                grading.to_adapted_poly(f1),
                grading.to_adapted_poly(f2),
                grading.adapted.tensor,
            )
            assert lhs == rhs

    def test_poly_round_trip(self):
        theta = cyclic_permutation(build_classical("sl", 2), 3)
        grading = eigenspace_grading(theta)
        p = MultiPoly(9, 1, {(2, 0, 0, 1, 0, 0, 0, 0, 0): Fraction(3, 2)})
        assert grading.from_adapted_poly(grading.to_adapted_poly(p)) == p

    def test_point_round_trip(self):
        theta = cyclic_permutation(build_classical("sl", 2), 2)
        grading = eigenspace_grading(theta)
        stream = ScalarStream(99)
        xi = stream.point(6, 7)
        eta = grading.point_to_adapted(xi)
        back = grading.point_from_adapted(eta)
        assert tuple(back) == tuple(
            CycloNum.from_rational(x.rational_value(), grading.conductor) if x.is_rational else x
            for x in xi
        )

    def test_adapted_evaluation_consistent(self):
        # evaluating an adapted polynomial at the adapted point matches the
        # original evaluation
        theta = cyclic_permutation(build_classical("sl", 2), 2)
        grading = eigenspace_grading(theta)
        stream = ScalarStream(4242)
        xi = stream.point(6, 5)
        p = MultiPoly(6, 1, {(1, 0, 2, 0, 0, 0): 1, (0, 1, 0, 1, 0, 0): -2})
        assert grading.to_adapted_poly(p).evaluate(
            grading.point_to_adapted(xi)
        ) == p.evaluate(xi)


class TestFixedSubalgebra:
    def test_swap_diagonal(self):
        theta = cyclic_permutation(build_classical("sl", 2), 2)
        fixed = fixed_subalgebra(eigenspace_grading(theta))
        assert fixed.dim == 3
        sl2 = build_classical("sl", 2)
        for (i, j), lin in sl2.tensor.entries.items():
            got = bracket_dict(fixed, i, j)
            want = {k: CycloNum(1, v) for k, v in lin}
            assert got == want

    def test_cycle_sl3(self):
        theta = cyclic_permutation(build_classical("sl", 3), 3)
        fixed = fixed_subalgebra(eigenspace_grading(theta))
        assert fixed.dim == 8

    def test_identity_fixed_is_whole(self):
        g = build_classical("sl", 2)
        fixed = fixed_subalgebra(eigenspace_grading(identity_automorphism(g)))
        assert fixed.dim == 3

    def test_twisted_fixed_is_line(self):
        h = build_classical("sl", 2)
        theta = twisted_cycle(h, cartan_involution(h), 2)
        fixed = fixed_subalgebra(eigenspace_grading(theta))
        assert fixed.dim == 1
        assert not fixed.tensor.entries
