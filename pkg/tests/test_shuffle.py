"""
Tests for shuffle elements, the wheel conditions, the evaluation functionals and broken paths
"""

import pytest

from core.exceptions import CapExceeded, NonCancellingPole
from core.repk.actions import FixedPointModule
from core.scalars.factors import Q2, FactorProduct
from core.scalars.monomials import Monomial
from core.session import Session
from core.shuffle.combinatorics import alpha_v, broken_path_identity, convex_paths, lattice_gcd, z_v
from core.shuffle.elements import LaurentZ, build, build_T, z_names, zvar
from core.shuffle.exponentials import check_hq_series, check_vertical_series
from core.shuffle.functionals import (
    check_phi_table,
    check_phi_x,
    check_pseudo_multiplicativity,
    phi_expected,
    phi_functional,
    phi_x,
    phi_x_expected,
)
from core.shuffle.rational import BodyTerm, SymRational, shuffle_mul, wheel_check
from models.schemas import Verdict


def element(family: str, first: int, second: int) -> SymRational:
    return SymRational.from_presentation(build(family, first, second))


class TestBuilders:
    def test_degree_of_p(self):
        assert build("P", 2, 3).degree == 3
        assert build("H", 3, -2).degree == -2

    def test_t_has_d_variables(self):
        t = build_T(3, 2)
        assert t.k == 3
        assert t.degree == 2

    def test_rho_of_h_is_a_monomial(self):
        session = Session.build(1, mode="exact", extra=z_names(2))
        rho = build("H", 2, 1).rho_value(session.backend, [zvar(1), zvar(2)])
        assert rho == session.mono(zvar(2))

    @pytest.mark.parametrize("family,first,second", [("X", 1, 1), ("P", 0, 1), ("T", 0, 2)])
    def test_rejects_bad_arguments(self, family, first, second):
        with pytest.raises(ValueError):
            build(family, first, second)


class TestWheelConditions:
    @pytest.mark.parametrize("family", ["P", "H", "E", "Q"])
    @pytest.mark.parametrize("d", [-1, 0, 1, 2])
    def test_three_variable_families(self, family, d):
        session = Session.build(1, mode="probe", seed=2, extra=z_names(3))
        assert wheel_check(element(family, 3, d), session.backend)

    def test_t_family(self):
        session = Session.build(1, mode="probe", seed=2, extra=z_names(3))
        assert wheel_check(SymRational.from_presentation(build_T(3, 1)), session.backend)

    def test_fewer_than_three_variables_is_vacuous(self):
        session = Session.build(1, mode="probe", seed=2, extra=z_names(2))
        assert wheel_check(element("P", 2, 1), session.backend)

    @pytest.mark.parametrize("family", ["P", "H", "E", "Q"])
    @pytest.mark.parametrize("d", [-1, 0, 1])
    def test_four_variable_families(self, family, d):
        session = Session.build(1, mode="probe", seed=2, extra=z_names(4))
        assert wheel_check(element(family, 4, d), session.backend)

    def test_t_family_in_four_variables(self):
        session = Session.build(1, mode="probe", seed=2, extra=z_names(4))
        assert wheel_check(SymRational.from_presentation(build_T(4, 1)), session.backend)

    def test_constant_numerator_breaks_the_wheel(self):
        session = Session.build(1, mode="probe", seed=2, extra=z_names(3))
        assert not wheel_check(SymRational.from_numerator(3, LaurentZ.constant(3, 1)), session.backend)


class TestEvaluationLimits:
    def test_poles_of_two_permutations_cancel(self):
        session = Session.build(1, mode="exact", extra=z_names(2))
        body = BodyTerm(LaurentZ.constant(2, 1), FactorProduct.one_minus(zvar(1) / zvar(2), -1))
        r = SymRational(2, [body])
        assert r.evaluate(session.backend, [zvar(1), zvar(1)]) == session.one()

    def test_surviving_pole_is_reported(self):
        session = Session.build(1, mode="exact", extra=("x",) + z_names(1))
        x = Monomial.gen("x")
        r = SymRational(1, [BodyTerm(LaurentZ.constant(1, 1), FactorProduct.one_minus(zvar(1) / x, -1))])
        with pytest.raises(NonCancellingPole):
            r.evaluate(session.backend, [x])

    def test_swapped_point_gives_the_same_value(self):
        session = Session.build(1, mode="exact", extra=z_names(2))
        r = element("P", 2, 1)
        assert r.evaluate(session.backend, [zvar(2), zvar(1)]) == r.evaluate_generic(session.backend)

class TestShuffleProduct:
    def test_product_is_symmetric(self):
        session = Session.build(1, mode="probe", seed=8, extra=z_names(2))
        product = shuffle_mul(element("P", 1, 0), element("P", 1, 1))
        assert product.k == 2
        assert product.is_symmetric(session.backend)

    def test_cap(self):
        with pytest.raises(CapExceeded):
            shuffle_mul(SymRational.monomial(0), SymRational.monomial(1), cap=1)

    def test_unit_is_neutral(self):
        session = Session.build(1, mode="probe", seed=8, extra=z_names(1))
        z = SymRational.monomial(2)
        assert shuffle_mul(SymRational.unit(), z).equals(z, session.backend)

    def test_adding_different_arity_fails(self):
        with pytest.raises(ValueError):
            SymRational.monomial(0) + element("P", 2, 0)


class TestPhi:
    def test_table_on_small_rays(self, exact1):
        result = check_phi_table(exact1, max_n=2)
        assert result.verdict == Verdict.PASS
        assert result.checked == 3 * 2 * 4

    def test_table_through_three_steps(self, exact1):
        result = check_phi_table(exact1, max_n=3)
        assert result.verdict == Verdict.PASS
        assert result.checked == 3 * 3 * 4

    @pytest.mark.parametrize("family", ["P", "H", "E", "Q"])
    def test_phi_in_three_variables(self, exact1, family):
        value = phi_functional(element(family, 3, 3), exact1.backend, 3, 1, 1)
        assert value == exact1.fp(phi_expected(family, 3))

    def test_phi_of_h(self, exact1):
        value = phi_functional(element("H", 2, 0), exact1.backend, 2, 1, 0)
        assert value == exact1.fp(phi_expected("H", 2))
        assert value == exact1.backend.one_minus(Q2)

    def test_phi_needs_matching_arity(self, exact1):
        with pytest.raises(ValueError):
            phi_functional(element("P", 2, 0), exact1.backend, 1, 1, 0)

    def test_phi_x_closed_form(self):
        session = Session.build(1, mode="exact", extra=("x",))
        assert check_phi_x(session, max_k=2, max_d=2).verdict == Verdict.PASS

    @pytest.mark.parametrize("d", [-3, -1, 0, 2, 3])
    def test_phi_x_in_three_variables(self, d):
        session = Session.build(1, mode="exact", extra=("x",))
        assert phi_x(element("P", 3, d), session.backend) == session.fp(phi_x_expected(3, d))

    def test_phi_x_window(self):
        session = Session.build(1, mode="probe", seed=6, extra=("x",))
        result = check_phi_x(session, max_k=3, max_d=3)
        assert result.verdict == Verdict.PASS
        assert result.checked == 3 * 7

    def test_pseudo_multiplicativity_on_mixed_arities(self):
        session = Session.build(1, mode="exact", extra=("x",))
        pairs = [
            (("P", 1, 0), ("P", 1, 1)),
            (("P", 1, -1), ("P", 2, 1)),
            (("P", 2, 1), ("P", 1, 0)),
        ]
        assert check_pseudo_multiplicativity(session, pairs).verdict == Verdict.PASS

    def test_phi_x_of_single_variable(self):
        session = Session.build(1, mode="exact", extra=("x",))
        x = Monomial.gen("x")
        value = phi_x(element("P", 1, 2), session.backend)
        assert value == session.fp(phi_x_expected(1, 2))
        assert value == session.mono(x ** -2)

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            phi_expected("T", 1)


class TestExponentialFamilies:
    @pytest.mark.parametrize("ray", [(1, 0), (1, 1)])
    def test_newton_recursions(self, ray):
        session = Session.build(1, mode="probe", seed=5, extra=z_names(2))
        result = check_hq_series(session, *ray, order=2)
        assert result.verdict == Verdict.PASS
        assert result.checked == 6

    def test_non_primitive_ray(self):
        session = Session.build(1, mode="probe", seed=5, extra=z_names(2))
        with pytest.raises(ValueError):
            check_hq_series(session, 2, 2)

    def test_vertical_ray(self, probe2):
        result = check_vertical_series(FixedPointModule(probe2), order=2, max_size=1)
        assert result.verdict == Verdict.PASS
        assert result.checked == 3 * (3 * 2 + 2)

    def test_vertical_ray_exact(self, exact1):
        assert check_vertical_series(FixedPointModule(exact1), order=3, max_size=2).verdict == Verdict.PASS


class TestLatticePaths:
    def test_gcd_convention(self):
        assert lattice_gcd(0, 3) == 3
        assert lattice_gcd(4, 6) == 2

    def test_z_v_counts_repeats(self):
        assert z_v([(1, 1), (1, 1)]) == 2
        assert z_v([(0, 2)]) == 2

    def test_alpha_of_a_single_point(self):
        assert alpha_v([(1, 1)]) == 0

    def test_paths_end_at_target(self):
        for path in convex_paths(2, 3):
            assert sum(p[0] for p in path) == 2
            assert sum(p[1] for p in path) == 3

    @pytest.mark.parametrize("d", [1, 2, 3])
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_broken_path_identity(self, d, k):
        assert broken_path_identity(d, k)

    def test_broken_path_rejects_zero(self):
        with pytest.raises(ValueError):
            broken_path_identity(0, 1)
