"""
Tests for the fixed-point module: geometry, generator matrix coefficients and the relation checks
"""

import pytest

from core.repk.actions import FixedPointModule
from core.repk.fixed_points import dimension_table, norm_by_products, norm_factor_product, tangent_character
from core.repk.operators import commutator
from core.repk.relations import (
    check_adjoint,
    check_heisenberg,
    check_power_formula,
    check_rel123,
    check_truncation_and_verma,
    check_w_relation_k1,
    elementary_symmetric,
)
from core.scalars.factors import Q1, Q2, FactorProduct
from core.scalars.monomials import Monomial
from core.session import Session
from core.shapes.partitions import RPartition, rpartitions_up_to
from core.shuffle.elements import build_P
from core.verification import IdentityChecker
from models.schemas import Verdict

BOX = RPartition.of((1,))
EMPTY = RPartition.empty(1)


def all_pass(results) -> bool:
    return all(r.verdict == Verdict.PASS for r in results)


class TestGeometry:
    def test_norm_of_one_box(self, module_exact1):
        expected = module_exact1.session.fp(FactorProduct(-1, factors={Q1: -1, Q2: -1}))
        assert module_exact1.norm(BOX) == expected

    def test_norm_of_vacuum(self, module_exact1):
        assert module_exact1.norm(EMPTY) == module_exact1.session.one()

    @pytest.mark.parametrize("lam", rpartitions_up_to(1, 3))
    def test_two_routes_to_the_norm_r1(self, exact1, lam):
        assert exact1.fp(norm_factor_product(lam)) == exact1.fp(norm_by_products(lam))

    def test_two_routes_to_the_norm_r2(self, probe2):
        for lam in rpartitions_up_to(2, 2):
            assert probe2.fp(norm_factor_product(lam)) == probe2.fp(norm_by_products(lam))

    def test_tangent_space_has_dimension_2rn(self):
        for lam in rpartitions_up_to(2, 3):
            assert tangent_character(lam).rank() == 2 * 2 * lam.size

    def test_inner_product_on_basis_vector(self, module_exact1):
        session = module_exact1.session
        vec = {BOX: session.rational(3)}
        assert module_exact1.inner_product(vec, vec) == session.rational(9) * module_exact1.norm(BOX)

    def test_dimension_table(self):
        rows = dimension_table(2, 4)
        assert [row["enumerated"] for row in rows] == [1, 2, 5, 10, 20]
        assert all(row["enumerated"] == row["expected"] for row in rows)


class TestMatrixCoefficients:
    def test_lowering_one_box(self, module_exact1):
        assert module_exact1.p_gen(1, 0).entry(EMPTY, BOX) == module_exact1.session.rational(-1)

    def test_t_right_one_box(self, module_exact1):
        session = module_exact1.session
        assert module_exact1.t_right(1, 1).entry(EMPTY, BOX) == -session.mono(Monomial.gen("u1"))

    def test_raising_changes_size(self, module_probe2):
        column = module_probe2.p_gen(-1, 0).column(RPartition.empty(2))
        assert set(column) == {RPartition.of((1,), ()), RPartition.of((), (1,))}

    def test_w_on_vacuum_is_elementary_symmetric(self, exact2):
        module = FixedPointModule(exact2)
        vacuum = module.vacuum()
        for k in (1, 2):
            expected = elementary_symmetric(exact2, module.torus, k)
            assert module.w_op(0, k).entry(vacuum, vacuum) == expected

    def test_w01_vacuum_is_u1(self, module_exact1):
        session = module_exact1.session
        assert session.canonical(module_exact1.w_op(0, 1).entry(EMPTY, EMPTY)) == "u1"

    def test_e0_eigenvalue_on_vacuum(self, exact2):
        module = FixedPointModule(exact2)
        vacuum = module.vacuum()
        u1, u2 = exact2.mono(Monomial.gen("u1")), exact2.mono(Monomial.gen("u2"))
        assert module.e0_eigenvalue(1, vacuum) == u1 + u2
        assert module.e0_eigenvalue(2, vacuum) == u1 * u2
        assert exact2.is_zero(module.e0_eigenvalue(3, vacuum))

    def test_p0_eigenvalue_on_vacuum(self, exact2):
        module = FixedPointModule(exact2)
        u1, u2 = exact2.mono(Monomial.gen("u1")), exact2.mono(Monomial.gen("u2"))
        assert module.p0_eigenvalue(1, module.vacuum()) == u1 + u2

    def test_lowering_kills_vacuum(self, module_probe1):
        assert module_probe1.p_gen(1, 2).column(EMPTY) == {}

    def test_w_above_rank_vanishes(self, module_probe1):
        for lam in rpartitions_up_to(1, 2):
            assert module_probe1.w_op(0, 2).column(lam) == {}

    def test_bosons_commute_with_the_same_sign(self, module_probe1):
        lhs = commutator(module_probe1.boson(-1), module_probe1.boson(-2))
        assert lhs.column(BOX) == {}

    def test_operators_are_memoized(self, module_probe1):
        assert module_probe1.w_op(1, 1) is module_probe1.w_op(1, 1)

    def test_invalid_indices(self, module_probe1):
        with pytest.raises(ValueError):
            module_probe1.p0_eigenvalue(0, EMPTY)
        with pytest.raises(ValueError):
            module_probe1.boson(0)
        with pytest.raises(ValueError):
            module_probe1.w_op(0, -1)


class TestRelations:
    def test_heisenberg(self, module_probe1):
        assert check_heisenberg(module_probe1, max_size=2, max_n=2).verdict == Verdict.PASS

    def test_heisenberg_rank_two(self, module_probe2):
        assert check_heisenberg(module_probe2, max_size=2, max_n=1).verdict == Verdict.PASS

    def test_rel123(self, module_probe1):
        assert check_rel123(module_probe1, max_size=2, max_d=1, max_e=1).verdict == Verdict.PASS

    def test_w_relation_k1(self, module_probe1):
        assert check_w_relation_k1(module_probe1, 1, max_size=1, radius=1).verdict == Verdict.PASS

    def test_truncation_and_verma(self, module_probe1):
        assert all_pass(check_truncation_and_verma(module_probe1, max_size=2, max_n=1))

    def test_adjoint(self, module_probe1):
        assert check_adjoint(module_probe1, max_size=2, max_k=1, max_d=1).verdict == Verdict.PASS

    def test_adjoint_rank_two(self, module_probe2):
        assert check_adjoint(module_probe2, max_size=2, max_k=2, max_d=2).verdict == Verdict.PASS

    def test_adjoint_weight_counts_variables(self, module_probe2):
        session = module_probe2.session
        rho = build_P(1, 2)
        lam, mu = RPartition.of((1,), ()), RPartition.empty(2)
        lhs = module_probe2.lower_op(rho).entry(mu, lam) * module_probe2.norm(mu)
        rhs = module_probe2.raise_op(rho).entry(lam, mu) * module_probe2.norm(lam)
        assert lhs == session.mono(Monomial.q(-rho.k)) * rhs
        assert lhs != session.mono(Monomial.q(-rho.degree)) * rhs

    def test_power_formula(self, module_probe2):
        result = check_power_formula(module_probe2, max_k=1, max_d=1, max_size=1)
        assert result.verdict == Verdict.PASS
        assert result.checked > 0

    def test_elementary_formula(self, module_probe1):
        result = check_power_formula(module_probe1, max_k=2, max_d=1, max_size=1, elementary=True)
        assert result.verdict == Verdict.PASS

    def test_failure_keeps_a_witness(self, module_probe1):
        session = module_probe1.session
        checker = IdentityChecker(session, "demo")
        checker.compare(session.one(), session.zero(), "one against zero", states=(BOX,))
        checker.compare(session.one(), session.rational(2), "second failure")
        result = checker.result()
        assert result.verdict == Verdict.FAIL
        assert result.checked == 2
        assert result.witness.description == "one against zero"
        assert result.witness.states == [[[1]]]


class TestSessions:
    def test_exact_and_probe_agree_on_a_coefficient(self, exact1, probe1):
        exact_value = FixedPointModule(exact1).w_op(1, 1).entry(EMPTY, BOX)
        probe_value = FixedPointModule(probe1).w_op(1, 1).entry(EMPTY, BOX)
        # both equal -u1 on the one-box state
        assert exact_value == -exact1.mono(Monomial.gen("u1"))
        assert probe_value == -probe1.mono(Monomial.gen("u1"))

    def test_probe_sessions_with_equal_seeds_agree(self):
        a = FixedPointModule(Session.build(1, seed=21)).w_op(0, 1).entry(BOX, BOX)
        b = FixedPointModule(Session.build(1, seed=21)).w_op(0, 1).entry(BOX, BOX)
        assert a.vals == b.vals
