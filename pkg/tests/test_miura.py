"""
Tests for the colored Fock space and the free-field W-currents
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.miura.fock import FockMonomial, FockSpace, enumerate_fock, fock_dimension_table
from core.miura.realization import (
    MiuraModule,
    check_boson_table,
    check_fock_dimensions,
    check_glsl_map,
    check_lambda_symmetry,
    check_miura_relations,
    check_mish,
)
from core.repk.actions import FixedPointModule
from core.repk.relations import check_heisenberg, check_truncation_and_verma
from core.scalars.factors import Q1, Q2, FactorProduct
from core.session import Session
from core.shapes.partitions import count_rpartitions
from models.schemas import Verdict

B1 = FockMonomial(((1, 1),))


@pytest.fixture
def miura1(probe1) -> MiuraModule:
    return MiuraModule(probe1)


@pytest.fixture
def miura2(probe2) -> MiuraModule:
    return MiuraModule(probe2)


def all_pass(results) -> bool:
    return all(r.verdict == Verdict.PASS for r in results)


class TestFockBasis:
    def test_modes_are_sorted(self):
        assert FockMonomial(((2, 1), (1, 3))).modes == ((1, 3), (2, 1))

    def test_rejects_annihilation_modes(self):
        with pytest.raises(ValueError):
            FockMonomial(((1, 0),))

    def test_mode_bookkeeping(self):
        state = B1.with_mode(1, 1).with_mode(2, 2)
        assert state.size == 4
        assert state.multiplicity(1, 1) == 2
        assert state.without_mode(2, 2) == FockMonomial(((1, 1), (1, 1)))

    def test_to_json(self):
        assert FockMonomial(((1, 2), (2, 1))).to_json() == [[1, 2], [2, 1]]

    @given(st.integers(min_value=1, max_value=3), st.integers(min_value=0, max_value=5))
    @settings(max_examples=20, deadline=None)
    def test_graded_dimension_counts_rpartitions(self, r, n):
        assert len(enumerate_fock(r, n)) == count_rpartitions(r, n)

    def test_dimension_table(self):
        rows = fock_dimension_table(2, 3)
        assert [row["fock"] for row in rows] == [1, 2, 5, 10]

    def test_dimension_check(self, probe2):
        assert check_fock_dimensions(probe2, max_degree=5).verdict == Verdict.PASS


class TestHeisenbergAction:
    def test_pairing_vanishes_below_the_diagonal(self, exact2):
        assert exact2.is_zero(FockSpace(exact2).pairing(2, 1, 1))

    def test_pairing_on_the_diagonal(self, exact2):
        value = FockSpace(exact2).pairing(1, 1, 2)
        assert value == exact2.rational(2) * exact2.fp(FactorProduct(factors={Q1 ** 2: 1, Q2 ** 2: 1}))

    def test_annihilator_sign(self, exact1):
        space = FockSpace(exact1)
        expected = -exact1.fp(FactorProduct(factors={Q1: 1, Q2: 1}))
        assert space.b_mode(1, 1).column(B1) == {space.vacuum(): expected}

    def test_annihilators_kill_the_vacuum(self, miura2):
        assert miura2.boson(1).column(miura2.vacuum()) == {}

    def test_zero_modes_are_rejected(self, miura1):
        with pytest.raises(ValueError):
            miura1.b_action(1, 0, miura1.vacuum())
        with pytest.raises(ValueError):
            miura1.boson(0)
        with pytest.raises(ValueError):
            miura1.e0_diag(1)

    def test_boson_table(self, miura2):
        assert check_boson_table(miura2, max_size=2, max_n=1).verdict == Verdict.PASS

    def test_heisenberg_on_the_free_field(self, miura2):
        assert check_heisenberg(miura2, max_size=2, max_n=1).verdict == Verdict.PASS


class TestMiuraCurrents:
    def test_w_past_rank_is_zero(self, miura2):
        assert miura2.w_op(0, 3).column(miura2.vacuum()) == {}

    def test_w0_is_identity(self, miura1):
        state = B1
        assert miura1.w_op(0, 0).column(state) == {state: miura1.session.one()}

    def test_vacuum_eigenvalues(self, exact2):
        module = MiuraModule(exact2)
        vacuum = module.vacuum()
        u1, u2 = exact2.mono(module.torus[0]), exact2.mono(module.torus[1])
        assert module.w_op(0, 1).entry(vacuum, vacuum) == u1 + u2
        assert module.w_op(0, 2).entry(vacuum, vacuum) == u1 * u2

    def test_truncation_and_verma(self, miura2):
        assert all_pass(check_truncation_and_verma(miura2, max_size=1, max_n=1))

    def test_lambda_symmetry(self, miura1):
        assert check_lambda_symmetry(miura1, max_size=1, radius=1).verdict == Verdict.PASS

    def test_mish_r1(self, miura1):
        results = check_mish(miura1, max_size=2)
        assert len(results) == 2
        assert all_pass(results)

    def test_mish_r2(self, miura2):
        assert all_pass(check_mish(miura2, max_size=1))

    def test_relations_r1(self, miura1):
        assert all_pass(check_miura_relations(miura1, max_size=1, radius=1, full_max_size=1))

    def test_glsl_map(self, miura2):
        assert all_pass(check_glsl_map(miura2, max_size=1, max_n=1))


class TestAgainstFixedPoints:
    def test_same_vacuum_eigenvalue(self):
        session = Session.build(2, mode="probe", seed=19)
        fock, fixed = MiuraModule(session), FixedPointModule(session)
        assert fock.w_op(0, 2).entry(fock.vacuum(), fock.vacuum()) == fixed.w_op(0, 2).entry(fixed.vacuum(), fixed.vacuum())
