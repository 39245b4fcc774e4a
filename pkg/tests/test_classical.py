"""
Tests for the additive limit: zeta-bar, E-bar, the W-bar currents, Phi-bar locality and the eps bridge
"""

import pytest

from core.classical.bridge import EpsBridge, check_classical_limit, check_w_limit
from core.classical.operators import ClassicalModule, check_classical_module, chibar, taubar, ybar_series, zbar
from core.classical.vertex import ClassicalVertexOperator, check_abar_vacuum, check_locality, check_tail_routes
from core.exceptions import NonCancellingPole
from core.scalars.factors import FactorProduct
from core.scalars.monomials import Monomial
from core.session import Session
from core.shapes.partitions import RPartition
from models.schemas import Verdict

M = Monomial.gen("m")
U1 = Monomial.gen("u1")
Y = Monomial.gen("y")
EMPTY = RPartition.empty(1)
BOX = RPartition.of((1,))
ROW = RPartition.of((2,))
COLUMN = RPartition.of((1, 1))


@pytest.fixture
def additive() -> Session:
    return Session.build(1, mode="additive-exact", primed=True, masses=1, extra=("y",))


@pytest.fixture
def classical(additive) -> ClassicalModule:
    return ClassicalModule(additive)


def all_pass(results) -> bool:
    return all(r.verdict == Verdict.PASS for r in results)


class TestAdditiveScalars:
    def test_chibar_is_linear(self, additive):
        backend = additive.backend
        expected = backend.bar("u1") + additive.rational(2) * backend.bar("q1")
        assert chibar(additive, U1 * Monomial.gen("q1", 2)) == expected

    def test_zbar_closed_form(self, additive):
        backend = additive.backend
        z = backend.bar("u1")
        h1, h2 = backend.bar("q1"), backend.bar("q2")
        assert zbar(additive, z) == (z + h1) * (z + h2) / (z * (z + h1 + h2))

    def test_zbar_pole(self, additive):
        with pytest.raises(NonCancellingPole):
            zbar(additive, additive.zero())

    def test_taubar_rank_one(self, additive):
        z = additive.backend.bar("y")
        assert taubar(additive, z) == additive.backend.bar("u1") - z

    def test_ybar_series_of_one_factor(self, additive):
        series = ybar_series(additive, FactorProduct.one_minus(U1 / Y), 2)
        assert series.coefficient(0) == -additive.backend.bar("u1")
        assert series.coefficient(1) == additive.one()

    def test_needs_an_additive_session(self, exact1):
        with pytest.raises(ValueError):
            ClassicalModule(exact1)


class TestClassicalModule:
    def test_ebar_on_vacuum(self, classical):
        backend = classical.backend
        assert classical.ebar_eigenvalue(EMPTY) == backend.bar("y") - backend.bar("u1")

    def test_ebar_routes_on_one_box(self, classical):
        assert classical.ebar_eigenvalue(BOX) == classical.ebar_direct(BOX)

    def test_wbar_on_vacuum(self, classical):
        session = classical.session
        assert classical.wbar_op(0, 0).entry(EMPTY, EMPTY) == session.one()
        assert classical.wbar_op(1, 0).entry(EMPTY, EMPTY) == -classical.backend.bar("u1")

    def test_wbar_on_one_box_is_polynomial(self, classical):
        backend = classical.backend
        assert classical.wbar_value(0, BOX, BOX) == backend.bar("y") - backend.bar("u1")

    @pytest.mark.parametrize("lam", [BOX, ROW, COLUMN])
    def test_rank_one_zero_mode_is_constant(self, classical, lam):
        assert classical.wbar_op(1, 0).entry(lam, lam) == -classical.backend.bar("u1")

    def test_twist_moves_the_expansion_point(self, classical):
        backend = classical.backend
        expected = -backend.bar("u1") - backend.bar("m")
        assert classical.wbar_op(1, 0, M.inverse()).entry(EMPTY, EMPTY) == expected
        assert classical.wbar_op(1, 0, M.inverse()).entry(BOX, BOX) == expected

    def test_module_checks(self, classical):
        assert all_pass(check_classical_module(classical, max_size=1))

    def test_invalid_indices(self, classical):
        with pytest.raises(ValueError):
            classical.pbar(0)
        with pytest.raises(ValueError):
            classical.wbar_op(2, 0)
        with pytest.raises(ValueError):
            classical.ebar_diag(-1)

    def test_spectral_generator_required(self):
        session = Session.build(1, mode="additive-exact")
        with pytest.raises(ValueError):
            ClassicalModule(session).ebar_factor(EMPTY)


class TestClassicalVertex:
    @pytest.fixture
    def vertex(self) -> ClassicalVertexOperator:
        session = Session.build(1, mode="additive", primed=True, masses=1, extra=("y",), seed=4)
        return ClassicalVertexOperator(session, M)

    def test_abar_vacuum(self, vertex):
        assert check_abar_vacuum(vertex).verdict == Verdict.PASS

    def test_tail_routes(self, vertex):
        assert check_tail_routes(vertex, max_size=1).verdict == Verdict.PASS

    def test_locality(self, vertex):
        assert check_locality(vertex, 1, max_size=2).verdict == Verdict.PASS

    @pytest.mark.parametrize("i", [1, 2])
    def test_locality_rank_two(self, i):
        session = Session.build(2, mode="additive", primed=True, masses=1, extra=("y",), seed=4)
        assert check_locality(ClassicalVertexOperator(session, M), i, max_size=1).verdict == Verdict.PASS


class TestEpsBridge:
    def test_order_must_reach_rank(self):
        with pytest.raises(ValueError):
            EpsBridge(2, eps_order=2)

    def test_classical_limit(self):
        bridge = EpsBridge(1, eps_order=4, seed=5)
        assert all_pass(check_classical_limit(bridge, max_size=1))

    def test_w_limit_rank_two(self):
        bridge = EpsBridge(2, eps_order=4, seed=9)
        assert all_pass(check_w_limit(bridge, max_size=1))
