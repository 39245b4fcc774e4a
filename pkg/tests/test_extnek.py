"""
Tests for the Ext operator, the vertex operator and the cyclic quiver partition function
"""

from fractions import Fraction

import pytest

from core.extnek.ext import ExtOperator, a_matrix_factor, check_ext_adjoint, check_ext_routes, ext_character
from core.extnek.nekrasov import NekrasovPartitionFunction, check_nekrasov, nekrasov_table, render, size_vectors, x_exponents
from core.extnek.vertex import VertexOperator, check_main_theorem, check_phi_bosons, check_thm43, check_z_tail_commutator
from core.scalars.factors import Q, Q1, Q2, FactorProduct
from core.scalars.monomials import Monomial
from core.session import Session
from core.shapes.partitions import RPartition
from models.schemas import Verdict

M = Monomial.gen("m")
BOX = RPartition.of((1,))
EMPTY = RPartition.empty(1)


@pytest.fixture
def cross_exact() -> Session:
    return Session.build(1, mode="exact", primed=True, masses=1)


@pytest.fixture
def cross_probe() -> Session:
    return Session.build(1, mode="probe", primed=True, masses=1, seed=13)


@pytest.fixture
def vertex(cross_probe) -> VertexOperator:
    return VertexOperator(cross_probe, M)


class TestExtCoefficients:
    def test_vacuum_to_vacuum(self, cross_exact):
        assert cross_exact.fp(a_matrix_factor(EMPTY, EMPTY, M)) == cross_exact.one()

    def test_one_box_source(self, cross_exact):
        ratio = Q * Monomial.gen("up1") / (M * Monomial.gen("u1"))
        expected = cross_exact.fp(FactorProduct(-1, factors={ratio: 1, Q1: -1, Q2: -1}))
        assert ExtOperator(cross_exact, M).entry(EMPTY, BOX) == expected

    def test_character_rank(self):
        lam, lam_p = RPartition.of((2,), ()), RPartition.of((), (1,))
        assert ext_character(lam, lam_p).rank() == 2 * 3

    def test_routes_agree(self, cross_probe):
        results = check_ext_routes(cross_probe, M, max_size=2)
        assert [r.verdict for r in results] == [Verdict.PASS, Verdict.PASS]

    def test_routes_agree_rank_two(self):
        session = Session.build(2, mode="probe", primed=True, masses=1, seed=13)
        results = check_ext_routes(session, M, max_size=1)
        assert all(r.verdict == Verdict.PASS for r in results)

    def test_adjoint_mass(self, cross_probe):
        assert check_ext_adjoint(cross_probe, M, max_size=2).verdict == Verdict.PASS

    def test_modes_shift_size(self, cross_probe):
        column = ExtOperator(cross_probe, M).mode(-1).column(EMPTY)
        assert set(column) == {BOX}


class TestVertexOperator:
    def test_tail_zero_is_identity(self, vertex):
        assert vertex.tail(0).column(BOX) == {BOX: vertex.session.one()}

    def test_z_tail_commutator(self, vertex):
        assert check_z_tail_commutator(vertex, max_size=1, max_k=1).verdict == Verdict.PASS

    def test_ext_against_the_algebra(self, vertex):
        results = check_thm43(vertex, max_size=1, max_k=1)
        assert all(r.verdict == Verdict.PASS for r in results)

    def test_phi_against_bosons(self, vertex):
        assert check_phi_bosons(vertex, max_size=1, max_k=1).verdict == Verdict.PASS

    def test_main_theorem_k1(self, vertex):
        required, single = check_main_theorem(vertex, 1, max_size=1)
        assert required.verdict == Verdict.PASS
        assert single.verdict == Verdict.REPORTED


class TestNekrasov:
    def test_x_exponents_telescope(self):
        assert x_exponents((2, 1, 0)) == (1, 1, -2)
        assert sum(x_exponents((3, 0, 2))) == 0

    def test_size_vectors(self):
        assert size_vectors(2, 1) == [(0, 0), (0, 1), (1, 0), (1, 1)]

    def test_checks_pass_for_one_node(self):
        session = Session.build(1, mode="probe", tori=1, masses=1, seed=3)
        assert all(r.verdict == Verdict.PASS for r in check_nekrasov(session, 1, max_instanton=2))

    def test_checks_pass_for_two_nodes(self):
        session = Session.build(1, mode="probe", tori=2, masses=2, seed=3)
        assert all(r.verdict == Verdict.PASS for r in check_nekrasov(session, 2, max_instanton=1))

    def test_tuple_count(self):
        session = Session.build(2, mode="probe", tori=1, masses=1, seed=3)
        value, count = NekrasovPartitionFunction(session, 1).direct((2,))
        assert count == 5

    def test_mass_count_must_match(self):
        session = Session.build(1, mode="probe", tori=2, masses=2, seed=3)
        with pytest.raises(ValueError):
            NekrasovPartitionFunction(session, 2, masses=[M])

    def test_table_is_sorted_by_instanton_number(self):
        session = Session.build(1, mode="probe", tori=2, masses=2, seed=3)
        terms = nekrasov_table(session, 2, 1, workers=2)
        assert [t.instanton for t in terms] == [0, 1, 1, 2]
        assert terms[0].value == session.canonical(session.one())
        assert all(t.trace_agrees for t in terms)

    def test_specialized_rendering(self):
        session = Session.build(1, mode="exact", tori=1, masses=1)
        value = session.mono(M) * session.rational(2)
        assert render(session, value, {"m": Fraction(1, 4)}) == "1/2"

    def test_specialization_needs_exact(self):
        session = Session.build(1, mode="probe", tori=1, masses=1)
        with pytest.raises(ValueError):
            render(session, session.one(), {"m": Fraction(1)})
