"""
Tests for the scalar backends, monomials and factor products
"""

from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from core.exceptions import NonCancellingPole, PrecisionLoss
from core.scalars.factors import Q, Q1, Q2, FactorProduct, box_prefactor, tau, tau_flipped, zeta
from core.scalars.monomials import Character, GeneratorSet, Monomial
from core.scalars.probe import ProbeContext
from core.session import Session

U1 = Monomial.gen("u1")
U2 = Monomial.gen("u2")

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=20)
exponents = st.integers(min_value=-3, max_value=3)


def monomials() -> st.SearchStrategy:
    return st.builds(
        lambda a, b, c: Monomial({"q1": a, "q2": b, "u1": c}),
        exponents, exponents, exponents,
    )


class TestMonomials:
    def test_q_expands_to_both_parameters(self):
        assert Monomial.q(2) == Monomial({"q1": 2, "q2": 2})

    def test_identity_after_cancellation(self):
        assert (U1 / U1).is_identity
        assert U1 * Monomial.one() == U1

    def test_split_separates_signs(self):
        pos, neg = (U1 * Q1 ** -2).split()
        assert pos == U1
        assert neg == Q1 ** 2

    def test_substitute(self):
        z = Monomial.gen("z1", 2)
        assert z.substitute({"z1": U1 * Q2}) == U1 ** 2 * Q2 ** 2

    @given(monomials(), monomials())
    def test_multiplication_commutes(self, a, b):
        assert a * b == b * a
        assert (a * b) / b == a

    def test_character_cancels_exactly(self):
        c = Character.from_monomials([U1, Q1]) - Character.from_monomials([U1])
        assert list(c.items()) == [(Q1, 1)]
        assert c.rank() == 1

    def test_generator_order(self):
        names = GeneratorSet.for_session(2, primed=True, masses=1, extra=("x",)).names
        assert names == ("q1", "q2", "u1", "u2", "up1", "up2", "m", "x")

    def test_generator_order_with_tori_and_masses(self):
        names = GeneratorSet.for_session(1, masses=2, tori=2).names
        assert names == ("q1", "q2", "u1", "u1_2", "m1", "m2")


class TestProbeBackend:
    @given(fractions, fractions)
    @settings(max_examples=40, deadline=None)
    def test_rationals_are_a_ring_homomorphism(self, a, b):
        session = Session.build(1, mode="probe", seed=3)
        assert session.rational(a) + session.rational(b) == session.rational(a + b)
        assert session.rational(a) * session.rational(b) == session.rational(a * b)

    @given(monomials(), monomials())
    @settings(max_examples=40, deadline=None)
    def test_monomials_multiply(self, a, b):
        session = Session.build(1, mode="probe", seed=5)
        assert session.mono(a) * session.mono(b) == session.mono(a * b)

    def test_residues_depend_only_on_seed_and_name(self):
        a = ProbeContext(seed=9).residues("u1")
        b = ProbeContext(seed=9).residues("u1")
        c = ProbeContext(seed=10).residues("u1")
        assert a == b
        assert a != c

    def test_clone_keeps_values(self, probe1):
        other = probe1.clone()
        assert other.mono(U1).vals == probe1.mono(U1).vals

    def test_canonical_lists_every_residue(self, probe1):
        text = probe1.canonical(probe1.rational(2))
        assert text == "probe(2,2,2)"

    def test_distinct_generators_differ(self, probe2):
        assert not probe2.backend.equal(probe2.mono(U1), probe2.mono(U2))


class TestExactBackend:
    def test_generator_canonical(self, exact1):
        assert exact1.canonical(exact1.mono(U1)) == "u1"

    def test_rational_canonical(self, exact1):
        assert exact1.canonical(exact1.rational(Fraction(-3, 4))) == "-3/4"

    @given(fractions, fractions)
    @settings(max_examples=30, deadline=None)
    def test_field_axioms_on_rationals(self, a, b):
        session = Session.build(1, mode="exact")
        x = session.rational(a) * session.mono(U1) + session.rational(b)
        assert x - x == session.zero()
        assert x * session.one() == x
        if not session.is_zero(x):
            assert x * (session.one() / x) == session.one()

    def test_distributive_law(self, exact1):
        a = exact1.mono(U1)
        b = exact1.backend.one_minus(Q1)
        c = exact1.mono(Q2)
        assert a * (b + c) == a * b + a * c

    def test_one_minus_matches_difference(self, exact1):
        assert exact1.backend.one_minus(U1 * Q1) == exact1.one() - exact1.mono(U1 * Q1)


class TestFactorProducts:
    def test_singular_factor_below_raises(self, exact1):
        with pytest.raises(NonCancellingPole):
            exact1.fp(FactorProduct(factors={Monomial.one(): -1, Q1: 1}))

    def test_singular_factor_above_gives_zero(self, exact1):
        assert exact1.is_zero(exact1.fp(FactorProduct(factors={Monomial.one(): 1, Q1: -1})))

    def test_singular_factors_cancel_literally(self, exact1):
        fp = FactorProduct(factors={Monomial.one(): 1}) * FactorProduct(factors={Monomial.one(): -1, Q1: 1})
        assert fp.evaluable
        assert fp.identity_exponent() == 0
        assert exact1.fp(fp) == exact1.backend.one_minus(Q1)

    def test_zeta_at_one_carries_a_pole(self):
        assert zeta(Monomial.one()).identity_exponent() == -1

    def test_zeta_value(self, exact1):
        x = U1
        expected = (
            exact1.backend.one_minus(Q1 * x) * exact1.backend.one_minus(Q2 * x)
            / (exact1.backend.one_minus(x) * exact1.backend.one_minus(Q * x))
        )
        assert exact1.fp(zeta(x)) == expected

    def test_flipped_tau_agrees_off_the_corner(self, exact2):
        z = Q1 * Q2 ** 2 * U1
        torus = exact2.torus()
        assert exact2.fp(tau(z, torus)) == exact2.fp(tau_flipped(z, torus))

    def test_box_prefactor(self, exact1):
        expected = exact1.backend.one_minus(Q1) * exact1.backend.one_minus(Q2) / exact1.backend.one_minus(Q)
        assert exact1.fp(box_prefactor()) == expected

    @given(monomials(), monomials())
    @settings(max_examples=25, deadline=None)
    def test_probe_evaluation_is_multiplicative(self, a, b):
        assume(not (Q1 * a).is_identity and not (Q2 * b).is_identity)
        session = Session.build(1, mode="probe", seed=17)
        fa = FactorProduct(2, a, {Q1 * a: 1})
        fb = FactorProduct(-1, b, {Q2 * b: -1})
        assert session.fp(fa * fb) == session.fp(fa) * session.fp(fb)

    def test_inverse_round_trip(self, exact1):
        fp = zeta(U1) * FactorProduct(3, Q1)
        assert exact1.fp(fp * fp.inverse()) == exact1.one()


class TestEpsBackend:
    def test_monomial_starts_at_one(self):
        session = Session.build(1, mode="eps", seed=4, eps_order=4)
        series = session.mono(U1)
        assert series.valuation == 0
        assert series.coefficient(0) == 1

    def test_one_minus_leading_order_is_minus_linear_form(self):
        session = Session.build(1, mode="eps", seed=4, eps_order=4)
        m = U1 * Q1 ** 2
        series = session.backend.one_minus(m)
        assert series.valuation == 1
        assert series.coefficient(1) == -session.backend.linear_value(m)

    def test_precision_loss_is_reported(self):
        session = Session.build(1, mode="eps", seed=4, eps_order=3)
        series = session.backend.one_minus(U1)
        with pytest.raises(PrecisionLoss):
            series.coefficient(series.abs_prec)

    def test_shift_moves_valuation(self):
        session = Session.build(1, mode="eps", seed=4, eps_order=3)
        assert session.backend.one_minus(U1).shift(2).valuation == 3

    def test_ratio_of_linear_factors(self):
        session = Session.build(1, mode="eps", seed=4, eps_order=4)
        ratio = session.backend.one_minus(U1) / session.backend.one_minus(Q1)
        expected = session.backend.linear_value(U1) / session.backend.linear_value(Q1)
        assert ratio.valuation == 0
        assert ratio.coefficient(0) == expected


class TestAdditiveBackend:
    def test_monomials_become_one(self):
        session = Session.build(1, mode="additive-exact")
        assert session.mono(U1 * Q1) == session.one()

    def test_linear_factor_becomes_minus_linear_form(self):
        session = Session.build(1, mode="additive-exact")
        value = session.backend.one_minus(U1 * Q1 ** 2)
        expected = -(session.backend.bar("u1") + 2 * session.backend.bar("q1"))
        assert value == expected

    def test_zeta_limit(self):
        session = Session.build(1, mode="additive-exact", extra=("x",))
        backend = session.backend
        x = Monomial.gen("x")
        h1, h2, xb = backend.bar("q1"), backend.bar("q2"), backend.bar("x")
        expected = (xb + h1) * (xb + h2) / (xb * (xb + h1 + h2))
        assert session.fp(zeta(x)) == expected

    def test_identically_vanishing_form_is_a_pole(self):
        session = Session.build(1, mode="additive-exact")
        with pytest.raises(NonCancellingPole):
            session.backend.one_minus(Q1 * Q2 / Q)

    def test_bar_names(self):
        session = Session.build(1, mode="additive-exact", masses=1)
        assert session.canonical(session.backend.bar("q1")) == "hbar1"
        assert session.canonical(session.backend.bar("m")) == "mbar"
