"""
Relation Checks on K
Heisenberg, rank-one rows, W-current relations, pole structure, truncation, adjointness and the power expansion
"""

import logging
from fractions import Fraction
from itertools import combinations
from typing import Any, List, Sequence, Tuple

from core.exceptions import ReconstructionOverflow
from core.repk.actions import FixedPointModule
from core.repk.currents import (
    ProductSeries,
    f_series,
    ordered_coefficient,
    w_current,
    zeta_series,
)
from core.repk.operators import Composed, GradedOperator, Vector, add_into, commutator
from core.scalars.factors import Q, Q1, Q2, FactorProduct, box_prefactor, product, zeta
from core.scalars.monomials import Monomial
from core.shapes.partitions import RPartition
from core.shuffle.combinatorics import elementary_coefficient, ordered_sequences, power_coefficient
from core.shuffle.elements import build_P, build_T
from core.verification import IdentityChecker
from models.schemas import CheckResult

logger = logging.getLogger(__name__)


def _states(module: FixedPointModule, max_size: int) -> List[RPartition]:
    """States of every size up to max_size; any module with states(n) will do."""
    return [s for n in range(max_size + 1) for s in module.states(n)]


def _pairs(module: FixedPointModule, max_size: int) -> List[Tuple[RPartition, RPartition]]:
    states = _states(module, max_size)
    return [(mu, lam) for lam in states for mu in states]


def _bp(n: int) -> FactorProduct:
    """(1 - q1^n)(1 - q2^n)"""
    return FactorProduct(factors={Q1 ** n: 1, Q2 ** n: 1})


def _c(module: FixedPointModule, power: int) -> Any:
    """c^power with c = q^r"""
    return module.session.mono(Monomial.q(module.r * power))


def _compare_operators(checker: IdentityChecker, lhs: GradedOperator, rhs: GradedOperator,
                       states: Sequence[RPartition], description: str) -> None:
    for lam in states:
        checker.compare_vectors(lhs.column(lam), rhs.column(lam), description, source=lam)


# ============= HEISENBERG =============

def check_heisenberg(module: FixedPointModule, max_size: int = 3, max_n: int = 2) -> CheckResult:
    """
    [p_-n, p_m] = delta_nm n (1-q1^n)(1-q2^n)(1-q^rn)/(1-q^n) Id,
    and bosons of equal sign commute.
    """
    session = module.session
    checker = IdentityChecker(session, "heisenberg")
    states = _states(module, max_size)
    for n in range(1, max_n + 1):
        central = session.rational(n) * session.fp(
            _bp(n) * FactorProduct(factors=[(Monomial.q(module.r * n), 1), (Monomial.q(n), -1)])
        )
        for m in range(1, max_n + 1):
            lhs = commutator(module.boson(-n), module.boson(m))
            for lam in states:
                expected = {lam: central} if n == m else {}
                checker.compare_vectors(lhs.column(lam), expected, f"[p_-{n}, p_{m}]", source=lam)
            if m > n:
                for sign in (1, -1):
                    same = commutator(module.boson(sign * n), module.boson(sign * m))
                    for lam in states:
                        checker.compare_vectors(same.column(lam), {}, f"[p_{sign * n}, p_{sign * m}]", source=lam)
    return checker.result()


# ============= ROWS k = 1, 0, -1 =============

def _delta_neg(x: int) -> int:
    return x if x < 0 else 0


def check_rel123(module: FixedPointModule, max_size: int = 3, max_d: int = 2, max_e: int = 2) -> CheckResult:
    """
    With c = q^r and bp(e) = (1-q1^e)(1-q2^e):

    1. [P_{d,1}, P_{se,0}] = s bp(e) P_{d+se,1}
    2. [P_{d,-1}, P_{se,0}] = -s bp(e) P_{d+se,-1} c^(d[d<0] + se[se<0] - (d+se)[d+se<0])
    3. [P_{d,1}, P_{d',-1}] = bp(1)/(1-q^-1) times
       Q_{d+d',0} c^(d'[d'<0]) if d+d' > 0,
       -Q_{d+d',0} c^(-d'[d'>0]) if d+d' < 0,
       (c^(d'[d'<0]) - c^(-d'[d'>0])) Id if d+d' = 0
    """
    session = module.session
    checker = IdentityChecker(session, "rel123")
    states = _states(module, max_size)
    for d in range(-max_d, max_d + 1):
        for e in range(1, max_e + 1):
            for s in (1, -1):
                weight = session.fp(_bp(e))
                lhs = commutator(module.p_gen(d, 1), module.p_gen(s * e, 0))
                rhs = module.p_gen(d + s * e, 1).scaled(session.rational(s) * weight)
                _compare_operators(checker, lhs, rhs, states, f"rel1 d={d} e={s * e}")

                exponent = _delta_neg(d) + _delta_neg(s * e) - _delta_neg(d + s * e)
                lhs = commutator(module.p_gen(d, -1), module.p_gen(s * e, 0))
                rhs = module.p_gen(d + s * e, -1).scaled(-session.rational(s) * weight * _c(module, exponent))
                _compare_operators(checker, lhs, rhs, states, f"rel2 d={d} e={s * e}")

    prefactor = session.fp(FactorProduct(factors={Q1: 1, Q2: 1, Q.inverse(): -1}))
    for d in range(-max_d, max_d + 1):
        for d_prime in range(-max_d, max_d + 1):
            lhs = commutator(module.p_gen(d, 1), module.p_gen(d_prime, -1))
            total = d + d_prime
            if total > 0:
                rhs = module.q_gen(total).scaled(prefactor * _c(module, _delta_neg(d_prime)))
            elif total < 0:
                rhs = module.q_gen(total).scaled(-prefactor * _c(module, -max(d_prime, 0)))
            else:
                central = _c(module, _delta_neg(d_prime)) - _c(module, -max(d_prime, 0))
                rhs = module.e0_diag(0).scaled(prefactor * central)
            _compare_operators(checker, lhs, rhs, states, f"rel3 d={d} d'={d_prime}")
    return checker.result()


# ============= W-CURRENT RELATIONS =============

def _bidegrees(mu: RPartition, lam: RPartition, radius: int) -> List[Tuple[int, int]]:
    shift = lam.size - mu.size
    return [(a, shift - a) for a in range(-radius, radius + 1) if abs(shift - a) <= radius]


def check_w_relation_k1(module: FixedPointModule, k: int, max_size: int = 3, radius: int = 2) -> CheckResult:
    """
    W_k(x) W_1(y) zeta(q^(k-1) y/x) - W_1(y) W_k(x) zeta(x/y)
      = (1-q1)(1-q2)/(1-q) [delta(y/xq) - delta(x/yq^k)] W_{k+1}

    coefficientwise at x^-a y^-b, where the right side is
    (1-q1)(1-q2)/(1-q) (q^-a - q^-kb) W_{a+b,k+1}.
    """
    session = module.session
    checker = IdentityChecker(session, f"w_relation_k1[k={k}]")
    w_k, w_1, w_next = w_current(module, k), w_current(module, 1), w_current(module, k + 1)
    order = 2 * max_size + radius + 2
    left_factor = zeta_series(session, Monomial.q(k - 1), order)
    right_factor = zeta_series(session, Monomial.one(), order)
    prefactor = session.fp(box_prefactor())
    for mu, lam in _pairs(module, max_size):
        for a, b in _bidegrees(mu, lam, radius):
            lhs = ordered_coefficient(session, w_k, w_1, left_factor, mu, lam, a, b)
            lhs = lhs - ordered_coefficient(session, w_1, w_k, right_factor, mu, lam, b, a)
            delta = session.mono(Monomial.q(-a)) - session.mono(Monomial.q(-k * b))
            rhs = prefactor * delta * w_next.mode(a + b).entry(mu, lam)
            checker.compare(lhs, rhs, f"x^{-a} y^{-b}", states=(mu, lam), bidegree=[a, b])
    return checker.result()


def theta(session, s: int) -> Any:
    """(1-q1)(1-q2)/(1-q) zeta(q) ... zeta(q^(s-1))"""
    return session.fp(box_prefactor() * product(zeta(Monomial.q(j)) for j in range(1, s)))


def check_w_relation_full(module: FixedPointModule, k: int, k_prime: int, max_size: int = 2,
                          radius: int = 2, margin: int = 1) -> CheckResult:
    """
    W_k(x) W_k'(y) f_kk'(y/x) - W_k'(y) W_k(x) f_k'k(x/y) = (delta terms)

    Each delta term pairs q^-ia (resp. q^-ib) with a bracket
    [W_{k'-i}(x) W_{k+i}(y) f(y/x)] at y/x = q^i, obtained by rational
    reconstruction of the product series.

    Raises:
        ReconstructionOverflow: a bracket does not truncate in the window
    """
    session = module.session
    checker = IdentityChecker(session, f"w_relation[{k},{k_prime}]")
    w_k, w_kp = w_current(module, k), w_current(module, k_prime)
    order = 2 * max_size + radius + 2
    forward = f_series(session, k, k_prime, order)
    backward = f_series(session, k_prime, k, order)
    for mu, lam in _pairs(module, max_size):
        first_terms, second_terms = [], []
        for i in range(max(0, k_prime - k) + 1, k_prime + 1):
            bracket = ProductSeries(session, module, k_prime - i, k + i, mu, lam, margin)
            first_terms.append((i, bracket.value_at(Monomial.q(i)) * theta(session, min(i, k - k_prime + i))))
        for i in range(max(0, k - k_prime) + 1, k + 1):
            bracket = ProductSeries(session, module, k - i, k_prime + i, mu, lam, margin)
            second_terms.append((i, bracket.value_at(Monomial.q(i)) * theta(session, min(i, k_prime - k + i))))
        for a, b in _bidegrees(mu, lam, radius):
            lhs = ordered_coefficient(session, w_k, w_kp, forward, mu, lam, a, b)
            lhs = lhs - ordered_coefficient(session, w_kp, w_k, backward, mu, lam, b, a)
            rhs = session.zero()
            for i, value in first_terms:
                rhs = rhs + session.mono(Monomial.q(-i * a)) * value
            for i, value in second_terms:
                rhs = rhs - session.mono(Monomial.q(-i * b)) * value
            checker.compare(lhs, rhs, f"x^{-a} y^{-b}", states=(mu, lam), bidegree=[a, b])
    return checker.result()


def check_pole_structure(module: FixedPointModule, k: int, k_prime: int, max_size: int = 2, margin: int = 1) -> CheckResult:
    """The product series times its certified denominator truncates for every pair of states."""
    checker = IdentityChecker(module.session, f"pole_structure[{k},{k_prime}]")
    for mu, lam in _pairs(module, max_size):
        try:
            ProductSeries(module.session, module, k, k_prime, mu, lam, margin).numerator()
            truncates = True
        except ReconstructionOverflow as e:
            logger.debug(f"pole structure: {e}")
            truncates = False
        checker.require(truncates, f"W_{k} W_{k_prime} does not truncate", states=(mu, lam))
    return checker.result()


# ============= TRUNCATION AND VERMA =============

def elementary_symmetric(session, monomials: Sequence[Monomial], k: int) -> Any:
    total = session.zero()
    for subset in combinations(monomials, k):
        term = Monomial.one()
        for m in subset:
            term = term * m
        total = total + session.mono(term)
    return total


def _w_top_by_bosons(module: FixedPointModule, d: int, lam: RPartition) -> Vector:
    """u sum_{m - n = d} h_-n h_m |lam> with h_0 = 1"""
    session = module.session
    out: Vector = {}
    for m in range(max(d, 0), lam.size + 1):
        n = m - d
        vec: Vector = {lam: session.one()}
        if m:
            vec = module.h_boson(m).apply(vec)
        if n and vec:
            vec = module.h_boson(-n).apply(vec)
        add_into(out, vec, session.mono(session.torus_product(module.tag)), module.backend)
    return out


def check_truncation_and_verma(module: FixedPointModule, max_size: int = 3, max_n: int = 2) -> List[CheckResult]:
    """
    1. W_{d,k} = 0 for r < k <= r + 2
    2. W_r(x) = u [sum h_-n x^n][sum h_n x^-n]
    3. W_{d,k}|0> = 0 for d > 0 and W_{0,k}|0> = e_k(u)|0>
    4. [W_k(x), p_-n] and [W_k(x), p_n] are multiples of W_k(x) shifted by x^-+n
    """
    session = module.session
    r = module.r
    states = _states(module, max_size)
    empty = module.vacuum()

    vanishing = IdentityChecker(session, "truncation")
    for k in range(r + 1, r + 3):
        for lam in states:
            for d in range(lam.size - max_size, lam.size + 1):
                vanishing.compare_vectors(module.w_op(d, k).column(lam), {}, f"W[{d},{k}]", source=lam)

    top = IdentityChecker(session, "top_current")
    for lam in states:
        for d in range(lam.size - max_size, lam.size + 1):
            top.compare_vectors(module.w_op(d, r).column(lam), _w_top_by_bosons(module, d, lam), f"W[{d},{r}]", source=lam)

    verma = IdentityChecker(session, "verma")
    for k in range(1, r + 1):
        expected = {empty: elementary_symmetric(session, module.torus, k)}
        verma.compare_vectors(module.w_op(0, k).column(empty), expected, f"W[0,{k}]|0>", source=empty)
        for d in range(1, max_size + 1):
            verma.compare_vectors(module.w_op(d, k).column(empty), {}, f"W[{d},{k}]|0>", source=empty)

    bosons = IdentityChecker(session, "w_boson_commutators")
    for k in range(1, r + 1):
        for n in range(1, max_n + 1):
            ratio = FactorProduct(factors={Monomial.q(n): -1})
            minus = -session.fp(_bp(n) * FactorProduct(factors={Monomial.q(k * n): 1}) * ratio)
            # q^-kn - 1 = -(1 - q^-kn)
            plus = -session.fp(_bp(n) * FactorProduct(factors={Monomial.q(-k * n): 1}) * ratio) * _c(module, n)
            for lam in states:
                for d in range(lam.size - max_size, lam.size + 1):
                    lhs = commutator(module.w_op(d, k), module.boson(-n))
                    bosons.compare_vectors(lhs.column(lam), module.w_op(d - n, k).scaled(minus).column(lam),
                                           f"[W[{d},{k}], p_-{n}]", source=lam)
                    lhs = commutator(module.w_op(d, k), module.boson(n))
                    bosons.compare_vectors(lhs.column(lam), module.w_op(d + n, k).scaled(plus).column(lam),
                                           f"[W[{d},{k}], p_{n}]", source=lam)
    return [vanishing.result(), top.result(), verma.result(), bosons.result()]


# ============= ADJOINTNESS =============

def check_adjoint(module: FixedPointModule, max_size: int = 3, max_k: int = 2, max_d: int = 2) -> CheckResult:
    """
    (R^-> a, b) = q^((1-r) k) (a, R^<- b) for R of k variables,
    over R = P of k <= max_k, |d| <= max_d and R = T_{d,k} with d, k >= 1.
    """
    session = module.session
    checker = IdentityChecker(session, "adjoint")
    elements = [build_P(k, d) for k in range(1, max_k + 1) for d in range(-max_d, max_d + 1)]
    elements += [build_T(d, k) for d in range(1, max_d + 1) for k in range(1, max_k + 1)]
    states = _states(module, max_size)
    for rho in elements:
        weight = session.mono(Monomial.q((1 - module.r) * rho.k))
        lower, upper = module.lower_op(rho), module.raise_op(rho)
        for lam in states:
            for mu in states:
                if lam.size - mu.size != rho.k:
                    continue
                lhs = lower.entry(mu, lam) * module.norm(mu)
                rhs = weight * upper.entry(lam, mu) * module.norm(lam)
                checker.compare(lhs, rhs, f"adjoint of {rho.label}", states=(lam, mu))
    return checker.result()


# ============= POWER AND ELEMENTARY EXPANSIONS =============

def _expansion_column(module: FixedPointModule, d: int, k: int, lam: RPartition, elementary: bool) -> Vector:
    session = module.session
    generator = module.e_gen if elementary else module.p_gen
    coefficient = elementary_coefficient if elementary else power_coefficient
    out: Vector = {}
    for v in ordered_sequences(k, d, lam.size, strict=elementary):
        rational, q_power = coefficient(v)
        op = Composed([generator(d_i, k_i) for d_i, k_i in v])
        scale = session.rational(Fraction(rational)) * session.mono(q_power)
        add_into(out, op.column(lam), scale, module.backend)
    return out


def check_power_formula(module: FixedPointModule, max_k: int = 2, max_d: int = 2, max_size: int = 2,
                        elementary: bool = False) -> CheckResult:
    """
    W_{d,k} = sum_v (-1)^(k-t) q^alpha(v) / z_v P_v over slope-ordered v summing to (d, k);
    with elementary, sum_v (-1)^(sum k_i - n_i) q^alpha(v) E_v over strictly ordered v.
    """
    name = "elementary_formula" if elementary else "power_formula"
    checker = IdentityChecker(module.session, name)
    for k in range(1, max_k + 1):
        for d in range(-max_d, max_d + 1):
            for lam in _states(module, max_size):
                if lam.size - d > max_size:
                    continue
                expected = module.w_op(d, k).column(lam)
                checker.compare_vectors(_expansion_column(module, d, k, lam, elementary), expected,
                                        f"W[{d},{k}]", source=lam, bidegree=[d, k])
    return checker.result()
