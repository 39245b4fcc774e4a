"""
Miura Realization
W-currents as normal-ordered elementary symmetric functions of the Lambda^i, and the relation checks run against them
"""

import logging
from itertools import combinations
from typing import Any, List

from core.miura.fock import FockSpace, fock_dimension_table
from core.miura.vertex import NormalOrderedExponential, miura_product, total_boson_exponential
from core.repk.currents import Current, ordered_coefficient, zeta_series
from core.repk.operators import Composed, GradedOperator, ZeroOperator, commutator, linear_combination
from core.repk.relations import (
    check_heisenberg,
    check_pole_structure,
    check_truncation_and_verma,
    check_w_relation_full,
    check_w_relation_k1,
)
from core.scalars.factors import Q1, Q2, FactorProduct
from core.scalars.monomials import Monomial
from core.verification import IdentityChecker
from models.schemas import CheckResult

logger = logging.getLogger(__name__)


class MiuraModule(FockSpace):
    """
    The Fock space with W_k(x) = sum_{i_1 < ... < i_k} :Lambda^{i_1}(x) ... Lambda^{i_k}(x/q^{k-1}):

    Exposes the same operator names as the fixed-point module, so the
    relation checks written for K run unchanged on the free-field side.
    """

    def __init__(self, session, tag: str = "u"):
        super().__init__(session, tag)
        self._products = {
            colors: miura_product(self, colors)
            for k in range(1, self.r + 1)
            for colors in combinations(range(1, self.r + 1), k)
        }

    def lambda_current(self, color: int) -> Current:
        return self._products[(color,)].current

    def w_op(self, d: int, k: int) -> GradedOperator:
        """W_{d,k}: identity at k = 0, zero past k = r."""
        if k == 0:
            return self.e0_diag(0) if d == 0 else ZeroOperator(self.session, d, self.tag, self.tag, f"W[{d},0]")
        if k > self.r:
            return ZeroOperator(self.session, d, self.tag, self.tag, f"W[{d},{k}]")

        def factory() -> GradedOperator:
            terms = [(self.session.one(), self._products[colors].mode(d)) for colors in combinations(range(1, self.r + 1), k)]
            return linear_combination(self.session, terms, d, f"W[{d},{k}]", self.tag, self.tag)

        return self._cached(("w", d, k), factory)


def _bp(n: int) -> FactorProduct:
    return FactorProduct(factors={Q1 ** n: 1, Q2 ** n: 1})


# ============= BOSONS =============

def check_boson_table(module: MiuraModule, max_size: int = 3, max_n: int = 2) -> CheckResult:
    """
    [b^i_n, p_-n] = -n (1-q1^n)(1-q2^n) and [b^i_-n, p_n] = n (1-q1^n)(1-q2^n) q^{n(r-1)},
    other pairs of modes commuting.
    """
    session = module.session
    checker = IdentityChecker(session, "boson_table")
    states = [s for n in range(max_size + 1) for s in module.states(n)]
    identity = module.e0_diag(0)
    for n in range(1, max_n + 1):
        base = session.rational(n) * session.fp(_bp(n))
        for i in range(1, module.r + 1):
            for m in range(1, max_n + 1):
                lhs = commutator(module.b_mode(i, m), module.boson(-n))
                rhs = identity.scaled(-base) if m == n else None
                for s in states:
                    checker.compare_vectors(lhs.column(s), rhs.column(s) if rhs is not None else {}, f"[b{i}_{m}, p_-{n}]", source=s)
                lhs = commutator(module.b_mode(i, -m), module.boson(n))
                rhs = identity.scaled(base * session.mono(Monomial.q(n * (module.r - 1)))) if m == n else None
                for s in states:
                    checker.compare_vectors(lhs.column(s), rhs.column(s) if rhs is not None else {}, f"[b{i}_-{m}, p_{n}]", source=s)
    return checker.result()


def check_lambda_symmetry(module: MiuraModule, max_size: int = 2, radius: int = 2) -> CheckResult:
    """Lambda^i(x) Lambda^i(y) zeta(y/x) = Lambda^i(y) Lambda^i(x) zeta(x/y) at every coefficient."""
    session = module.session
    checker = IdentityChecker(session, "lambda_symmetry")
    states = [s for n in range(max_size + 1) for s in module.states(n)]
    factor = zeta_series(session, Monomial.one(), 2 * max_size + radius + 2)
    for i in range(1, module.r + 1):
        current = module.lambda_current(i)
        for lam in states:
            for mu in states:
                shift = lam.size - mu.size
                for a in range(-radius, radius + 1):
                    b = shift - a
                    if abs(b) > radius:
                        continue
                    lhs = ordered_coefficient(session, current, current, factor, mu, lam, a, b)
                    rhs = ordered_coefficient(session, current, current, factor, mu, lam, b, a)
                    checker.compare(lhs, rhs, f"Lambda{i} x^{-a} y^{-b}", states=(mu, lam), bidegree=[a, b])
    return checker.result()


def check_fock_dimensions(session, max_degree: int = 6) -> CheckResult:
    """The graded dimensions of the colored Fock space count r-partitions."""
    checker = IdentityChecker(session, "fock_dimensions")
    for row in fock_dimension_table(session.rank, max_degree):
        checker.require(row["fock"] == row["rpartitions"], f"degree {row['degree']}: {row['fock']} != {row['rpartitions']}")
    return checker.result()


# ============= W RELATIONS =============

def check_miura_relations(module: MiuraModule, max_size: int = 3, radius: int = 2, full_max_size: int = 2) -> List[CheckResult]:
    """
    The presentation of the W-algebra with c = q^r on the free-field side:
    Heisenberg, the W-p commutators, W_k W_1 for every k < r and the full
    W_k W_k' relation for k, k' <= 2.
    """
    results = [check_heisenberg(module, max_size), check_boson_table(module, max_size)]
    results += [check_lambda_symmetry(module, min(max_size, 2), radius)]
    results += check_truncation_and_verma(module, max_size)
    for k in range(1, module.r + 1):
        results.append(check_w_relation_k1(module, k, max_size, radius))
    for k in range(1, min(module.r, 2) + 1):
        for k_prime in range(1, min(module.r, 2) + 1):
            results.append(check_w_relation_full(module, k, k_prime, full_max_size, radius))
            results.append(check_pole_structure(module, k, k_prime, full_max_size))
    return results


def check_mish(module: MiuraModule, max_size: int = 3) -> List[CheckResult]:
    """
    1. W_r(x) = u_1 ... u_r :exp p(x):
    2. For r = 1, W_1(x) = Lambda^1(x)
    """
    session = module.session
    top = IdentityChecker(session, "top_exponential")
    exponential = total_boson_exponential(module)
    single = IdentityChecker(session, "single_color")
    lambda_one = NormalOrderedExponential.of_lambda(module, 1)
    for n in range(max_size + 1):
        for state in module.states(n):
            for d in range(n - max_size, n + 1):
                top.compare_vectors(module.w_op(d, module.r).column(state), exponential.mode(d).column(state),
                                    f"W[{d},{module.r}]", source=state)
                if module.r == 1:
                    single.compare_vectors(module.w_op(d, 1).column(state), lambda_one.mode(d).column(state),
                                           f"W[{d},1]", source=state)
    results = [top.result()]
    if module.r == 1:
        results.append(single.result())
    return results


# ============= gl TO sl =============

def _sl_ratio(session, n: int, power: int) -> Any:
    """(1 - q^{power n}) / (1 - q^{rn}) with the sign of n kept in both exponents."""
    return session.fp(FactorProduct(factors=[(Monomial.q(power * n), 1), (Monomial.q(session.rank * n), -1)]))


def sl_weight(module: MiuraModule, color: int, shift: int):
    """Exponent of Lambda~^color(x/q^shift): h^color_n = b^color_n - p_n (1-q^n)/(1-q^rn)."""
    session = module.session

    def weight(i: int, n: int) -> Any:
        scale = session.mono(Monomial.q(n * shift))
        value = -_sl_ratio(session, n, 1) * session.mono(Monomial.q(n * (i - 1)))
        if i == color:
            value = value + session.one()
        return scale * value

    return weight


def sl_h_mode(module: MiuraModule, color: int, n: int) -> GradedOperator:
    """h^color_n as an operator on the Fock space."""
    session = module.session
    terms = [(session.one(), module.b_mode(color, n)), (-_sl_ratio(session, n, 1), module.boson(n))]
    return linear_combination(session, terms, n, f"h{color}[{n}]", module.tag, module.tag)


def check_glsl_map(module: MiuraModule, max_size: int = 2, max_n: int = 2) -> List[CheckResult]:
    """
    1. sum_i h^i_n q^{n(i-1)} = 0
    2. [p_m, h^i_n] = 0
    3. [h^i_-n, h^j_n] = n (1-q1^n)(1-q2^n) (1 - q^{(r delta_ij - 1) n}) / (1 - q^{rn}) q^{rn [i > j]}
    4. W~_k(x) = exp[-sum p_-n x^n/n (1-q^-kn)/(1-q^-rn)] W_k(x) exp[-sum p_n x^-n/n (1-q^kn)/(1-q^rn)]
       at every mode, on states up to max_size
    """
    session = module.session
    r = module.r
    states = [s for n in range(max_size + 1) for s in module.states(n)]
    identity = module.e0_diag(0)

    linear = IdentityChecker(session, "sl_linear_relation")
    commuting = IdentityChecker(session, "sl_commutes_with_p")
    bosons = IdentityChecker(session, "sl_bosons")
    for n in [m for k in range(1, max_n + 1) for m in (k, -k)]:
        terms = [(session.mono(Monomial.q(n * (i - 1))), sl_h_mode(module, i, n)) for i in range(1, r + 1)]
        total = linear_combination(session, terms, n, f"sum h[{n}]", module.tag, module.tag)
        for s in states:
            linear.compare_vectors(total.column(s), {}, f"sum_i h^i_{n} q^(n(i-1))", source=s)
        for m in [x for k in range(1, max_n + 1) for x in (k, -k)]:
            for i in range(1, r + 1):
                lhs = commutator(module.boson(m), sl_h_mode(module, i, n))
                for s in states:
                    commuting.compare_vectors(lhs.column(s), {}, f"[p_{m}, h{i}_{n}]", source=s)
    for n in range(1, max_n + 1):
        for i in range(1, r + 1):
            for j in range(1, r + 1):
                power = r * (1 if i == j else 0) - 1
                value = session.rational(n) * session.fp(_bp(n)) * _sl_ratio(session, n, power)
                if i > j:
                    value = value * session.mono(Monomial.q(r * n))
                lhs = commutator(sl_h_mode(module, i, -n), sl_h_mode(module, j, n))
                rhs = identity.scaled(value)
                for s in states:
                    bosons.compare_vectors(lhs.column(s), rhs.column(s), f"[h{i}_-{n}, h{j}_{n}]", source=s)

    dressing = IdentityChecker(session, "sl_dressing")
    dressing.note(f"exponential tails truncated at Fock degree {max_size}")
    for k in range(1, r + 1):
        sl_terms = []
        for colors in combinations(range(1, r + 1), k):
            product = None
            for j, color in enumerate(colors):
                factor = NormalOrderedExponential(module, session.mono(module.torus[color - 1]), sl_weight(module, color, j))
                product = factor if product is None else product.merged(factor)
            sl_terms.append(product)
        creation = NormalOrderedExponential.of_bosons(
            module,
            lambda i, n, k=k: -_sl_ratio(session, n, k) * session.mono(Monomial.q(n * (i - 1))) if n < 0 else session.zero(),
            f"E-[{k}]",
        )
        annihilation = NormalOrderedExponential.of_bosons(
            module,
            lambda i, n, k=k: -_sl_ratio(session, n, k) * session.mono(Monomial.q(n * (i - 1))) if n > 0 else session.zero(),
            f"E+[{k}]",
        )
        for s in states:
            for d in range(s.size - max_size, s.size + 1):
                lhs = linear_combination(session, [(session.one(), t.mode(d)) for t in sl_terms], d, f"W~[{d},{k}]",
                                         module.tag, module.tag)
                rhs_terms = []
                for m in range(0, s.size + 1):
                    for l in range(0, s.size - d + 1):
                        middle = module.w_op(d + l - m, k)
                        rhs_terms.append((session.one(), Composed([creation.mode(-l), middle, annihilation.mode(m)])))
                rhs = linear_combination(session, rhs_terms, d, f"E- W[{d},{k}] E+", module.tag, module.tag)
                dressing.compare_vectors(lhs.column(s), rhs.column(s), f"W~[{d},{k}]", source=s)
    return [linear.result(), commuting.result(), bosons.result(), dressing.result()]
