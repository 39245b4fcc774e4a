"""
Exponential Families
H, E and Q along a ray as exponentials of the power sums P, checked degree by degree
"""

import logging
from math import gcd
from typing import Callable, Dict

from core.exceptions import CapExceeded
from core.scalars.factors import Q, Q1, Q2, FactorProduct
from core.scalars.monomials import Monomial
from core.scalars.series import TruncatedSeries, exp_from_power_sums
from core.shapes.partitions import RPartition, rpartitions_up_to
from core.shuffle.elements import LaurentZ, build_E, build_H, build_P, build_Q
from core.shuffle.rational import SymRational, shuffle_mul
from core.verification import IdentityChecker
from models.schemas import CheckResult

logger = logging.getLogger(__name__)


def _ray(builder: Callable, a: int, b: int, order: int) -> Dict[int, SymRational]:
    return {n: SymRational.from_presentation(builder(a * n, b * n)) for n in range(1, order + 1)}


def newton_rhs(
    p: Dict[int, SymRational],
    f: Dict[int, SymRational],
    n: int,
    weight: Callable[[int], LaurentZ],
    cap: int = None,
) -> SymRational:
    """sum_{m=1}^n weight(m) P_m * F_{n-m}, with F_0 = 1."""
    total = None
    for m in range(1, n + 1):
        right = f[n - m] if n - m > 0 else SymRational.unit()
        term = shuffle_mul(p[m], right, cap).scale(weight(m))
        total = term if total is None else total + term
    return total


def check_hq_series(session, a: int, b: int, order: int = 2, cap: int = None) -> CheckResult:
    """
    Verify the exponential identities of H, E and Q along the ray (a, b).

    Here a is the number of variables per step and b the degree per step. The
    generating-function identities are equivalent to the Newton recursions
    1. n H_n = sum_m P_m * H_{n-m}
    2. n E_n = sum_m (-1)^(m-1) P_m * E_{n-m}
    3. n Q_n = sum_m (1 - q^-m) P_m * Q_{n-m}
    which are compared at the generic point of a session carrying z1..z_{a*order}.
    """
    if a < 1 or gcd(a, b) != 1:
        raise ValueError(f"ray ({a},{b}) must have a >= 1 and gcd 1")
    checker = IdentityChecker(session, f"hq_series[{a},{b}]")
    p = _ray(build_P, a, b, order)
    families = {
        "H": (_ray(build_H, a, b, order), lambda m: LaurentZ.constant(0, 1)),
        "E": (_ray(build_E, a, b, order), lambda m: LaurentZ.constant(0, (-1) ** (m - 1))),
        "Q": (_ray(build_Q, a, b, order), lambda m: LaurentZ(0, {Monomial.one(): 1, Monomial.q(-m): -1})),
    }
    backend = session.backend
    for name, (f, weight) in families.items():
        for n in range(1, order + 1):
            try:
                rhs = newton_rhs(p, f, n, weight, cap)
            except CapExceeded as e:
                checker.note(f"{name}_{n} skipped: {e}")
                continue
            lhs = f[n].evaluate_generic(backend) * backend.rational(n)
            checker.compare(lhs, rhs.evaluate_generic(backend), f"{name}[{a * n},{b * n}]", bidegree=[a * n, b * n])
    logger.info(f"hq_series[{a},{b}] order {order}: {checker.checked} identities, {checker.failures} failures")
    return checker.result()


# ============= VERTICAL RAY =============

def vertical_product(module, lam: RPartition, order: int, scale: Monomial = Monomial.one()) -> TruncatedSeries:
    """prod_i (1 - u_i s t) prod_box zeta(chi s t) on the fixed point lam, s = scale"""
    session, backend = module.session, module.backend
    series = TruncatedSeries.one(backend, order)
    for u in module.torus:
        series = series * TruncatedSeries.linear(backend, session.mono(u * scale), order)
    for chi in lam.weights(module.tag):
        chi = chi * scale
        series = series * TruncatedSeries.linear(backend, session.mono(Q1 * chi), order)
        series = series * TruncatedSeries.linear(backend, session.mono(Q2 * chi), order)
        series = series * TruncatedSeries.geometric(backend, session.mono(chi), order)
        series = series * TruncatedSeries.geometric(backend, session.mono(Q * chi), order)
    return series


def check_vertical_series(module, order: int = 2, max_size: int = 2) -> CheckResult:
    """
    The exponential identities on the ray (0, 1), where the P_{0,m} act diagonally.

    On a fixed point, L(t) = prod (1 - u_i t) prod zeta(chi t) = exp(-sum P_{0,m} t^m / m),
    so the Newton recursions must reproduce
    1. H(t) = 1 / L(t)
    2. sum (-t)^n E_{0,n} = L(t), also against the E_{0,n} of the module
    3. Q(t) = L(t/q) / L(t)
    """
    session, backend = module.session, module.backend
    checker = IdentityChecker(session, "hq_series[0,1]")
    terms = order + 1
    weights = {
        "H": lambda m: session.one(),
        "E": lambda m: -session.one(),
        "Q": lambda m: session.fp(FactorProduct.one_minus(Monomial.q(-m))),
    }
    for lam in rpartitions_up_to(module.r, max_size):
        product = vertical_product(module, lam, terms)
        closed = {
            "H": product.inverse(),
            "E": product,
            "Q": vertical_product(module, lam, terms, Q ** -1) / product,
        }
        for name, weight in weights.items():
            newton = exp_from_power_sums(backend, lambda m: weight(m) * module.p0_eigenvalue(m, lam), terms)
            for n in range(1, order + 1):
                checker.compare(newton.coefficient(n), closed[name].coefficient(n), f"{name}[0,{n}]", states=(lam,), bidegree=[0, n])
        for n in range(1, order + 1):
            eigenvalue = module.e_gen(0, n).entry(lam, lam) * session.rational((-1) ** n)
            checker.compare(eigenvalue, product.coefficient(n), f"E[0,{n}] eigenvalue", states=(lam,), bidegree=[0, n])
    logger.info(f"hq_series[0,1] order {order}: {checker.checked} identities, {checker.failures} failures")
    return checker.result()
