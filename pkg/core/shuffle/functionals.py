"""
Evaluation Functionals
The slope functional phi and the iterated-limit functional phi_x on shuffle elements, with their closed forms
"""

import logging
from math import gcd
from typing import Any, Iterable, Tuple

from core.exceptions import NonCancellingPole, TrueSingularity
from core.scalars.factors import Q, Q1, Q2, FactorProduct, product, zeta_inverse
from core.scalars.monomials import Monomial
from core.shuffle.elements import build, zvar
from core.shuffle.rational import SymRational, shuffle_mul
from core.verification import IdentityChecker
from models.schemas import CheckResult

logger = logging.getLogger(__name__)

X = Monomial.gen("x")


def _inverse_zeta_triangle(k: int) -> FactorProduct:
    return product(zeta_inverse(zvar(i) / zvar(j)) for i in range(1, k + 1) for j in range(i + 1, k + 1))


# ============= SLOPE FUNCTIONAL =============

def phi_functional(r: SymRational, backend, n: int, a: int, b: int) -> Any:
    """
    phi(R) = R(1, q1^-1, ..., q1^(1-na)) / prod_{i<j} zeta(q1^(j-i)) * q1^e (1 - q2)^(na)

    with e = (n^2 ab - nb + na - n) / 2, for R of n a variables and degree n b.
    R is regular at the point but single permuted bodies are not; their
    zeros and poles are resolved together by `SymRational.evaluate`.
    """
    k = n * a
    if r.k != k:
        raise ValueError(f"phi for (n,a,b)=({n},{a},{b}) needs {k} variables, got {r.k}")
    twice = n * n * a * b - n * b + n * a - n
    if twice % 2:
        raise ValueError(f"odd q1 exponent for (n,a,b)=({n},{a},{b})")
    values = [Q1 ** (-i) for i in range(k)]
    normalization = FactorProduct(prefactor=Q1 ** (twice // 2), factors={Q2: k})
    return r.evaluate(backend, values, _inverse_zeta_triangle(k) * normalization)


def phi_expected(family: str, n: int) -> FactorProduct:
    """Closed forms of phi on the P, H, E, Q elements of any coprime ray."""
    if family == "P":
        return FactorProduct.one_minus(Q2 ** n)
    if family == "H":
        return FactorProduct.one_minus(Q2)
    if family == "E":
        return FactorProduct((-1) ** (n - 1), Q2 ** (n - 1), {Q2: 1})
    if family == "Q":
        return FactorProduct(factors=[(Q ** -1, 1), (Q2, 1), (Q1 ** (-n), 1), (Q1 ** -1, -1)])
    raise ValueError(f"Unknown shuffle family: {family}")


# ============= ITERATED LIMIT FUNCTIONAL =============

def phi_x(r: SymRational, backend, x: Monomial = X) -> Any:
    """
    phi^k_x(R): the limits z_i -> q^(i-1)/x of R / prod_{i<j} zeta(z_i/z_j), taken in order.

    The (z_j - q z_i), i < j, in the denominator of R cancel against the
    zeta^-1 triangle and what is left does not vanish at that point, so the
    iterated limit equals the limit along any curve, which is what
    `SymRational.evaluate` takes.

    Raises:
        TrueSingularity: a pole survives, so the limit is not removable
    """
    values = [Q ** i / x for i in range(r.k)]
    try:
        return r.evaluate(backend, values, _inverse_zeta_triangle(r.k))
    except NonCancellingPole as e:
        raise TrueSingularity(f"phi_x of {r.label}: {e}") from e


def alpha_kd(k: int, d: int) -> int:
    """(kd + k - d - n) / 2 with n = gcd(k, d)"""
    twice = k * d + k - d - gcd(k, d)
    return twice // 2


def phi_x_expected(k: int, d: int, x: Monomial = X) -> FactorProduct:
    """
    q^alpha(k,d) / x^d * (1-q1^n)(1-q2^n)(1-q^-1)^k / ((1-q1)^k (1-q2)^k (1-q^-n))

    for the element P of k variables and degree d.
    """
    n = gcd(k, d)
    factors = [(Q1 ** n, 1), (Q2 ** n, 1), (Q ** -1, k), (Q1, -k), (Q2, -k), (Q ** (-n), -1)]
    return FactorProduct(prefactor=Q ** alpha_kd(k, d) * x ** (-d), factors=factors)


# ============= CHECKS =============

def check_phi_table(session, max_n: int = 3, rays: Iterable[Tuple[int, int]] = ((1, 0), (1, 1), (1, -1))) -> CheckResult:
    """phi on P, H, E, Q of every ray (a, b) up to n = max_n against the closed forms."""
    checker = IdentityChecker(session, "phi_table")
    for a, b in rays:
        for n in range(1, max_n + 1):
            for family in ("P", "H", "E", "Q"):
                element = SymRational.from_presentation(build(family, n * a, n * b))
                lhs = phi_functional(element, session.backend, n, a, b)
                checker.compare(lhs, session.fp(phi_expected(family, n)), f"phi({family}[{n * a},{n * b}])", bidegree=[n * a, n * b])
    return checker.result()


def check_phi_x(session, max_k: int = 3, max_d: int = 3) -> CheckResult:
    """phi_x(P[k,d]) against its closed form; the session must carry x."""
    checker = IdentityChecker(session, "phi_x")
    for k in range(1, max_k + 1):
        for d in range(-max_d, max_d + 1):
            element = SymRational.from_presentation(build("P", k, d))
            checker.compare(phi_x(element, session.backend), session.fp(phi_x_expected(k, d)), f"phi_x(P[{k},{d}])", bidegree=[k, d])
    return checker.result()


def check_pseudo_multiplicativity(session, pairs: Iterable[Tuple[Tuple[str, int, int], Tuple[str, int, int]]]) -> CheckResult:
    """
    phi_x(R1 * R2) = phi_x(R1) phi_{x/q^k1}(R2) on the given pairs of (family, k, d).
    """
    checker = IdentityChecker(session, "phi_x_multiplicative")
    backend = session.backend
    for left, right in pairs:
        r1 = SymRational.from_presentation(build(*left))
        r2 = SymRational.from_presentation(build(*right))
        lhs = phi_x(shuffle_mul(r1, r2), backend)
        rhs = phi_x(r1, backend) * phi_x(r2, backend, X / Q ** r1.k)
        checker.compare(lhs, rhs, f"phi_x({r1.label} * {r2.label})")
    return checker.result()
