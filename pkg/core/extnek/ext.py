"""
Ext Operator
Matrix coefficients of the Ext correspondence between the fixed-point bases of two tori
"""

import logging
import threading
from typing import Any, Dict, List, Tuple

from core.repk.currents import Current
from core.repk.fixed_points import frame, norm, norm_by_products, norm_factor_product
from core.repk.operators import FunctionOperator, GradedOperator, Vector
from core.scalars.factors import Q, FactorProduct, product, wedge_bullet, zeta
from core.scalars.monomials import Character, Monomial
from core.shapes.partitions import RPartition, enumerate_rpartitions, rpartitions_up_to
from core.verification import IdentityChecker
from models.schemas import CheckResult

logger = logging.getLogger(__name__)

KERNEL = Character({Monomial.one(): 1, Monomial.gen("q1", -1): -1, Monomial.gen("q2", -1): -1, Q.inverse(): 1})


# ============= CHARACTERS AND PRODUCTS =============

def ext_character(lam: RPartition, lam_p: RPartition, target: str = "u", source: str = "up") -> Character:
    """
    E|_{lam, lam'} = sum chi/u'_i + sum u_i/(q chi') - (1 - 1/q1)(1 - 1/q2) V V'*

    with lam in the target weights and lam' in the source weights.
    """
    boxes = Character.from_monomials(lam.weights(target))
    boxes_p = Character.from_monomials(lam_p.weights(source))
    framing = Character.from_monomials(frame(lam.r, target))
    framing_p = Character.from_monomials(frame(lam.r, source))
    q_inv = Character({Q.inverse(): 1})
    return boxes * framing_p.dual() + framing * boxes_p.dual() * q_inv - KERNEL * boxes * boxes_p.dual()


def ext_numerator(lam: RPartition, lam_p: RPartition, mass: Monomial, target: str = "u", source: str = "up") -> FactorProduct:
    """prod (1 - m chi/u'_i) prod (1 - q chi'/(m u_i)) prod zeta(chi'/(m chi))"""
    weights, weights_p = lam.weights(target), lam_p.weights(source)
    torus, torus_p = frame(lam.r, target), frame(lam.r, source)
    out = FactorProduct(factors=[(mass * chi / u, 1) for chi in weights for u in torus_p])
    out = out * FactorProduct(factors=[(Q * chi / (mass * u), 1) for chi in weights_p for u in torus])
    return out * product(zeta(chi_p / (mass * chi)) for chi in weights for chi_p in weights_p)


def ext_numerator_by_character(lam: RPartition, lam_p: RPartition, mass: Monomial,
                               target: str = "u", source: str = "up") -> FactorProduct:
    """wedge of E (x) m, with each (1 - u'_i/(m chi)) turned into (1 - m chi/u'_i)."""
    flips = product(
        FactorProduct(-1, mass * chi / u) for chi in lam.weights(target) for u in frame(lam.r, source)
    )
    return wedge_bullet(ext_character(lam, lam_p, target, source) * mass) * flips


def a_matrix_factor(lam: RPartition, lam_p: RPartition, mass: Monomial, target: str = "u", source: str = "up") -> FactorProduct:
    """<lam| A_m |lam'> as a factor product; the denominator is the norm of lam' in the source torus."""
    return ext_numerator(lam, lam_p, mass, target, source) * norm_by_products(lam_p, source)


def a_matrix_by_character(lam: RPartition, lam_p: RPartition, mass: Monomial,
                          target: str = "u", source: str = "up") -> FactorProduct:
    return ext_numerator_by_character(lam, lam_p, mass, target, source) * norm_factor_product(lam_p, source)


# ============= OPERATOR =============

class ExtOperator:
    """
    A_m : K_source -> K_target with memoized matrix coefficients.

    The current A_m(x) = sum_d A_d x^-d has modes A_d of degree shift d,
    sending size n' to size n' - d.
    """

    def __init__(self, session, mass: Monomial, target: str = "u", source: str = "up"):
        self.session = session
        self.mass = mass
        self.target = target
        self.source = source
        self.r = session.rank
        self._memo: Dict[Tuple[RPartition, RPartition], Any] = {}
        self._lock = threading.Lock()
        self.current = Current(f"A_{mass}", self._mode)
        logger.info(f"ExtOperator initialized: m={mass}, {source} -> {target}")

    def entry(self, lam: RPartition, lam_p: RPartition) -> Any:
        """<lam| A_m |lam'>"""
        key = (lam, lam_p)
        with self._lock:
            value = self._memo.get(key)
        if value is None:
            value = self.session.fp(a_matrix_factor(lam, lam_p, self.mass, self.target, self.source))
            with self._lock:
                value = self._memo.setdefault(key, value)
        return value

    def _mode(self, d: int) -> GradedOperator:
        def column(lam_p: RPartition) -> Vector:
            return {lam: self.entry(lam, lam_p) for lam in enumerate_rpartitions(self.r, lam_p.size - d)}

        return FunctionOperator(self.session, d, f"A[{d}]", column, self.source, self.target)

    def mode(self, d: int) -> GradedOperator:
        return self.current.mode(d)

    def after(self, op: GradedOperator, lam: RPartition, lam_p: RPartition) -> Any:
        """<lam| A_m op |lam'> with op acting on the source torus."""
        total = self.session.zero()
        for nu, coeff in op.column(lam_p).items():
            total = total + coeff * self.entry(lam, nu)
        return total

    def before(self, op: GradedOperator, lam: RPartition, lam_p: RPartition) -> Any:
        """<lam| op A_m |lam'> with op acting on the target torus."""
        total = self.session.zero()
        for nu in enumerate_rpartitions(self.r, lam.size + op.shift):
            coeff = op.entry(lam, nu)
            if not self.session.is_zero(coeff):
                total = total + coeff * self.entry(nu, lam_p)
        return total


# ============= CHECKS =============

def check_ext_routes(session, mass: Monomial, max_size: int = 3, target: str = "u", source: str = "up") -> List[CheckResult]:
    """
    1. The Ext character has rank r(|lam| + |lam'|)
    2. The explicit product and the character route give the same coefficient
    """
    ranks = IdentityChecker(session, "ext_rank")
    routes = IdentityChecker(session, "ext_routes")
    states = rpartitions_up_to(session.rank, max_size)
    for lam in states:
        for lam_p in states:
            rank = ext_character(lam, lam_p, target, source).rank()
            ranks.require(rank == session.rank * (lam.size + lam_p.size), f"Ext rank {rank}", states=(lam, lam_p))
            explicit = session.fp(a_matrix_factor(lam, lam_p, mass, target, source))
            by_character = session.fp(a_matrix_by_character(lam, lam_p, mass, target, source))
            routes.compare(explicit, by_character, "<lam|A_m|lam'>", states=(lam, lam_p))
    return [ranks.result(), routes.result()]


def check_ext_adjoint(session, mass: Monomial, max_size: int = 3, target: str = "u", source: str = "up") -> CheckResult:
    """<lam'| A_{q/m} |lam> = <lam| A_m |lam'> (lam, lam) / (lam', lam')"""
    checker = IdentityChecker(session, "ext_adjoint")
    forward = ExtOperator(session, mass, target, source)
    backward = ExtOperator(session, Q / mass, source, target)
    states = rpartitions_up_to(session.rank, max_size)
    for lam in states:
        for lam_p in states:
            lhs = backward.entry(lam_p, lam)
            rhs = forward.entry(lam, lam_p) * norm(session, lam, target) / norm(session, lam_p, source)
            checker.compare(lhs, rhs, "A_{q/m} against A_m", states=(lam, lam_p))
    return checker.result()
