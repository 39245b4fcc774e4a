"""
Eps Bridge
Compares K-theoretic computations run on eps-series with their additive counterparts on H
"""

import logging
from math import comb
from typing import Any, List, Optional, Sequence

from core.classical.operators import ClassicalModule, chibar, taubar, zbar
from core.classical.vertex import abar_matrix
from core.extnek.ext import ExtOperator
from core.repk.actions import FixedPointModule
from core.scalars.eps import EpsSeries
from core.scalars.factors import Q, Q1, Q2, tau, zeta
from core.scalars.monomials import Monomial
from core.session import Session
from core.shapes.partitions import RPartition, rpartitions_up_to
from core.verification import IdentityChecker
from models.schemas import CheckResult

logger = logging.getLogger(__name__)

MASS = Monomial.gen("m")


class EpsBridge:
    """
    Two sessions over one probe seed: an eps-series session where every
    generator g is exp(eps gbar), and an additive session holding the gbar.

    Both carry the primed torus, one mass and the spectral generator y.
    """

    def __init__(self, rank: int, eps_order: int = 8, seed: int = 0):
        if eps_order < rank + 1:
            raise ValueError(f"eps order {eps_order} is below r + 1 = {rank + 1}")
        self.r = rank
        self.order = eps_order
        self.seed = seed
        options = dict(primed=True, masses=1, extra=("y",), seed=seed)
        self.eps = Session.build(rank, mode="eps", eps_order=eps_order, **options)
        self.additive = Session.build(rank, mode="additive", **options)
        self.quantum = FixedPointModule(self.eps)
        self.classical = ClassicalModule(self.additive)
        self.y = Monomial.gen("y")
        logger.info(f"EpsBridge initialized: r={rank}, eps order={eps_order}, seed={seed}")

    def renormalized(self, value: EpsSeries, shift: int) -> EpsSeries:
        """A matrix coefficient between |mu> and |lam> with |lam| - |mu| = shift, in the basis eps^{r|lam|}|lam>."""
        return value.shift(self.r * shift)

    def expect_leading(self, checker: IdentityChecker, value: EpsSeries, order: int, expected: Any,
                       description: str, states: Sequence[Any] = (), bidegree: Optional[Sequence[int]] = None) -> bool:
        """value = expected eps^order + O(eps^{order+1})"""
        valuation = value.valuation
        ok = checker.require(valuation is None or valuation >= order,
                             f"{description}: eps^{valuation} below eps^{order}", states)
        return checker.compare(value.coefficient(order), expected, description, states, bidegree) and ok


# ============= SCALARS =============

def _safe_ratio(x: Monomial) -> bool:
    return not any(m.is_identity for m in (x, Q1 * x, Q2 * x, Q * x))


def check_zeta_tau_limit(bridge: EpsBridge, max_size: int = 2) -> List[CheckResult]:
    """zeta(e^{eps z}) = zbar(z) + O(eps) and tau(e^{eps z}) = eps^r taubar(z) + O(eps^{r+1})"""
    zeta_check = IdentityChecker(bridge.additive, "zeta_bar_limit")
    tau_check = IdentityChecker(bridge.additive, "tau_bar_limit")
    torus = bridge.eps.torus("u")
    weights = sorted({chi for lam in rpartitions_up_to(bridge.r, max_size) for chi in lam.weights("u")}, key=repr)
    for a in weights:
        z = Q * a
        value = bridge.eps.fp(tau(z, torus))
        bridge.expect_leading(tau_check, value, bridge.r, taubar(bridge.additive, chibar(bridge.additive, z)), f"tau({z})")
        for b in weights:
            x = a / b
            if not _safe_ratio(x):
                continue
            value = bridge.eps.fp(zeta(x))
            bridge.expect_leading(zeta_check, value, 0, zbar(bridge.additive, chibar(bridge.additive, x)), f"zeta({x})")
    return [zeta_check.result(), tau_check.result()]


# ============= OPERATORS =============

def check_boson_limit(bridge: EpsBridge, max_size: int = 2, max_n: int = 2) -> CheckResult:
    """p_{+-n} = eps pbar-leading + O(eps^2) in the renormalized basis."""
    checker = IdentityChecker(bridge.additive, "boson_limit")
    states = rpartitions_up_to(bridge.r, max_size)
    for n in range(1, max_n + 1):
        for sign in (1, -1):
            quantum = bridge.quantum.boson(sign * n)
            classical = bridge.classical.bar_boson(sign * n)
            for lam in states:
                for mu in quantum.column(lam):
                    value = bridge.renormalized(quantum.entry(mu, lam), sign * n)
                    bridge.expect_leading(checker, value, 1, classical.entry(mu, lam), f"p[{sign * n}]", states=(mu, lam))
    return checker.result()


def check_ext_limit(bridge: EpsBridge, max_size: int = 2) -> CheckResult:
    """<lam|A_m|lam'> = <lam-bar|Abar|lam'-bar> + O(eps) in the renormalized bases."""
    checker = IdentityChecker(bridge.additive, "ext_limit")
    ext = ExtOperator(bridge.eps, MASS)
    states = rpartitions_up_to(bridge.r, max_size)
    for lam in states:
        for lam_p in states:
            value = bridge.renormalized(ext.entry(lam, lam_p), lam_p.size - lam.size)
            expected = abar_matrix(bridge.additive, lam, lam_p, MASS)
            bridge.expect_leading(checker, value, 0, expected, "A_m", states=(lam, lam_p))
    return checker.result()


def _quantum_combination(bridge: EpsBridge, d: int, mu: RPartition, lam: RPartition, weights: Sequence[Any]) -> Any:
    """sum_k weights[k] <mu|W_{d,k}|lam>"""
    total = bridge.eps.zero()
    for k, weight in enumerate(weights):
        total = total + weight * bridge.quantum.w_op(d, k).entry(mu, lam)
    return total


def check_w_limit(bridge: EpsBridge, max_size: int = 2) -> List[CheckResult]:
    """
    1. sum_{k<=i} (-1)^k C(r-k, r-i) W_k = eps^i Wbar_i + O(eps^{i+1}) for 0 <= i <= r
    2. sum_k W_k (-y)^-k = eps^r Wbar(ybar) + O(eps^{r+1})
    3. The same with y shifted by q^-d, whose leading order is Wbar at ybar - d hbar
    """
    r = bridge.r
    eps = bridge.eps
    limitation = IdentityChecker(bridge.additive, "w_limitation")
    generating = IdentityChecker(bridge.additive, "w_generating_limit")
    shifted = IdentityChecker(bridge.additive, "w_generating_dx_shift")
    states = rpartitions_up_to(r, max_size)
    for lam in states:
        for mu in states:
            d = lam.size - mu.size
            for i in range(0, r + 1):
                weights = [eps.rational((-1) ** k * comb(r - k, r - i)) for k in range(0, i + 1)]
                value = bridge.renormalized(_quantum_combination(bridge, d, mu, lam, weights), d)
                expected = bridge.classical.wbar_op(i, d).entry(mu, lam)
                bridge.expect_leading(limitation, value, i, expected, f"Wbar_{i}[{d}]", states=(mu, lam), bidegree=[d, i])

            expected = bridge.classical.wbar_value(d, mu, lam)
            plain = [eps.rational((-1) ** k) * eps.mono(bridge.y ** (-k)) for k in range(0, r + 1)]
            value = bridge.renormalized(_quantum_combination(bridge, d, mu, lam, plain), d)
            bridge.expect_leading(generating, value, r, expected, f"W[{d}](y)", states=(mu, lam), bidegree=[d])
            moved = [w * eps.mono(Monomial.q(d * k)) for k, w in enumerate(plain)]
            value = bridge.renormalized(_quantum_combination(bridge, d, mu, lam, moved), d)
            expected = bridge.classical.wbar_value(d, mu, lam, Monomial.q(-d))
            bridge.expect_leading(shifted, value, r, expected, f"W[{d}](y q^-{d})", states=(mu, lam), bidegree=[d])
    return [limitation.result(), generating.result(), shifted.result()]


def check_classical_limit(bridge: EpsBridge, max_size: int = 2) -> List[CheckResult]:
    results = check_zeta_tau_limit(bridge, max_size)
    results.append(check_boson_limit(bridge, max_size))
    results.append(check_ext_limit(bridge, max_size))
    results.extend(check_w_limit(bridge, max_size))
    return results
