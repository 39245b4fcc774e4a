"""
Fixed-Point Geometry
Tangent characters, norms and the inner product of the fixed-point basis of K
"""

import logging
from typing import Any, Dict, List

from core.repk.operators import Vector
from core.scalars.factors import Q, FactorProduct, product, tau, tau_flipped, wedge_bullet, zeta
from core.scalars.monomials import Character, Monomial, torus_names
from core.shapes.partitions import RPartition, count_rpartitions, enumerate_rpartitions

logger = logging.getLogger(__name__)


def frame(r: int, tag: str = "u") -> List[Monomial]:
    return [Monomial.gen(name) for name in torus_names(r, tag)]


def tangent_character(lam: RPartition, tag: str = "u") -> Character:
    """
    Tan = sum_i (V / u_i + u_i / (q V)) - (1 - 1/q1)(1 - 1/q2) V V*

    with V = sum of the box weights; the result has rank 2 r |lam| and no trivial weight.
    """
    boxes = Character.from_monomials(lam.weights(tag))
    framing = Character.from_monomials(frame(lam.r, tag))
    q_inv = Character({Q.inverse(): 1})
    kernel = Character({Monomial.one(): 1, Monomial.gen("q1", -1): -1, Monomial.gen("q2", -1): -1, Q.inverse(): 1})
    return boxes * framing.dual() + framing * boxes.dual() * q_inv - kernel * boxes * boxes.dual()


def _corner_signs(weights: List[Monomial], torus: List[Monomial]) -> FactorProduct:
    """prod over the given boxes and all i of (-chi / u_i)"""
    out = FactorProduct()
    for chi in weights:
        for u in torus:
            out = out * FactorProduct(-1, chi / u)
    return out


def norm_factor_product(lam: RPartition, tag: str = "u") -> FactorProduct:
    """(|lam>, |lam>) = 1 / [wedge(Tan_lam) prod_{box, i} (-chi_box / u_i)]"""
    denominator = wedge_bullet(tangent_character(lam, tag)) * _corner_signs(lam.weights(tag), frame(lam.r, tag))
    return denominator.inverse()


def norm_by_products(lam: RPartition, tag: str = "u") -> FactorProduct:
    """
    The same norm as 1 / [prod_box tau(chi) tau(q chi) prod_{box, box'} zeta(chi/chi')],
    with tau(chi) in its flipped form so that each (1 - 1) meets a zeta(1).
    """
    weights = lam.weights(tag)
    torus = frame(lam.r, tag)
    denominator = product(tau_flipped(chi, torus) * tau(Q * chi, torus) for chi in weights)
    denominator = denominator * product(zeta(a / b) for a in weights for b in weights)
    return denominator.inverse()


def norm_ratio(lam: RPartition, mu: RPartition, tag: str = "u") -> FactorProduct:
    """(lam, lam) / (mu, mu) for mu inside lam, with no singular factor."""
    difference = tangent_character(mu, tag) - tangent_character(lam, tag)
    inner = set(mu.boxes())
    skew = [chi for box, chi in zip(lam.boxes(), lam.weights(tag)) if box not in inner]
    return wedge_bullet(difference) * _corner_signs(skew, frame(lam.r, tag)).inverse()


def norm(session, lam: RPartition, tag: str = "u") -> Any:
    return session.fp(norm_factor_product(lam, tag))


def inner_product(session, a: Vector, b: Vector, tag: str = "u") -> Any:
    """sum_lam a_lam b_lam (|lam>, |lam>); the basis is orthogonal."""
    total = session.zero()
    for lam, coeff in a.items():
        other = b.get(lam)
        if other is not None:
            total = total + coeff * other * norm(session, lam, tag)
    return total


def dimension_table(r: int, max_size: int) -> List[Dict[str, int]]:
    """dim K_n by enumeration next to the generating-function count."""
    rows = []
    for n in range(max_size + 1):
        rows.append({"n": n, "enumerated": len(enumerate_rpartitions(r, n)), "expected": count_rpartitions(r, n)})
    logger.debug(f"dimension table r={r} up to {max_size}: {rows}")
    return rows
