"""
Lattice Sequence Combinatorics
Ordered sequences of lattice points, their constants alpha and z, and the broken-path identity
"""

import logging
from collections import Counter
from fractions import Fraction
from math import factorial, gcd
from typing import Dict, Iterator, List, Sequence, Tuple

from core.scalars.factors import Q, Q1, Q2, FactorProduct
from core.scalars.monomials import Monomial

logger = logging.getLogger(__name__)

# (d, k): lowering degree and homogeneous degree
LatticePoint = Tuple[int, int]


def lattice_gcd(d: int, k: int) -> int:
    """gcd with gcd(k, 0) = k"""
    return gcd(k, d) if d else k


def slope_key(point: LatticePoint) -> Tuple[Fraction, int]:
    d, k = point
    return Fraction(d, k), k


# ============= CONSTANTS =============

def alpha_v(v: Sequence[LatticePoint]) -> int:
    """sum_{i<j} k_i d_j + sum_i (k_i d_i + k_i - d_i - n_i) / 2"""
    cross = sum(v[i][1] * v[j][0] for i in range(len(v)) for j in range(i + 1, len(v)))
    twice = sum(k * d + k - d - lattice_gcd(d, k) for d, k in v)
    return cross + twice // 2


def z_v(v: Sequence[LatticePoint]) -> int:
    """prod of (multiplicity)! over distinct points times prod of n_i"""
    out = 1
    for multiplicity in Counter(v).values():
        out *= factorial(multiplicity)
    for d, k in v:
        out *= lattice_gcd(d, k)
    return out


def power_coefficient(v: Sequence[LatticePoint]) -> Tuple[Fraction, Monomial]:
    """(-1)^(k - t) q^alpha(v) / z_v, the coefficient of P_v in W_{d,k}"""
    k = sum(p[1] for p in v)
    return Fraction((-1) ** (k - len(v)), z_v(v)), Monomial.q(alpha_v(v))


def elementary_coefficient(v: Sequence[LatticePoint]) -> Tuple[Fraction, Monomial]:
    """(-1)^(sum k_i - n_i) q^alpha(v), the coefficient of E_v in W_{d,k}"""
    sign = (-1) ** sum(k - lattice_gcd(d, k) for d, k in v)
    return Fraction(sign), Monomial.q(alpha_v(v))


def pairing_basis_constant(v: Sequence[LatticePoint]) -> FactorProduct:
    """
    <P_v, P_v> = z_v prod_i (1-q1^n)(1-q2^n)(q^-1 - 1)^k / ((1-q1)^k (1-q2)^k (q^-n - 1))

    with the factors (q^-1 - 1)^k / (q^-n - 1) stored as (-1)^(k-1) (1-q^-1)^k / (1-q^-n).
    """
    out = FactorProduct(constant=z_v(v))
    for d, k in v:
        n = lattice_gcd(d, k)
        factors = [(Q1 ** n, 1), (Q2 ** n, 1), (Q ** -1, k), (Q1, -k), (Q2, -k), (Q ** (-n), -1)]
        out = out * FactorProduct((-1) ** (k - 1), factors=factors)
    return out


# ============= SEQUENCES =============

def ordered_sequences(k: int, d: int, lower_budget: int, strict: bool = False) -> List[Tuple[LatticePoint, ...]]:
    """
    Sequences v of points (d_i, k_i), k_i >= 1, summing to (d, k), ordered by
    slope d_i / k_i and then by k_i.

    Only sequences whose positive d_i add up to at most lower_budget are kept;
    on a state of size n the composed operator P_v vanishes otherwise, since
    the positive-slope factors act first. With strict the slopes increase
    strictly (the elementary expansion).
    """
    if k < 1:
        return []
    low = d - lower_budget
    candidates = sorted(
        ((di, ki) for ki in range(1, k + 1) for di in range(min(low, 0), max(lower_budget, 0) + 1)),
        key=slope_key,
    )
    out: List[Tuple[LatticePoint, ...]] = []

    def extend(start: int, prefix: List[LatticePoint], k_left: int, d_left: int, budget: int) -> None:
        if k_left == 0:
            if d_left == 0:
                out.append(tuple(prefix))
            return
        for idx in range(start, len(candidates)):
            di, ki = candidates[idx]
            if ki > k_left or (di > 0 and di > budget):
                continue
            if strict and prefix and slope_key(prefix[-1])[0] == Fraction(di, ki):
                continue
            prefix.append((di, ki))
            extend(idx if not strict else idx + 1, prefix, k_left - ki, d_left - di, budget - max(di, 0))
            prefix.pop()

    extend(0, [], k, d, lower_budget)
    logger.debug(f"{len(out)} sequences for (d,k)=({d},{k}) with lower budget {lower_budget}, strict={strict}")
    return out


# ============= BROKEN PATHS =============

def convex_paths(d: int, k: int) -> Iterator[Tuple[LatticePoint, ...]]:
    """Paths of steps (d_s, k_s), d_s, k_s >= 1, summing to (d, k), slopes k_s / d_s strictly increasing."""

    def extend(prefix: List[LatticePoint], d_left: int, k_left: int, last: Fraction) -> Iterator[Tuple[LatticePoint, ...]]:
        if d_left == 0 and k_left == 0:
            yield tuple(prefix)
            return
        for ds in range(1, d_left + 1):
            for ks in range(1, k_left + 1):
                slope = Fraction(ks, ds)
                if last is not None and slope <= last:
                    continue
                prefix.append((ds, ks))
                yield from extend(prefix, d_left - ds, k_left - ks, slope)
                prefix.pop()

    yield from extend([], d, k, None)


LaurentW = Dict[Tuple[int, ...], int]


def _mul(a: LaurentW, b: LaurentW) -> LaurentW:
    out: Counter = Counter()
    for ea, ca in a.items():
        for eb, cb in b.items():
            out[tuple(x + y for x, y in zip(ea, eb))] += ca * cb
    return {e: c for e, c in out.items() if c}


def _path_term(path: Sequence[LatticePoint], d: int) -> LaurentW:
    exps = [0] * d
    offset = 0
    breaks = []
    for ds, ks in path:
        for i in range(1, ds + 1):
            exps[offset + i - 1] += -((-i * ks) // ds) + ((-(i - 1) * ks) // ds)
        offset += ds
        breaks.append(offset)
    term: LaurentW = {tuple(exps): 1}
    for b in breaks[:-1]:
        # (1 - w_b / w_{b+1})
        ratio = [0] * d
        ratio[b - 1] += 1
        ratio[b] -= 1
        term = _mul(term, {tuple([0] * d): 1, tuple(ratio): -1})
    return term


def broken_path_sum(d: int, k: int) -> LaurentW:
    total: Counter = Counter()
    for path in convex_paths(d, k):
        for e, c in _path_term(path, d).items():
            total[e] += c
    return {e: c for e, c in total.items() if c}


def broken_path_identity(d: int, k: int) -> bool:
    """Does the sum over convex broken paths equal w_1 w_d^(k-1)?"""
    if d < 1 or k < 1:
        raise ValueError(f"broken paths need d, k >= 1, got ({d},{k})")
    target = [0] * d
    target[0] += 1
    target[d - 1] += k - 1
    result = broken_path_sum(d, k) == {tuple(target): 1}
    logger.info(f"broken path identity (d,k)=({d},{k}): {'holds' if result else 'fails'}")
    return result
