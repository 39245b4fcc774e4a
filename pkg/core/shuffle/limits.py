"""
Limits Along a Curve
Constant terms of Sym-bodies at points where single factors vanish, via Laurent series along z_i = v_i (1 + t)^(2^(i-1))
"""

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple

from core.exceptions import NonCancellingPole
from core.scalars.factors import FactorProduct
from core.scalars.monomials import Monomial
from core.scalars.series import TruncatedSeries
from core.shuffle.elements import LaurentZ, z_name

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def binomial(w: int, n: int) -> Fraction:
    """w (w - 1) ... (w - n + 1) / n! for any integer w"""
    out = Fraction(1)
    for i in range(n):
        out = out * (w - i) / (i + 1)
    return out


class Branch(NamedTuple):
    """Where each body variable sits: its value at t = 0 and the exponent of (1 + t)."""

    values: Dict[str, Monomial]
    slopes: Dict[str, int]

    def locate(self, m: Monomial) -> Tuple[Monomial, int]:
        slope = sum(m.exponent(name) * s for name, s in self.slopes.items())
        return m.substitute(self.values), slope


class CurveFactor(NamedTuple):
    """(1 - value (1 + t)^slope)^exponent; lead is its t^0 coefficient, None when that vanishes."""

    value: Monomial
    slope: int
    exponent: int
    lead: Optional[Any]


class Resolved(NamedTuple):
    """A factor product read along a branch."""

    constant: Fraction
    prefactor: Tuple[Monomial, int]
    factors: Tuple[CurveFactor, ...]
    dead: int  # net exponent of factors that vanish identically in t


class CurveExpansion:
    """
    Accumulates numerator * factors terms along the curve z_i = values[i - 1] (1 + t)^(2^(i - 1))
    and returns the t^0 coefficient of their sum.

    A term whose factors vanish to net order -v at t = 0 only needs its unit
    part to order v, so terms regular at the point cost one scalar product.
    """

    def __init__(self, backend, values: Sequence[Monomial]):
        self.backend = backend
        self.values = list(values)
        self._terms: List[Tuple[int, LaurentZ, Branch, Tuple[Resolved, ...]]] = []

    def branch(self, perm: Optional[Sequence[int]] = None) -> Branch:
        """Body variable z_(i+1) runs along the curve of position perm[i]."""
        perm = range(len(self.values)) if perm is None else perm
        values = {z_name(i + 1): self.values[p] for i, p in enumerate(perm)}
        slopes = {z_name(i + 1): 1 << p for i, p in enumerate(perm)}
        return Branch(values, slopes)

    def resolve(self, fp: FactorProduct, branch: Branch) -> Resolved:
        factors, dead = [], 0
        for m, e in fp.factors.items():
            value, slope = branch.locate(m)
            if value.is_identity:
                if slope == 0:
                    dead += e
                    continue
                factors.append(CurveFactor(value, slope, e, None))
                continue
            lead = self.backend.one_minus(value)
            factors.append(CurveFactor(value, slope, e, None if self.backend.is_zero(lead) else lead))
        return Resolved(fp.constant, branch.locate(fp.prefactor), tuple(factors), dead)

    def add(self, numerator: LaurentZ, branch: Branch, *parts: Resolved) -> None:
        """
        Add numerator(branch) * prod(parts).

        Raises:
            NonCancellingPole: a factor of the denominator vanishes identically along the curve
        """
        dead = sum(p.dead for p in parts)
        if dead < 0:
            raise NonCancellingPole(f"net exponent {dead} of (1 - 1) that no direction resolves")
        if dead > 0 or numerator.is_zero() or any(p.constant == 0 for p in parts):
            return
        valuation = sum(f.exponent for p in parts for f in p.factors if f.lead is None)
        if valuation > 0:
            return
        self._terms.append((valuation, numerator, branch, parts))

    # ---- series ----

    def _shifted_power(self, value: Monomial, slope: int, order: int, start: int = 0) -> List[Any]:
        """Coefficients of t^start .. t^(start + order - 1) in value (1 + t)^slope."""
        v = self.backend.monomial(value)
        return [v * self.backend.rational(binomial(slope, n)) for n in range(start, start + order)]

    def _unit(self, f: CurveFactor, order: int) -> TruncatedSeries:
        """(1 - value (1 + t)^slope) / t^v with v = 0 or 1."""
        backend = self.backend
        if f.lead is None:
            coeffs = [-c for c in self._shifted_power(f.value, f.slope, order, start=1)]
        else:
            coeffs = [f.lead] + [-c for c in self._shifted_power(f.value, f.slope, order - 1, start=1)]
        unit = TruncatedSeries(backend, coeffs, order)
        return unit if f.exponent > 0 else unit.inverse()

    def _numerator(self, numerator: LaurentZ, branch: Branch, order: int) -> TruncatedSeries:
        total = TruncatedSeries(self.backend, [], order)
        for m, c in numerator.terms.items():
            value, slope = branch.locate(m)
            series = TruncatedSeries(self.backend, self._shifted_power(value, slope, order), order)
            total = total + series.scale(self.backend.rational(c))
        return total

    def _series(self, numerator: LaurentZ, branch: Branch, parts: Tuple[Resolved, ...], order: int) -> TruncatedSeries:
        backend = self.backend
        out = self._numerator(numerator, branch, order)
        for part in parts:
            out = out.scale(backend.rational(part.constant))
            out = out * TruncatedSeries(backend, self._shifted_power(*part.prefactor, order), order)
            for f in part.factors:
                unit = self._unit(f, order)
                for _ in range(abs(f.exponent)):
                    out = out * unit
        return out

    def constant_term(self) -> Any:
        """
        Coefficient of t^0 in the sum of all terms.

        Raises:
            NonCancellingPole: a negative power of t survives the sum
        """
        backend = self.backend
        poles = max((-v for v, *_ in self._terms), default=0)
        coeffs = [backend.zero() for _ in range(poles + 1)]
        for valuation, numerator, branch, parts in self._terms:
            series = self._series(numerator, branch, parts, 1 - valuation)
            for n in range(1 - valuation):
                coeffs[poles + valuation + n] = coeffs[poles + valuation + n] + series.coefficient(n)
        for power, c in zip(range(-poles, 0), coeffs):
            if not backend.is_zero(c):
                raise NonCancellingPole(f"t^{power} survives along the curve through {self.values}")
        if poles:
            logger.debug(f"cancelled poles up to t^-{poles} across {len(self._terms)} terms")
        return coeffs[poles]
