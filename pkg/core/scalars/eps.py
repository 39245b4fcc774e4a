"""
Eps-Series Scalars
Laurent series in eps with probe coefficients, realizing q_i = exp(eps hbar_i) and u_i = exp(eps ubar_i)
"""

from fractions import Fraction
from typing import List, Optional, Sequence

from core.exceptions import PrecisionLoss, ProbeCollision
from core.scalars.backend import Number, ScalarBackend
from core.scalars.monomials import GeneratorSet, Monomial
from core.scalars.probe import ProbeContext, ProbeScalar, _rational

EXACT = 10**9  # absolute precision of series known exactly


def bar_name(name: str) -> str:
    """Name of the additive generator attached to a multiplicative one: q1 -> hbar1, u2 -> u2bar."""
    if name in ("q1", "q2"):
        return f"hbar{name[1]}"
    return f"{name}bar"


class EpsSeries:
    """
    sum_{n >= start} c_n eps^n + O(eps^abs_prec).

    `coeffs[i]` is the coefficient of eps^(start + i). A series whose known
    coefficients all vanish is the zero series O(eps^abs_prec).
    """

    __slots__ = ("ctx", "start", "coeffs", "abs_prec")

    def __init__(self, ctx: ProbeContext, start: int, coeffs: Sequence[ProbeScalar], abs_prec: int):
        self.ctx = ctx
        coeffs = list(coeffs)[: max(0, abs_prec - start)] if abs_prec < EXACT else list(coeffs)
        while coeffs and coeffs[0].is_zero():
            coeffs.pop(0)
            start += 1
        while coeffs and abs_prec >= EXACT and coeffs[-1].is_zero():
            coeffs.pop()
        if not coeffs:
            start = abs_prec
        self.start = start
        self.coeffs: List[ProbeScalar] = coeffs
        self.abs_prec = abs_prec

    # ---- helpers ----

    def _zero_coeff(self) -> ProbeScalar:
        return ProbeScalar(self.ctx, (0,) * self.ctx.repetitions)

    def coefficient(self, n: int) -> ProbeScalar:
        if n >= self.abs_prec:
            raise PrecisionLoss(f"eps^{n} requested from a series known to O(eps^{self.abs_prec})")
        i = n - self.start
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self._zero_coeff()

    @property
    def valuation(self) -> Optional[int]:
        return self.start if self.coeffs else None

    @property
    def relative_precision(self) -> int:
        return self.abs_prec - self.start if self.abs_prec < EXACT else EXACT

    def _coerce(self, other) -> "EpsSeries":
        if isinstance(other, EpsSeries):
            return other
        return EpsSeries(self.ctx, 0, [_rational(self.ctx, Fraction(other))], EXACT)

    def shift(self, k: int) -> "EpsSeries":
        """Multiply by eps^k."""
        prec = self.abs_prec + k if self.abs_prec < EXACT else EXACT
        return EpsSeries(self.ctx, self.start + k, self.coeffs, prec)

    # ---- arithmetic ----

    def __add__(self, other) -> "EpsSeries":
        other = self._coerce(other)
        abs_prec = min(self.abs_prec, other.abs_prec)
        if not self.coeffs:
            return EpsSeries(self.ctx, other.start, other.coeffs, abs_prec)
        if not other.coeffs:
            return EpsSeries(self.ctx, self.start, self.coeffs, abs_prec)
        start = min(self.start, other.start)
        end = max(self.start + len(self.coeffs), other.start + len(other.coeffs))
        if abs_prec < EXACT:
            end = min(end, abs_prec)
        coeffs = []
        for n in range(start, end):
            c = self._zero_coeff()
            i, j = n - self.start, n - other.start
            if 0 <= i < len(self.coeffs):
                c = c + self.coeffs[i]
            if 0 <= j < len(other.coeffs):
                c = c + other.coeffs[j]
            coeffs.append(c)
        return EpsSeries(self.ctx, start, coeffs, abs_prec)

    __radd__ = __add__

    def __neg__(self) -> "EpsSeries":
        return EpsSeries(self.ctx, self.start, [-c for c in self.coeffs], self.abs_prec)

    def __sub__(self, other) -> "EpsSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "EpsSeries":
        return self._coerce(other) - self

    def __mul__(self, other) -> "EpsSeries":
        other = self._coerce(other)
        start = self.start + other.start
        rel = min(self.relative_precision, other.relative_precision)
        if not self.coeffs or not other.coeffs:
            # zero times anything keeps the zero's absolute precision, shifted by the other valuation
            zero, other_part = (self, other) if not self.coeffs else (other, self)
            shift = other_part.start if other_part.coeffs else 0
            prec = zero.abs_prec + shift if zero.abs_prec < EXACT else EXACT
            return EpsSeries(self.ctx, prec, [], prec)
        length = len(self.coeffs) + len(other.coeffs) - 1
        if rel < EXACT:
            length = min(length, rel)
        coeffs = [self._zero_coeff() for _ in range(length)]
        for i, a in enumerate(self.coeffs):
            if i >= length:
                break
            for j, b in enumerate(other.coeffs):
                if i + j >= length:
                    break
                coeffs[i + j] = coeffs[i + j] + a * b
        abs_prec = start + rel if rel < EXACT else EXACT
        return EpsSeries(self.ctx, start, coeffs, abs_prec)

    __rmul__ = __mul__

    def inverse(self) -> "EpsSeries":
        if not self.coeffs:
            raise PrecisionLoss(f"inverse of a series that vanishes to O(eps^{self.abs_prec})")
        lead = self.coeffs[0]
        if any(v == 0 for v in lead.vals):
            raise ProbeCollision("leading eps-coefficient vanishes at a probe point")
        rel = self.relative_precision
        length = rel if rel < EXACT else None
        if length is None:
            if len(self.coeffs) == 1:
                return EpsSeries(self.ctx, -self.start, [lead.inverse()], EXACT)
            raise PrecisionLoss("inverse of an exact polynomial in eps needs a truncation order")
        inv_lead = lead.inverse()
        out = [inv_lead]
        for n in range(1, length):
            acc = self._zero_coeff()
            for k in range(1, min(n, len(self.coeffs) - 1) + 1):
                acc = acc + self.coeffs[k] * out[n - k]
            out.append(-acc * inv_lead)
        return EpsSeries(self.ctx, -self.start, out, -self.start + length)

    def __truediv__(self, other) -> "EpsSeries":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> "EpsSeries":
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "EpsSeries":
        base = self if n >= 0 else self.inverse()
        out = self._coerce(1)
        for _ in range(abs(n)):
            out = out * base
        return out

    def is_zero(self) -> bool:
        """True when every known coefficient vanishes."""
        return not self.coeffs

    def __eq__(self, other) -> bool:
        try:
            return (self - other).is_zero()
        except TypeError:
            return False

    __hash__ = None

    def canonical(self) -> str:
        terms = [f"{c.canonical()}*eps^{self.start + i}" for i, c in enumerate(self.coeffs)]
        tail = "" if self.abs_prec >= EXACT else f" + O(eps^{self.abs_prec})"
        return (" + ".join(terms) or "0") + tail

    def __repr__(self) -> str:
        return f"EpsSeries({self.canonical()})"


class EpsBackend(ScalarBackend):
    """
    Scalars as eps-series: every generator g becomes exp(eps * gbar).

    The additive values gbar are the probe residues of bar_name(g), so the
    leading coefficients can be compared with an AdditiveBackend over the same
    probe context.
    """

    name = "eps"

    def __init__(self, generators: GeneratorSet, ctx: ProbeContext, order: int = 8):
        super().__init__(generators)
        self.ctx = ctx
        self.order = order
        self._factorials = [1]
        for n in range(1, order + 2):
            self._factorials.append(self._factorials[-1] * n)

    def linear_value(self, m: Monomial) -> ProbeScalar:
        p = self.ctx.prime
        vals = [0] * self.ctx.repetitions
        for name, e in m.items():
            res = self.ctx.residues(bar_name(name))
            for rep in range(self.ctx.repetitions):
                vals[rep] = (vals[rep] + e * res[rep]) % p
        return ProbeScalar(self.ctx, tuple(vals))

    def rational(self, value: Number) -> EpsSeries:
        return EpsSeries(self.ctx, 0, [_rational(self.ctx, Fraction(value))], EXACT)

    def _exp_terms(self, c: ProbeScalar, first: int, count: int) -> List[ProbeScalar]:
        out = []
        for n in range(first, first + count):
            out.append(c ** n * _rational(self.ctx, Fraction(1, self._factorials[n])))
        return out

    def monomial(self, m: Monomial) -> EpsSeries:
        if m.is_identity:
            return self.one()
        c = self.linear_value(m)
        return EpsSeries(self.ctx, 0, self._exp_terms(c, 0, self.order), self.order)

    def one_minus(self, m: Monomial) -> EpsSeries:
        c = self.linear_value(m)
        if any(v == 0 for v in c.vals):
            raise ProbeCollision(f"linear form of {m} vanishes at seed {self.ctx.seed}")
        terms = [-t for t in self._exp_terms(c, 1, self.order)]
        return EpsSeries(self.ctx, 1, terms, 1 + self.order)

    def eps(self, power: int = 1) -> EpsSeries:
        return EpsSeries(self.ctx, power, [_rational(self.ctx, Fraction(1))], EXACT)

    def canonical(self, value: EpsSeries) -> str:
        return value.canonical()

    def clone(self) -> "EpsBackend":
        return EpsBackend(self.generators, self.ctx.clone(), self.order)
