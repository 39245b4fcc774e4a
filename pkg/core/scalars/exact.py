"""
Exact Scalars
Lazily normalized fractions over sympy polynomial rings with literal-factor denominators
"""

from collections import Counter
from fractions import Fraction
from typing import Dict, Tuple

import sympy
from sympy import QQ
from sympy.polys.rings import PolyElement, ring

from core.scalars.backend import Number, ScalarBackend
from core.scalars.monomials import GeneratorSet, Monomial


class ExactField:
    """The polynomial ring Q[generators] underlying every exact scalar of a session."""

    def __init__(self, generators: GeneratorSet):
        self.generators = generators
        self.ring, *self.gens = ring(list(generators.names), QQ)
        self.ngens = len(generators)
        self.zero_monom = (0,) * self.ngens

    def exponent_vector(self, m: Monomial) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        pos = [0] * self.ngens
        neg = [0] * self.ngens
        for name, e in m.items():
            i = self.generators.index[name]
            if e > 0:
                pos[i] = e
            else:
                neg[i] = -e
        return tuple(pos), tuple(neg)

    def term(self, monom: Tuple[int, ...], coeff=1) -> PolyElement:
        return self.ring.term_new(monom, coeff)


def _monomial_content(p: PolyElement, ngens: int) -> Tuple[int, ...]:
    monoms = list(p.itermonoms())
    if not monoms:
        return (0,) * ngens
    return tuple(min(m[i] for m in monoms) for i in range(ngens))


def _shift(p: PolyElement, field: ExactField, delta: Tuple[int, ...], sign: int) -> PolyElement:
    if not any(delta):
        return p
    return field.ring.from_dict({tuple(a + sign * d for a, d in zip(m, delta)): c for m, c in p.iterterms()})


class ExactScalar:
    """
    num / (x^mono * prod f^e) with num, f in Q[generators].

    Denominator factors are kept monic and free of monomial content, so equal
    factors merge literally. No gcd is ever taken; equality is decided by
    bringing both sides to a common denominator.
    """

    __slots__ = ("field", "num", "mono", "facs")

    def __init__(self, field: ExactField, num: PolyElement, mono: Tuple[int, ...] = None, facs: Dict = None):
        self.field = field
        self.num = num
        self.mono = mono or field.zero_monom
        self.facs: Dict[PolyElement, int] = dict(facs or {})
        if not num:
            self.mono = field.zero_monom
            self.facs = {}
        else:
            self._strip_monomial_content()

    def _strip_monomial_content(self) -> None:
        content = _monomial_content(self.num, self.field.ngens)
        common = tuple(min(c, m) for c, m in zip(content, self.mono))
        if any(common):
            self.num = _shift(self.num, self.field, common, -1)
            self.mono = tuple(m - c for m, c in zip(self.mono, common))

    def _cancel_factors(self) -> None:
        for f in list(self.facs):
            e = self.facs[f]
            while e > 0 and self.num:
                quotient, remainder = self.num.div(f)
                if remainder:
                    break
                self.num = quotient
                e -= 1
            if e:
                self.facs[f] = e
            else:
                del self.facs[f]

    def _coerce(self, other) -> "ExactScalar":
        if isinstance(other, ExactScalar):
            return other
        return ExactScalar(self.field, self.field.ring(QQ(Fraction(other).numerator, Fraction(other).denominator)))

    def _denominator_poly(self, mono, facs) -> PolyElement:
        out = self.field.term(mono)
        for f, e in facs.items():
            out = out * f ** e
        return out

    # ---- arithmetic ----

    def __add__(self, other) -> "ExactScalar":
        other = self._coerce(other)
        if not other.num:
            return self
        if not self.num:
            return other
        mono = tuple(max(a, b) for a, b in zip(self.mono, other.mono))
        facs = Counter(self.facs)
        for f, e in other.facs.items():
            facs[f] = max(facs[f], e)
        left = self.num * self._denominator_poly(
            tuple(m - a for m, a in zip(mono, self.mono)),
            {f: e - self.facs.get(f, 0) for f, e in facs.items() if e > self.facs.get(f, 0)},
        )
        right = other.num * self._denominator_poly(
            tuple(m - b for m, b in zip(mono, other.mono)),
            {f: e - other.facs.get(f, 0) for f, e in facs.items() if e > other.facs.get(f, 0)},
        )
        out = ExactScalar(self.field, left + right, mono, facs)
        out._cancel_factors()
        return out

    __radd__ = __add__

    def __neg__(self) -> "ExactScalar":
        return ExactScalar(self.field, -self.num, self.mono, self.facs)

    def __sub__(self, other) -> "ExactScalar":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "ExactScalar":
        return self._coerce(other) - self

    def __mul__(self, other) -> "ExactScalar":
        other = self._coerce(other)
        if not self.num or not other.num:
            return ExactScalar(self.field, self.field.ring.zero)
        facs = Counter(self.facs)
        for f, e in other.facs.items():
            facs[f] += e
        mono = tuple(a + b for a, b in zip(self.mono, other.mono))
        return ExactScalar(self.field, self.num * other.num, mono, facs)

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        if not self.num:
            raise ZeroDivisionError("inverse of exact zero")
        content = _monomial_content(self.num, self.field.ngens)
        core = _shift(self.num, self.field, content, -1)
        lead = core.LC
        core = core.quo_ground(lead)
        num = self._denominator_poly(self.mono, self.facs).quo_ground(lead)
        facs = {} if core.is_ground else {core: 1}
        return ExactScalar(self.field, num, content, facs)

    def __truediv__(self, other) -> "ExactScalar":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> "ExactScalar":
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "ExactScalar":
        base = self if n >= 0 else self.inverse()
        out = self._coerce(1)
        for _ in range(abs(n)):
            out = out * base
        return out

    def is_zero(self) -> bool:
        return not self.num

    def __eq__(self, other) -> bool:
        try:
            return (self - other).is_zero()
        except TypeError:
            return False

    __hash__ = None

    # ---- conversion ----

    def as_expr(self) -> sympy.Expr:
        return self.num.as_expr() / self._denominator_poly(self.mono, self.facs).as_expr()

    def canonical(self) -> str:
        num, den = sympy.fraction(sympy.cancel(self.as_expr()))
        num_s = sympy.sstr(sympy.expand(num))
        den_s = sympy.sstr(sympy.expand(den))
        return num_s if den_s == "1" else f"{num_s}/{den_s}"

    def __repr__(self) -> str:
        return f"ExactScalar({self.canonical()})"


class ExactBackend(ScalarBackend):
    """Exact arithmetic in Q(generators)."""

    name = "exact"

    def __init__(self, generators: GeneratorSet):
        super().__init__(generators)
        self.field = ExactField(generators)

    def rational(self, value: Number) -> ExactScalar:
        value = Fraction(value)
        return ExactScalar(self.field, self.field.ring(QQ(value.numerator, value.denominator)))

    def monomial(self, m: Monomial) -> ExactScalar:
        pos, neg = self.field.exponent_vector(m)
        return ExactScalar(self.field, self.field.term(pos), neg)

    def one_minus(self, m: Monomial) -> ExactScalar:
        pos, neg = self.field.exponent_vector(m)
        return ExactScalar(self.field, self.field.term(neg) - self.field.term(pos), neg)

    def canonical(self, value: ExactScalar) -> str:
        return value.canonical()

    def from_expr(self, expr: sympy.Expr) -> ExactScalar:
        """Rebuild an exact scalar from a sympy expression in the session symbols."""
        num, den = sympy.fraction(sympy.together(expr))
        symbols = self.field.ring.symbols
        n = self.field.ring.from_dict(sympy.Poly(num, *symbols).as_dict()) if num.free_symbols or num != 0 else self.field.ring.zero
        d = self.field.ring.from_dict(sympy.Poly(den, *symbols).as_dict())
        return ExactScalar(self.field, n) / ExactScalar(self.field, d)

    def clone(self) -> "ExactBackend":
        return self
