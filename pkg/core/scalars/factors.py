"""
Factor Products
Products c * M0 * prod (1 - M)^e whose singular (1 - 1) factors are cancelled literally
"""

from collections import Counter
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple, Union

from core.scalars.monomials import Character, Monomial

# a mapping, or (M, e) pairs whose repeated M accumulate
FactorItems = Union[Mapping[Monomial, int], Iterable[Tuple[Monomial, int]]]

Q = Monomial.q()
Q1 = Monomial.gen("q1")
Q2 = Monomial.gen("q2")


class FactorProduct:
    """
    constant * prefactor * prod over (M, e) of (1 - M)^e.

    Factors with M = 1 are kept as they are; the product is evaluable when the
    net exponent of those is >= 0 and evaluates to zero when it is > 0.
    """

    __slots__ = ("constant", "prefactor", "factors")

    def __init__(
        self,
        constant: Union[int, Fraction] = 1,
        prefactor: Optional[Monomial] = None,
        factors: Optional[FactorItems] = None,
    ):
        self.constant = Fraction(constant)
        self.prefactor = prefactor or Monomial.one()
        counter: Counter = Counter()
        items = factors.items() if isinstance(factors, Mapping) else (factors or ())
        for m, e in items:
            counter[m] += e
        self.factors: Dict[Monomial, int] = {m: e for m, e in counter.items() if e != 0}

    @classmethod
    def one(cls) -> "FactorProduct":
        return cls()

    @classmethod
    def one_minus(cls, m: Monomial, e: int = 1) -> "FactorProduct":
        return cls(factors={m: e})

    @classmethod
    def monomial(cls, m: Monomial, constant: Union[int, Fraction] = 1) -> "FactorProduct":
        return cls(constant=constant, prefactor=m)

    def __mul__(self, other: "FactorProduct") -> "FactorProduct":
        merged = Counter(self.factors)
        for m, e in other.factors.items():
            merged[m] += e
        return FactorProduct(self.constant * other.constant, self.prefactor * other.prefactor, merged)

    def __pow__(self, n: int) -> "FactorProduct":
        if n < 0:
            return self.inverse() ** (-n)
        out = FactorProduct()
        for _ in range(n):
            out = out * self
        return out

    def inverse(self) -> "FactorProduct":
        if self.constant == 0:
            raise ZeroDivisionError("inverse of a zero factor product")
        return FactorProduct(
            1 / self.constant,
            self.prefactor.inverse(),
            {m: -e for m, e in self.factors.items()},
        )

    def identity_exponent(self) -> int:
        return self.factors.get(Monomial.one(), 0)

    @property
    def evaluable(self) -> bool:
        return self.identity_exponent() >= 0

    def regular_factors(self) -> Iterator[Tuple[Monomial, int]]:
        for m, e in sorted(self.factors.items(), key=lambda kv: kv[0].items()):
            if not m.is_identity:
                yield m, e

    def substitute(self, mapping: Mapping[str, Monomial]) -> "FactorProduct":
        return FactorProduct(
            self.constant,
            self.prefactor.substitute(mapping),
            {m.substitute(mapping): e for m, e in self.factors.items()},
        )

    def __repr__(self) -> str:
        body = " * ".join(f"(1-{m})^{e}" for m, e in sorted(self.factors.items(), key=lambda kv: kv[0].items()))
        return f"{self.constant} * {self.prefactor} * {body or '1'}"


def product(items: Iterable[FactorProduct]) -> FactorProduct:
    out = FactorProduct()
    for f in items:
        out = out * f
    return out


# ============= BUILDING BLOCKS =============

def zeta(x: Monomial) -> FactorProduct:
    """(1 - q1 x)(1 - q2 x) / ((1 - x)(1 - q x))"""
    return FactorProduct(factors={Q1 * x: 1, Q2 * x: 1, x: -1, Q * x: -1})


def zeta_inverse(x: Monomial) -> FactorProduct:
    return zeta(x).inverse()


def tau(z: Monomial, torus: Sequence[Monomial]) -> FactorProduct:
    """prod_i (1 - z / u_i)"""
    return product(FactorProduct.one_minus(z / u) for u in torus)


def tau_flipped(z: Monomial, torus: Sequence[Monomial]) -> FactorProduct:
    """
    prod_i (1 - z / u_i) written as prod_i (-z / u_i)(1 - u_i / z).

    Used wherever the factor is singular at a corner box, so that its (1 - 1)
    cancels against the (1 - 1) of zeta(1).
    """
    out = FactorProduct()
    for u in torus:
        out = out * FactorProduct(-1, z / u, {u / z: 1})
    return out


def wedge_bullet(c: Character) -> FactorProduct:
    """prod over weights w of (1 - w^-1)^multiplicity"""
    return FactorProduct(factors={m.inverse(): e for m, e in c.items()})


def box_prefactor() -> FactorProduct:
    """(1 - q1)(1 - q2) / (1 - q)"""
    return FactorProduct(factors={Q1: 1, Q2: 1, Q: -1})
