"""
Scalar Backend Base Class
Common interface for exact, probe, additive and eps-series arithmetic
"""

from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Any, Iterable, Tuple, Union

from core.exceptions import NonCancellingPole
from core.scalars.factors import FactorProduct
from core.scalars.monomials import GeneratorSet, Monomial

Number = Union[int, Fraction]


class ScalarBackend(ABC):
    """
    Abstract arithmetic backend.

    Every backend turns the same three primitives into its own scalar type:
    1. rational constants
    2. Laurent monomials in the session generators
    3. factors (1 - M) for M != 1
    Everything else (factor products, Laurent sums, equality) is built on those.
    Scalars returned by a backend support + - * / ** and unary minus.
    """

    name: str = "abstract"

    def __init__(self, generators: GeneratorSet):
        self.generators = generators

    @abstractmethod
    def rational(self, value: Number) -> Any:
        """
        Embed a rational number.

        Args:
            value: int or Fraction

        Returns:
            Backend scalar
        """
        pass

    @abstractmethod
    def monomial(self, m: Monomial) -> Any:
        """
        Evaluate a Laurent monomial.

        Args:
            m: Monomial in session generators

        Returns:
            Backend scalar
        """
        pass

    @abstractmethod
    def one_minus(self, m: Monomial) -> Any:
        """
        Evaluate 1 - m for a non-identity monomial.

        Args:
            m: Monomial different from 1

        Returns:
            Backend scalar
        """
        pass

    @abstractmethod
    def canonical(self, value: Any) -> str:
        """Deterministic string form used in JSON output."""
        pass

    @abstractmethod
    def clone(self) -> "ScalarBackend":
        """Independent copy for a worker thread."""
        pass

    # ---- derived operations ----

    def zero(self) -> Any:
        return self.rational(0)

    def one(self) -> Any:
        return self.rational(1)

    def laurent(self, terms: Iterable[Tuple[Number, Monomial]]) -> Any:
        total = self.zero()
        for coeff, m in terms:
            if coeff:
                total = total + self.rational(coeff) * self.monomial(m)
        return total

    def factor_product(self, fp: FactorProduct) -> Any:
        """
        Convert an evaluable factor product.

        Raises:
            NonCancellingPole: more (1 - 1) factors below than above
        """
        net = fp.identity_exponent()
        if net < 0:
            raise NonCancellingPole(f"net exponent {net} of (1 - 1) in {fp!r}")
        if net > 0 or fp.constant == 0:
            return self.zero()
        value = self.rational(fp.constant) * self.monomial(fp.prefactor)
        for m, e in fp.regular_factors():
            factor = self.one_minus(m)
            if e < 0:
                factor = self.one() / factor
            for _ in range(abs(e)):
                value = value * factor
        return value

    def is_zero(self, value: Any) -> bool:
        return value.is_zero()

    def equal(self, a: Any, b: Any) -> bool:
        return (a - b).is_zero()

    def power(self, value: Any, n: int) -> Any:
        if n < 0:
            value = self.one() / value
            n = -n
        out = self.one()
        for _ in range(n):
            out = out * value
        return out

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({len(self.generators)} generators)"
