"""
Additive Scalars
Leading eps-order of factor products: (1 - M) -> -L(M), M -> 1, over an inner exact or probe backend
"""

from typing import Any

from core.exceptions import NonCancellingPole
from core.scalars.backend import Number, ScalarBackend
from core.scalars.eps import bar_name
from core.scalars.monomials import GeneratorSet, Monomial


def bar_generators(generators: GeneratorSet) -> GeneratorSet:
    return GeneratorSet([bar_name(n) for n in generators.names])


class AdditiveBackend(ScalarBackend):
    """
    Cohomological limit of the multiplicative backends.

    Values live in the inner backend over the bar generators (hbar1, hbar2,
    u1bar, ..., mbar, ybar). Monomials map to 1 and every factor (1 - M) to
    minus its linear form, which turns zeta into zeta-bar, tau into tau-bar
    and the box prefactor into hbar1 hbar2 / (-hbar).
    """

    name = "additive"

    def __init__(self, generators: GeneratorSet, inner: ScalarBackend):
        super().__init__(generators)
        self.inner = inner

    @classmethod
    def over(cls, generators: GeneratorSet, inner_factory) -> "AdditiveBackend":
        """Build with an inner backend created from the bar generator set."""
        return cls(generators, inner_factory(bar_generators(generators)))

    def linear_form(self, m: Monomial) -> Any:
        total = self.inner.zero()
        for name, e in m.items():
            total = total + self.inner.rational(e) * self.inner.monomial(Monomial.gen(bar_name(name)))
        return total

    def bar(self, name: str) -> Any:
        return self.inner.monomial(Monomial.gen(bar_name(name)))

    def rational(self, value: Number) -> Any:
        return self.inner.rational(value)

    def monomial(self, m: Monomial) -> Any:
        return self.inner.one()

    def one_minus(self, m: Monomial) -> Any:
        value = -self.linear_form(m)
        if value.is_zero():
            raise NonCancellingPole(f"linear form of {m} vanishes identically")
        return value

    def canonical(self, value: Any) -> str:
        return self.inner.canonical(value)

    def clone(self) -> "AdditiveBackend":
        return AdditiveBackend(self.generators, self.inner.clone())
