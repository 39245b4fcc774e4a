"""
Normal-Ordered Exponentials
prefactor * exp[sum_n a_-n b_-n x^n / n] exp[sum_n a_n b_n x^-n / n] acting on the colored Fock space
"""

import logging
import threading
from typing import Any, Callable, Dict, List, Tuple

from core.miura.fock import FockMonomial, FockSpace
from core.repk.currents import Current
from core.repk.operators import FunctionOperator, GradedOperator, Vector, add_into
from core.scalars.monomials import Monomial

logger = logging.getLogger(__name__)

# (color, n) -> coefficient of b^color_n x^-n / |n| in the exponent
Weight = Callable[[int, int], Any]


class NormalOrderedExponential:
    """
    A normal-ordered exponential of the colored bosons.

    Creation modes always stand to the left of annihilation modes: a mode of
    the exponential applies the annihilation part to a state first, degree by
    degree, and the creation part afterwards. Both parts are computed through
    N E_N = sum_s P_s E_{N-s} with P_s = sum_i a^i_s b^i_s.
    """

    def __init__(self, space: FockSpace, prefactor: Any, weight: Weight, label: str = "E"):
        self.space = space
        self.session = space.session
        self.prefactor = prefactor
        self.label = label
        self._weight = weight
        self._weights: Dict[Tuple[int, int], Any] = {}
        self._annihilated: Dict[FockMonomial, List[Vector]] = {}
        self._lock = threading.Lock()
        self.current = Current(label, self._mode)

    # ---- construction ----

    @classmethod
    def of_lambda(cls, space: FockSpace, color: int, shift: int = 0) -> "NormalOrderedExponential":
        """Lambda^color(x / q^shift) = u_color :exp b^color(x / q^shift):"""
        session = space.session
        u = space.torus[color - 1]

        def weight(i: int, n: int) -> Any:
            return session.mono(Monomial.q(n * shift)) if i == color else session.zero()

        return cls(space, session.mono(u), weight, f"Lambda{color}(x/q^{shift})")

    @classmethod
    def of_bosons(cls, space: FockSpace, weight: Weight, label: str) -> "NormalOrderedExponential":
        return cls(space, space.session.one(), weight, label)

    def weight(self, color: int, n: int) -> Any:
        key = (color, n)
        with self._lock:
            value = self._weights.get(key)
        if value is None:
            value = self._weight(color, n)
            with self._lock:
                self._weights[key] = value
        return value

    def merged(self, other: "NormalOrderedExponential") -> "NormalOrderedExponential":
        """:self other:, exponents added and prefactors multiplied."""
        return NormalOrderedExponential(
            self.space,
            self.prefactor * other.prefactor,
            lambda i, n: self.weight(i, n) + other.weight(i, n),
            f":{self.label} {other.label}:",
        )

    # ---- action ----

    def _weights_at(self, n: int) -> List[Any]:
        return [self.weight(i, n) for i in range(1, self.space.r + 1)]

    def _annihilation_tower(self, state: FockMonomial) -> List[Vector]:
        """[E_+^(0)|state>, ..., E_+^(|state|)|state>]"""
        with self._lock:
            cached = self._annihilated.get(state)
        if cached is not None:
            return cached
        session, backend = self.session, self.session.backend
        tower: List[Vector] = [{state: session.one()}]
        for big_n in range(1, state.size + 1):
            acc: Vector = {}
            for s in range(1, big_n + 1):
                weights = self._weights_at(s)
                for key, coeff in tower[big_n - s].items():
                    add_into(acc, self.space.annihilate(key, s, weights), coeff, backend)
            tower.append({k: v / session.rational(big_n) for k, v in acc.items()})
        with self._lock:
            self._annihilated.setdefault(state, tower)
        return tower

    def _creation(self, vec: Vector, degree: int) -> Vector:
        """E_-^(degree) applied to vec."""
        session, backend = self.session, self.session.backend
        tower: List[Vector] = [vec]
        for big_n in range(1, degree + 1):
            acc: Vector = {}
            for s in range(1, big_n + 1):
                weights = self._weights_at(-s)
                for key, coeff in tower[big_n - s].items():
                    add_into(acc, self.space.create(key, s, weights), coeff, backend)
            tower.append({k: v / session.rational(big_n) for k, v in acc.items()})
        return tower[degree]

    def _mode(self, d: int) -> GradedOperator:
        def column(state: FockMonomial) -> Vector:
            out: Vector = {}
            for m, lowered in enumerate(self._annihilation_tower(state)):
                degree = m - d
                if degree < 0 or not lowered:
                    continue
                add_into(out, self._creation(lowered, degree), self.prefactor, self.session.backend)
            return out

        return FunctionOperator(self.session, d, f"{self.label}[{d}]", column, self.space.tag, self.space.tag)

    def mode(self, d: int) -> GradedOperator:
        """Coefficient of x^-d."""
        return self.current.mode(d)

    def __repr__(self) -> str:
        return f"NormalOrderedExponential({self.label})"


def miura_product(space: FockSpace, colors: Tuple[int, ...]) -> NormalOrderedExponential:
    """:Lambda^{i_1}(x) Lambda^{i_2}(x/q) ... Lambda^{i_k}(x/q^{k-1}):"""
    out = NormalOrderedExponential.of_lambda(space, colors[0], 0)
    for j, color in enumerate(colors[1:], start=1):
        out = out.merged(NormalOrderedExponential.of_lambda(space, color, j))
    return out


def total_boson_exponential(space: FockSpace) -> NormalOrderedExponential:
    """u_1 ... u_r :exp p(x):"""
    session = space.session
    inner = NormalOrderedExponential.of_bosons(space, lambda i, n: session.mono(Monomial.q(n * (i - 1))), "exp p(x)")
    return NormalOrderedExponential(space, session.mono(session.torus_product(space.tag)), inner.weight, "u :exp p(x):")
