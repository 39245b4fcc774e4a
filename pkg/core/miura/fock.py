"""
Colored Fock Space
The r-colored deformed Heisenberg algebra acting on monomials in creation modes
"""

import logging
import threading
from dataclasses import dataclass
from typing import Any, Callable, Dict, Hashable, Iterator, List, Sequence, Tuple

from core.repk.operators import FunctionOperator, GradedOperator, Identity, Vector, add_into, linear_combination
from core.scalars.factors import Q1, Q2, FactorProduct
from core.scalars.monomials import Monomial
from core.shapes.partitions import count_rpartitions, partitions_of

logger = logging.getLogger(__name__)

# (color, n) with n >= 1 stands for b^color_{-n}
Mode = Tuple[int, int]


@dataclass(frozen=True, order=True)
class FockMonomial:
    """b^{i_1}_{-n_1} ... b^{i_s}_{-n_s} |0>, kept as a sorted multiset of creation modes."""

    modes: Tuple[Mode, ...] = ()

    def __post_init__(self):
        modes = tuple(sorted((int(i), int(n)) for i, n in self.modes))
        if any(i < 1 or n < 1 for i, n in modes):
            raise ValueError(f"not a creation monomial: {modes}")
        object.__setattr__(self, "modes", modes)

    @property
    def size(self) -> int:
        return sum(n for _, n in self.modes)

    def multiplicity(self, color: int, n: int) -> int:
        return self.modes.count((color, n))

    def with_mode(self, color: int, n: int) -> "FockMonomial":
        return FockMonomial(self.modes + ((color, n),))

    def without_mode(self, color: int, n: int) -> "FockMonomial":
        modes = list(self.modes)
        modes.remove((color, n))
        return FockMonomial(tuple(modes))

    def to_json(self) -> List[List[int]]:
        return [[i, n] for i, n in self.modes]

    def __repr__(self) -> str:
        if not self.modes:
            return "|0>"
        return " ".join(f"b{i}[-{n}]" for i, n in self.modes) + "|0>"


def enumerate_fock(r: int, n: int) -> List[FockMonomial]:
    """All creation monomials of degree n in r colors."""
    out: List[FockMonomial] = []

    def fill(color: int, remaining: int, acc: Tuple[Mode, ...]) -> None:
        if color > r:
            if remaining == 0:
                out.append(FockMonomial(acc))
            return
        for size in range(remaining + 1):
            for part in partitions_of(size):
                fill(color + 1, remaining - size, acc + tuple((color, p) for p in part.parts))

    fill(1, n, ())
    return sorted(out)


def fock_dimension_table(r: int, max_degree: int) -> List[Dict[str, int]]:
    """Graded dimension of the Fock space next to the number of r-partitions."""
    return [
        {"degree": n, "fock": len(enumerate_fock(r, n)), "rpartitions": count_rpartitions(r, n)}
        for n in range(max_degree + 1)
    ]


class FockSpace:
    """
    The r-colored Fock module of the deformed Heisenberg algebra

        [b^i_-n, b^j_n] = n (1-q1^n)(1-q2^n) x {1 - q^-n if i < j, 1 if i = j, 0 if i > j}

    with b^i_n |0> = 0 for n > 0. Creation modes of all colors commute, so
    annihilation modes act as derivations of the creation monomials.
    """

    def __init__(self, session, tag: str = "u"):
        self.session = session
        self.backend = session.backend
        self.r = session.rank
        self.tag = tag
        self.torus: List[Monomial] = session.torus(tag)
        self._operators: Dict[Hashable, GradedOperator] = {}
        self._lock = threading.Lock()
        logger.info(f"FockSpace initialized: r={self.r}, backend={session.mode}")

    def _cached(self, key: Hashable, factory: Callable[[], GradedOperator]) -> GradedOperator:
        with self._lock:
            op = self._operators.get(key)
        if op is None:
            op = factory()
            with self._lock:
                op = self._operators.setdefault(key, op)
        return op

    # ============= BASIS =============

    def states(self, size: int) -> List[FockMonomial]:
        return enumerate_fock(self.r, size)

    def vacuum(self) -> FockMonomial:
        return FockMonomial()

    # ============= HEISENBERG ACTION =============

    def pairing(self, i: int, j: int, n: int) -> Any:
        """[b^i_-n, b^j_n] as a scalar, n > 0."""
        if i > j:
            return self.session.zero()
        value = self.session.rational(n) * self.session.fp(FactorProduct(factors={Q1 ** n: 1, Q2 ** n: 1}))
        if i < j:
            value = value * self.session.fp(FactorProduct(factors={Monomial.q(-n): 1}))
        return value

    def annihilate(self, state: FockMonomial, n: int, weights: Sequence[Any]) -> Vector:
        """sum_i weights[i-1] b^i_n |state>, n > 0."""
        out: Vector = {}
        for j, m in set(state.modes):
            if m != n:
                continue
            rest = state.without_mode(j, n)
            coeff = self.session.zero()
            for i, w in enumerate(weights, start=1):
                # [b^i_n, b^j_-n] = -[b^j_-n, b^i_n]
                coeff = coeff - w * self.pairing(j, i, n)
            add_into(out, {rest: self.session.rational(state.multiplicity(j, n))}, coeff, self.backend)
        return out

    def create(self, state: FockMonomial, n: int, weights: Sequence[Any]) -> Vector:
        """sum_i weights[i-1] b^i_-n |state>, n > 0."""
        out: Vector = {}
        for i, w in enumerate(weights, start=1):
            add_into(out, {state.with_mode(i, n): self.session.one()}, w, self.backend)
        return out

    def b_action(self, color: int, n: int, state: FockMonomial) -> Vector:
        """b^color_n |state> for n != 0."""
        if n == 0:
            raise ValueError("b_0 is not a mode")
        weights = [self.session.one() if i == color else self.session.zero() for i in range(1, self.r + 1)]
        if n < 0:
            return {state.with_mode(color, -n): self.session.one()}
        return self.annihilate(state, n, weights)

    def b_mode(self, color: int, n: int) -> GradedOperator:
        return self._cached(
            ("b", color, n),
            lambda: FunctionOperator(self.session, n, f"b{color}[{n}]", lambda s: self.b_action(color, n, s), self.tag, self.tag),
        )

    def p_weights(self, n: int) -> List[Any]:
        """q^{n(i-1)} for i = 1..r"""
        return [self.session.mono(Monomial.q(n * (i - 1))) for i in range(1, self.r + 1)]

    def boson(self, n: int) -> GradedOperator:
        """p_n = sum_i b^i_n q^{n(i-1)}"""
        if n == 0:
            raise ValueError("p_0 is not a boson")

        def column(state: FockMonomial) -> Vector:
            weights = self.p_weights(n)
            return self.create(state, -n, weights) if n < 0 else self.annihilate(state, n, weights)

        return self._cached(("p", n), lambda: FunctionOperator(self.session, n, f"p[{n}]", column, self.tag, self.tag))

    def h_boson(self, n: int) -> GradedOperator:
        """Coefficient of z^|n| in exp(sum_m p_{sm} z^m / m), s the sign of n."""
        if n == 0:
            raise ValueError("h_0 is not a boson")
        sign = 1 if n > 0 else -1

        def factory() -> GradedOperator:
            terms = []
            for m in range(1, abs(n) + 1):
                rest = self.e0_diag(0) if m == abs(n) else self.h_boson(sign * (abs(n) - m))
                coeff = self.session.one() / self.session.rational(abs(n))
                terms.append((coeff, self.boson(sign * m) @ rest))
            return linear_combination(self.session, terms, n, f"h[{n}]", self.tag, self.tag)

        return self._cached(("h", n), factory)

    def e0_diag(self, k: int) -> GradedOperator:
        """Only the identity (k = 0) is available on the Fock side."""
        if k != 0:
            raise ValueError("the Fock module has no diagonal generators besides the identity")
        return self._cached(("id",), lambda: Identity(self.session, self.tag))

    def __repr__(self) -> str:
        return f"FockSpace(r={self.r})"


def fock_states_up_to(space: FockSpace, max_size: int) -> Iterator[FockMonomial]:
    for n in range(max_size + 1):
        yield from space.states(n)
