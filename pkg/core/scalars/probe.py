"""
Probe Scalars
Schwartz-Zippel evaluation of session scalars at random points of a large prime field
"""

import logging
import random
from fractions import Fraction
from typing import Dict, Tuple

from core.exceptions import ProbeCollision
from core.scalars.backend import Number, ScalarBackend
from core.scalars.monomials import GeneratorSet, Monomial

logger = logging.getLogger(__name__)


class ProbeContext:
    """
    Random nonzero residues for every generator name, one per repetition.

    Residues are derived from (seed, name, repetition) alone, so two contexts
    with the same seed agree on every name, including names added later.
    """

    def __init__(self, prime: int = 2**61 - 1, repetitions: int = 3, seed: int = 0):
        self.prime = prime
        self.repetitions = repetitions
        self.seed = seed
        self._residues: Dict[str, Tuple[int, ...]] = {}

    def residues(self, name: str) -> Tuple[int, ...]:
        cached = self._residues.get(name)
        if cached is None:
            cached = tuple(
                random.Random(f"{self.seed}:{name}:{rep}").randrange(2, self.prime - 1)
                for rep in range(self.repetitions)
            )
            self._residues[name] = cached
        return cached

    def reseeded(self, seed: int) -> "ProbeContext":
        logger.info(f"Re-seeding probe context {self.seed} -> {seed}")
        return ProbeContext(self.prime, self.repetitions, seed)

    def clone(self) -> "ProbeContext":
        other = ProbeContext(self.prime, self.repetitions, self.seed)
        other._residues = dict(self._residues)
        return other

    def __repr__(self) -> str:
        return f"ProbeContext(p={self.prime}, reps={self.repetitions}, seed={self.seed})"


class ProbeScalar:
    """A tuple of residues mod p, one per probe point."""

    __slots__ = ("ctx", "vals")

    def __init__(self, ctx: ProbeContext, vals: Tuple[int, ...]):
        self.ctx = ctx
        self.vals = vals

    def _coerce(self, other) -> "ProbeScalar":
        if isinstance(other, ProbeScalar):
            return other
        return _rational(self.ctx, Fraction(other))

    def __add__(self, other) -> "ProbeScalar":
        other = self._coerce(other)
        p = self.ctx.prime
        return ProbeScalar(self.ctx, tuple((a + b) % p for a, b in zip(self.vals, other.vals)))

    __radd__ = __add__

    def __neg__(self) -> "ProbeScalar":
        p = self.ctx.prime
        return ProbeScalar(self.ctx, tuple((-a) % p for a in self.vals))

    def __sub__(self, other) -> "ProbeScalar":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "ProbeScalar":
        return self._coerce(other) - self

    def __mul__(self, other) -> "ProbeScalar":
        other = self._coerce(other)
        p = self.ctx.prime
        return ProbeScalar(self.ctx, tuple((a * b) % p for a, b in zip(self.vals, other.vals)))

    __rmul__ = __mul__

    def inverse(self) -> "ProbeScalar":
        if any(v == 0 for v in self.vals):
            raise ProbeCollision(f"division by a probe value that vanishes at seed {self.ctx.seed}")
        p = self.ctx.prime
        return ProbeScalar(self.ctx, tuple(pow(v, p - 2, p) for v in self.vals))

    def __truediv__(self, other) -> "ProbeScalar":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> "ProbeScalar":
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "ProbeScalar":
        base = self if n >= 0 else self.inverse()
        p = self.ctx.prime
        return ProbeScalar(self.ctx, tuple(pow(v, abs(n), p) for v in base.vals))

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.vals)

    def __eq__(self, other) -> bool:
        try:
            return (self - other).is_zero()
        except TypeError:
            return False

    __hash__ = None

    def canonical(self) -> str:
        return "probe(" + ",".join(str(v) for v in self.vals) + ")"

    def __repr__(self) -> str:
        return self.canonical()


def _rational(ctx: ProbeContext, value: Fraction) -> ProbeScalar:
    p = ctx.prime
    if value.denominator % p == 0:
        raise ProbeCollision(f"denominator of {value} vanishes mod {p}")
    v = value.numerator * pow(value.denominator, p - 2, p) % p
    return ProbeScalar(ctx, (v,) * ctx.repetitions)


class ProbeBackend(ScalarBackend):
    """Evaluation at random points; equality is probabilistic."""

    name = "probe"

    def __init__(self, generators: GeneratorSet, ctx: ProbeContext):
        super().__init__(generators)
        self.ctx = ctx

    def rational(self, value: Number) -> ProbeScalar:
        return _rational(self.ctx, Fraction(value))

    def generator(self, name: str) -> ProbeScalar:
        return ProbeScalar(self.ctx, self.ctx.residues(name))

    def monomial(self, m: Monomial) -> ProbeScalar:
        p = self.ctx.prime
        vals = [1] * self.ctx.repetitions
        for name, e in m.items():
            res = self.ctx.residues(name)
            for rep in range(self.ctx.repetitions):
                vals[rep] = vals[rep] * pow(res[rep], e % (p - 1), p) % p
        return ProbeScalar(self.ctx, tuple(vals))

    def one_minus(self, m: Monomial) -> ProbeScalar:
        value = self.one() - self.monomial(m)
        if any(v == 0 for v in value.vals):
            raise ProbeCollision(f"1 - {m} vanishes at seed {self.ctx.seed}")
        return value

    def canonical(self, value: ProbeScalar) -> str:
        return value.canonical()

    def clone(self) -> "ProbeBackend":
        return ProbeBackend(self.generators, self.ctx.clone())
