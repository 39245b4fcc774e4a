"""
Monomials, Characters and Generator Sets
Multiplicative bookkeeping for weights of boxes, tangent spaces and Ext bundles
"""

from collections import Counter
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple, Union


class Monomial:
    """
    A Laurent monomial in named generators, e.g. u1 * q1^2 * q2^-1.

    The composite q = q1*q2 is never a generator: `Monomial.q()` expands it.
    Instances are immutable and hashable.
    """

    __slots__ = ("_exps", "_hash")

    def __init__(self, exps: Union[Mapping[str, int], Iterable[Tuple[str, int]]] = ()):
        items = exps.items() if isinstance(exps, Mapping) else exps
        merged: Dict[str, int] = {}
        for name, e in items:
            merged[name] = merged.get(name, 0) + e
        self._exps: Tuple[Tuple[str, int], ...] = tuple(
            sorted((k, v) for k, v in merged.items() if v != 0)
        )
        self._hash = hash(self._exps)

    # ---- constructors ----

    @classmethod
    def one(cls) -> "Monomial":
        return _IDENTITY

    @classmethod
    def gen(cls, name: str, power: int = 1) -> "Monomial":
        return cls({name: power})

    @classmethod
    def of(cls, **exps: int) -> "Monomial":
        return cls(exps)

    @classmethod
    def q(cls, power: int = 1) -> "Monomial":
        return cls({"q1": power, "q2": power})

    # ---- arithmetic ----

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not other._exps:
            return self
        if not self._exps:
            return other
        return Monomial(self._exps + other._exps)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        return self * other.inverse()

    def __pow__(self, n: int) -> "Monomial":
        return Monomial((k, v * n) for k, v in self._exps)

    def inverse(self) -> "Monomial":
        return Monomial((k, -v) for k, v in self._exps)

    # ---- inspection ----

    @property
    def is_identity(self) -> bool:
        return not self._exps

    def exponent(self, name: str) -> int:
        for k, v in self._exps:
            if k == name:
                return v
        return 0

    def items(self) -> Tuple[Tuple[str, int], ...]:
        return self._exps

    def names(self) -> Tuple[str, ...]:
        return tuple(k for k, _ in self._exps)

    def split(self) -> Tuple["Monomial", "Monomial"]:
        """Return (positive part, negative part inverted) so that self = pos / neg."""
        pos = Monomial((k, v) for k, v in self._exps if v > 0)
        neg = Monomial((k, -v) for k, v in self._exps if v < 0)
        return pos, neg

    def rename(self, mapping: Mapping[str, str]) -> "Monomial":
        return Monomial((mapping.get(k, k), v) for k, v in self._exps)

    def substitute(self, mapping: Mapping[str, "Monomial"]) -> "Monomial":
        """Replace generators by monomials, e.g. z1 -> u1*q1."""
        out = Monomial.one()
        for k, v in self._exps:
            out = out * (mapping[k] ** v if k in mapping else Monomial.gen(k, v))
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Monomial) and self._exps == other._exps

    def __lt__(self, other: "Monomial") -> bool:
        return self._exps < other._exps

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        if not self._exps:
            return "1"
        return "*".join(k if v == 1 else f"{k}^{v}" for k, v in self._exps)


_IDENTITY = Monomial()


class Character:
    """
    A finite Z-linear combination of monomials: the class of a torus representation.

    Zero multiplicities are never stored, so cancellation is exact.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Monomial, int]] = None):
        counter: Counter = Counter()
        for m, e in (terms or {}).items():
            counter[m] += e
        self._terms: Dict[Monomial, int] = {m: e for m, e in counter.items() if e != 0}

    @classmethod
    def from_monomials(cls, monomials: Iterable[Monomial], multiplicity: int = 1) -> "Character":
        counter: Counter = Counter()
        for m in monomials:
            counter[m] += multiplicity
        return cls(counter)

    def __add__(self, other: "Character") -> "Character":
        counter = Counter(self._terms)
        for m, e in other._terms.items():
            counter[m] += e
        return Character(counter)

    def __neg__(self) -> "Character":
        return Character({m: -e for m, e in self._terms.items()})

    def __sub__(self, other: "Character") -> "Character":
        return self + (-other)

    def __mul__(self, other: Union["Character", Monomial]) -> "Character":
        if isinstance(other, Monomial):
            return Character({m * other: e for m, e in self._terms.items()})
        counter: Counter = Counter()
        for m1, e1 in self._terms.items():
            for m2, e2 in other._terms.items():
                counter[m1 * m2] += e1 * e2
        return Character(counter)

    def scale(self, n: int) -> "Character":
        return Character({m: e * n for m, e in self._terms.items()})

    def dual(self) -> "Character":
        return Character({m.inverse(): e for m, e in self._terms.items()})

    def rank(self) -> int:
        """Total multiplicity, the rank of the underlying virtual bundle."""
        return sum(self._terms.values())

    def items(self) -> Iterator[Tuple[Monomial, int]]:
        return iter(sorted(self._terms.items(), key=lambda kv: kv[0].items()))

    def multiplicity(self, m: Monomial) -> int:
        return self._terms.get(m, 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, Character) and self._terms == other._terms

    def __repr__(self) -> str:
        return " + ".join(f"{e}*{m}" for m, e in self.items()) or "0"


class GeneratorSet:
    """
    Ordered generator names of a session.

    The order drives canonical output and the variable order of the exact ring.
    """

    def __init__(self, names: Sequence[str]):
        seen = []
        for n in names:
            if n not in seen:
                seen.append(n)
        self.names: Tuple[str, ...] = tuple(seen)
        self.index = {n: i for i, n in enumerate(self.names)}

    @classmethod
    def for_session(
        cls,
        rank: int,
        primed: bool = False,
        masses: int = 0,
        extra: Sequence[str] = (),
        tori: int = 1,
    ) -> "GeneratorSet":
        names = ["q1", "q2"]
        names += [f"u{i}" for i in range(1, rank + 1)]
        if primed:
            names += [f"up{i}" for i in range(1, rank + 1)]
        for t in range(2, tori + 1):
            names += [f"u{i}_{t}" for i in range(1, rank + 1)]
        if masses == 1:
            names.append("m")
        elif masses > 1:
            names += [f"m{a}" for a in range(1, masses + 1)]
        names += list(extra)
        return cls(names)

    def extended(self, extra: Sequence[str]) -> "GeneratorSet":
        return GeneratorSet(list(self.names) + list(extra))

    def __contains__(self, name: str) -> bool:
        return name in self.index

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __repr__(self) -> str:
        return f"GeneratorSet({', '.join(self.names)})"


def torus_names(rank: int, tag: str) -> Tuple[str, ...]:
    """Generator names of one torus: tag 'u' gives u1..ur, 'up' gives up1..upr, 'u_2' gives u1_2.."""
    if "_" in tag:
        base, suffix = tag.split("_", 1)
        return tuple(f"{base}{i}_{suffix}" for i in range(1, rank + 1))
    return tuple(f"{tag}{i}" for i in range(1, rank + 1))
