"""
Partitions and r-Partitions
Young diagrams indexing torus fixed points, with box weights u_k q1^i q2^j
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Sequence, Tuple

from core.scalars.monomials import Monomial, torus_names


@dataclass(frozen=True, order=True)
class Partition:
    """
    A weakly decreasing tuple of positive integers.

    Diagrams are drawn in French notation: part j (0-based) is the length of
    row j, and its boxes sit at (i, j) for 0 <= i < parts[j].
    """

    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"not a partition: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def row(self, j: int) -> int:
        return self.parts[j] if j < len(self.parts) else 0

    def boxes(self) -> Iterator[Tuple[int, int]]:
        for j, length in enumerate(self.parts):
            for i in range(length):
                yield (i, j)

    def __contains__(self, box: Tuple[int, int]) -> bool:
        i, j = box
        return i >= 0 and j >= 0 and i < self.row(j)

    def contains(self, other: "Partition") -> bool:
        """True when other's diagram sits inside ours."""
        return len(other.parts) <= len(self.parts) and all(b <= a for a, b in zip(self.parts, other.parts))

    def intersection(self, other: "Partition") -> "Partition":
        return Partition(tuple(x for x in (min(a, b) for a, b in zip(self.parts, other.parts)) if x > 0))

    def removable(self) -> List[Tuple[int, int]]:
        """Corners whose removal leaves a partition."""
        return [(self.parts[j] - 1, j) for j in range(len(self.parts)) if self.row(j + 1) < self.parts[j]]

    def addable(self) -> List[Tuple[int, int]]:
        out = [(self.row(j), j) for j in range(len(self.parts)) if j == 0 or self.parts[j - 1] > self.parts[j]]
        out.append((0, len(self.parts)))
        return out

    def remove(self, box: Tuple[int, int]) -> "Partition":
        i, j = box
        parts = list(self.parts)
        parts[j] -= 1
        return Partition(tuple(p for p in parts if p > 0))

    def add(self, box: Tuple[int, int]) -> "Partition":
        i, j = box
        parts = list(self.parts) + [0]
        parts[j] += 1
        return Partition(tuple(p for p in parts if p > 0))

    def transpose(self) -> "Partition":
        return Partition(tuple(sum(1 for p in self.parts if p > i) for i in range(self.row(0))))

    def subpartitions(self) -> List["Partition"]:
        """Every partition contained in this one, smallest first."""
        return sorted(_subpartitions(self.parts), key=lambda p: (p.size, _desc_key(p.parts)))

    def to_json(self) -> List[int]:
        return list(self.parts)

    def __repr__(self) -> str:
        return f"({','.join(map(str, self.parts))})" if self.parts else "()"


EMPTY = Partition(())


def _desc_key(parts: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(-p for p in parts)


@lru_cache(maxsize=None)
def _subpartitions(parts: Tuple[int, ...]) -> Tuple[Partition, ...]:
    if not parts:
        return (EMPTY,)
    out = []
    head, tail = parts[0], parts[1:]
    for sub in _subpartitions(tail):
        for first in range(max(sub.row(0), 1), head + 1):
            out.append(Partition((first,) + sub.parts))
    out.append(EMPTY)
    return tuple(sorted(set(out)))


@lru_cache(maxsize=None)
def partitions_of(n: int, largest: int = None) -> Tuple[Partition, ...]:
    """All partitions of n in reverse lexicographic order: (2), (1,1)."""
    if n < 0:
        return ()
    if n == 0:
        return (EMPTY,)
    largest = n if largest is None else largest
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in partitions_of(n - first, first):
            out.append(Partition((first,) + rest.parts))
    return tuple(out)


@dataclass(frozen=True)
class BoxRef:
    """Box (i, j) of component k (1-based) of an r-partition."""

    component: int
    i: int
    j: int


def box_weight(box: BoxRef, torus: str = "u") -> Monomial:
    """
    chi = u_k q1^i q2^j for the torus named by `torus` ('u', 'up', 'u_2', ...).

    `torus='up'` gives the primed weight u'_k q1^i q2^j.
    """
    name = torus_names(box.component, torus)[-1]
    return Monomial({name: 1, "q1": box.i, "q2": box.j})


@dataclass(frozen=True, order=True)
class RPartition:
    """An r-tuple of partitions; a torus fixed point of the rank r moduli space."""

    components: Tuple[Partition, ...]

    def __post_init__(self):
        comps = tuple(c if isinstance(c, Partition) else Partition(tuple(c)) for c in self.components)
        object.__setattr__(self, "components", comps)

    @classmethod
    def empty(cls, r: int) -> "RPartition":
        return cls((EMPTY,) * r)

    @classmethod
    def of(cls, *components: Sequence[int]) -> "RPartition":
        return cls(tuple(Partition(tuple(c)) for c in components))

    @classmethod
    def parse(cls, text: str, r: int) -> "RPartition":
        """'2,1|1' -> ((2,1),(1)); an empty component is written as an empty field."""
        fields = text.split("|") if text else [""]
        if len(fields) != r:
            raise ValueError(f"'{text}' has {len(fields)} components, expected {r}")
        return cls(tuple(Partition(tuple(int(x) for x in f.split(",") if x.strip())) for f in fields))

    @property
    def r(self) -> int:
        return len(self.components)

    @property
    def size(self) -> int:
        return sum(c.size for c in self.components)

    def boxes(self) -> Iterator[BoxRef]:
        for k, comp in enumerate(self.components, start=1):
            for i, j in comp.boxes():
                yield BoxRef(k, i, j)

    def weights(self, torus: str = "u") -> List[Monomial]:
        return [box_weight(b, torus) for b in self.boxes()]

    def contains(self, other: "RPartition") -> bool:
        return self.r == other.r and all(a.contains(b) for a, b in zip(self.components, other.components))

    def intersection(self, other: "RPartition") -> "RPartition":
        return RPartition(tuple(a.intersection(b) for a, b in zip(self.components, other.components)))

    def subpartitions(self) -> List["RPartition"]:
        """Every r-partition contained in this one, ordered by size."""
        subs = [comp.subpartitions() for comp in self.components]
        out = [RPartition(tuple(combo)) for combo in itertools.product(*subs)]
        return sorted(out, key=lambda p: (p.size, p.sort_key()))

    def sort_key(self) -> Tuple:
        return tuple((-c.size, _desc_key(c.parts)) for c in self.components)

    def to_json(self) -> List[List[int]]:
        return [c.to_json() for c in self.components]

    def __repr__(self) -> str:
        return "[" + "|".join(",".join(map(str, c.parts)) for c in self.components) + "]"


@lru_cache(maxsize=None)
def enumerate_rpartitions(r: int, n: int) -> Tuple[RPartition, ...]:
    """
    All r-partitions of size n.

    Order: component sizes in reverse lexicographic order, then each component
    in reverse lexicographic order, so r=2, n=1 gives ((1),()), ((),(1)).
    """
    if n < 0:
        return ()
    out = []
    for sizes in _compositions(n, r):
        for combo in itertools.product(*(partitions_of(s) for s in sizes)):
            out.append(RPartition(tuple(combo)))
    return tuple(out)


def _compositions(n: int, r: int) -> Iterator[Tuple[int, ...]]:
    if r == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compositions(n - first, r - 1):
            yield (first,) + rest


def rpartitions_up_to(r: int, max_size: int) -> List[RPartition]:
    out: List[RPartition] = []
    for n in range(max_size + 1):
        out.extend(enumerate_rpartitions(r, n))
    return out


def count_rpartitions(r: int, n: int) -> int:
    """Coefficient of x^n in prod_k (1 - x^k)^-r."""
    coeffs = [1] + [0] * n
    for _ in range(r):
        for k in range(1, n + 1):
            for m in range(k, n + 1):
                coeffs[m] += coeffs[m - k]
    return coeffs[n]
