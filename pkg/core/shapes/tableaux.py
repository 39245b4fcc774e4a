"""
Skew Shapes and Standard Young Tableaux
Labelings of skew r-partitions whose labels decrease up and to the right within each component
"""

from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Dict, List, Tuple

from core.scalars.monomials import Monomial
from core.shapes.partitions import BoxRef, Partition, RPartition, box_weight


@dataclass(frozen=True)
class SkewShape:
    """outer / inner with inner contained in outer componentwise."""

    outer: RPartition
    inner: RPartition

    def __post_init__(self):
        if not self.outer.contains(self.inner):
            raise ValueError(f"{self.inner} is not contained in {self.outer}")

    @property
    def size(self) -> int:
        return self.outer.size - self.inner.size

    def boxes(self) -> List[BoxRef]:
        return [
            BoxRef(k, i, j)
            for k, (out, inn) in enumerate(zip(self.outer.components, self.inner.components), start=1)
            for (i, j) in out.boxes()
            if (i, j) not in inn
        ]


@dataclass(frozen=True)
class SYT:
    """
    A standard Young tableau of a skew shape.

    `boxes[n - 1]` carries label n. No constraint links labels in different
    components.
    """

    shape: SkewShape
    boxes: Tuple[BoxRef, ...]

    def weights(self, torus: str = "u") -> List[Monomial]:
        """chi_1, ..., chi_n in label order."""
        return [box_weight(b, torus) for b in self.boxes]

    def label_of(self) -> Dict[BoxRef, int]:
        return {b: n for n, b in enumerate(self.boxes, start=1)}

    def to_json(self) -> Dict:
        labels = self.label_of()
        matrices = []
        for k, comp in enumerate(self.shape.outer.components, start=1):
            matrices.append(
                [[labels.get(BoxRef(k, i, j), 0) for i in range(comp.row(j))] for j in range(len(comp))]
            )
        return {"outer": self.shape.outer.to_json(), "inner": self.shape.inner.to_json(), "labels": matrices}


def _addable_inside(inner: RPartition, outer: RPartition) -> List[Tuple[int, Tuple[int, int]]]:
    out = []
    for k, (inn, outr) in enumerate(zip(inner.components, outer.components)):
        for box in inn.addable():
            if box in outr:
                out.append((k, box))
    return out


def _grow(inner: RPartition, k: int, box: Tuple[int, int]) -> RPartition:
    comps = list(inner.components)
    comps[k] = comps[k].add(box)
    return RPartition(tuple(comps))


@lru_cache(maxsize=4096)
def _label_sequences(outer: RPartition, inner: RPartition) -> Tuple[Tuple[BoxRef, ...], ...]:
    # the largest label sits on a box with nothing of the skew shape below or to its left
    if outer == inner:
        return ((),)
    out = []
    for k, box in _addable_inside(inner, outer):
        ref = BoxRef(k + 1, box[0], box[1])
        for rest in _label_sequences(outer, _grow(inner, k, box)):
            out.append(rest + (ref,))
    return tuple(out)


def enumerate_syt(shape: SkewShape) -> List[SYT]:
    """All standard Young tableaux of the skew shape, in a fixed order."""
    return [SYT(shape, seq) for seq in _label_sequences(shape.outer, shape.inner)]


def count_syt(shape: SkewShape) -> int:
    return len(_label_sequences(shape.outer, shape.inner))


def hook_length_count(partition: Partition) -> int:
    """n! / prod of hook lengths."""
    conj = partition.transpose()
    denom = 1
    for i, j in partition.boxes():
        denom *= (partition.row(j) - i - 1) + (conj.row(i) - j - 1) + 1
    return factorial(partition.size) // denom


def consecutive_labels_separated(tableau: SYT) -> bool:
    """box(n) never equals box(n + 1) shifted by (1, 1) inside one component."""
    for a, b in zip(tableau.boxes, tableau.boxes[1:]):
        if a.component == b.component and (a.i, a.j) == (b.i + 1, b.j + 1):
            return False
    return True
