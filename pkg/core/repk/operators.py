"""
Graded Operators
Lazily evaluated, memoized linear maps on graded spaces with basis keys that carry a size
"""

import logging
import threading
from abc import ABC, abstractmethod
from typing import Any, Callable, Dict, Hashable, Iterable, List, Sequence, Tuple

from core.exceptions import GradingError, TorusMismatch

logger = logging.getLogger(__name__)

Vector = Dict[Hashable, Any]


# ============= SPARSE VECTORS =============

def add_into(acc: Vector, vec: Vector, coeff: Any, backend) -> Vector:
    """acc += coeff * vec, dropping coefficients that cancel."""
    for key, value in vec.items():
        term = value * coeff
        if key in acc:
            total = acc[key] + term
            if backend.is_zero(total):
                del acc[key]
            else:
                acc[key] = total
        elif not backend.is_zero(term):
            acc[key] = term
    return acc


def scale_vector(vec: Vector, coeff: Any, backend) -> Vector:
    return add_into({}, vec, coeff, backend)


def vector_sub(a: Vector, b: Vector, backend) -> Vector:
    out = dict(a)
    return add_into(out, b, -backend.one(), backend)


def basis_vector(key: Hashable, backend) -> Vector:
    return {key: backend.one()}


# ============= OPERATOR BASE =============

class GradedOperator(ABC):
    """
    A linear map sending basis vectors of size n to combinations of size n - shift.

    Subclasses only say how to compute one column; columns are memoized per
    operator instance under a lock, so concurrent readers are safe. Source and
    target torus tags name which equivariant parameters the keys refer to.
    """

    def __init__(self, session, shift: int, label: str, source: str = "u", target: str = "u"):
        self.session = session
        self.backend = session.backend
        self.shift = shift
        self.label = label
        self.source = source
        self.target = target
        self._memo: Dict[Hashable, Vector] = {}
        self._lock = threading.Lock()

    @abstractmethod
    def _compute_column(self, key: Hashable) -> Vector:
        """
        Image of one basis vector.

        Args:
            key: Basis key of the source space

        Returns:
            Sparse vector in the target space
        """
        pass

    def column(self, key: Hashable) -> Vector:
        with self._lock:
            cached = self._memo.get(key)
        if cached is not None:
            return cached
        if key.size - self.shift < 0:
            col: Vector = {}
        else:
            col = {k: v for k, v in self._compute_column(key).items() if not self.backend.is_zero(v)}
        for out in col:
            if out.size != key.size - self.shift:
                raise GradingError(f"{self.label} sends {key} (size {key.size}) to {out} with shift {self.shift}")
        with self._lock:
            self._memo.setdefault(key, col)
        return col

    def entry(self, row: Hashable, col: Hashable) -> Any:
        """<row| O |col>"""
        return self.column(col).get(row, self.backend.zero())

    def apply(self, vec: Vector) -> Vector:
        out: Vector = {}
        for key, coeff in vec.items():
            add_into(out, self.column(key), coeff, self.backend)
        return out

    # ---- algebra ----

    def __matmul__(self, other: "GradedOperator") -> "GradedOperator":
        return Composed([self, other])

    def __add__(self, other: "GradedOperator") -> "GradedOperator":
        return LinearCombination([(self.backend.one(), self), (self.backend.one(), other)])

    def __sub__(self, other: "GradedOperator") -> "GradedOperator":
        return LinearCombination([(self.backend.one(), self), (-self.backend.one(), other)])

    def __neg__(self) -> "GradedOperator":
        return LinearCombination([(-self.backend.one(), self)])

    def scaled(self, coeff: Any) -> "GradedOperator":
        return LinearCombination([(coeff, self)])

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.label}, shift={self.shift}, {self.source}->{self.target})"


# ============= CONCRETE OPERATORS =============

class FunctionOperator(GradedOperator):
    """Columns given by a callable key -> vector."""

    def __init__(self, session, shift: int, label: str, fn: Callable[[Hashable], Vector], source: str = "u", target: str = "u"):
        super().__init__(session, shift, label, source, target)
        self._fn = fn

    def _compute_column(self, key: Hashable) -> Vector:
        return self._fn(key)


class Diagonal(GradedOperator):
    """Degree-0 operator with eigenvalue fn(key)."""

    def __init__(self, session, label: str, eigenvalue: Callable[[Hashable], Any], torus: str = "u"):
        super().__init__(session, 0, label, torus, torus)
        self._eigenvalue = eigenvalue

    def _compute_column(self, key: Hashable) -> Vector:
        return {key: self._eigenvalue(key)}


class Identity(Diagonal):
    def __init__(self, session, torus: str = "u"):
        super().__init__(session, "Id", lambda key: session.one(), torus)


class ZeroOperator(GradedOperator):
    def __init__(self, session, shift: int = 0, source: str = "u", target: str = "u", label: str = "0"):
        super().__init__(session, shift, label, source, target)

    def _compute_column(self, key: Hashable) -> Vector:
        return {}


class Composed(GradedOperator):
    """A_1 A_2 ... A_n, the rightmost factor acting first."""

    def __init__(self, factors: Sequence[GradedOperator]):
        flat: List[GradedOperator] = []
        for f in factors:
            flat.extend(f.factors if isinstance(f, Composed) else [f])
        for left, right in zip(flat, flat[1:]):
            if left.source != right.target:
                raise TorusMismatch(f"cannot compose {left!r} after {right!r}")
        super().__init__(
            flat[0].session,
            sum(f.shift for f in flat),
            " ".join(f.label for f in flat),
            source=flat[-1].source,
            target=flat[0].target,
        )
        self.factors = flat

    def _compute_column(self, key: Hashable) -> Vector:
        vec: Vector = {key: self.backend.one()}
        for op in reversed(self.factors):
            vec = op.apply(vec)
            if not vec:
                break
        return vec


class LinearCombination(GradedOperator):
    """sum c_i A_i over operators with a common shift and tori."""

    def __init__(self, terms: Sequence[Tuple[Any, GradedOperator]], label: str = None):
        terms = list(terms)
        first = terms[0][1]
        for _, op in terms:
            if (op.source, op.target) != (first.source, first.target):
                raise TorusMismatch(f"cannot add {op!r} to {first!r}")
            if op.shift != first.shift:
                raise GradingError(f"cannot add {op!r} (shift {op.shift}) to {first!r} (shift {first.shift})")
        super().__init__(
            first.session,
            first.shift,
            label or " + ".join(op.label for _, op in terms),
            source=first.source,
            target=first.target,
        )
        self.terms = terms

    def _compute_column(self, key: Hashable) -> Vector:
        out: Vector = {}
        for coeff, op in self.terms:
            add_into(out, op.column(key), coeff, self.backend)
        return out


def linear_combination(session, terms: Iterable[Tuple[Any, GradedOperator]], shift: int,
                       label: str = "", source: str = "u", target: str = "u") -> GradedOperator:
    """Like LinearCombination but tolerates an empty term list."""
    terms = list(terms)
    if not terms:
        return ZeroOperator(session, shift, source, target, label or "0")
    return LinearCombination(terms, label or None)


def commutator(a: GradedOperator, b: GradedOperator, s: Any = None) -> GradedOperator:
    """[a, b]_s = ab - s ba, with s = 1 by default."""
    backend = a.backend
    s = backend.one() if s is None else s
    return LinearCombination([(backend.one(), Composed([a, b])), (-s, Composed([b, a]))], label=f"[{a.label},{b.label}]")
