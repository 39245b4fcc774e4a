"""
Shuffle Elements
Laurent numerators in z1..zk and the Sym-presentations of the P, H, E, Q and T families
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Any, Dict, Iterator, Mapping, Sequence, Tuple, Union

from core.scalars.monomials import Monomial

Coefficient = Union[int, Fraction]


def z_name(i: int) -> str:
    return f"z{i}"


def z_names(k: int) -> Tuple[str, ...]:
    """Generator names z1..zk, to be added to a session as extra generators."""
    return tuple(z_name(i) for i in range(1, k + 1))


def zvar(i: int, power: int = 1) -> Monomial:
    return Monomial.gen(z_name(i), power)


class LaurentZ:
    """
    A Laurent polynomial in z1..zk with coefficients in Q[q1^+-1, q2^+-1].

    Stored as {monomial: rational}, the monomials mixing z and q generators.
    """

    __slots__ = ("k", "terms")

    def __init__(self, k: int, terms: Mapping[Monomial, Coefficient] = None):
        self.k = k
        merged: Dict[Monomial, Fraction] = {}
        for m, c in (terms or {}).items():
            merged[m] = merged.get(m, Fraction(0)) + Fraction(c)
        self.terms: Dict[Monomial, Fraction] = {m: c for m, c in merged.items() if c != 0}

    @classmethod
    def monomial(cls, k: int, m: Monomial, coeff: Coefficient = 1) -> "LaurentZ":
        return cls(k, {m: coeff})

    @classmethod
    def constant(cls, k: int, value: Coefficient = 1) -> "LaurentZ":
        return cls(k, {Monomial.one(): value})

    # ---- arithmetic ----

    def __add__(self, other: "LaurentZ") -> "LaurentZ":
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return LaurentZ(max(self.k, other.k), terms)

    def __neg__(self) -> "LaurentZ":
        return LaurentZ(self.k, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "LaurentZ") -> "LaurentZ":
        return self + (-other)

    def __mul__(self, other: Union["LaurentZ", Coefficient]) -> "LaurentZ":
        if not isinstance(other, LaurentZ):
            return LaurentZ(self.k, {m: c * Fraction(other) for m, c in self.terms.items()})
        terms: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                terms[m] = terms.get(m, Fraction(0)) + c1 * c2
        return LaurentZ(max(self.k, other.k), terms)

    __rmul__ = __mul__

    # ---- transformations ----

    def shifted(self, offset: int) -> "LaurentZ":
        """Rename z_i -> z_{i + offset}."""
        mapping = {z_name(i): z_name(i + offset) for i in range(1, self.k + 1)}
        return LaurentZ(self.k + offset, {m.rename(mapping): c for m, c in self.terms.items()})

    def substitute(self, mapping: Mapping[str, Monomial]) -> Iterator[Tuple[Fraction, Monomial]]:
        for m, c in self.terms.items():
            yield c, m.substitute(mapping)

    def evaluate(self, backend, values: Sequence[Monomial]) -> Any:
        """Value at z_i = values[i - 1]."""
        point = {z_name(i): v for i, v in enumerate(values, start=1)}
        return backend.laurent(self.substitute(point))

    def z_degrees(self) -> set:
        return {sum(m.exponent(z_name(i)) for i in range(1, self.k + 1)) for m in self.terms}

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].items())

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentZ) and self.terms == other.terms

    __hash__ = None

    def __repr__(self) -> str:
        return " + ".join(f"{c}*{m}" for m, c in self.items()) or "0"


@dataclass(frozen=True, eq=False)
class SymPresentation:
    """
    Sym[ rho(z) / prod_{i<k} (1 - q z_{i+1}/z_i) * prod_{i<j} zeta(z_i/z_j) ].

    The single input format of the raising and lowering operators.
    """

    k: int
    rho: LaurentZ
    label: str = ""

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"a Sym-presentation needs at least one variable, got k={self.k}")

    @property
    def degree(self) -> int:
        """Homogeneous degree in z; zero when rho vanishes."""
        degrees = self.rho.z_degrees()
        if len(degrees) > 1:
            raise ValueError(f"{self.label} is not homogeneous: degrees {sorted(degrees)}")
        return degrees.pop() if degrees else 0

    def rho_value(self, backend, weights: Sequence[Monomial]) -> Any:
        """rho(chi_1, ..., chi_k) in the backend."""
        if len(weights) != self.k:
            raise ValueError(f"{self.label} takes {self.k} weights, got {len(weights)}")
        return self.rho.evaluate(backend, weights)

    def __repr__(self) -> str:
        return f"SymPresentation({self.label or 'R'}, k={self.k})"


# ============= EXPLICIT FAMILIES =============

def _floor_monomial(k: int, d: int) -> Monomial:
    out = Monomial.one()
    for i in range(1, k + 1):
        out = out * zvar(i, (i * d) // k - ((i - 1) * d) // k)
    return out


def _ceil_monomial(k: int, d: int) -> Monomial:
    out = Monomial.one()
    for i in range(1, k + 1):
        exp = -((-i * d) // k) + ((-(i - 1) * d) // k)
        exp += (1 if i == k else 0) - (1 if i == 1 else 0)
        out = out * zvar(i, exp)
    return out


def _inner_sum(k: int, d: int, weighted: bool) -> LaurentZ:
    """sum_{s<n} [q^s] prod_{t=1}^s z_{a(n-t)+1} / z_{a(n-t)}"""
    n = gcd(k, d)
    a = k // n
    total = LaurentZ(k)
    for s in range(n):
        m = Monomial.q(s) if weighted else Monomial.one()
        for t in range(1, s + 1):
            m = m * zvar(a * (n - t) + 1) / zvar(a * (n - t))
        total = total + LaurentZ.monomial(k, m)
    return total


def _check_k(k: int) -> None:
    if k < 1:
        raise ValueError(f"shuffle elements need k >= 1, got {k}")


def build_P(k: int, d: int) -> SymPresentation:
    _check_k(k)
    rho = LaurentZ.monomial(k, _floor_monomial(k, d)) * _inner_sum(k, d, weighted=True)
    return SymPresentation(k, rho, f"P[{k},{d}]")


def build_H(k: int, d: int) -> SymPresentation:
    _check_k(k)
    return SymPresentation(k, LaurentZ.monomial(k, _floor_monomial(k, d)), f"H[{k},{d}]")


def build_E(k: int, d: int) -> SymPresentation:
    _check_k(k)
    n = gcd(k, d)
    coeff = (-1) ** (n - 1)
    rho = LaurentZ.monomial(k, Monomial.q(n - 1) * _ceil_monomial(k, d), coeff)
    return SymPresentation(k, rho, f"E[{k},{d}]")


def build_Q(k: int, d: int) -> SymPresentation:
    _check_k(k)
    prefactor = LaurentZ(k, {Monomial.one(): 1, Monomial.q(-1): -1})
    rho = prefactor * LaurentZ.monomial(k, _floor_monomial(k, d)) * _inner_sum(k, d, weighted=False)
    return SymPresentation(k, rho, f"Q[{k},{d}]")


def build_T(d: int, k: int) -> SymPresentation:
    """T_{d,k}: d variables, rho = (-1)^(k-1) z_d^k."""
    if d < 1 or k < 1:
        raise ValueError(f"T[{d},{k}] needs d, k >= 1")
    return SymPresentation(d, LaurentZ.monomial(d, zvar(d, k), (-1) ** (k - 1)), f"T[{d},{k}]")


FAMILIES = {"P": build_P, "H": build_H, "E": build_E, "Q": build_Q}


def build(family: str, first: int, second: int) -> SymPresentation:
    """Dispatch on the family letter; arguments are passed through in the builder's own order."""
    if family == "T":
        return build_T(first, second)
    try:
        return FAMILIES[family](first, second)
    except KeyError:
        raise ValueError(f"Unknown shuffle family: {family}") from None
