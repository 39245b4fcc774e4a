"""
Symmetric Rational Functions
Shuffle algebra elements as Sym[sum of Laurent numerators times factor products], their product and wheel conditions
"""

import itertools
import logging
from fractions import Fraction
from math import factorial
from typing import Any, List, NamedTuple, Optional, Sequence, Union

from config.settings import settings
from core.exceptions import CapExceeded
from core.scalars.factors import Q, Q1, Q2, FactorProduct, product, zeta
from core.scalars.monomials import Monomial
from core.shuffle.elements import Coefficient, LaurentZ, SymPresentation, z_name, zvar
from core.shuffle.limits import CurveExpansion

logger = logging.getLogger(__name__)


class BodyTerm(NamedTuple):
    """numerator(z) * factors(z); the factors are products of (1 - M) only."""

    numerator: LaurentZ
    factors: FactorProduct


def zeta_cross(left: Sequence[int], right: Sequence[int]) -> FactorProduct:
    """prod over i in left, j in right of zeta(z_i / z_j)"""
    return product(zeta(zvar(i) / zvar(j)) for i in left for j in right)


def zeta_triangle(k: int) -> FactorProduct:
    """prod_{i<j} zeta(z_i / z_j)"""
    return product(zeta(zvar(i) / zvar(j)) for i in range(1, k + 1) for j in range(i + 1, k + 1))


def chain_denominator(k: int) -> FactorProduct:
    """prod_{i<k} (1 - q z_{i+1}/z_i)^-1"""
    return FactorProduct(factors={Q * zvar(i + 1) / zvar(i): -1 for i in range(1, k)})


def pole_multiplier(k: int) -> FactorProduct:
    """prod_{i != j} (z_i - q z_j), written as prod_i z_i^(k-1) prod (1 - q z_j / z_i)"""
    prefactor = Monomial.one()
    for i in range(1, k + 1):
        prefactor = prefactor * zvar(i, k - 1)
    factors = {Q * zvar(j) / zvar(i): 1 for i in range(1, k + 1) for j in range(1, k + 1) if i != j}
    return FactorProduct(prefactor=prefactor, factors=factors)


class SymRational:
    """
    A symmetric rational function R(z_1, ..., z_k) = Sym[sum of body terms].

    Sym sums over all k! permutations without normalization, so the shuffle
    product R * R' has body body(z_1..z_k) body'(z_{k+1}..) prod zeta(z_i/z_j)
    with the 1/(k! k'!) of the product formula absorbed. Values are only ever
    taken through `evaluate`, which sums the permuted bodies at a point.
    """

    def __init__(self, k: int, body: Sequence[BodyTerm], label: str = ""):
        self.k = k
        self.body: List[BodyTerm] = [t for t in body if not t.numerator.is_zero()]
        self.label = label

    # ---- constructors ----

    @classmethod
    def unit(cls) -> "SymRational":
        return cls(0, [BodyTerm(LaurentZ.constant(0), FactorProduct.one())], "1")

    @classmethod
    def zero(cls, k: int) -> "SymRational":
        return cls(k, [], "0")

    @classmethod
    def from_presentation(cls, p: SymPresentation) -> "SymRational":
        factors = chain_denominator(p.k) * zeta_triangle(p.k)
        return cls(p.k, [BodyTerm(p.rho, factors)], p.label)

    @classmethod
    def from_numerator(cls, k: int, numerator: LaurentZ, label: str = "") -> "SymRational":
        """r(z) / prod_{i != j}(z_i - q z_j) for a symmetric Laurent polynomial r."""
        body = BodyTerm(numerator * Fraction(1, factorial(k)), pole_multiplier(k).inverse())
        return cls(k, [body], label)

    @classmethod
    def monomial(cls, d: int) -> "SymRational":
        """z^d in one variable."""
        return cls(1, [BodyTerm(LaurentZ.monomial(1, zvar(1, d)), FactorProduct.one())], f"z^{d}")

    # ---- linear structure ----

    def _check_k(self, other: "SymRational") -> None:
        if other.k != self.k:
            raise ValueError(f"cannot add shuffle elements in {self.k} and {other.k} variables")

    def __add__(self, other: "SymRational") -> "SymRational":
        self._check_k(other)
        return SymRational(self.k, self.body + other.body, f"{self.label}+{other.label}")

    def __neg__(self) -> "SymRational":
        return self.scale(-1)

    def __sub__(self, other: "SymRational") -> "SymRational":
        return self + (-other)

    def scale(self, c: Union[LaurentZ, Coefficient]) -> "SymRational":
        """Multiply by a constant or a Laurent polynomial in q1, q2."""
        return SymRational(self.k, [BodyTerm(t.numerator * c, t.factors) for t in self.body], self.label)

    def __mul__(self, other: "SymRational") -> "SymRational":
        return shuffle_mul(self, other)

    # ---- evaluation ----

    def evaluate(self, backend, values: Sequence[Monomial], multiplier: Optional[FactorProduct] = None) -> Any:
        """
        Value of multiplier * Sym[body] at z_i = values[i - 1], as a limit.

        The point is approached along z_i = values[i - 1] (1 + t)^(2^(i - 1)).
        Permuted bodies that vanish or blow up there are expanded in t and
        only their sum has to be regular, so 0/0 coming from different
        factors or different permutations is resolved.

        Args:
            backend: Scalar backend
            values: One monomial per variable
            multiplier: Factor product in z at the same point, not permuted

        Returns:
            Backend scalar

        Raises:
            NonCancellingPole: The limit does not exist
        """
        if len(values) != self.k:
            raise ValueError(f"{self.label} takes {self.k} values, got {len(values)}")
        expansion = CurveExpansion(backend, values)
        extra = expansion.resolve(multiplier or FactorProduct.one(), expansion.branch())
        for perm in itertools.permutations(range(self.k)):
            branch = expansion.branch(perm)
            for term in self.body:
                expansion.add(term.numerator, branch, expansion.resolve(term.factors, branch), extra)
        return expansion.constant_term()

    def evaluate_generic(self, backend) -> Any:
        """Value at the generic point z_i = z_i; the session must carry z1..zk."""
        return self.evaluate(backend, [zvar(i) for i in range(1, self.k + 1)])

    def equals(self, other: "SymRational", backend) -> bool:
        self._check_k(other)
        return backend.equal(self.evaluate_generic(backend), other.evaluate_generic(backend))

    def is_symmetric(self, backend) -> bool:
        """Compare the generic value with the one at z1 <-> z2 swapped."""
        if self.k < 2:
            return True
        swapped = [zvar(2), zvar(1)] + [zvar(i) for i in range(3, self.k + 1)]
        return backend.equal(self.evaluate_generic(backend), self.evaluate(backend, swapped))

    @property
    def degree(self) -> int:
        degrees = set()
        for t in self.body:
            degrees |= t.numerator.z_degrees()
        if len(degrees) > 1:
            raise ValueError(f"{self.label} is not homogeneous")
        return degrees.pop() if degrees else 0

    def __repr__(self) -> str:
        return f"SymRational({self.label or 'R'}, k={self.k}, {len(self.body)} terms)"


def shuffle_mul(a: SymRational, b: SymRational, cap: int = None) -> SymRational:
    """
    The shuffle product a * b.

    Raises:
        CapExceeded: more variables than the configured cap
    """
    cap = settings.SHUFFLE_VARIABLE_CAP if cap is None else cap
    k = a.k + b.k
    if k > cap:
        raise CapExceeded(f"{a.label} * {b.label} needs {k} variables, cap is {cap}")
    shift = {z_name(j): zvar(j + a.k) for j in range(1, b.k + 1)}
    cross = zeta_cross(range(1, a.k + 1), range(a.k + 1, k + 1))
    body = []
    for ta in a.body:
        for tb in b.body:
            body.append(BodyTerm(ta.numerator * tb.numerator.shifted(a.k), ta.factors * tb.factors.substitute(shift) * cross))
    logger.debug(f"shuffle product {a.label} * {b.label}: k={k}, {len(body)} terms")
    return SymRational(k, body, f"({a.label})*({b.label})")


def wheel_check(r: SymRational, backend) -> bool:
    """
    Does the numerator of r vanish on the wheels z_a = q z_c, z_b = q_i z_c?

    Every ordered triple of distinct variables and both choices of q_i are
    tried; the remaining variables stay generic.
    """
    if r.k < 3:
        return True
    multiplier = pole_multiplier(r.k)
    for a, b, c in itertools.permutations(range(1, r.k + 1), 3):
        for qi in (Q1, Q2):
            values = [zvar(i) for i in range(1, r.k + 1)]
            values[a - 1] = Q * zvar(c)
            values[b - 1] = qi * zvar(c)
            if not backend.is_zero(r.evaluate(backend, values, multiplier)):
                logger.info(f"wheel condition fails for {r.label} at z{a}=q z{c}, z{b}={qi} z{c}")
                return False
    return True
