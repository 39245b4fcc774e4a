"""
Currents and Their Products
Generating series of graded operators, ordered products paired between fixed states, and rational reconstruction in w = y/x
"""

import logging
import threading
from typing import Any, Callable, Dict, Iterable, List, Tuple

from core.exceptions import ReconstructionOverflow
from core.repk.operators import GradedOperator
from core.scalars.factors import Q, Q1, Q2
from core.scalars.monomials import Monomial
from core.scalars.series import TruncatedSeries
from core.shapes.partitions import RPartition

logger = logging.getLogger(__name__)

# coefficient index -> scalar
SparseSeries = Dict[int, Any]


class Current:
    """
    A(x) = sum_d A_d / x^d with modes built on demand.

    `index_of(mu, lam)` says which mode can connect |lam> to <mu|; for the
    currents of K it is |lam| - |mu|.
    """

    def __init__(self, label: str, factory: Callable[[int], GradedOperator],
                 index_of: Callable[[RPartition, RPartition], int] = None):
        self.label = label
        self._factory = factory
        self._index_of = index_of or (lambda mu, lam: lam.size - mu.size)
        self._modes: Dict[int, GradedOperator] = {}
        self._lock = threading.Lock()

    def mode(self, d: int) -> GradedOperator:
        with self._lock:
            op = self._modes.get(d)
        if op is None:
            op = self._factory(d)
            with self._lock:
                op = self._modes.setdefault(d, op)
        return op

    def coefficient(self, mu: RPartition, lam: RPartition) -> Any:
        """<mu| A(x) |lam> as the single mode that can contribute."""
        return self.mode(self._index_of(mu, lam)).entry(mu, lam)

    def __repr__(self) -> str:
        return f"Current({self.label})"


def w_current(module, k: int) -> Current:
    return Current(f"W_{k}", lambda d: module.w_op(d, k))


# ============= ANALYTIC FACTORS =============

def zeta_series(session, a: Monomial, order: int, tag: str = "w") -> TruncatedSeries:
    """zeta(a w) expanded in non-negative powers of w."""
    backend = session.backend
    out = TruncatedSeries.linear(backend, session.mono(Q1 * a), order, tag)
    out = out * TruncatedSeries.linear(backend, session.mono(Q2 * a), order, tag)
    out = out * TruncatedSeries.geometric(backend, session.mono(a), order, tag)
    return out * TruncatedSeries.geometric(backend, session.mono(Q * a), order, tag)


def f_exponents(k: int, k_prime: int) -> range:
    """f_{k k'}(z) = prod over these i of zeta(z q^i)"""
    return range(max(0, k - k_prime), k)


def f_series(session, k: int, k_prime: int, order: int, tag: str = "w") -> TruncatedSeries:
    out = TruncatedSeries.one(session.backend, order, tag)
    for i in f_exponents(k, k_prime):
        out = out * zeta_series(session, Monomial.q(i), order, tag)
    return out


# ============= ORDERED PRODUCTS =============

def product_coefficient(first: Current, a: int, second: Current, b: int, mu: RPartition, lam: RPartition) -> Any:
    """<mu| A_a B_b |lam>, the intermediate size being forced by grading."""
    outer = first.mode(a)
    vec = second.mode(b).column(lam)
    if not vec:
        return outer.backend.zero()
    return outer.apply(vec).get(mu, outer.backend.zero())


def ordered_coefficient(session, first: Current, second: Current, analytic: TruncatedSeries,
                        mu: RPartition, lam: RPartition, a: int, b: int) -> Any:
    """
    Coefficient of x^-a y^-b in <mu| A(x) B(y) f(y/x) |lam>.

    f is expanded in non-negative powers of y/x, so the coefficient is
    sum_j f_j <mu| A_{a-j} B_{b+j} |lam>; B lowers by at most |lam|, which
    bounds j.
    """
    total = session.zero()
    for j in range(0, lam.size - b + 1):
        f_j = analytic.coefficient(j)
        if session.is_zero(f_j):
            continue
        total = total + f_j * product_coefficient(first, a - j, second, b + j, mu, lam)
    return total


def series_order(lam: RPartition, b: int, extra: int = 1) -> int:
    """Order of the analytic series needed by ordered_coefficient."""
    return max(lam.size - b, 0) + extra


# ============= RATIONAL RECONSTRUCTION =============

def _poly_mul(session, a: SparseSeries, b: SparseSeries) -> SparseSeries:
    out: SparseSeries = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, session.zero()) + x * y
    return out


def pole_denominator(session, k: int, k_prime: int) -> SparseSeries:
    """
    D(w) = prod_{s=max(0,k-k')+1}^{k} (1 - q^s w) prod_{s=max(0,k'-k)+1}^{k'} (w - q^s)
    """
    out: SparseSeries = {0: session.one()}
    for s in range(max(0, k - k_prime) + 1, k + 1):
        out = _poly_mul(session, out, {0: session.one(), 1: -session.mono(Monomial.q(s))})
    for s in range(max(0, k_prime - k) + 1, k_prime + 1):
        out = _poly_mul(session, out, {0: -session.mono(Monomial.q(s)), 1: session.one()})
    return out


def evaluate_laurent(session, poly: SparseSeries, point: Monomial) -> Any:
    total = session.zero()
    for n, c in poly.items():
        total = total + c * session.mono(point ** n)
    return total


class ProductSeries:
    """
    S(w) = y^D <mu| W_k(x) W_k'(y) f_{kk'}(y/x) |lam> as a series in w = y/x,
    with D = |lam| - |mu|.

    The series starts at w^(D - |lam|). Multiplied by the certified pole
    denominator it must be a Laurent polynomial of degree <= |lam| + deg D;
    `numerator` computes margin extra coefficients past that degree and
    demands they vanish.
    """

    def __init__(self, session, module, k: int, k_prime: int, mu: RPartition, lam: RPartition, margin: int = 1):
        self.session = session
        self.k = k
        self.k_prime = k_prime
        self.mu = mu
        self.lam = lam
        self.margin = margin
        self.shift = lam.size - mu.size
        self.first = w_current(module, k)
        self.second = w_current(module, k_prime)
        self.denominator = pole_denominator(session, k, k_prime)
        self.degree_bound = lam.size + max(self.denominator)

    @property
    def low(self) -> int:
        return self.shift - self.lam.size

    @property
    def high(self) -> int:
        return self.degree_bound + self.margin

    def coefficients(self) -> SparseSeries:
        out: SparseSeries = {}
        order = self.high - self.low + 2
        analytic = f_series(self.session, self.k, self.k_prime, order)
        for a in range(self.low, self.high + 1):
            out[a] = ordered_coefficient(self.session, self.first, self.second, analytic, self.mu, self.lam, a, self.shift - a)
        return out

    def numerator(self) -> SparseSeries:
        """
        Raises:
            ReconstructionOverflow: the product does not truncate in the window
        """
        series = self.coefficients()
        out: SparseSeries = {}
        for n in range(self.low, self.high + 1):
            acc = self.session.zero()
            for t, d_t in self.denominator.items():
                c = series.get(n - t)
                if c is not None:
                    acc = acc + d_t * c
            out[n] = acc
        for n in range(self.degree_bound + 1, self.high + 1):
            if not self.session.is_zero(out[n]):
                raise ReconstructionOverflow(
                    f"W_{self.k} W_{self.k_prime} between {self.mu} and {self.lam}: "
                    f"w^{n} survives past degree {self.degree_bound}"
                )
        return {n: c for n, c in out.items() if n <= self.degree_bound}

    def value_at(self, point: Monomial) -> Any:
        """S(point) = N(point) / D(point); the point must not be a certified pole."""
        numerator = evaluate_laurent(self.session, self.numerator(), point)
        return numerator / evaluate_laurent(self.session, self.denominator, point)


def state_pairs(module, max_size: int) -> Iterable[Tuple[RPartition, RPartition]]:
    """All (mu, lam) with both sizes in 0..max_size."""
    states: List[RPartition] = [lam for n in range(max_size + 1) for lam in module.states(n)]
    for lam in states:
        for mu in states:
            yield mu, lam
