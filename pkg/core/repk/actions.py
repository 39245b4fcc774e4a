"""
Fixed-Point Actions
The operators of the upper algebra on K in the fixed-point basis: raising, lowering, diagonal and LDU-assembled
"""

import logging
import threading
from typing import Any, Callable, Dict, Hashable, List

from core.repk.fixed_points import frame, inner_product, norm, norm_ratio
from core.repk.operators import (
    Composed,
    Diagonal,
    FunctionOperator,
    GradedOperator,
    Identity,
    Vector,
    ZeroOperator,
    add_into,
    linear_combination,
)
from core.scalars.factors import Q, Q1, Q2, FactorProduct, box_prefactor, product, tau, zeta
from core.scalars.monomials import Monomial
from core.scalars.series import TruncatedSeries, exp_from_power_sums
from core.shapes.partitions import RPartition, enumerate_rpartitions
from core.shapes.tableaux import SkewShape, enumerate_syt
from core.shuffle.elements import SymPresentation, build_E, build_H, build_P, build_T

logger = logging.getLogger(__name__)


class FixedPointModule:
    """
    The module K of one session and one torus.

    Every operator is built once and kept, so the matrix coefficients memoized
    inside an operator are shared by every identity that uses it.
    """

    def __init__(self, session, tag: str = "u"):
        self.session = session
        self.backend = session.backend
        self.r = session.rank
        self.tag = tag
        self.torus: List[Monomial] = frame(self.r, tag)
        self._operators: Dict[Hashable, GradedOperator] = {}
        self._lock = threading.Lock()
        logger.info(f"FixedPointModule initialized: r={self.r}, torus={tag}, backend={session.mode}")

    def _cached(self, key: Hashable, factory: Callable[[], GradedOperator]) -> GradedOperator:
        with self._lock:
            op = self._operators.get(key)
        if op is None:
            op = factory()
            with self._lock:
                op = self._operators.setdefault(key, op)
        return op

    # ============= GEOMETRY =============

    def norm(self, lam: RPartition) -> Any:
        return norm(self.session, lam, self.tag)

    def inner_product(self, a: Vector, b: Vector) -> Any:
        return inner_product(self.session, a, b, self.tag)

    def states(self, size: int) -> List[RPartition]:
        return list(enumerate_rpartitions(self.r, size))

    def vacuum(self) -> RPartition:
        return RPartition.empty(self.r)

    # ============= SYT SUMS =============

    def _syt_sum(self, rho: SymPresentation, lam: RPartition, mu: RPartition) -> Any:
        """
        sum over SYT of lam/mu of rho(chi) / prod (1 - q chi_{i+1}/chi_i) * prod_{i<j} zeta(chi_i/chi_j)
        """
        total = self.session.zero()
        for tableau in enumerate_syt(SkewShape(lam, mu)):
            chi = tableau.weights(self.tag)
            fp = FactorProduct(factors=[(Q * chi[i + 1] / chi[i], -1) for i in range(len(chi) - 1)])
            fp = fp * product(zeta(chi[i] / chi[j]) for i in range(len(chi)) for j in range(i + 1, len(chi)))
            total = total + rho.rho_value(self.backend, chi) * self.session.fp(fp)
        return total

    def _skew_weights(self, lam: RPartition, mu: RPartition) -> List[Monomial]:
        inner = set(mu.boxes())
        return [box_weight for box, box_weight in zip(lam.boxes(), lam.weights(self.tag)) if box not in inner]

    def _attachment(self, lam: RPartition, mu: RPartition) -> FactorProduct:
        """prod over the skew boxes of tau(q chi) prod_{box in mu} zeta(chi / chi_box)"""
        inner = mu.weights(self.tag)
        return product(
            tau(Q * chi, self.torus) * product(zeta(chi / other) for other in inner)
            for chi in self._skew_weights(lam, mu)
        )

    def raising_coefficient(self, rho: SymPresentation, lam: RPartition, mu: RPartition) -> Any:
        """<lam| R^<- |mu>, zero unless mu sits inside lam with |lam| = |mu| + k"""
        if lam.size - mu.size != rho.k or not lam.contains(mu):
            return self.session.zero()
        fp = box_prefactor() ** rho.k * self._attachment(lam, mu)
        return self._syt_sum(rho, lam, mu) * self.session.fp(fp)

    def lowering_coefficient(self, rho: SymPresentation, mu: RPartition, lam: RPartition) -> Any:
        """<mu| R^-> |lam>, zero unless mu sits inside lam with |lam| = |mu| + k"""
        if lam.size - mu.size != rho.k or not lam.contains(mu):
            return self.session.zero()
        per_box = box_prefactor() * FactorProduct(prefactor=Monomial.q(1 - self.r))
        fp = per_box ** rho.k * norm_ratio(lam, mu, self.tag) * self._attachment(lam, mu)
        return self._syt_sum(rho, lam, mu) * self.session.fp(fp)

    # ============= RAISING AND LOWERING =============

    def raise_op(self, rho: SymPresentation) -> GradedOperator:
        """R^<-: degree shift -k."""

        def column(mu: RPartition) -> Vector:
            out: Vector = {}
            for lam in enumerate_rpartitions(self.r, mu.size + rho.k):
                if lam.contains(mu):
                    out[lam] = self.raising_coefficient(rho, lam, mu)
            return out

        return self._cached(("raise", rho.label, id(rho) if not rho.label else None),
                            lambda: FunctionOperator(self.session, -rho.k, f"{rho.label}<-", column, self.tag, self.tag))

    def lower_op(self, rho: SymPresentation) -> GradedOperator:
        """R^->: degree shift +k."""

        def column(lam: RPartition) -> Vector:
            out: Vector = {}
            for mu in lam.subpartitions():
                if mu.size == lam.size - rho.k:
                    out[mu] = self.lowering_coefficient(rho, mu, lam)
            return out

        return self._cached(("lower", rho.label, id(rho) if not rho.label else None),
                            lambda: FunctionOperator(self.session, rho.k, f"{rho.label}->", column, self.tag, self.tag))

    # ============= DIAGONAL OPERATORS =============

    def p0_eigenvalue(self, d: int, lam: RPartition) -> Any:
        """
        d > 0: sum u_i^d - (1-q1^d)(1-q2^d) sum chi^d
        d < 0: -[q^|d| sum u_i^d - (1-q1^|d|)(1-q2^|d|) sum chi^d]
        """
        if d == 0:
            raise ValueError("P_{0,0} is not an operator of the module")
        n = abs(d)
        frame_sum = self.session.zero()
        for u in self.torus:
            frame_sum = frame_sum + self.session.mono(u ** d)
        if d < 0:
            frame_sum = frame_sum * self.session.mono(Monomial.q(n))
        weight = self.session.fp(FactorProduct(factors={Q1 ** n: 1, Q2 ** n: 1}))
        boxes = self.session.zero()
        for chi in lam.weights(self.tag):
            boxes = boxes + self.session.mono(chi ** d)
        value = frame_sum - weight * boxes
        return value if d > 0 else -value

    def diag_p0(self, d: int) -> GradedOperator:
        return self._cached(("p0", d), lambda: Diagonal(self.session, f"P[0,{d}]", lambda lam: self.p0_eigenvalue(d, lam), self.tag))

    def e0_eigenvalue(self, k: int, lam: RPartition) -> Any:
        """(-1)^k [t^k] prod_i (1 - u_i t) prod_box zeta(chi t)"""
        order = k + 1
        backend = self.backend
        series = TruncatedSeries.one(backend, order)
        for u in self.torus:
            series = series * TruncatedSeries.linear(backend, self.session.mono(u), order)
        for chi in lam.weights(self.tag):
            series = series * TruncatedSeries.linear(backend, self.session.mono(Q1 * chi), order)
            series = series * TruncatedSeries.linear(backend, self.session.mono(Q2 * chi), order)
            series = series * TruncatedSeries.geometric(backend, self.session.mono(chi), order)
            series = series * TruncatedSeries.geometric(backend, self.session.mono(Q * chi), order)
        value = series.coefficient(k)
        return value if k % 2 == 0 else -value

    def e0_diag(self, k: int) -> GradedOperator:
        if k < 0:
            raise ValueError(f"E[0,{k}] needs k >= 0")
        if k == 0:
            return self._cached(("id",), lambda: Identity(self.session, self.tag))
        return self._cached(("e0", k), lambda: Diagonal(self.session, f"E[0,{k}]", lambda lam: self.e0_eigenvalue(k, lam), self.tag))

    def _exp_diagonal(self, n: int, weight: Callable[[int], Any], label: str) -> GradedOperator:
        """[t^|n|] exp(sum_m weight(m) P_{0, sign(n) m} t^m / m) as a diagonal operator."""
        sign = 1 if n > 0 else -1

        def eigenvalue(lam: RPartition) -> Any:
            series = exp_from_power_sums(
                self.backend, lambda m: weight(m) * self.p0_eigenvalue(sign * m, lam), abs(n) + 1
            )
            return series.coefficient(abs(n))

        return self._cached((label, n), lambda: Diagonal(self.session, f"{label}[0,{n}]", eigenvalue, self.tag))

    # ============= GENERATORS BY INDEX =============

    def _by_index(self, builder: Callable[[int, int], SymPresentation], a: int, b: int) -> GradedOperator:
        if a > 0:
            return self.lower_op(builder(a, b))
        return self.raise_op(builder(-a, b))

    def p_gen(self, a: int, b: int) -> GradedOperator:
        """P_{a,b}: a > 0 lowers, a < 0 raises, a = 0 is diagonal."""
        if a == 0:
            return self.diag_p0(b)
        return self._by_index(build_P, a, b)

    def h_gen(self, a: int, b: int) -> GradedOperator:
        if a == 0:
            if b == 0:
                return self.e0_diag(0)
            return self._exp_diagonal(b, lambda m: self.session.one(), "H")
        return self._by_index(build_H, a, b)

    def e_gen(self, a: int, b: int) -> GradedOperator:
        if a == 0:
            if b >= 0:
                return self.e0_diag(b)
            return self._exp_diagonal(b, lambda m: self.session.rational((-1) ** (m - 1)), "E")
        return self._by_index(build_E, a, b)

    def q_gen(self, n: int) -> GradedOperator:
        """
        Q_{n,0} from exp[sum_m P_{m,0} y^m (1 - q^-m) / m] on the side of sign(n),
        through n Q_n = sum_m (1 - q^-m) P_m Q_{n-m}.
        """
        if n == 0:
            return self.e0_diag(0)

        def factory() -> GradedOperator:
            sign = 1 if n > 0 else -1
            terms = []
            for m in range(1, abs(n) + 1):
                coeff = self.session.fp(FactorProduct.one_minus(Monomial.q(-m))) / self.session.rational(abs(n))
                rest = self.q_gen(sign * (abs(n) - m))
                terms.append((coeff, Composed([self.p_gen(sign * m, 0), rest])))
            return linear_combination(self.session, terms, n, f"Q[{n},0]", self.tag, self.tag)

        return self._cached(("Q", n), factory)

    def boson(self, n: int) -> GradedOperator:
        """p_{-n} = P_{-n,0}, p_n = q^{n(r-1)} P_{n,0}"""
        if n == 0:
            raise ValueError("p_0 is not a boson")
        if n < 0:
            return self.p_gen(n, 0)
        return self._cached(("boson", n), lambda: self.p_gen(n, 0).scaled(self.session.mono(Monomial.q(n * (self.r - 1)))))

    def h_boson(self, n: int) -> GradedOperator:
        """h_{-n} = H_{-n,0}, h_n = q^{n(r-1)} H_{n,0}"""
        if n == 0:
            raise ValueError("h_0 is not a boson")
        if n < 0:
            return self.h_gen(n, 0)
        return self._cached(("h_boson", n), lambda: self.h_gen(n, 0).scaled(self.session.mono(Monomial.q(n * (self.r - 1)))))

    # ============= TRIANGULAR PARTS AND W =============

    def t_left(self, d: int, k: int) -> GradedOperator:
        """T^<-_{d,k}; identity at (0, 0) and zero on the rest of the boundary."""
        if (d, k) == (0, 0):
            return self.e0_diag(0)
        if d <= 0 or k <= 0:
            return ZeroOperator(self.session, -d, self.tag, self.tag, f"T[{d},{k}]<-")
        return self.raise_op(build_T(d, k))

    def t_right(self, d: int, k: int) -> GradedOperator:
        """T^->_{d,k}; identity at (0, 0) and zero on the rest of the boundary."""
        if (d, k) == (0, 0):
            return self.e0_diag(0)
        if d <= 0 or k <= 0:
            return ZeroOperator(self.session, d, self.tag, self.tag, f"T[{d},{k}]->")
        return self.lower_op(build_T(d, k))

    def w_op(self, d: int, k: int) -> GradedOperator:
        """
        W_{d,k} = sum q^{(k-1) d_r} T^<-_{d_l,k_l} E_{0,k_0} T^->_{d_r,k_r}

        over k_l + k_0 + k_r = k and d_r - d_l = d. On a column |lam> only
        d_r <= |lam| contributes, so each column is a finite sum.
        """
        if k < 0:
            raise ValueError(f"W[{d},{k}] needs k >= 0")

        def column(lam: RPartition) -> Vector:
            out: Vector = {}
            for d_r in range(max(d, 0), lam.size + 1):
                d_l = d_r - d
                for k_r in _split_range(d_r, k):
                    for k_l in _split_range(d_l, k - k_r):
                        k_0 = k - k_r - k_l
                        vec = self.t_right(d_r, k_r).column(lam)
                        if not vec:
                            continue
                        vec = self.e0_diag(k_0).apply(vec)
                        vec = self.t_left(d_l, k_l).apply(vec)
                        scale = self.session.mono(Monomial.q((k - 1) * d_r))
                        add_into(out, vec, scale, self.backend)
            return out

        return self._cached(("W", d, k), lambda: FunctionOperator(self.session, d, f"W[{d},{k}]", column, self.tag, self.tag))


def _split_range(d: int, k: int) -> range:
    """Allowed k-parts of a triangular factor of size d within a budget k."""
    if d == 0:
        return range(0, 1)
    return range(1, k + 1)
