"""
Classical Operators
The cohomological limit on H: additive zeta and tau, the fixed-point actions, E-bar and the W-bar currents
"""

import logging
import threading
from itertools import combinations
from typing import Any, Callable, Dict, List, Tuple

from core.exceptions import NonCancellingPole
from core.repk.actions import FixedPointModule
from core.repk.fixed_points import norm_ratio
from core.repk.operators import Diagonal, FunctionOperator, GradedOperator, Vector
from core.scalars.additive import AdditiveBackend
from core.scalars.factors import Q, FactorProduct, box_prefactor, product, zeta
from core.scalars.monomials import Monomial
from core.scalars.series import TruncatedSeries
from core.shapes.partitions import RPartition, rpartitions_up_to
from core.shapes.tableaux import SkewShape, enumerate_syt
from core.verification import IdentityChecker
from models.schemas import CheckResult

logger = logging.getLogger(__name__)

YBAR = "ybar"


# ============= ADDITIVE SCALARS =============

def _require_additive(session) -> AdditiveBackend:
    backend = session.backend
    if not isinstance(backend, AdditiveBackend):
        raise ValueError(f"classical operators need an additive session, got {session.mode}")
    return backend


def hbar(session) -> Any:
    backend = _require_additive(session)
    return backend.bar("q1") + backend.bar("q2")


def chibar(session, chi: Monomial) -> Any:
    """u_k q1^i q2^j -> ubar_k + i hbar1 + j hbar2"""
    return _require_additive(session).linear_form(chi)


def zbar(session, z: Any) -> Any:
    """(z + hbar1)(z + hbar2) / (z (z + hbar))"""
    backend = _require_additive(session)
    shifted = z + hbar(session)
    if backend.is_zero(z) or backend.is_zero(shifted):
        raise NonCancellingPole("zeta-bar evaluated at a pole")
    return (z + backend.bar("q1")) * (z + backend.bar("q2")) / (z * shifted)


def taubar(session, z: Any, tag: str = "u") -> Any:
    """prod_i (ubar_i - z)"""
    backend = _require_additive(session)
    out = backend.one()
    for u in session.torus(tag):
        out = out * (backend.linear_form(u) - z)
    return out


def ybar_series(session, fp: FactorProduct, order: int, name: str = "y") -> TruncatedSeries:
    """
    A factor product as a power series in ybar around 0.

    Factors free of `name` are evaluated by the session; every other factor
    (1 - M) has additive value c - e ybar with e the exponent of `name` in M.
    """
    backend = _require_additive(session)
    fixed: Dict[Monomial, int] = {}
    series = TruncatedSeries.one(backend, order, YBAR)
    for m, e in fp.factors.items():
        slope = m.exponent(name)
        if slope == 0:
            fixed[m] = e
            continue
        constant = -backend.linear_form(m * Monomial.gen(name, -slope))
        linear = TruncatedSeries(backend, [constant, backend.rational(-slope)], order, YBAR)
        if e < 0:
            try:
                linear = linear.inverse()
            except ZeroDivisionError:
                raise NonCancellingPole(f"(1 - {m}) vanishes at ybar = 0") from None
        for _ in range(abs(e)):
            series = series * linear
    rest = session.fp(FactorProduct(fp.constant, fp.prefactor, fixed))
    return series.scale(rest)


# ============= MODULE =============

class ClassicalModule(FixedPointModule):
    """
    The module H of one torus, built on an additive session.

    raise_op and lower_op already give the classical fixed-point actions,
    since the additive backend keeps the leading coefficient of each factor.
    T-bar and E-bar need the extra generator y, whose bar is the spectral
    variable ybar.
    """

    def __init__(self, session, tag: str = "u"):
        _require_additive(session)
        super().__init__(session, tag)
        self.y = Monomial.gen("y")
        self._series: Dict[Tuple[int, RPartition, RPartition], TruncatedSeries] = {}
        self._series_lock = threading.Lock()

    def _require_y(self) -> None:
        if "y" not in self.session.generators:
            raise ValueError("the session has no generator y for the spectral variable")

    # ============= ACTIONS =============

    def raise_bar(self, rho) -> GradedOperator:
        return self.raise_op(rho)

    def lower_bar(self, rho) -> GradedOperator:
        return self.lower_op(rho)

    def bar_boson(self, n: int) -> GradedOperator:
        """Leading order of p_n: the lowering (n > 0) or raising (n < 0) action of P_{|n|,0}."""
        return self.boson(n)

    def pbar(self, n: int) -> GradedOperator:
        """pbar_n = p_n leading order / n^2, n > 0."""
        if n <= 0:
            raise ValueError("pbar_n needs n > 0")
        return self._cached(("pbar", n), lambda: self.bar_boson(n).scaled(self.session.one() / self.session.rational(n * n)))

    # ============= E-BAR =============

    def ebar_factor(self, lam: RPartition) -> FactorProduct:
        """prod_i (1 - u_i/y) prod_box zeta(chi/y), whose additive value is prod (ybar - ubar_i) prod zeta-bar(chibar - ybar)"""
        self._require_y()
        out = product(FactorProduct.one_minus(u / self.y) for u in self.torus)
        return out * product(zeta(chi / self.y) for chi in lam.weights(self.tag))

    def ebar_eigenvalue(self, lam: RPartition) -> Any:
        return self.session.fp(self.ebar_factor(lam))

    def ebar_series(self, lam: RPartition, order: int) -> TruncatedSeries:
        return ybar_series(self.session, self.ebar_factor(lam), order)

    def ebar_direct(self, lam: RPartition) -> Any:
        """The same eigenvalue from zbar at ybar itself."""
        backend = self.backend
        y = backend.bar("y")
        out = backend.one()
        for u in self.torus:
            out = out * (y - backend.linear_form(u))
        for chi in lam.weights(self.tag):
            out = out * zbar(self.session, backend.linear_form(chi) - y)
        return out

    def ebar_diag(self, k: int) -> GradedOperator:
        """ybar^k coefficient of E-bar(ybar)."""
        if k < 0:
            raise ValueError(f"Ebar[{k}] needs k >= 0")
        return self._cached(
            ("ebar", k),
            lambda: Diagonal(self.session, f"Ebar[{k}]", lambda lam: self.ebar_series(lam, k + 1).coefficient(k), self.tag),
        )

    # ============= T-BAR =============

    def _tableau_factors(self, lam: RPartition, mu: RPartition) -> List[FactorProduct]:
        """Per SYT of lam/mu: (1 - y/chi_d)^-1 / prod (1 - q chi_{i+1}/chi_i) * prod_{i<j} zeta(chi_i/chi_j)"""
        out = []
        for tableau in enumerate_syt(SkewShape(lam, mu)):
            chi = tableau.weights(self.tag)
            fp = FactorProduct(factors=[(Q * chi[i + 1] / chi[i], -1) for i in range(len(chi) - 1)])
            fp = fp * product(zeta(chi[i] / chi[j]) for i in range(len(chi)) for j in range(i + 1, len(chi)))
            out.append(fp * FactorProduct.one_minus(self.y / chi[-1], -1))
        return out

    def tbar_factors(self, side: str, lam: RPartition, mu: RPartition) -> List[FactorProduct]:
        """
        Factor products summing to <lam|Tbar_d^<-|mu> (side "left") or <mu|Tbar_d^->|lam> (side "right"),
        with d = |lam| - |mu| >= 1.
        """
        self._require_y()
        d = lam.size - mu.size
        if d < 1 or not lam.contains(mu):
            return []
        if side == "left":
            outer = box_prefactor() ** d * self._attachment(lam, mu)
        elif side == "right":
            per_box = box_prefactor() * FactorProduct(prefactor=Monomial.q(1 - self.r))
            outer = per_box ** d * norm_ratio(lam, mu, self.tag) * self._attachment(lam, mu)
        else:
            raise ValueError(f"Unknown side: {side}")
        return [outer * fp for fp in self._tableau_factors(lam, mu)]

    # ============= W-BAR =============

    def _assemble(self, d: int, mu: RPartition, lam: RPartition, evaluate: Callable[[FactorProduct], Any],
                  one: Any, zero: Any, twist: Monomial) -> Any:
        """
        <mu| sum_{d_r - d_l = d} Tbar_{d_l}^<- Ebar Tbar_{d_r}^-> |lam> with y -> y twist q^-d_r.

        The q^((k-1) d_r) weight of W_{d,k} moves the spectral variable of the
        term through nu by q^-d_r, so its ybar is shifted by -d_r hbar.
        """
        total = zero
        if mu.size != lam.size - d:
            return total

        for nu in lam.subpartitions():
            d_r = lam.size - nu.size
            d_l = mu.size - nu.size
            if d_l < 0 or not mu.contains(nu):
                continue
            moved = {"y": self.y * twist * Monomial.q(-d_r)}

            def summed(factors: List[FactorProduct]) -> Any:
                out = zero
                for fp in factors:
                    out = out + evaluate(fp.substitute(moved))
                return out

            right = one if d_r == 0 else summed(self.tbar_factors("right", lam, nu))
            left = one if d_l == 0 else summed(self.tbar_factors("left", mu, nu))
            total = total + left * summed([self.ebar_factor(nu)]) * right
        return total

    def wbar_series(self, d: int, mu: RPartition, lam: RPartition, twist: Monomial = Monomial.one()) -> TruncatedSeries:
        """<mu|Wbar_d(ybar)|lam> expanded to ybar^r, with y replaced by y twist."""
        key = (d, mu, lam, twist)
        with self._series_lock:
            cached = self._series.get(key)
        if cached is not None:
            return cached
        order = self.r + 1
        value = self._assemble(
            d, mu, lam,
            lambda fp: ybar_series(self.session, fp, order),
            TruncatedSeries.one(self.backend, order, YBAR),
            TruncatedSeries(self.backend, [], order, YBAR),
            twist,
        )
        with self._series_lock:
            return self._series.setdefault(key, value)

    def wbar_value(self, d: int, mu: RPartition, lam: RPartition, twist: Monomial = Monomial.one()) -> Any:
        """<mu|Wbar_d(ybar)|lam> at the session value of ybar, with y replaced by y twist."""
        return self._assemble(d, mu, lam, self.session.fp, self.session.one(), self.session.zero(), twist)

    def wbar_op(self, i: int, d: int, twist: Monomial = Monomial.one()) -> GradedOperator:
        """
        Wbar_{i,d}: the ybar^{r-i} Taylor coefficient of Wbar_d(ybar), degree shift d.

        A twist t expands around ybar = tbar instead of 0, which mixes in
        the Wbar_{j,d} with j < i.
        """
        if not 0 <= i <= self.r:
            raise ValueError(f"Wbar_{i} needs 0 <= i <= {self.r}")

        def column(lam: RPartition) -> Vector:
            return {mu: self.wbar_series(d, mu, lam, twist).coefficient(self.r - i) for mu in self.states(lam.size - d)}

        label = f"Wbar{i}[{d}]" if twist.is_identity else f"Wbar{i}[{d}]@{twist}"
        return self._cached(("Wbar", i, d, twist), lambda: FunctionOperator(self.session, d, label, column, self.tag, self.tag))

    def __repr__(self) -> str:
        return f"ClassicalModule(r={self.r}, torus={self.tag})"


# ============= CHECKS =============

def check_classical_module(module: ClassicalModule, max_size: int = 2) -> List[CheckResult]:
    """
    1. E-bar from factor products equals the zeta-bar product at ybar
    2. Wbar_i on the vacuum at d = 0 is (-1)^i e_i(ubar)
    3. Wbar_{i,d} only connects sizes differing by d
    """
    session = module.session
    backend = module.backend
    routes = IdentityChecker(session, "ebar_routes")
    vacuum = IdentityChecker(session, "wbar_vacuum")
    grading = IdentityChecker(session, "wbar_grading")
    for lam in rpartitions_up_to(module.r, max_size):
        routes.compare(module.ebar_eigenvalue(lam), module.ebar_direct(lam), "Ebar(ybar)", states=(lam,))

    empty = module.vacuum()
    ubar = [backend.linear_form(u) for u in module.torus]
    for i in range(0, module.r + 1):
        expected = session.zero()
        for subset in combinations(ubar, i):
            term = session.one()
            for value in subset:
                term = term * value
            expected = expected + term
        if i % 2:
            expected = -expected
        vacuum.compare(module.wbar_op(i, 0).entry(empty, empty), expected, f"Wbar_{i}[0]", states=(empty,))

        for d in range(-1, 2):
            for lam in rpartitions_up_to(module.r, max_size):
                column = module.wbar_op(i, d).column(lam)
                grading.require(all(mu.size == lam.size - d for mu in column), f"Wbar_{i}[{d}] grading", states=(lam,))
    return [routes.result(), vacuum.result(), grading.result()]
