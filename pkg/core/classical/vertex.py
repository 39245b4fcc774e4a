"""
Classical Vertex Operator
The Chern-polynomial Ext operator on H, the vertex operator Phi-bar and its locality with the W-bar currents
"""

import logging
from typing import Any, Dict, List

from core.classical.operators import ClassicalModule, hbar
from core.extnek.ext import a_matrix_factor
from core.extnek.vertex import VertexOperator, entry_after, times_prefactor
from core.repk.currents import Current
from core.repk.operators import Composed, FunctionOperator, GradedOperator, Vector, add_into, linear_combination
from core.scalars.monomials import Monomial
from core.shapes.partitions import RPartition, rpartitions_up_to
from core.verification import IdentityChecker
from models.schemas import CheckResult

logger = logging.getLogger(__name__)


def abar_matrix(session, lam: RPartition, lam_p: RPartition, mass: Monomial, target: str = "u", source: str = "up") -> Any:
    """<lam|Abar_mbar|lam'> on an additive session."""
    return session.fp(a_matrix_factor(lam, lam_p, mass, target, source))


class ClassicalVertexOperator(VertexOperator):
    """
    Phibar(x) = Abar(x) exp[sum_n pbar_n x^-n hbar / (hbar1 hbar2)]

    Built on an additive session with primed torus and mass. The inherited
    tail is the leading order of the K-theoretic one; `classical_tail` is the
    same series written through pbar_n and is what the modes use.
    """

    module_class = ClassicalModule

    def __init__(self, session, mass: Monomial, target: str = "u", source: str = "up"):
        super().__init__(session, mass, target, source)
        self.coupling = hbar(session) / (session.backend.bar("q1") * session.backend.bar("q2"))
        self._classical_tail: Dict[int, GradedOperator] = {}
        self.phibar = Current(f"Phibar_{mass}", self._classical_mode)

    def classical_tail(self, n: int) -> GradedOperator:
        """n Zbar_n = sum_m m c pbar_m Zbar_{n-m}, c = hbar / (hbar1 hbar2)."""
        if n in self._classical_tail:
            return self._classical_tail[n]
        module = self.source_module
        if n == 0:
            op = module.e0_diag(0)
        else:
            terms = []
            for m in range(1, n + 1):
                coeff = self.coupling * self.session.rational(m) / self.session.rational(n)
                terms.append((coeff, Composed([module.pbar(m), self.classical_tail(n - m)])))
            op = linear_combination(self.session, terms, n, f"Zbar[{n}]", module.tag, module.tag)
        self._classical_tail[n] = op
        return op

    def _classical_mode(self, d: int) -> GradedOperator:
        def column(lam_p: RPartition) -> Vector:
            out: Vector = {}
            for n in range(0, lam_p.size + 1):
                vec = self.classical_tail(n).column(lam_p)
                if vec:
                    add_into(out, self.ext.mode(d - n).apply(vec), self.session.one(), self.session.backend)
            return out

        return FunctionOperator(self.session, d, f"Phibar[{d}]", column, self.ext.source, self.ext.target)

    def phibar_current(self) -> Current:
        return self.phibar


def check_tail_routes(vertex: ClassicalVertexOperator, max_size: int = 2) -> CheckResult:
    """The pbar form of the tail agrees with the leading order of the K-theoretic tail."""
    checker = IdentityChecker(vertex.session, "phibar_tail")
    for n in range(0, max_size + 1):
        for lam_p in rpartitions_up_to(vertex.r, max_size):
            checker.compare_vectors(vertex.classical_tail(n).column(lam_p), vertex.tail(n).column(lam_p),
                                    f"Zbar_{n}", source=lam_p)
    return checker.result()


def check_abar_vacuum(vertex: ClassicalVertexOperator) -> CheckResult:
    checker = IdentityChecker(vertex.session, "abar_vacuum")
    empty = RPartition.empty(vertex.r)
    checker.compare(vertex.ext.entry(empty, empty), vertex.session.one(), "<0|Abar|0>", states=(empty, empty))
    return checker.result()


def _locality_coefficients(vertex: ClassicalVertexOperator, i: int, lam: RPartition, lam_p: RPartition,
                           low: int, high: int) -> Dict[int, Any]:
    """a -> <lam| Phibar_a Wbar_{i,D-a} - Wbar^m_{i,D-a} Phibar_a |lam'>, D = |lam'| - |lam|"""
    src, tgt = vertex.source_module, vertex.target_module
    twist = vertex.mass.inverse()
    shift = lam_p.size - lam.size
    out: Dict[int, Any] = {}
    for a in range(low, high + 1):
        b = shift - a
        phi = vertex.phibar.mode(a)
        out[a] = entry_after(phi, src.wbar_op(i, b), lam, lam_p) - entry_after(tgt.wbar_op(i, b, twist), phi, lam, lam_p)
    return out


def check_locality(vertex: ClassicalVertexOperator, i: int, max_size: int = 2) -> CheckResult:
    """
    Phibar(x) Wbar_i(y) (x - y)^i = Wbar^m_i(y) Phibar(x) (x - y)^i

    Wbar^m_i is the ybar^{r-i} Taylor coefficient of the target Wbar at
    ybar = -mbar, the leading order of m^k W_k in the q-deformed relation.
    Written as (1 - x/y)^i times the commutator, bicoefficients with the
    Phibar-index a between -|lam| and |lam'|.
    """
    session = vertex.session
    checker = IdentityChecker(session, f"locality[i={i}]")
    ones: List[Monomial] = [Monomial.one()] * i
    states = rpartitions_up_to(vertex.r, max_size)
    for lam in states:
        for lam_p in states:
            low, high = -lam.size, lam_p.size
            coefficients = _locality_coefficients(vertex, i, lam, lam_p, low, high + i)
            for a, value in sorted(times_prefactor(session, coefficients, ones).items()):
                if low <= a <= high:
                    checker.compare(value, session.zero(), f"x^-{a}", states=(lam, lam_p), bidegree=[a, lam_p.size - lam.size - a])
    logger.info(f"Locality of Wbar_{i}: {checker.checked} bicoefficients, {checker.failures} failures")
    return checker.result()
