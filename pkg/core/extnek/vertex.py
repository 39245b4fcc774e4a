"""
Vertex Operator
Phi_m(x) = A_m(x) Z_m(x), its boson tail, and the commutation relations of the Ext operator with the algebra
"""

import logging
from typing import Any, Dict, List, Tuple

from core.extnek.ext import ExtOperator
from core.repk.actions import FixedPointModule
from core.repk.currents import Current
from core.repk.operators import Composed, FunctionOperator, GradedOperator, Vector, add_into, commutator, linear_combination
from core.scalars.factors import Q1, Q2, FactorProduct
from core.scalars.monomials import Monomial
from core.shapes.partitions import RPartition, rpartitions_up_to
from core.verification import IdentityChecker
from models.schemas import CheckResult

logger = logging.getLogger(__name__)


class VertexOperator:
    """
    Phi_m(x) = A_m(x) exp[- sum_n p_n / (n x^n) (u'/(m^r u))^n (1 - q^n) / ((1 - q1^n)(1 - q2^n))]

    The tail Z_m(x) acts on the source torus; its mode Z_n is a finite
    combination of annihilation bosons, so every mode of Phi_m is a finite
    sum on a fixed source state.
    """

    module_class = FixedPointModule

    def __init__(self, session, mass: Monomial, target: str = "u", source: str = "up"):
        self.session = session
        self.mass = mass
        self.r = session.rank
        self.ext = ExtOperator(session, mass, target, source)
        self.target_module = self.module_class(session, target)
        self.source_module = self.module_class(session, source)
        self.u = session.torus_product(target)
        self.u_p = session.torus_product(source)
        self._tail: Dict[int, GradedOperator] = {}
        self.current = Current(f"Phi_{mass}", self._mode)
        logger.info(f"VertexOperator initialized: m={mass}, {source} -> {target}")

    # ---- scalars ----

    def ratio(self) -> Monomial:
        """m^r u / u'"""
        return self.mass ** self.r * self.u / self.u_p

    def _tail_weight(self, n: int) -> Any:
        """-(u'/(m^r u))^n (1 - q^n) / ((1 - q1^n)(1 - q2^n))"""
        fp = FactorProduct(-1, self.ratio() ** (-n), {Monomial.q(n): 1, Q1 ** n: -1, Q2 ** n: -1})
        return self.session.fp(fp)

    # ---- operators ----

    def tail(self, n: int) -> GradedOperator:
        """Z_n through n Z_n = sum_m w_m p_m Z_{n-m}, Z_0 = Id."""
        if n in self._tail:
            return self._tail[n]
        module = self.source_module
        if n == 0:
            op = module.e0_diag(0)
        else:
            terms = []
            for m in range(1, n + 1):
                coeff = self._tail_weight(m) / self.session.rational(n)
                terms.append((coeff, Composed([module.boson(m), self.tail(n - m)])))
            op = linear_combination(self.session, terms, n, f"Z[{n}]", module.tag, module.tag)
        self._tail[n] = op
        return op

    def _mode(self, d: int) -> GradedOperator:
        def column(lam_p: RPartition) -> Vector:
            out: Vector = {}
            for n in range(0, lam_p.size + 1):
                vec = self.tail(n).column(lam_p)
                if vec:
                    add_into(out, self.ext.mode(d - n).apply(vec), self.session.one(), self.session.backend)
            return out

        return FunctionOperator(self.session, d, f"Phi[{d}]", column, self.ext.source, self.ext.target)

    def mode(self, d: int) -> GradedOperator:
        return self.current.mode(d)


def entry_after(op_left: GradedOperator, op_right: GradedOperator, lam: RPartition, lam_p: RPartition) -> Any:
    """<lam| L R |lam'>"""
    vec = op_right.column(lam_p)
    zero = op_left.backend.zero()
    if not vec:
        return zero
    return op_left.apply(vec).get(lam, zero)


# ============= TAIL =============

def check_z_tail_commutator(vertex: VertexOperator, max_size: int = 3, max_k: int = 2) -> CheckResult:
    """[Z_n, p_-k] = ((u'/(m^r u))^k - (q^r u'/(m^r u))^k) Z_{n-k}"""
    session = vertex.session
    checker = IdentityChecker(session, "z_tail_commutator")
    module = vertex.source_module
    states = rpartitions_up_to(vertex.r, max_size)
    for k in range(1, max_k + 1):
        inverse = vertex.ratio() ** (-k)
        coeff = session.mono(inverse) - session.mono(inverse * Monomial.q(vertex.r * k))
        for n in range(0, max_size + k + 1):
            lhs = commutator(vertex.tail(n), module.boson(-k))
            rhs = vertex.tail(n - k).scaled(coeff) if n >= k else None
            for lam_p in states:
                expected = rhs.column(lam_p) if rhs is not None else {}
                checker.compare_vectors(lhs.column(lam_p), expected, f"[Z_{n}, p_-{k}]", source=lam_p)
    return checker.result()


# ============= EXT AGAINST THE ALGEBRA =============

def _twisted_pairs(vertex: VertexOperator, max_size: int) -> List[Tuple[RPartition, RPartition]]:
    states = rpartitions_up_to(vertex.r, max_size)
    return [(lam, lam_p) for lam in states for lam_p in states]


def check_thm43(vertex: VertexOperator, max_size: int = 3, max_k: int = 2) -> List[CheckResult]:
    """
    With A = A_m(1), c = m^r u/u' and s = q^r u'/(m^r u):

    1. [A, p_-k] = A (s^k - 1) and [A, p_k] = A (1 - c^k)
    2. A h_-k - h_-k A = s A h_{-k+1} - h_{-k+1} A
       A h_k - h_k A = A h_{k-1} - c h_{k-1} A
    3. A P_{k,1} - c/q^r A P_{k-1,1} = m/q P_{k,1} A - m c/q^r P_{k-1,1} A
    4. A P_{-k,1} - m P_{-k,1} A = s (A P_{-k+1,1} - m/q P_{-k+1,1} A)
       A P_{k,1} - m/q P_{k,1} A = c/q^r (A P_{k-1,1} - m P_{k-1,1} A)

    every operator on the right of A acting on the source torus.
    """
    session = vertex.session
    ext = vertex.ext
    src, tgt = vertex.source_module, vertex.target_module
    r = vertex.r
    c = vertex.ratio()
    s = Monomial.q(r) / c
    m = vertex.mass
    mono = session.mono
    pairs = _twisted_pairs(vertex, max_size)

    def comm(left_source: GradedOperator, right_target: GradedOperator, lam, lam_p, scale_left=None, scale_right=None):
        """scale_left <A O> - scale_right <O A>"""
        a = ext.after(left_source, lam, lam_p)
        b = ext.before(right_target, lam, lam_p)
        if scale_left is not None:
            a = a * scale_left
        if scale_right is not None:
            b = b * scale_right
        return a - b

    bosons = IdentityChecker(session, "ext_bosons")
    complete = IdentityChecker(session, "ext_complete")
    degree_one = IdentityChecker(session, "ext_degree_one")
    shifted = IdentityChecker(session, "ext_degree_one_shifted")
    for lam, lam_p in pairs:
        a_entry = ext.entry(lam, lam_p)
        for k in range(1, max_k + 1):
            lhs = comm(src.boson(-k), tgt.boson(-k), lam, lam_p)
            bosons.compare(lhs, a_entry * (mono(s ** k) - session.one()), f"[A, p_-{k}]", states=(lam, lam_p))
            lhs = comm(src.boson(k), tgt.boson(k), lam, lam_p)
            bosons.compare(lhs, a_entry * (session.one() - mono(c ** k)), f"[A, p_{k}]", states=(lam, lam_p))

            h_minus = (src.h_boson(-k), tgt.h_boson(-k))
            h_minus_prev = (src.h_boson(-k + 1), tgt.h_boson(-k + 1)) if k > 1 else (src.e0_diag(0), tgt.e0_diag(0))
            lhs = comm(*h_minus, lam, lam_p)
            rhs = comm(*h_minus_prev, lam, lam_p, scale_left=mono(s))
            complete.compare(lhs, rhs, f"h_-{k}", states=(lam, lam_p))
            h_plus = (src.h_boson(k), tgt.h_boson(k))
            h_plus_prev = (src.h_boson(k - 1), tgt.h_boson(k - 1)) if k > 1 else (src.e0_diag(0), tgt.e0_diag(0))
            lhs = comm(*h_plus, lam, lam_p)
            rhs = comm(*h_plus_prev, lam, lam_p, scale_right=mono(c))
            complete.compare(lhs, rhs, f"h_{k}", states=(lam, lam_p))

        for k in range(-max_k, max_k + 1):
            current = (src.p_gen(k, 1), tgt.p_gen(k, 1))
            previous = (src.p_gen(k - 1, 1), tgt.p_gen(k - 1, 1))
            lhs = ext.after(current[0], lam, lam_p) - mono(c / Monomial.q(r)) * ext.after(previous[0], lam, lam_p)
            rhs = mono(m / Monomial.q()) * ext.before(current[1], lam, lam_p)
            rhs = rhs - mono(m * c / Monomial.q(r)) * ext.before(previous[1], lam, lam_p)
            degree_one.compare(lhs, rhs, f"P[{k},1]", states=(lam, lam_p))

        for k in range(1, max_k + 1):
            lower = (src.p_gen(-k, 1), tgt.p_gen(-k, 1))
            upper = (src.p_gen(-k + 1, 1), tgt.p_gen(-k + 1, 1))
            lhs = comm(*lower, lam, lam_p, scale_right=mono(m))
            rhs = mono(s) * comm(*upper, lam, lam_p, scale_right=mono(m / Monomial.q()))
            shifted.compare(lhs, rhs, f"P[-{k},1]", states=(lam, lam_p))
            top = (src.p_gen(k, 1), tgt.p_gen(k, 1))
            below = (src.p_gen(k - 1, 1), tgt.p_gen(k - 1, 1))
            lhs = comm(*top, lam, lam_p, scale_right=mono(m / Monomial.q()))
            rhs = mono(c / Monomial.q(r)) * comm(*below, lam, lam_p, scale_right=mono(m))
            shifted.compare(lhs, rhs, f"P[{k},1]", states=(lam, lam_p))
    return [bosons.result(), complete.result(), degree_one.result(), shifted.result()]


# ============= VERTEX AGAINST THE CURRENTS =============

def check_phi_bosons(vertex: VertexOperator, max_size: int = 2, max_k: int = 2) -> CheckResult:
    """[Phi_d, p_{+-k}] = +-(1 - (m^r u/u')^{+-k}) Phi_{d+-k}"""
    session = vertex.session
    checker = IdentityChecker(session, "phi_bosons")
    src, tgt = vertex.source_module, vertex.target_module
    for lam, lam_p in _twisted_pairs(vertex, max_size):
        for k in range(1, max_k + 1):
            for sign in (1, -1):
                d = lam_p.size - lam.size - sign * k
                phi = vertex.mode(d)
                lhs = entry_after(phi, src.boson(sign * k), lam, lam_p) - entry_after(tgt.boson(sign * k), phi, lam, lam_p)
                coeff = session.rational(sign) * (session.one() - session.mono(vertex.ratio() ** (sign * k)))
                rhs = coeff * vertex.mode(d + sign * k).entry(lam, lam_p)
                checker.compare(lhs, rhs, f"[Phi, p_{sign * k}]", states=(lam, lam_p), bidegree=[d])
    return checker.result()


def _commutator_coefficients(vertex: VertexOperator, k: int, lam: RPartition, lam_p: RPartition,
                             low: int, high: int) -> Dict[int, Any]:
    """
    a -> coefficient of x^-a y^-b (b = D - a) of <lam| Phi(x) W_k(y) - m^k W_k(y) Phi(x) |lam'>
    for a in low..high.
    """
    session = vertex.session
    src, tgt = vertex.source_module, vertex.target_module
    shift = lam_p.size - lam.size
    scale = session.mono(vertex.mass ** k)
    out: Dict[int, Any] = {}
    for a in range(low, high + 1):
        b = shift - a
        value = entry_after(vertex.mode(a), src.w_op(b, k), lam, lam_p)
        value = value - scale * entry_after(tgt.w_op(b, k), vertex.mode(a), lam, lam_p)
        out[a] = value
    return out


def times_prefactor(session, coefficients: Dict[int, Any], roots: List[Monomial]) -> Dict[int, Any]:
    """Multiply by prod (1 - root x/y); x/y sends the x^-a coefficient to x^-(a-1)."""
    out = dict(coefficients)
    for root in roots:
        nxt: Dict[int, Any] = {}
        for a, value in out.items():
            nxt[a] = nxt.get(a, session.zero()) + value
            nxt[a - 1] = nxt.get(a - 1, session.zero()) - session.mono(root) * value
        out = nxt
    return out


def check_main_theorem(vertex: VertexOperator, k: int, max_size: int = 2) -> List[CheckResult]:
    """
    [Phi_m(x), W_k(y)]_{m^k} prod_{i=1}^k (1 - m^r u x/(q^{r-i} u' y)) = 0

    The single-factor form with only i = k is reported, not required.
    """
    session = vertex.session
    required = IdentityChecker(session, f"phi_w[k={k}]")
    single = IdentityChecker(session, f"phi_w_single_factor[k={k}]", reported_only=True)
    roots = [vertex.ratio() / Monomial.q(vertex.r - i) for i in range(1, k + 1)]
    for lam, lam_p in _twisted_pairs(vertex, max_size):
        low, high = -lam.size, lam_p.size
        coefficients = _commutator_coefficients(vertex, k, lam, lam_p, low, high + k)
        for label, checker, factors in (("full", required, roots), ("single", single, roots[-1:])):
            for a, value in sorted(times_prefactor(session, coefficients, factors).items()):
                if not low <= a <= high:
                    continue
                checker.compare(value, session.zero(), f"{label} x^{-a}", states=(lam, lam_p), bidegree=[a])
    return [required.result(), single.result()]
