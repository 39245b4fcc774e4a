"""
Nekrasov Partition Function
Cyclic quiver partition function as a tuple sum of Ext coefficients and as a trace of composed Ext modes
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from itertools import product as cartesian
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import sympy

from core.extnek.ext import ExtOperator, a_matrix_factor
from core.repk.operators import Composed
from core.scalars.factors import product
from core.scalars.monomials import Monomial
from core.shapes.partitions import enumerate_rpartitions
from core.verification import IdentityChecker
from models.schemas import CheckResult, NekrasovTerm

logger = logging.getLogger(__name__)

SizeVector = Tuple[int, ...]


def torus_tag(a: int) -> str:
    """Tag of the a-th torus, counted from 1: u, u_2, u_3, ..."""
    return "u" if a == 1 else f"u_{a}"


def mass_generators(quiver_length: int) -> List[Monomial]:
    if quiver_length == 1:
        return [Monomial.gen("m")]
    return [Monomial.gen(f"m{a}") for a in range(1, quiver_length + 1)]


def x_exponents(sizes: SizeVector) -> Tuple[int, ...]:
    """x_a carries |lam_a| - |lam_{a+1}|, cyclically."""
    k = len(sizes)
    return tuple(sizes[a] - sizes[(a + 1) % k] for a in range(k))


def size_vectors(quiver_length: int, max_instanton: int) -> List[SizeVector]:
    return [tuple(v) for v in cartesian(range(max_instanton + 1), repeat=quiver_length)]


class NekrasovPartitionFunction:
    """
    Z(x_1..x_k) = Tr(A_{m_1}(x_1) ... A_{m_k}(x_k)) with A_{m_a} : K_{u^{a+1}} -> K_{u^a}
    and u^{k+1} = u^1.

    The session must carry k tori and k masses (Session.build(tori=k, masses=k)).
    """

    def __init__(self, session, quiver_length: int, masses: Optional[Sequence[Monomial]] = None):
        self.session = session
        self.r = session.rank
        self.k = quiver_length
        self.masses = list(masses) if masses is not None else mass_generators(quiver_length)
        if len(self.masses) != self.k:
            raise ValueError(f"{len(self.masses)} masses for a quiver of length {self.k}")
        self.tags = [torus_tag(a) for a in range(1, self.k + 1)]
        self.ext = [
            ExtOperator(session, self.masses[a], self.tags[a], self.tags[(a + 1) % self.k])
            for a in range(self.k)
        ]
        logger.info(f"NekrasovPartitionFunction initialized: r={self.r}, k={self.k}")

    def direct(self, sizes: SizeVector) -> Tuple[Any, int]:
        """
        Sum over tuples of the explicit product of Ext coefficients.

        Returns:
            (value, number of tuples)
        """
        total = self.session.zero()
        count = 0
        for states in cartesian(*(enumerate_rpartitions(self.r, n) for n in sizes)):
            fp = product(
                a_matrix_factor(states[a], states[(a + 1) % self.k], self.masses[a], self.tags[a], self.tags[(a + 1) % self.k])
                for a in range(self.k)
            )
            total = total + self.session.fp(fp)
            count += 1
        return total, count

    def trace(self, sizes: SizeVector) -> Any:
        """Diagonal of A_{m_1}|_{n_1}^{n_2} ... A_{m_k}|_{n_k}^{n_1} summed over |lam_1| = n_1."""
        chain = Composed([self.ext[a].mode(sizes[(a + 1) % self.k] - sizes[a]) for a in range(self.k)])
        total = self.session.zero()
        for lam in enumerate_rpartitions(self.r, sizes[0]):
            total = total + chain.entry(lam, lam)
        return total

    def term(self, sizes: SizeVector, specialization: Optional[Mapping[str, Fraction]] = None) -> NekrasovTerm:
        value, count = self.direct(sizes)
        agrees = self.session.backend.equal(value, self.trace(sizes))
        if not agrees:
            logger.warning(f"Trace and tuple sum disagree at sizes {sizes}")
        return NekrasovTerm(
            size_vector=list(sizes),
            x_exponents=list(x_exponents(sizes)),
            instanton=sum(sizes),
            tuples=count,
            value=render(self.session, value, specialization),
            trace_agrees=agrees,
        )


def render(session, value: Any, specialization: Optional[Mapping[str, Fraction]] = None) -> str:
    """
    Canonical form, optionally with some generators set to rational numbers.

    Specialization needs the exact backend.
    """
    if not specialization:
        return session.canonical(value)
    if session.mode != "exact":
        raise ValueError("specialization requires the exact backend")
    subs = {sympy.Symbol(name): sympy.Rational(v.numerator, v.denominator) for name, v in specialization.items()}
    return sympy.sstr(sympy.cancel(value.as_expr().subs(subs)))


def _terms_for(session, quiver_length: int, chunk: Sequence[SizeVector],
               specialization: Optional[Mapping[str, Fraction]]) -> List[NekrasovTerm]:
    function = NekrasovPartitionFunction(session, quiver_length)
    return [function.term(sizes, specialization) for sizes in chunk]


def nekrasov_table(session, quiver_length: int, max_instanton: int, workers: int = 1,
                   specialization: Optional[Mapping[str, Fraction]] = None) -> List[NekrasovTerm]:
    """
    All size vectors with every |lam_a| <= max_instanton.

    With several workers the size vectors are split round robin and each
    worker runs on its own clone of the session.
    """
    vectors = size_vectors(quiver_length, max_instanton)
    if workers <= 1:
        terms = _terms_for(session, quiver_length, vectors, specialization)
    else:
        chunks = [vectors[i::workers] for i in range(workers)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_terms_for, session.clone(), quiver_length, c, specialization) for c in chunks if c]
            terms = [t for f in futures for t in f.result()]
    terms.sort(key=lambda t: (t.instanton, t.size_vector))
    logger.info(f"Nekrasov table: {len(terms)} size vectors up to N={max_instanton}")
    return terms


def check_nekrasov(session, quiver_length: int, max_instanton: int = 1) -> List[CheckResult]:
    """
    1. The x-exponents of every size vector telescope to zero
    2. The empty tuple contributes 1
    3. Trace form equals the tuple sum for every size vector
    """
    telescoping = IdentityChecker(session, "nekrasov_telescoping")
    vacuum = IdentityChecker(session, "nekrasov_vacuum")
    trace = IdentityChecker(session, "nekrasov_trace")
    function = NekrasovPartitionFunction(session, quiver_length)
    for sizes in size_vectors(quiver_length, max_instanton):
        telescoping.require(sum(x_exponents(sizes)) == 0, f"x-exponents of {sizes}")
        value, _ = function.direct(sizes)
        if not any(sizes):
            vacuum.compare(value, session.one(), "empty tuple")
        trace.compare(value, function.trace(sizes), f"sizes {sizes}", bidegree=list(sizes))
    return [telescoping.result(), vacuum.result(), trace.result()]
