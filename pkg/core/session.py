"""
Algebra Session
Generator list, scalar backend and probe context shared by every computation of a run
"""

import logging
from typing import Any, List, Optional, Sequence

from core.scalars.additive import AdditiveBackend
from core.scalars.backend import ScalarBackend
from core.scalars.eps import EpsBackend
from core.scalars.exact import ExactBackend
from core.scalars.factors import FactorProduct
from core.scalars.monomials import GeneratorSet, Monomial, torus_names
from core.scalars.probe import ProbeBackend, ProbeContext

logger = logging.getLogger(__name__)


class Session:
    """
    A rank, a generator set and one scalar backend.

    Operators built on a session memoize their matrix coefficients, so two
    sessions never share caches (probe and exact values stay apart).
    """

    def __init__(self, rank: int, backend: ScalarBackend, ctx: Optional[ProbeContext] = None):
        self.rank = rank
        self.backend = backend
        self.generators = backend.generators
        self.ctx = ctx
        logger.debug(f"Session initialized: r={rank}, backend={backend.name}, {len(self.generators)} generators")

    @classmethod
    def build(
        cls,
        rank: int,
        mode: str = "probe",
        primed: bool = False,
        masses: int = 0,
        extra: Sequence[str] = (),
        tori: int = 1,
        seed: int = 0,
        prime: int = 2**61 - 1,
        repetitions: int = 3,
        eps_order: int = 8,
    ) -> "Session":
        """
        Build a session.

        Args:
            rank: r
            mode: "exact", "probe", "eps", "additive" (probe inner) or "additive-exact"
            primed: add the u' torus
            masses: number of mass generators
            extra: further generator names (x, y, z1, ...)
            tori: number of unprimed tori (u, u_2, ...)
            seed: probe seed

        Returns:
            Session
        """
        generators = GeneratorSet.for_session(rank, primed=primed, masses=masses, extra=extra, tori=tori)
        ctx = ProbeContext(prime, repetitions, seed)
        if mode == "exact":
            return cls(rank, ExactBackend(generators))
        if mode == "probe":
            return cls(rank, ProbeBackend(generators, ctx), ctx)
        if mode == "eps":
            return cls(rank, EpsBackend(generators, ctx, eps_order), ctx)
        if mode == "additive":
            return cls(rank, AdditiveBackend.over(generators, lambda g: ProbeBackend(g, ctx)), ctx)
        if mode == "additive-exact":
            return cls(rank, AdditiveBackend.over(generators, ExactBackend))
        raise ValueError(f"Unknown backend mode: {mode}")

    # ---- scalar shortcuts ----

    def fp(self, product: FactorProduct) -> Any:
        return self.backend.factor_product(product)

    def mono(self, m: Monomial) -> Any:
        return self.backend.monomial(m)

    def rational(self, value) -> Any:
        return self.backend.rational(value)

    def zero(self) -> Any:
        return self.backend.zero()

    def one(self) -> Any:
        return self.backend.one()

    def is_zero(self, value: Any) -> bool:
        return self.backend.is_zero(value)

    def canonical(self, value: Any) -> str:
        return self.backend.canonical(value)

    def torus(self, tag: str = "u") -> List[Monomial]:
        """u_1..u_r of the named torus as monomials."""
        return [Monomial.gen(n) for n in torus_names(self.rank, tag)]

    def torus_product(self, tag: str = "u") -> Monomial:
        out = Monomial.one()
        for m in self.torus(tag):
            out = out * m
        return out

    def clone(self) -> "Session":
        """Copy for a worker thread: backend and probe context are cloned."""
        backend = self.backend.clone()
        return Session(self.rank, backend, getattr(backend, "ctx", self.ctx))

    @property
    def mode(self) -> str:
        return self.backend.name

    def __repr__(self) -> str:
        return f"Session(r={self.rank}, {self.backend!r})"
