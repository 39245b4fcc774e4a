"""
Classical Suites
The additive module, locality of the classical vertex operator, and the eps-bridge to the K-theoretic side
"""

import logging
from typing import Any, Dict, List

from core.classical.bridge import EpsBridge, check_classical_limit
from core.classical.operators import ClassicalModule, check_classical_module
from core.classical.vertex import ClassicalVertexOperator, check_abar_vacuum, check_locality, check_tail_routes
from core.scalars.monomials import Monomial
from core.session import Session
from models.schemas import CheckResult, SuiteName
from suites.base_suite import BaseSuite

logger = logging.getLogger(__name__)


class AdditiveSuite(BaseSuite):
    """Runs on an additive session carrying u', one mass and the spectral generator y."""

    mode_override = "additive"

    def session_options(self) -> Dict[str, Any]:
        return {"primed": True, "masses": 1, "extra": ("y",)}


class ClassicalModuleSuite(AdditiveSuite):
    name = SuiteName.CLASSICAL_MODULE

    def run(self, session: Session) -> List[CheckResult]:
        return check_classical_module(ClassicalModule(session), self.window())


class LocalitySuite(AdditiveSuite):
    """Phibar(x) Wbar_i(y) (x - y)^i is symmetric for 1 <= i <= r."""

    name = SuiteName.LOCALITY

    def run(self, session: Session) -> List[CheckResult]:
        vertex = ClassicalVertexOperator(session, Monomial.gen("m"))
        results = [check_abar_vacuum(vertex), check_tail_routes(vertex, self.window())]
        for i in range(1, session.rank + 1):
            results.append(check_locality(vertex, i, self.window()))
        return results


class LimitSuite(AdditiveSuite):
    """
    Leading eps-orders of zeta, tau, the bosons, A_m and the W-currents.

    The bridge builds its own eps and additive sessions on the suite seed.
    """

    name = SuiteName.LIMIT

    def run(self, session: Session) -> List[CheckResult]:
        bridge = EpsBridge(session.rank, self.config.eps_order, self.config.seed)
        return check_classical_limit(bridge, self.window())
