"""
Ext Operator Suites
Matrix coefficients of A_m, its commutation with the algebra, the vertex operator and the Nekrasov trace
"""

import logging
from typing import Any, Dict, List

from core.extnek.ext import check_ext_adjoint, check_ext_routes
from core.extnek.nekrasov import check_nekrasov
from core.extnek.vertex import VertexOperator, check_main_theorem, check_phi_bosons, check_thm43, check_z_tail_commutator
from core.scalars.monomials import Monomial
from core.session import Session
from models.schemas import CheckResult, SuiteName
from suites.base_suite import BaseSuite

logger = logging.getLogger(__name__)

MASS = Monomial.gen("m")


class CrossTorusSuite(BaseSuite):
    """Suites on K_u' -> K_u with a single mass m."""

    def session_options(self) -> Dict[str, Any]:
        return {"primed": True, "masses": 1}

    def vertex(self, session: Session) -> VertexOperator:
        return VertexOperator(session, MASS)


class ExtSuite(CrossTorusSuite):
    """Explicit against character coefficients, the Ext rank, and the A_{q/m} adjoint."""

    name = SuiteName.EXT

    def run(self, session: Session) -> List[CheckResult]:
        results = check_ext_routes(session, MASS, self.window())
        results.append(check_ext_adjoint(session, MASS, self.window()))
        return results


class ZTailSuite(CrossTorusSuite):
    name = SuiteName.Z_TAIL

    def run(self, session: Session) -> List[CheckResult]:
        return [check_z_tail_commutator(self.vertex(session), self.window(), self.config.bidegree_radius)]


class ExtCommutationSuite(CrossTorusSuite):
    """A_m(1) against the bosons, the h exponentials and the P_{+-k,1} generators."""

    name = SuiteName.THM43

    def run(self, session: Session) -> List[CheckResult]:
        return check_thm43(self.vertex(session), self.window(), self.config.bidegree_radius)


class MainTheoremSuite(CrossTorusSuite):
    """Phi_m against the bosons and the quasi-commutation with every W_k, k <= r."""

    name = SuiteName.MAIN_THEOREM

    def run(self, session: Session) -> List[CheckResult]:
        vertex = self.vertex(session)
        results = [check_phi_bosons(vertex, self.window(), self.config.bidegree_radius)]
        for k in range(1, session.rank + 1):
            results.extend(check_main_theorem(vertex, k, self.window()))
        return results


class NekrasovSuite(BaseSuite):
    name = SuiteName.NEKRASOV

    def session_options(self) -> Dict[str, Any]:
        k = self.config.quiver_length
        return {"tori": k, "masses": k}

    def run(self, session: Session) -> List[CheckResult]:
        return check_nekrasov(session, self.config.quiver_length, self.window())
