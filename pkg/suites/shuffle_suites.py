"""
Shuffle Algebra Suites
Wheel conditions, slope functionals, exponential families and the broken-path identity
"""

import logging
from typing import Any, Dict, List

from config.settings import settings
from core.repk.actions import FixedPointModule
from core.session import Session
from core.shuffle.combinatorics import broken_path_identity
from core.shuffle.elements import build, z_names
from core.shuffle.exponentials import check_hq_series, check_vertical_series
from core.shuffle.functionals import check_phi_table, check_phi_x, check_pseudo_multiplicativity
from core.shuffle.rational import SymRational, wheel_check
from core.verification import IdentityChecker
from models.schemas import CheckResult, SuiteName
from suites.base_suite import BaseSuite

logger = logging.getLogger(__name__)

WHEEL_VARIABLES = (3, 4)
HQ_RAYS = ((1, 0), (1, 1), (1, -1))
PSEUDO_PAIRS = (
    (("P", 1, 0), ("P", 1, 1)),
    (("P", 1, -1), ("P", 2, 1)),
    (("P", 2, 1), ("P", 1, 0)),
)


class WheelSuite(BaseSuite):
    """P, H, E, Q and T elements with 3 or 4 variables satisfy the wheel conditions."""

    name = SuiteName.WHEEL

    def session_options(self) -> Dict[str, Any]:
        return {"extra": z_names(max(WHEEL_VARIABLES))}

    def run(self, session: Session) -> List[CheckResult]:
        checker = IdentityChecker(session, "wheel")
        radius = self.config.bidegree_radius
        elements = []
        for k in WHEEL_VARIABLES:
            for d in range(-radius, radius + 1):
                elements += [(family, k, d) for family in ("P", "H", "E", "Q")]
            elements += [("T", k, e) for e in range(1, radius + 1)]
        for family, first, second in elements:
            element = SymRational.from_presentation(build(family, first, second))
            checker.require(wheel_check(element, session.backend), f"wheel condition of {element.label}")
        return [checker.result()]


class PhiSuite(BaseSuite):
    name = SuiteName.PHI

    def run(self, session: Session) -> List[CheckResult]:
        return [check_phi_table(session, max_n=3)]


class PhiXSuite(BaseSuite):
    """Iterated-limit functional on P[k,d] and its twisted multiplicativity."""

    name = SuiteName.PHI_X

    def session_options(self) -> Dict[str, Any]:
        return {"extra": ("x",)}

    def run(self, session: Session) -> List[CheckResult]:
        return [
            check_phi_x(session, max_k=3, max_d=3),
            check_pseudo_multiplicativity(session, PSEUDO_PAIRS),
        ]


class HQSuite(BaseSuite):
    """Newton recursions of H, E, Q on the shuffle rays, and on the ray (0, 1) through the fixed points."""

    name = SuiteName.HQ
    order = 2

    def session_options(self) -> Dict[str, Any]:
        width = max(a for a, _ in HQ_RAYS) * self.order
        return {"extra": z_names(width)}

    def run(self, session: Session) -> List[CheckResult]:
        results = [check_hq_series(session, a, b, self.order, settings.SHUFFLE_VARIABLE_CAP) for a, b in HQ_RAYS]
        results.append(check_vertical_series(FixedPointModule(session), self.order, self.config.max_state_size))
        return results


class BrokenPathSuite(BaseSuite):
    """Sum over convex broken paths equals w_1 w_d^(k-1) for 1 <= d, k <= 5."""

    name = SuiteName.BROKEN_PATH
    bound = 5

    def run(self, session: Session) -> List[CheckResult]:
        checker = IdentityChecker(session, "broken_path")
        for d in range(1, self.bound + 1):
            for k in range(1, self.bound + 1):
                checker.require(broken_path_identity(d, k), f"broken paths (d,k)=({d},{k})")
        return [checker.result()]
