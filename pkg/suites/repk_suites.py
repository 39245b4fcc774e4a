"""
Fixed-Point Module Suites
Relations of the algebra acting on K in the fixed-point basis
"""

import logging
from typing import List, Tuple

from core.miura.realization import check_fock_dimensions
from core.repk.actions import FixedPointModule
from core.repk.fixed_points import dimension_table
from core.repk.relations import (
    check_adjoint,
    check_heisenberg,
    check_pole_structure,
    check_power_formula,
    check_rel123,
    check_truncation_and_verma,
    check_w_relation_full,
    check_w_relation_k1,
)
from core.session import Session
from core.verification import IdentityChecker
from models.schemas import CheckResult, SuiteName
from suites.base_suite import BaseSuite

logger = logging.getLogger(__name__)


def current_pairs(r: int) -> List[Tuple[int, int]]:
    """(k, k') with k' <= k <= min(r, 2)."""
    top = min(r, 2)
    return [(k, kp) for k in range(1, top + 1) for kp in range(1, k + 1)]


class ModuleSuite(BaseSuite):
    """Suites that run on the fixed-point module of one torus."""

    def run(self, session: Session) -> List[CheckResult]:
        return self.run_module(FixedPointModule(session))

    def run_module(self, module: FixedPointModule) -> List[CheckResult]:
        raise NotImplementedError


class HeisenbergSuite(ModuleSuite):
    name = SuiteName.HEISENBERG

    def run_module(self, module: FixedPointModule) -> List[CheckResult]:
        return [check_heisenberg(module, self.window(), max_n=self.config.bidegree_radius)]


class Rel123Suite(ModuleSuite):
    name = SuiteName.REL123

    def run_module(self, module: FixedPointModule) -> List[CheckResult]:
        radius = self.config.bidegree_radius
        return [check_rel123(module, self.window(), max_d=radius, max_e=radius)]


class WK1Suite(ModuleSuite):
    """The W-current relation against W_1 for every k <= r."""

    name = SuiteName.W_K1

    def run_module(self, module: FixedPointModule) -> List[CheckResult]:
        radius = self.config.bidegree_radius
        return [check_w_relation_k1(module, k, self.window(), radius) for k in range(1, module.r + 1)]


class WFullSuite(ModuleSuite):
    name = SuiteName.W_FULL

    def run_module(self, module: FixedPointModule) -> List[CheckResult]:
        return [
            check_w_relation_full(module, k, kp, self.window(), self.config.bidegree_radius, self.config.truncation_margin)
            for k, kp in current_pairs(module.r)
        ]


class PolesSuite(ModuleSuite):
    name = SuiteName.POLES

    def run_module(self, module: FixedPointModule) -> List[CheckResult]:
        return [
            check_pole_structure(module, k, kp, self.window(), self.config.truncation_margin)
            for k, kp in current_pairs(module.r)
        ]


class TruncationSuite(ModuleSuite):
    """W_k = 0 past r, the top current as a product, and the W-boson commutators."""

    name = SuiteName.TRUNCATION
    families = ("truncation", "top_current", "w_boson_commutators")

    def run_module(self, module: FixedPointModule) -> List[CheckResult]:
        results = check_truncation_and_verma(module, self.window(), self.config.bidegree_radius)
        return [r for r in results if r.name in self.families]


class VermaSuite(TruncationSuite):
    name = SuiteName.VERMA
    families = ("verma",)


class AdjointSuite(ModuleSuite):
    name = SuiteName.ADJOINT

    def run_module(self, module: FixedPointModule) -> List[CheckResult]:
        radius = self.config.bidegree_radius
        return [check_adjoint(module, self.window(), max_k=radius, max_d=radius)]


class PowerSuite(ModuleSuite):
    """W_{d,k} against its expansions in P_v and in E_v."""

    name = SuiteName.POWER

    def run_module(self, module: FixedPointModule) -> List[CheckResult]:
        radius = self.config.bidegree_radius
        size = min(self.window(), 2)
        return [
            check_power_formula(module, max_k=2, max_d=radius, max_size=size),
            check_power_formula(module, max_k=2, max_d=radius, max_size=size, elementary=True),
        ]


class DimensionSuite(BaseSuite):
    """dim K_n by enumeration, by generating function and as the Fock graded dimension."""

    name = SuiteName.DIMENSIONS
    max_degree = 6

    def run(self, session: Session) -> List[CheckResult]:
        checker = IdentityChecker(session, "dimensions")
        for row in dimension_table(session.rank, self.max_degree):
            checker.require(row["enumerated"] == row["expected"], f"dim K_{row['n']}: {row['enumerated']} != {row['expected']}")
        return [checker.result(), check_fock_dimensions(session, self.max_degree)]
