"""
Free-Field Suites
The W-relations, the sl_r bosons and the top exponential on the colored Fock space
"""

import logging
from typing import List

from core.miura.realization import MiuraModule, check_boson_table, check_glsl_map, check_lambda_symmetry, check_miura_relations, check_mish
from core.session import Session
from models.schemas import CheckResult, SuiteName
from suites.base_suite import BaseSuite

logger = logging.getLogger(__name__)


class MiuraRelationsSuite(BaseSuite):
    """The relation set shared with the fixed-point module, run on the Miura currents."""

    name = SuiteName.MIURA_RELATIONS

    def run(self, session: Session) -> List[CheckResult]:
        module = MiuraModule(session)
        radius = self.config.bidegree_radius
        results = [check_boson_table(module, self.window(), radius), check_lambda_symmetry(module, min(self.window(), 2), radius)]
        results.extend(check_miura_relations(module, self.window(), radius, min(self.window(), 2)))
        return results


class GlslSuite(BaseSuite):
    name = SuiteName.GLSL

    def run(self, session: Session) -> List[CheckResult]:
        return check_glsl_map(MiuraModule(session), self.window(), self.config.bidegree_radius)


class MishSuite(BaseSuite):
    name = SuiteName.MISH

    def run(self, session: Session) -> List[CheckResult]:
        return check_mish(MiuraModule(session), self.window())
