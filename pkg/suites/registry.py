"""
Suite Registry
Maps suite names to suite classes and groups them by subcommand
"""

from typing import Dict, List, Type

from models.schemas import SessionConfig, SuiteName
from suites.base_suite import BaseSuite
from suites.classical_suites import ClassicalModuleSuite, LimitSuite, LocalitySuite
from suites.extnek_suites import ExtCommutationSuite, ExtSuite, MainTheoremSuite, NekrasovSuite, ZTailSuite
from suites.miura_suites import GlslSuite, MishSuite, MiuraRelationsSuite
from suites.repk_suites import (
    AdjointSuite,
    DimensionSuite,
    HeisenbergSuite,
    PolesSuite,
    PowerSuite,
    Rel123Suite,
    TruncationSuite,
    VermaSuite,
    WFullSuite,
    WK1Suite,
)
from suites.shuffle_suites import BrokenPathSuite, HQSuite, PhiSuite, PhiXSuite, WheelSuite

SUITES: Dict[SuiteName, Type[BaseSuite]] = {
    cls.name: cls
    for cls in (
        WheelSuite, PhiSuite, PhiXSuite, HQSuite, BrokenPathSuite,
        HeisenbergSuite, Rel123Suite, WK1Suite, WFullSuite, PolesSuite, TruncationSuite, VermaSuite,
        AdjointSuite, PowerSuite, DimensionSuite,
        ExtSuite, ZTailSuite, ExtCommutationSuite, MainTheoremSuite, NekrasovSuite,
        MiuraRelationsSuite, GlslSuite, MishSuite,
        ClassicalModuleSuite, LocalitySuite, LimitSuite,
    )
}

# suites reachable from `verify`; miura and classical have their own subcommands
VERIFY_SUITES: List[SuiteName] = [
    SuiteName.HEISENBERG, SuiteName.REL123, SuiteName.W_K1, SuiteName.W_FULL, SuiteName.POLES,
    SuiteName.TRUNCATION, SuiteName.VERMA, SuiteName.ADJOINT, SuiteName.POWER, SuiteName.DIMENSIONS,
    SuiteName.WHEEL, SuiteName.PHI, SuiteName.PHI_X, SuiteName.HQ, SuiteName.BROKEN_PATH,
    SuiteName.EXT, SuiteName.Z_TAIL, SuiteName.THM43, SuiteName.MAIN_THEOREM, SuiteName.NEKRASOV,
]
MIURA_SUITES = {"relations": SuiteName.MIURA_RELATIONS, "glsl": SuiteName.GLSL, "mish": SuiteName.MISH}
CLASSICAL_SUITES = {"module": SuiteName.CLASSICAL_MODULE, "locality": SuiteName.LOCALITY, "limit": SuiteName.LIMIT}


def resolve(name: str) -> SuiteName:
    """
    Raises:
        ValueError: unknown suite name
    """
    try:
        return SuiteName(name)
    except ValueError:
        raise ValueError(f"Unknown suite: {name}") from None


def create_suite(name: SuiteName, config: SessionConfig) -> BaseSuite:
    return SUITES[name](config)
