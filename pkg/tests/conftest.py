"""
Shared fixtures: exact and probe sessions at r = 1, 2 and the K-theory modules built on them
"""

import pytest

from core.repk.actions import FixedPointModule
from core.session import Session
from models.schemas import SessionConfig


@pytest.fixture
def exact1() -> Session:
    return Session.build(1, mode="exact")


@pytest.fixture
def exact2() -> Session:
    return Session.build(2, mode="exact")


@pytest.fixture
def probe1() -> Session:
    return Session.build(1, mode="probe", seed=11)


@pytest.fixture
def probe2() -> Session:
    return Session.build(2, mode="probe", seed=11)


@pytest.fixture
def module_exact1(exact1) -> FixedPointModule:
    return FixedPointModule(exact1)


@pytest.fixture
def module_probe1(probe1) -> FixedPointModule:
    return FixedPointModule(probe1)


@pytest.fixture
def module_probe2(probe2) -> FixedPointModule:
    return FixedPointModule(probe2)


@pytest.fixture
def small_config() -> SessionConfig:
    """A probe configuration small enough for suites to finish in desk time."""
    return SessionConfig(rank=1, mode="probe", seed=7, max_state_size=2, bidegree_radius=1, workers=1)
