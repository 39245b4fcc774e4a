"""
Verification Suite Base Class
Provides the common run/execute interface for every identity family
"""

from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional
import logging
import time

from core.session import Session
from core.verification import merge_verdict
from models.schemas import CheckResult, SessionConfig, SuiteName, SuiteReport

logger = logging.getLogger(__name__)


class BaseSuite(ABC):
    """
    Abstract base class for all verification suites.

    All suites follow the same pattern:
    1. Build a session with the generators the family needs
    2. Build the modules and operators on it
    3. Run the identity checks
    4. Merge the verdicts into a SuiteReport
    """

    name: SuiteName
    mode_override: Optional[str] = None  # backend forced by the family, e.g. additive

    def __init__(self, config: SessionConfig):
        self.config = config
        logger.info(f"{self.__class__.__name__} initialized: r={config.rank}, mode={self.mode}, seed={config.seed}")

    @property
    def mode(self) -> str:
        if self.mode_override is None:
            return self.config.mode.value
        if self.mode_override == "additive" and self.config.mode.value == "exact":
            return "additive-exact"
        return self.mode_override

    def session_options(self) -> Dict[str, Any]:
        """
        Generators beyond q1, q2 and the u torus.

        Returns:
            Keyword arguments for Session.build (primed, masses, extra, tori)
        """
        return {}

    def build_session(self) -> Session:
        return Session.build(
            self.config.rank,
            mode=self.mode,
            seed=self.config.seed,
            prime=self.config.probe_prime,
            repetitions=self.config.probe_repetitions,
            eps_order=self.config.eps_order,
            **self.session_options(),
        )

    @abstractmethod
    def run(self, session: Session) -> List[CheckResult]:
        """
        Run the identity checks of this family.

        Args:
            session: Session built by build_session

        Returns:
            One CheckResult per identity family checked
        """
        pass

    def execute(self, session: Optional[Session] = None) -> SuiteReport:
        """
        Execute the suite and time it.

        Args:
            session: Prebuilt session, otherwise one is built from the config

        Returns:
            SuiteReport with the merged verdict
        """
        try:
            start = time.perf_counter()
            session = session or self.build_session()
            logger.info(f"{self.__class__.__name__} running on {session!r}")

            checks = self.run(session)
            verdict = merge_verdict(checks)
            elapsed = time.perf_counter() - start

            logger.info(f"{self.__class__.__name__} finished: {verdict.value}, {sum(c.checked for c in checks)} identities in {elapsed:.2f}s")
            return SuiteReport(
                suite=self.name.value,
                verdict=verdict,
                config_hash=self.config.config_hash(),
                checks=checks,
                elapsed_seconds=elapsed,
            )

        except Exception as e:
            logger.error(f"{self.__class__.__name__} error: {str(e)}")
            raise

    def window(self) -> int:
        """Largest state size examined."""
        return self.config.max_state_size

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.name.value})"
