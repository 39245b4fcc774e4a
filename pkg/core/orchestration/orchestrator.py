"""
Suite Orchestrator
Builds sessions, fans suites out to a worker pool, records them in the ledger and assembles the run report
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence
import logging

from core.exceptions import AlgebraError, ProbeCollision
from ledger.logger import ResultsLedger
from models.schemas import RunReport, SessionConfig, SuiteName, SuiteReport, Verdict
from suites.registry import create_suite

logger = logging.getLogger(__name__)


class SuiteOrchestrator:
    """
    Orchestrates a verification run.

    Pipeline:
    1. Resolve the suites
    2. Build one session per suite (each with its own probe context)
    3. Execute the suites on a thread pool
    4. Record every report in the ledger
    5. Assemble the run report

    A ProbeCollision triggers one rerun with seed + 1; any other AlgebraError
    becomes an ERROR report carrying the message.
    """

    def __init__(self, results_ledger: Optional[ResultsLedger] = None):
        """Initialize with a shared ledger or a private one."""
        if results_ledger is not None:
            self.results_ledger = results_ledger
        else:
            self.results_ledger = ResultsLedger()

        # Latest report per suite name
        self.latest_reports: Dict[str, SuiteReport] = {}

        logger.info("SuiteOrchestrator initialized")

    def run(self, config: SessionConfig, names: Sequence[SuiteName]) -> RunReport:
        """
        Run suites and assemble the report.

        Args:
            config: Session configuration shared by the suites
            names: Suites to run, in output order

        Returns:
            RunReport with one SuiteReport per name
        """
        logger.info(f"Running {len(names)} suites with {config.workers} workers, config {config.config_hash()}")

        if config.workers > 1 and len(names) > 1:
            with ThreadPoolExecutor(max_workers=config.workers) as pool:
                reports = list(pool.map(lambda name: self.run_suite(config, name), names))
        else:
            reports = [self.run_suite(config, name) for name in names]

        return RunReport(
            config=config,
            config_hash=config.config_hash(),
            verdict=overall_verdict(reports),
            suites=reports,
        )

    def run_suite(self, config: SessionConfig, name: SuiteName) -> SuiteReport:
        """
        Execute one suite, record it and cache it.

        Args:
            config: Session configuration
            name: Suite to run

        Returns:
            SuiteReport, with verdict ERROR when the computation raised
        """
        try:
            report = self._execute_with_reseed(config, name)
        except AlgebraError as e:
            logger.error(f"{name.value} raised {e.__class__.__name__}: {str(e)}")
            report = SuiteReport(
                suite=name.value,
                verdict=Verdict.ERROR,
                config_hash=config.config_hash(),
                error=f"{e.__class__.__name__}: {str(e)}",
            )

        self.results_ledger.record(report)
        self.latest_reports[name.value] = report
        return report

    def _execute_with_reseed(self, config: SessionConfig, name: SuiteName) -> SuiteReport:
        try:
            return create_suite(name, config).execute()
        except ProbeCollision as e:
            reseeded = config.model_copy(update={"seed": config.seed + 1})
            logger.warning(f"{name.value}: probe collision ({str(e)}), retrying with seed {reseeded.seed}")
            return create_suite(name, reseeded).execute()

    def get_latest_report(self, name: str) -> Optional[SuiteReport]:
        return self.latest_reports.get(name)


def overall_verdict(reports: List[SuiteReport]) -> Verdict:
    """PASS only when every suite passed."""
    verdicts = {r.verdict for r in reports}
    if Verdict.ERROR in verdicts:
        return Verdict.ERROR
    if Verdict.FAIL in verdicts:
        return Verdict.FAIL
    return Verdict.PASS
