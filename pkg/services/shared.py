"""
Shared Service Instances
Provides singleton instances of the ledger and the orchestrator to ensure consistency across commands
"""

from core.orchestration.orchestrator import SuiteOrchestrator
from ledger.logger import ResultsLedger

# Singleton instances - shared across all commands
results_ledger = ResultsLedger()
suite_orchestrator = SuiteOrchestrator(results_ledger=results_ledger)

__all__ = ['results_ledger', 'suite_orchestrator']
