"""
Results Ledger
Keeps an in-memory, hash-stamped record of every suite run
"""

from typing import List
from datetime import datetime, timezone
import hashlib
import json
import logging
import threading

from models.schemas import LedgerEntry, SuiteReport, Verdict

logger = logging.getLogger(__name__)


class ResultsLedger:
    """
    Append-only record of suite runs.

    Each entry carries the config hash of its run and its own sha256 hash,
    so two runs of one configuration can be matched and compared.
    """

    def __init__(self):
        """Initialize an empty ledger."""
        self.ledger: List[LedgerEntry] = []
        self._lock = threading.Lock()
        logger.info("ResultsLedger initialized")

    def record(self, report: SuiteReport) -> LedgerEntry:
        """
        Record a suite report.

        Args:
            report: Finished suite report

        Returns:
            LedgerEntry with its hash set
        """
        entry = LedgerEntry(
            suite=report.suite,
            timestamp=datetime.now(timezone.utc),
            config_hash=report.config_hash,
            verdict=report.verdict,
            data={
                "checks": {c.name: c.verdict.value for c in report.checks},
                "identities": sum(c.checked for c in report.checks),
                "elapsed_seconds": round(report.elapsed_seconds, 3),
                "error": report.error,
            },
        )
        entry.hash = self._entry_hash(entry)

        with self._lock:
            self.ledger.append(entry)

        if entry.verdict == Verdict.PASS:
            logger.info(f"Recorded {entry.suite}: {entry.verdict.value} {entry.hash}")
        else:
            logger.warning(f"Recorded {entry.suite}: {entry.verdict.value} {entry.hash}")
        return entry

    def get_recent_entries(self, limit: int = 20) -> List[LedgerEntry]:
        """
        Get the most recent entries.

        Args:
            limit: Number of entries to return

        Returns:
            List of recent entries, oldest first
        """
        with self._lock:
            return self.ledger[-limit:] if len(self.ledger) > limit else list(self.ledger)

    def entries_for_suite(self, name: str) -> List[LedgerEntry]:
        with self._lock:
            return [entry for entry in self.ledger if entry.suite == name]

    def _entry_hash(self, entry: LedgerEntry) -> str:
        """sha256 of the sorted-key JSON of the entry, 0x-prefixed."""
        data_str = json.dumps({
            "suite": entry.suite,
            "timestamp": entry.timestamp.isoformat(),
            "config_hash": entry.config_hash,
            "verdict": entry.verdict.value,
            "data": entry.data,
        }, sort_keys=True)

        hash_obj = hashlib.sha256(data_str.encode())
        return f"0x{hash_obj.hexdigest()}"

    def __len__(self) -> int:
        return len(self.ledger)
