"""
Identity Verification
Compares both sides of scalar and operator identities and keeps the first failing witness
"""

import logging
from typing import Any, Iterable, List, Optional, Sequence

from models.schemas import CheckResult, Verdict, Witness

logger = logging.getLogger(__name__)


def describe_state(state: Any) -> Any:
    """JSON form of a basis key (r-partition, Fock monomial) or a plain value."""
    to_json = getattr(state, "to_json", None)
    return to_json() if callable(to_json) else state


class IdentityChecker:
    """
    Collects comparisons for one identity family.

    Checks:
    1. Every comparison increments the count
    2. The first mismatch is kept as the witness
    3. Later mismatches are only counted
    Reported-only families never fail their suite.
    """

    def __init__(self, session, name: str, reported_only: bool = False):
        self.session = session
        self.name = name
        self.reported_only = reported_only
        self.checked = 0
        self.failures = 0
        self.witness: Optional[Witness] = None
        self.notes: List[str] = []

    def compare(
        self,
        lhs: Any,
        rhs: Any,
        description: str = "",
        states: Sequence[Any] = (),
        bidegree: Optional[Sequence[int]] = None,
    ) -> bool:
        """
        Compare two backend scalars.

        Args:
            lhs: Left-hand side
            rhs: Right-hand side
            description: Which instance of the identity this is
            states: Basis keys involved
            bidegree: Coefficient indices, if any

        Returns:
            True when equal
        """
        self.checked += 1
        if self.session.backend.equal(lhs, rhs):
            return True
        self.failures += 1
        if self.witness is None:
            self.witness = Witness(
                description=description or self.name,
                states=[describe_state(s) for s in states],
                bidegree=list(bidegree) if bidegree is not None else None,
                lhs=self.session.canonical(lhs),
                rhs=self.session.canonical(rhs),
            )
            level = logging.INFO if self.reported_only else logging.WARNING
            logger.log(level, f"{self.name}: mismatch at {description} states={self.witness.states}")
        return False

    def require(self, condition: bool, description: str, states: Sequence[Any] = ()) -> bool:
        """Record a boolean structural check."""
        self.checked += 1
        if condition:
            return True
        self.failures += 1
        if self.witness is None:
            self.witness = Witness(description=description, states=[describe_state(s) for s in states])
            logger.warning(f"{self.name}: {description}")
        return False

    def compare_vectors(self, lhs: dict, rhs: dict, description: str, source: Any = None,
                        bidegree: Optional[Sequence[int]] = None) -> bool:
        """Coefficientwise comparison of two sparse vectors."""
        ok = True
        zero = self.session.zero()
        for key in sorted(set(lhs) | set(rhs), key=repr):
            states = (key,) if source is None else (key, source)
            ok &= self.compare(lhs.get(key, zero), rhs.get(key, zero), description, states, bidegree)
        if not lhs and not rhs:
            self.checked += 1
        return ok

    def note(self, text: str) -> None:
        self.notes.append(text)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def result(self) -> CheckResult:
        if self.reported_only:
            verdict = Verdict.REPORTED
        else:
            verdict = Verdict.PASS if self.passed else Verdict.FAIL
        detail = "; ".join(self.notes)
        if self.reported_only:
            detail = (detail + "; " if detail else "") + ("holds" if self.passed else f"fails in {self.failures} instances")
        return CheckResult(name=self.name, verdict=verdict, checked=self.checked, witness=self.witness, detail=detail)


def merge_verdict(results: Iterable[CheckResult]) -> Verdict:
    """FAIL if any required check failed, ERROR if any errored, otherwise PASS."""
    verdict = Verdict.PASS
    for r in results:
        if r.verdict == Verdict.ERROR:
            return Verdict.ERROR
        if r.verdict == Verdict.FAIL:
            verdict = Verdict.FAIL
    return verdict
