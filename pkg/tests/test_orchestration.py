"""
Tests for the suite orchestrator, the results ledger and the suite registry
"""

import json

import pytest

from config.settings import settings
from core.exceptions import NonCancellingPole, ProbeCollision
from core.orchestration.orchestrator import SuiteOrchestrator, overall_verdict
from core.verification import merge_verdict
from ledger.logger import ResultsLedger
from models.schemas import CheckResult, SessionConfig, SuiteName, SuiteReport, Verdict
from suites.registry import CLASSICAL_SUITES, MIURA_SUITES, SUITES, VERIFY_SUITES, create_suite, resolve
from suites.repk_suites import HeisenbergSuite


def report(verdict: Verdict, suite: str = "heisenberg") -> SuiteReport:
    return SuiteReport(suite=suite, verdict=verdict, config_hash="0x0")


class FakeSuite:
    """Stands in for a registered suite; raises the queued errors first."""

    def __init__(self, errors, seeds):
        self.errors = errors
        self.seeds = seeds

    def __call__(self, name, config):
        self.seeds.append(config.seed)
        return self

    def execute(self):
        if self.errors:
            raise self.errors.pop(0)
        return SuiteReport(suite="heisenberg", verdict=Verdict.PASS, config_hash="0x0")


class TestResultsLedger:
    def test_entries_are_hashed(self):
        ledger = ResultsLedger()
        entry = ledger.record(report(Verdict.PASS))
        assert entry.hash.startswith("0x")
        assert len(entry.hash) == 2 + 64
        assert len(ledger) == 1

    def test_recent_entries_keep_order(self):
        ledger = ResultsLedger()
        for name in ("a", "b", "c"):
            ledger.record(report(Verdict.PASS, name))
        assert [e.suite for e in ledger.get_recent_entries(2)] == ["b", "c"]
        assert [e.suite for e in ledger.get_recent_entries()] == ["a", "b", "c"]

    def test_entries_for_suite(self):
        ledger = ResultsLedger()
        ledger.record(report(Verdict.PASS, "a"))
        ledger.record(report(Verdict.FAIL, "b"))
        ledger.record(report(Verdict.PASS, "a"))
        assert len(ledger.entries_for_suite("a")) == 2
        assert ledger.entries_for_suite("b")[0].verdict == Verdict.FAIL


class TestVerdicts:
    def test_merge_ignores_reported(self):
        checks = [
            CheckResult(name="a", verdict=Verdict.PASS),
            CheckResult(name="b", verdict=Verdict.REPORTED),
        ]
        assert merge_verdict(checks) == Verdict.PASS

    def test_merge_prefers_error(self):
        checks = [
            CheckResult(name="a", verdict=Verdict.FAIL),
            CheckResult(name="b", verdict=Verdict.ERROR),
        ]
        assert merge_verdict(checks) == Verdict.ERROR

    def test_overall_verdict(self):
        assert overall_verdict([report(Verdict.PASS), report(Verdict.PASS)]) == Verdict.PASS
        assert overall_verdict([report(Verdict.PASS), report(Verdict.FAIL)]) == Verdict.FAIL
        assert overall_verdict([report(Verdict.FAIL), report(Verdict.ERROR)]) == Verdict.ERROR
        assert overall_verdict([]) == Verdict.PASS


class TestRegistry:
    def test_resolve(self):
        assert resolve("w-k1") == SuiteName.W_K1

    def test_resolve_unknown(self):
        with pytest.raises(ValueError):
            resolve("no-such")

    def test_every_name_is_registered(self):
        assert set(SUITES) == set(SuiteName)
        grouped = set(VERIFY_SUITES) | set(MIURA_SUITES.values()) | set(CLASSICAL_SUITES.values())
        assert grouped == set(SuiteName)

    def test_create_suite(self, small_config):
        suite = create_suite(SuiteName.HEISENBERG, small_config)
        assert isinstance(suite, HeisenbergSuite)
        assert suite.window() == 2

    def test_additive_suites_follow_the_exact_flag(self):
        config = SessionConfig(rank=1, mode="exact")
        assert create_suite(SuiteName.CLASSICAL_MODULE, config).mode == "additive-exact"
        assert create_suite(SuiteName.CLASSICAL_MODULE, SessionConfig(rank=1)).mode == "additive"


class TestSessionConfig:
    def test_hash_is_stable(self):
        a = SessionConfig(rank=2, seed=3)
        b = SessionConfig(rank=2, seed=3)
        assert a.config_hash() == b.config_hash()
        assert a.config_hash() != SessionConfig(rank=2, seed=4).config_hash()

    def test_mode_is_case_insensitive(self):
        assert SessionConfig(mode="EXACT").mode.value == "exact"

    def test_schema_version_follows_settings(self, monkeypatch):
        monkeypatch.setattr(settings, "SCHEMA_VERSION", "2.1")
        report = SuiteReport(suite="heisenberg", verdict=Verdict.PASS, config_hash="abc")
        assert report.schema_version == "2.1"


class TestSuiteOrchestrator:
    def test_run_records_every_suite(self, small_config):
        ledger = ResultsLedger()
        orchestrator = SuiteOrchestrator(results_ledger=ledger)
        result = orchestrator.run(small_config, [SuiteName.HEISENBERG, SuiteName.DIMENSIONS])
        assert result.verdict == Verdict.PASS
        assert [s.suite for s in result.suites] == ["heisenberg", "dimensions"]
        assert len(ledger) == 2
        assert orchestrator.get_latest_report("heisenberg").verdict == Verdict.PASS

    def test_parallel_run_keeps_order(self, small_config):
        config = small_config.model_copy(update={"workers": 2})
        result = SuiteOrchestrator().run(config, [SuiteName.DIMENSIONS, SuiteName.HEISENBERG])
        assert [s.suite for s in result.suites] == ["dimensions", "heisenberg"]

    def test_report_json_is_deterministic(self, small_config):
        first = SuiteOrchestrator().run(small_config, [SuiteName.HEISENBERG])
        second = SuiteOrchestrator().run(small_config, [SuiteName.HEISENBERG])
        assert first.to_json() == second.to_json()
        assert "elapsed_seconds" not in json.loads(first.to_json())["suites"][0]

    def test_algebra_errors_become_error_reports(self, small_config, monkeypatch):
        seeds = []
        fake = FakeSuite([NonCancellingPole("boom")], seeds)
        monkeypatch.setattr("core.orchestration.orchestrator.create_suite", fake)
        result = SuiteOrchestrator().run_suite(small_config, SuiteName.HEISENBERG)
        assert result.verdict == Verdict.ERROR
        assert result.error == "NonCancellingPole: boom"

    def test_probe_collision_reseeds_once(self, small_config, monkeypatch):
        seeds = []
        fake = FakeSuite([ProbeCollision("zero denominator")], seeds)
        monkeypatch.setattr("core.orchestration.orchestrator.create_suite", fake)
        result = SuiteOrchestrator().run_suite(small_config, SuiteName.HEISENBERG)
        assert result.verdict == Verdict.PASS
        assert seeds == [small_config.seed, small_config.seed + 1]

    def test_second_collision_is_an_error(self, small_config, monkeypatch):
        seeds = []
        fake = FakeSuite([ProbeCollision("first"), ProbeCollision("second")], seeds)
        monkeypatch.setattr("core.orchestration.orchestrator.create_suite", fake)
        result = SuiteOrchestrator().run_suite(small_config, SuiteName.HEISENBERG)
        assert result.verdict == Verdict.ERROR
        assert result.error.startswith("ProbeCollision")
