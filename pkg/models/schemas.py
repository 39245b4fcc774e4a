"""
Pydantic Models for Session Configuration and Verification Results
Defines the data structures shared by the suites, the ledger and the CLI
"""

import hashlib
import json
from datetime import datetime
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, field_validator

from config.settings import settings


# ============= SESSION MODELS =============

class BackendMode(str, Enum):
    """Scalar backends selectable per session"""
    EXACT = "exact"
    PROBE = "probe"


class SuiteName(str, Enum):
    """Identity families runnable by the orchestrator"""
    # shuffle algebra
    WHEEL = "wheel"
    PHI = "phi"
    PHI_X = "phi-x"
    HQ = "hq"
    BROKEN_PATH = "broken-path"
    # fixed-point module
    HEISENBERG = "heisenberg"
    REL123 = "rel123"
    W_K1 = "w-k1"
    W_FULL = "w-full"
    POLES = "poles"
    TRUNCATION = "truncation"
    VERMA = "verma"
    ADJOINT = "adjoint"
    POWER = "power"
    DIMENSIONS = "dimensions"
    # Ext and vertex operators
    EXT = "ext"
    Z_TAIL = "z-tail"
    THM43 = "thm43"
    MAIN_THEOREM = "main-theorem"
    NEKRASOV = "nekrasov"
    # free-field realization
    MIURA_RELATIONS = "miura-relations"
    GLSL = "glsl"
    MISH = "mish"
    # cohomological limit
    CLASSICAL_MODULE = "classical-module"
    LOCALITY = "locality"
    LIMIT = "limit"


class SessionConfig(BaseModel):
    """
    Everything that determines the generator list and the numbers a run produces.

    Two runs with equal configs (seed included) produce byte-identical output.
    """
    rank: int = Field(1, ge=1, le=6, description="r, the rank of the torus")
    mode: BackendMode = Field(BackendMode.PROBE, description="Scalar backend")
    probe_prime: int = Field(2**61 - 1, description="Prime for probe evaluation")
    probe_repetitions: int = Field(3, ge=1, description="Independent probe points")
    seed: int = Field(0, description="Seed for probe points and random witnesses")
    max_state_size: int = Field(2, ge=0, description="Largest r-partition size in windows")
    bidegree_radius: int = Field(2, ge=0, description="Range of current coefficients checked")
    series_order: int = Field(8, ge=1, description="Order of truncated power series")
    eps_order: int = Field(8, ge=2, description="Relative precision of eps-series")
    truncation_margin: int = Field(1, ge=0, description="Extra vanishing coefficients demanded")
    quiver_length: int = Field(1, ge=1, description="Number of Ext operators in a Nekrasov trace")
    workers: int = Field(1, ge=1, description="Worker threads for suite fan-out")

    @field_validator("mode", mode="before")
    @classmethod
    def normalize_mode(cls, v):
        return v.lower() if isinstance(v, str) else v

    def config_hash(self) -> str:
        """sha256 of the canonical JSON form, hex with a 0x prefix."""
        payload = json.dumps(self.model_dump(mode="json"), sort_keys=True)
        return f"0x{hashlib.sha256(payload.encode()).hexdigest()}"


# ============= VERIFICATION RESULTS =============

class Verdict(str, Enum):
    """Outcome of a single check or a whole suite"""
    PASS = "pass"
    FAIL = "fail"
    ERROR = "error"
    REPORTED = "reported"  # informational verdicts that are never required


class Witness(BaseModel):
    """Minimal failing instance of an identity."""
    description: str = Field(..., description="Which identity failed")
    states: List[Any] = Field(default_factory=list, description="r-partitions or Fock monomials involved")
    bidegree: Optional[List[int]] = Field(None, description="Coefficient indices of the failing term")
    lhs: str = Field("", description="Canonical form of the left-hand side")
    rhs: str = Field("", description="Canonical form of the right-hand side")


class CheckResult(BaseModel):
    """One family of identities inside a suite."""
    name: str = Field(..., description="Identity family")
    verdict: Verdict = Field(..., description="Outcome")
    checked: int = Field(0, ge=0, description="Number of scalar identities compared")
    witness: Optional[Witness] = Field(None, description="First failure, if any")
    detail: str = Field("", description="Free-form note, e.g. an opportunistic verdict")


class SuiteReport(BaseModel):
    """Result record of one suite run."""
    suite: str = Field(..., description="Suite name")
    verdict: Verdict = Field(..., description="PASS only if every required check passed")
    config_hash: str = Field(..., description="Hash of the session configuration")
    checks: List[CheckResult] = Field(default_factory=list)
    elapsed_seconds: float = Field(0.0, ge=0)
    error: Optional[str] = Field(None, description="Structured error message for ERROR verdicts")
    schema_version: str = Field(default_factory=lambda: settings.SCHEMA_VERSION)


# ============= LEDGER =============

class LedgerEntry(BaseModel):
    """Immutable record of a suite run kept by the results ledger."""
    suite: str
    timestamp: datetime
    config_hash: str
    verdict: Verdict
    data: Dict[str, Any] = Field(default_factory=dict)
    hash: Optional[str] = None


# ============= MATRIX OUTPUT =============

class MatrixEntry(BaseModel):
    """One nonzero coefficient <row|O|column>."""
    row: Any
    column: Any
    value: str


class MatrixBlock(BaseModel):
    """Block of an operator between two size ranges."""
    operator: str
    config_hash: str
    entries: List[MatrixEntry] = Field(default_factory=list)
    schema_version: str = Field(default_factory=lambda: settings.SCHEMA_VERSION)


# ============= PARTITION FUNCTION OUTPUT =============

class NekrasovTerm(BaseModel):
    """Sum over all tuples of r-partitions with one size vector."""
    size_vector: List[int] = Field(..., description="(|lam_1|, ..., |lam_k|)")
    x_exponents: List[int] = Field(..., description="Exponent of each x_a, |lam_a| - |lam_a+1|")
    instanton: int = Field(..., ge=0, description="Total instanton number |lam_1| + ... + |lam_k|")
    tuples: int = Field(..., ge=0, description="Number of tuples summed")
    value: str = Field(..., description="Canonical form of the coefficient")
    trace_agrees: bool = Field(..., description="Trace of composed Ext operators gives the same value")


class NekrasovTable(BaseModel):
    """Cyclic quiver partition function up to a maximal instanton number per node."""
    rank: int
    quiver_length: int
    max_instanton: int
    config_hash: str
    specialization: Dict[str, str] = Field(default_factory=dict)
    terms: List[NekrasovTerm] = Field(default_factory=list)
    schema_version: str = Field(default_factory=lambda: settings.SCHEMA_VERSION)


# ============= RUN REPORT =============

class RunReport(BaseModel):
    """Everything one CLI invocation prints: the config, its hash and one report per suite."""
    config: SessionConfig
    config_hash: str
    verdict: Verdict
    suites: List[SuiteReport] = Field(default_factory=list)
    schema_version: str = Field(default_factory=lambda: settings.SCHEMA_VERSION)

    def to_json(self, indent: Optional[int] = None) -> str:
        """Canonical JSON; wall-clock timings are left out so reruns are byte-identical."""
        payload = self.model_dump(mode="json", exclude={"suites": {"__all__": {"elapsed_seconds"}}})
        return json.dumps(payload, indent=indent or None, sort_keys=True)
