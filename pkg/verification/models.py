"""Data models for verification runs."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

from config import Config

SUITE_NAMES = ("field", "order", "series", "center", "gamma", "algebra", "herstein")


class SuiteStatus(str, Enum):
    """Outcome of one verification suite."""

    PASSED = "passed"
    FAILED = "failed"


@dataclass(frozen=True)
class CaseFailure:
    """One failing case; ``trial`` is None for deterministic checks."""

    check: str
    trial: Optional[int]
    message: str

    def to_dict(self) -> Dict[str, Any]:
        return {"check": self.check, "trial": self.trial, "message": self.message}

    def label(self) -> str:
        return self.check if self.trial is None else f"{self.check}#{self.trial}"


@dataclass
class SuiteResult:
    """Merged outcome of every case in a suite."""

    suite: str
    seed: int
    cases: int = 0
    failures: List[CaseFailure] = field(default_factory=list)
    elapsed: Optional[float] = None

    @property
    def status(self) -> SuiteStatus:
        return SuiteStatus.FAILED if self.failures else SuiteStatus.PASSED

    def to_dict(self, timings: bool = False) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "schema_version": Config.SCHEMA_VERSION,
            "kind": "suite_result",
            "suite": self.suite,
            "seed": self.seed,
            "cases": self.cases,
            "failures": len(self.failures),
            "status": self.status.value,
            "failed_cases": [failure.to_dict() for failure in self.failures],
        }
        if timings and self.elapsed is not None:
            data["elapsed"] = round(self.elapsed, 3)
        return data


@dataclass
class VerificationSummary:
    """All suites of one ``verify`` invocation."""

    seed: int
    results: List[SuiteResult] = field(default_factory=list)

    @property
    def total_cases(self) -> int:
        return sum(result.cases for result in self.results)

    @property
    def total_failures(self) -> int:
        return sum(len(result.failures) for result in self.results)

    @property
    def ok(self) -> bool:
        return self.total_failures == 0

    def to_dict(self, timings: bool = False) -> Dict[str, Any]:
        return {
            "schema_version": Config.SCHEMA_VERSION,
            "kind": "verification_summary",
            "seed": self.seed,
            "suites": [result.suite for result in self.results],
            "cases": self.total_cases,
            "failures": self.total_failures,
            "status": (SuiteStatus.PASSED if self.ok else SuiteStatus.FAILED).value,
        }
