"""Execution engine for verification suites."""

from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, List, Optional, Sequence, Tuple

from errors import BadArguments

from .models import SUITE_NAMES, CaseFailure, SuiteResult, VerificationSummary
from .sampling import trial_rng
from .storage import JSONLinesReport
from .suites import SUITES, Check, SuiteContext

logger = logging.getLogger(__name__)

Job = Tuple[Check, int]


def resolve_suites(name: str) -> List[str]:
    if name == "all":
        return list(SUITE_NAMES)
    if name not in SUITES:
        raise BadArguments(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES + ('all',))}")
    return [name]


class SuiteRunner:
    """Runs checks and shards randomized trials across worker threads.

    Each trial draws from its own seeded stream, and results are merged in
    (check, trial) order, so the report does not depend on the worker count.
    """

    def __init__(self, context: SuiteContext, workers: int = 1, report: Optional[JSONLinesReport] = None,
                 timings: bool = False):
        self.context = context
        self.workers = workers
        self.report = report
        self.timings = timings

    def _jobs(self, checks: Iterable[Check]) -> List[Job]:
        jobs: List[Job] = []
        for check in checks:
            jobs.extend((check, trial) for trial in range(check.trial_count(self.context.trials)))
        return jobs

    def _run_job(self, suite: str, job: Job) -> Optional[CaseFailure]:
        check, trial = job
        rng = trial_rng(self.context.seed, suite, check.name, trial)
        label = trial if check.randomized else None
        try:
            message = check.run(rng, self.context)
        except Exception as exc:  # pylint: disable=broad-except
            logger.exception("Check %s/%s raised: %s", suite, check.name, exc)
            return CaseFailure(check.name, label, f"{type(exc).__name__}: {exc}")
        if message:
            logger.warning("Check %s/%s failed: %s", suite, check.name, message)
            return CaseFailure(check.name, label, message)
        return None

    def run_suite(self, suite: str) -> SuiteResult:
        jobs = self._jobs(SUITES[suite])
        started = time.perf_counter()
        if self.workers > 1:
            with ThreadPoolExecutor(max_workers=self.workers, thread_name_prefix=f"verify-{suite}") as pool:
                outcomes = list(pool.map(lambda job: self._run_job(suite, job), jobs))
        else:
            outcomes = [self._run_job(suite, job) for job in jobs]
        result = SuiteResult(
            suite=suite,
            seed=self.context.seed,
            cases=len(jobs),
            failures=[outcome for outcome in outcomes if outcome is not None],
            elapsed=time.perf_counter() - started,
        )
        logger.info("Suite %s: %d cases, %d failures, %.3fs", suite, result.cases, len(result.failures), result.elapsed)
        if self.report is not None:
            self.report.append(result.to_dict(self.timings))
        return result

    def run(self, suites: Sequence[str]) -> VerificationSummary:
        summary = VerificationSummary(seed=self.context.seed)
        for suite in suites:
            summary.results.append(self.run_suite(suite))
        if self.report is not None:
            self.report.append(summary.to_dict(self.timings))
        return summary
