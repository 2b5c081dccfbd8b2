"""
Runs verification suites, optionally in parallel.

Every suite builds its own modules from the seed, so the order of execution
does not change the results; joblib hands them back in request order.
"""

from __future__ import annotations

import logging
import time
from typing import Iterable, Sequence

from joblib import Parallel, delayed
from tqdm import tqdm

import config
from verification.report import SuiteReport
from verification.suites import SUITE_FUNCTIONS, SuiteOptions, run_checks

logger = logging.getLogger(__name__)


def expand_suites(names: Iterable[str]) -> list[str]:
    """Resolves "all" and removes duplicates, keeping first occurrence."""
    resolved = []
    for name in names:
        for item in config.SUITES if name == "all" else (name,):
            if item not in SUITE_FUNCTIONS:
                raise KeyError(f"unknown suite {item!r}; expected one of {', '.join(config.SUITES)} or all")
            if item not in resolved:
                resolved.append(item)
    return resolved


def run_suite(name: str, options: SuiteOptions, timings: bool = True) -> SuiteReport:
    start = time.perf_counter()
    checks = run_checks(name, options)
    elapsed = int((time.perf_counter() - start) * 1000) if timings else 0
    report = SuiteReport(name, checks, elapsed)
    logger.info("suite %s: %d checks, %d failed", name, len(checks), len(report.failures))
    return report


def run_campaign(
    names: Sequence[str],
    options: SuiteOptions,
    jobs: int = config.DEFAULT_JOBS,
    timings: bool = True,
    progress: bool = True,
) -> list[SuiteReport]:
    """
    Runs the named suites and returns their reports sorted by suite name.

    Checks inside a report keep their per-module order, so the sampled
    modules appear in seed order.
    """
    suites = sorted(expand_suites(names))
    if jobs == 1:
        return [
            run_suite(name, options, timings)
            for name in tqdm(suites, desc="suites", unit="suite", disable=not progress)
        ]
    tasks = (delayed(run_suite)(name, options, timings) for name in suites)
    return Parallel(n_jobs=jobs)(tqdm(tasks, total=len(suites), desc="suites", unit="suite", disable=not progress))
