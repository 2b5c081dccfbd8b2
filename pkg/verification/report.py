"""
Suite reports: {"suite", "checks": [{"name", "status", "detail"}], "elapsed_ms"}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

import pandas as pd

from models.witnesses import Check

PASS = "pass"
FAIL = "fail"


def check_to_json(check: Check) -> dict:
    return {"name": check.name, "status": PASS if check.passed else FAIL, "detail": check.detail}


@dataclass
class SuiteReport:
    suite: str
    checks: list[Check] = field(default_factory=list)
    elapsed_ms: int = 0

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "checks": [check_to_json(c) for c in self.checks],
            "elapsed_ms": int(self.elapsed_ms),
        }


def reports_to_json(reports: Iterable[SuiteReport]) -> str:
    return json.dumps([r.to_json() for r in reports], indent=2, ensure_ascii=False) + "\n"


def summary_frame(reports: Iterable[SuiteReport]) -> pd.DataFrame:
    rows = [
        {
            "suite": r.suite,
            "checks": len(r.checks),
            "failed": len(r.failures),
            "elapsed_ms": r.elapsed_ms,
        }
        for r in reports
    ]
    return pd.DataFrame(rows, columns=["suite", "checks", "failed", "elapsed_ms"]).set_index("suite")
