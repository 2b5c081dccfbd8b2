"""
verify: runs the verification campaign and writes the JSON report.

Exit status is 0 when every check passes and 1 otherwise.
"""

from __future__ import annotations

import logging
import sys
from pathlib import Path

import config
from commands.modules import field_arg
from verification.report import reports_to_json, summary_frame
from verification.runner import run_campaign
from verification.suites import SuiteOptions

logger = logging.getLogger(__name__)


def cmd_verify(args) -> int:
    options = SuiteOptions(
        field=args.field,
        trunc=args.trunc,
        seed=args.seed,
        count=args.count,
        profile=args.profile,
    )
    reports = run_campaign(
        args.suite or ["all"],
        options,
        jobs=args.jobs,
        timings=not args.no_timings,
        progress=not args.quiet,
    )
    text = reports_to_json(reports)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        print(text, end="")

    failed = [(r.suite, c) for r in reports for c in r.failures]
    # stdout carries only the JSON report
    print(summary_frame(reports).to_string(), file=sys.stderr)
    for suite, check in failed:
        print(f"❌ {suite}/{check.name}: {check.detail}", file=sys.stderr)
    if failed:
        return 1
    total = sum(len(r.checks) for r in reports)
    print(f"✅ {total} checks passed over {len(reports)} suites", file=sys.stderr)
    return 0


def register(subparsers):
    verify = subparsers.add_parser("verify", help="run verification suites")
    verify.add_argument(
        "--suite",
        action="append",
        choices=[*config.SUITES, "all"],
        help="repeatable; defaults to all",
    )
    verify.add_argument("--field", type=field_arg, default=config.DEFAULT_FIELD)
    verify.add_argument("--trunc", type=int, default=config.DEFAULT_TRUNC)
    verify.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    verify.add_argument("--count", type=int, default=config.DEFAULT_COUNT)
    verify.add_argument("--profile", choices=config.RANDOM_PROFILES, default=config.DEFAULT_PROFILE)
    verify.add_argument("--jobs", type=int, default=config.DEFAULT_JOBS)
    verify.add_argument("--no-timings", action="store_true", help="write elapsed_ms = 0")
    verify.add_argument("--quiet", action="store_true", help="no progress bar")
    verify.add_argument("--out")
    verify.set_defaults(handler=cmd_verify)
