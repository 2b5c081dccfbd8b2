import json

import pytest

import config
from models.scalars import FieldSpec
from models.witnesses import Check
from verification.report import SuiteReport, reports_to_json, summary_frame
from verification.runner import expand_suites, run_campaign, run_suite
from verification.suites import SUITE_FUNCTIONS, SuiteOptions


@pytest.fixture
def options():
    return SuiteOptions(field=FieldSpec.rationals(), trunc=3, seed=7, count=2)


def test_every_configured_suite_is_registered():
    assert set(config.SUITES) == set(SUITE_FUNCTIONS)


def test_expand_suites():
    assert expand_suites(["all"]) == list(config.SUITES)
    assert expand_suites(["eta", "skeleton", "eta"]) == ["eta", "skeleton"]
    with pytest.raises(KeyError):
        expand_suites(["nonsense"])


def test_report_schema():
    report = SuiteReport("eta", [Check("a", True, "ok"), Check("b", False, "bad")], 12)
    assert report.to_json() == {
        "suite": "eta",
        "checks": [
            {"name": "a", "status": "pass", "detail": "ok"},
            {"name": "b", "status": "fail", "detail": "bad"},
        ],
        "elapsed_ms": 12,
    }
    assert not report.passed
    frame = summary_frame([report])
    assert frame.loc["eta", "failed"] == 1


@pytest.mark.parametrize("name", ["skeleton", "eta", "theta", "leibniz", "ses", "gl"])
def test_fast_suites_pass(name, options):
    report = run_suite(name, options)
    assert report.checks
    assert report.passed, [c for c in report.failures]


@pytest.mark.parametrize("name", ["functoriality", "hom", "alpha", "beta", "gamma", "adjunctions", "hypotheses"])
def test_module_suites_pass_over_f2(name):
    options = SuiteOptions(field=FieldSpec.prime(2), trunc=3, seed=3, count=2)
    report = run_suite(name, options)
    assert report.passed, [c for c in report.failures]


def test_campaign_is_deterministic(options):
    first = run_campaign(["eta", "ses"], options, timings=False, progress=False)
    second = run_campaign(["eta", "ses"], options, jobs=2, timings=False, progress=False)
    assert reports_to_json(first) == reports_to_json(second)
    assert [r["suite"] for r in json.loads(reports_to_json(first))] == ["eta", "ses"]
    assert all(r.elapsed_ms == 0 for r in first)


def test_adjunction_suite_samples_a_fixed_number_of_pairs():
    options = SuiteOptions(field=FieldSpec.prime(2), trunc=2, seed=5, count=1)
    names = [c.name for c in run_suite("adjunctions", options, timings=False).checks]
    pairs = {name.split("_")[1] for name in names}
    assert pairs == {str(k) for k in range(config.ADJUNCTION_PAIRS)}


def test_campaign_reports_are_sorted_by_suite(options):
    reports = run_campaign(["ses", "eta"], options, timings=False, progress=False)
    assert [r.suite for r in reports] == ["eta", "ses"]
