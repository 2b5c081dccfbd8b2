import json

import pytest

from app import build_parser, main
from utils.serialization import load_module


def test_free_writes_a_module(tmp_path, capsys):
    out = tmp_path / "m1.json"
    assert main(["free", "--gen", "1", "--trunc", "3", "--field", "Q", "--out", str(out)]) == 0
    assert load_module(out).dims == (0, 1, 2, 3)
    assert "✅" in capsys.readouterr().out


def test_free_prints_json_without_out(capsys):
    assert main(["free", "--gen", "0", "--trunc", "2", "--field", "F2"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["field"] == {"kind": "Fp", "p": 2}
    assert payload["dims"] == [1, 1, 1]


def test_apply_and_dims(tmp_path, capsys):
    src, dst = tmp_path / "m1.json", tmp_path / "q.json"
    main(["free", "--gen", "1", "--trunc", "4", "--out", str(src)])
    assert main(["apply", "--functor", "Qprime", "--in", str(src), "--out", str(dst)]) == 0
    Q = load_module(dst)
    assert Q.dims == (0, 1, 4, 9, 16)
    assert Q.meta["functor"] == "Qprime"
    capsys.readouterr()
    assert main(["dims", "--in", str(dst)]) == 0
    table = capsys.readouterr().out
    assert "16" in table and "degree" in table


def test_apply_extended_negative_shift(tmp_path):
    src, dst = tmp_path / "m0.json", tmp_path / "n.json"
    main(["free", "--gen", "0", "--trunc", "2", "--out", str(src)])
    main(["apply", "--functor", "Sneg", "--extended", "--in", str(src), "--out", str(dst)])
    assert load_module(dst).dims == (0, 1, 2, 3)


def test_hom(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["free", "--gen", "1", "--trunc", "4", "--out", str(a)])
    main(["free", "--gen", "0", "--trunc", "4", "--out", str(b)])
    capsys.readouterr()
    assert main(["hom", "--a", str(a), "--b", str(b), "--window", "4", "--basis"]) == 0
    out = capsys.readouterr().out
    assert "= 1" in out
    assert "# basis map 0" in out


def test_random_is_deterministic(tmp_path):
    first, second = tmp_path / "1.json", tmp_path / "2.json"
    for path in (first, second):
        main(["random", "--seed", "12", "--trunc", "3", "--field", "F5", "--out", str(path)])
    assert first.read_bytes() == second.read_bytes()


def test_library_errors_exit_with_status_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json", encoding="utf-8")
    assert main(["dims", "--in", str(bad)]) == 2
    assert "❌" in capsys.readouterr().err
    assert main(["free", "--gen", "5", "--trunc", "3"]) == 2
    assert "truncation 3" in capsys.readouterr().err


def test_bad_field_is_a_usage_error():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["free", "--gen", "1", "--field", "F4"])


def test_verify_report_and_exit_status(tmp_path, capsys):
    out = tmp_path / "report.json"
    argv = ["verify", "--suite", "skeleton", "--suite", "ses", "--trunc", "3", "--count", "2"]
    assert main(argv + ["--no-timings", "--quiet", "--out", str(out)]) == 0
    reports = json.loads(out.read_text(encoding="utf-8"))
    assert [r["suite"] for r in reports] == ["ses", "skeleton"]
    assert all(c["status"] == "pass" for r in reports for c in r["checks"])
    assert all(r["elapsed_ms"] == 0 for r in reports)
    assert "✅" in capsys.readouterr().err


def test_verify_is_reproducible(capsys):
    argv = ["verify", "--suite", "gl", "--trunc", "3", "--field", "F2", "--seed", "7", "--no-timings", "--quiet"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first
