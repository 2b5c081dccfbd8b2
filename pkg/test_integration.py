"""
End-to-end walk through the command line: free -> apply -> dims -> hom -> verify.
"""

import json

from app import main
from utils.serialization import load_module


def test_end_to_end(tmp_path, capsys):
    print("=" * 70)
    print("🧪 END-TO-END CHECK - FI-MODULE ENGINE")
    print("=" * 70)

    # 1. Free module
    print("1️⃣ Building M([1])...")
    free = tmp_path / "m1.json"
    assert main(["free", "--gen", "1", "--trunc", "4", "--field", "Q", "--out", str(free)]) == 0
    V = load_module(free)
    assert V.dims == (0, 1, 2, 3, 4)
    print(f"   ✅ dims {list(V.dims)}")

    # 2. Functors
    print("2️⃣ Applying S, D, Sneg and Qprime...")
    expected = {
        "S": (1, 2, 3, 4),
        "D": (1, 1, 1, 1),
        "Sneg": (0, 0, 2, 6, 12),
        "Qprime": (0, 1, 4, 9, 16),
    }
    for functor, dims in expected.items():
        out = tmp_path / f"{functor}.json"
        assert main(["apply", "--functor", functor, "--in", str(free), "--out", str(out)]) == 0
        assert load_module(out).dims == dims, functor
        print(f"   ✅ {functor}: {list(dims)}")

    # 3. Dimension table
    print("3️⃣ Dimension table...")
    capsys.readouterr()
    assert main(["dims", "--in", str(tmp_path / "Qprime.json")]) == 0
    assert "16" in capsys.readouterr().out
    print("   ✅ table printed")

    # 4. Hom
    print("4️⃣ Hom(S̃₋₁M([1]), M([1]))...")
    capsys.readouterr()
    assert main(["hom", "--a", str(tmp_path / "Sneg.json"), "--b", str(free)]) == 0
    line = capsys.readouterr().out.strip()
    assert line.startswith("dim Hom")
    print(f"   ✅ {line}")

    # 5. Verification campaign
    print("5️⃣ Running verification suites...")
    report = tmp_path / "report.json"
    argv = ["verify", "--suite", "all", "--trunc", "3", "--field", "F2", "--seed", "7", "--count", "2"]
    status = main(argv + ["--quiet", "--no-timings", "--out", str(report)])
    suites = json.loads(report.read_text(encoding="utf-8"))
    failed = [f"{s['suite']}/{c['name']}" for s in suites for c in s["checks"] if c["status"] == "fail"]
    for name in failed:
        print(f"   ❌ {name}")
    assert status == 0 and not failed
    print(f"   ✅ {sum(len(s['checks']) for s in suites)} checks over {len(suites)} suites")

    print("=" * 70)
    print("✅ INTEGRATION VERIFIED")
    print("=" * 70)
