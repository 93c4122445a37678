#!/usr/bin/env python3
"""Smoke test for the billiard_py extension module.

Builds the cdylib with cargo, loads it, and drives the main operations:
generation, frequencies, the certified letter bound, balance verdicts, and
the BRS verdicts of the cubic reference direction.
"""

import json
import math
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
THETA = "1,sqrt(3),sqrt(2)"


def build_module() -> Path:
    subprocess.run(
        ["cargo", "build", "-p", "billiard-py", "--release"],
        cwd=REPO,
        check=True,
    )
    built = REPO / "target" / "release" / "libbilliard_py.so"
    stage = Path(tempfile.mkdtemp(prefix="billiard-py-"))
    shutil.copy2(built, stage / "billiard_py.so")
    return stage


def main() -> int:
    stage = build_module()
    sys.path.insert(0, str(stage))
    import billiard_py as bp

    failures = []

    def check(name, cond, detail=""):
        status = "PASS" if cond else "FAIL"
        print(f"[{status}] {name}" + (f": {detail}" if detail and not cond else ""))
        if not cond:
            failures.append(name)

    word = bp.generate(THETA, 200_000, seed=42)
    check("generation length", len(word) == 200_000)
    check("generation margin positive", word.min_margin > 0)

    counts2 = word.factor_counts(2)
    check(
        "seven length-2 factors",
        sorted(counts2) == ["12", "13", "21", "22", "23", "31", "32"],
        str(sorted(counts2)),
    )
    check("complexity p(2) = 7", word.complexity(2) == 7)

    mu = bp.letter_frequencies(THETA)
    check("letter frequencies sum to 1", abs(sum(mu) - 1.0) < 1e-15)
    s = 1 + math.sqrt(3) + math.sqrt(2)
    check("mu[1] closed form", abs(mu[0] - 1 / s) < 1e-15)

    counts1 = word.factor_counts(1)
    for a in (1, 2, 3):
        bound = bp.letter_bound(THETA, a)
        dev = abs(counts1[str(a)] - len(word) * mu[a - 1])
        check(f"letter {a} within certified bound", dev <= bound, f"{dev} vs {bound}")

    mu22 = bp.pair_frequency(THETA, "22")
    emp22 = counts2["22"] / (len(word) - 1)
    check("pair 22 closed form near empirical", abs(mu22 - emp22) < 2e-3)

    balance = json.loads(bp.balance_report_json(THETA, max_factor_len=2, n=200_000))
    certificates = [
        e for e in balance["entries"] if e["verdict"]["status"] == "certified-bounded-by-c"
    ]
    check("three certified letters", len(certificates) == 3)

    brs = json.loads(bp.brs_report_json(THETA))
    reasons = [c["verdict"]["reason"]["reason"] for c in brs["cells"]]
    check(
        "BRS verdicts 6 + 1",
        reasons.count("no-symmetry-center") == 6
        and reasons.count("condition2-fail") == 1,
        str(reasons),
    )
    cell22 = next(c for c in brs["cells"] if c["label"] == "22")
    check(
        "cell 22 fails condition 2",
        cell22["verdict"]["reason"]["reason"] == "condition2-fail",
    )

    print(f"{'OK' if not failures else 'FAILED'}: {len(failures)} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
