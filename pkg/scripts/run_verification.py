#!/usr/bin/env python3
"""Run the full inequality suite at default settings and persist reports.

Writes report.json and report.csv next to this script (or into
$AMALGAMS_OUT_DIR when set) and prints one status line per case.
Exit code 0 iff every non-misuse case passed.
"""

import os
import sys
import time

from amalgams.cli import emit_report
from amalgams.verify import SuiteConfig, run_suite, suite_passed


def main() -> int:
    cfg = SuiteConfig()
    t0 = time.time()
    cases = run_suite(cfg)
    elapsed = time.time() - t0
    out_dir = os.environ.get("AMALGAMS_OUT_DIR", os.path.dirname(os.path.abspath(__file__)))
    emit_report(cases, "json", os.path.join(out_dir, "report.json"))
    emit_report(cases, "csv", os.path.join(out_dir, "report.csv"))
    for c in cases:
        print(f"{c.status.upper():7s} {c.id}  margin={c.margin:.3e}  tol={c.tolerance:g}")
    n_pass = sum(c.status == "pass" for c in cases)
    print(f"\n{n_pass}/{len(cases)} cases passed in {elapsed:.1f}s; reports in {out_dir}")
    return 0 if suite_passed(cases) else 1


if __name__ == "__main__":
    sys.exit(main())
