"""Run the shipped identity suite and print the per-theorem summary.

    python scripts/run_default_suite.py [--mode float] [--out report.json]
"""

import argparse
import json
from importlib import resources

from hgenocchi.identities import SuiteSpec, run_suite, suite_ok


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--mode", choices=("exact", "float"), default=None)
    ap.add_argument("--max-n", type=int, default=None)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    data = json.loads(resources.files("hgenocchi").joinpath("data/default_suite.json").read_text())
    if args.mode:
        data["mode"] = args.mode
    if args.max_n is not None:
        data["max_n"] = args.max_n
    reports, summary = run_suite(SuiteSpec.from_dict(data))

    print(f"{'theorem':8s} {'reports':>7s} {'exact':>6s} {'tol':>4s} {'fail':>5s}  expected  max residual")
    for theorem, row in summary.items():
        print(f"{theorem:8s} {row['reports']:7d} {row['exact_pass']:6d} {row['tol_pass']:4d} {row['fail']:5d}"
              f"  {'yes' if row['expected'] else 'no ':8s}  {row['max_residual'][:40]}")
    print("suite ok" if suite_ok(summary) else "suite FAILED")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump([r.to_dict() for r in reports], fh, indent=2, sort_keys=True)


if __name__ == "__main__":
    main()
