"""Print the residuals of the T20 summation formula, checked as printed."""

import argparse

from hgenocchi.identities import SuiteSpec, run_suite


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("--points", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    spec = SuiteSpec.from_dict({"theorems": ["T20"], "seed": args.seed, "max_n": args.max_n,
                                "points_per_theorem": args.points})
    reports, summary = run_suite(spec)
    for rep in reports:
        d = rep.to_dict()
        print(f"{d['point_hash']}  r={d['point']['r']} k={d['point']['k']}  n={d['n']}  {d['verdict']:10s}  {d['residual']}")
    row = summary["T20"]
    print(f"{row['exact_pass']} of {row['reports']} exact, max residual {row['max_residual']}")


if __name__ == "__main__":
    main()
