"""Write the golden files under tests/golden from a fresh run.

Run once; the tests then hold later runs to these values.  Rerunning
overwrites them, so review the diff before committing.
"""

import json
import sys
from pathlib import Path

from hgenocchi import ghg
from hgenocchi.identities import SuiteSpec, run_suite

ROOT = Path(__file__).resolve().parents[1]
GOLDEN = ROOT / "tests" / "golden"
sys.path.insert(0, str(ROOT / "tests"))

from grids import GHG_GRID, ghg_params  # noqa: E402

T20_SUITE = {"theorems": ["T20"], "seed": 0, "mode": "exact", "max_n": 6, "max_r": 3, "points_per_theorem": 5}
SC7_SUITE = {"theorems": ["SC7"], "seed": 0, "mode": "exact", "max_n": 8, "max_r": 3, "points_per_theorem": 5}
LEMMA_X = (0, 1, 3)


def write(name, payload):
    path = GOLDEN / name
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    print(f"wrote {path.relative_to(ROOT)}")


def suite_rows(suite):
    reports, _ = run_suite(SuiteSpec.from_dict(suite))
    return {"suite": suite, "reports": [r.to_dict() for r in reports]}


def lemma_rows():
    rows = []
    for row in GHG_GRID:
        p = ghg_params(row)
        for i in range(p.r):
            for x in LEMMA_X:
                res = ghg.marginal_cdf(p, i, x, "lemma")
                fmt = p.field.format
                rows.append({
                    "params": list(row[:2]) + [list(row[2])] + list(map(str, row[3:])),
                    "i": i,
                    "x": x,
                    "printed": fmt(res.printed),
                    "corrected": fmt(res.corrected),
                    "residual_printed": fmt(res.residual_printed),
                })
    return rows


def main():
    GOLDEN.mkdir(parents=True, exist_ok=True)
    write("t20_residuals.json", suite_rows(T20_SUITE))
    write("sc7_factors.json", suite_rows(SC7_SUITE))
    write("lemma_printed.json", {"x": list(LEMMA_X), "rows": lemma_rows()})


if __name__ == "__main__":
    main()
