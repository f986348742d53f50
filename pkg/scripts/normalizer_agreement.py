"""Compare the three normalizer routes on a parameter grid and print timings."""

import itertools
import sys
import time
from pathlib import Path

from hgenocchi import ghg

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))
from grids import GHG_GRID, ghg_params  # noqa: E402


def main():
    worst = 0
    for row in GHG_GRID:
        p = ghg_params(row)
        results, cost = [], []
        for method in ghg.NORMALIZER_METHODS:
            t0 = time.perf_counter()
            results.append(ghg.normalizer(p, method))
            cost.append(time.perf_counter() - t0)
        gap = max(abs(a.inverse - b.inverse) for a, b in itertools.combinations(results, 2))
        worst = max(worst, gap)
        trunc = "/".join(str(r.truncation_used) for r in results[1:])
        print(f"{str(row):48s} 1/B={p.field.ctx.nstr(results[0].inverse, 15):>22s}  gap={float(gap):.2e}"
              f"  S={trunc:>9s}  t=" + "/".join(f"{c:.3f}" for c in cost))
    print(f"worst pairwise gap {float(worst):.3e}")


if __name__ == "__main__":
    main()
