"""Print the smooth Fano full table for 5 <= n <= 8 and compare it with the golden copy."""

import argparse
import json
import sys
import time
from pathlib import Path

from intgrass.classify import anticanonical, enumerate_smooth_fano_full
from intgrass.hilbert import graded_dim

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "data" / "fano_table.json"


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-from", type=int, default=5)
    ap.add_argument("--n-to", type=int, default=8)
    args = ap.parse_args()
    golden = {str(r["matrix"]): r for r in json.loads(GOLDEN.read_text())["rows"]}
    t0 = time.perf_counter()
    mismatches = 0
    print(f"{'n':>2} {'k':>2} {'alpha':<14} {'-K':<8} {'h0':>8}  golden")
    for n in range(args.n_from, args.n_to + 1):
        for v in sorted(enumerate_smooth_fano_full(n), key=lambda v: (-v.k, v.alphas)):
            g = v.grading()
            k = anticanonical(g)
            h0 = graded_dim(g, k)
            ref = golden.get(str(g.matrix()))
            if ref is None:
                status = "not in golden table"
                mismatches += 1
            elif list(k) != ref["antican"] or h0 != ref["h0"]:
                status = f"row {ref['no']}: differs (printed h0 {ref['h0']})"
                mismatches += 1
            else:
                status = f"row {ref['no']}: ok"
            print(f"{n:>2} {v.k:>2} {str(list(v.alphas)):<14} {str(k):<8} {h0:>8}  {status}")
    print(f"{mismatches} mismatching rows, {time.perf_counter() - t0:.2f}s")
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
