"""Run the smoothness, Fano and BPF checks over the parameter grid of the six families."""

import argparse
import sys
import time
from collections import Counter

from intgrass.classify import anticanonical, anticanonical_closed_form, build, fano_status_by_cone
from intgrass.classify import fano_status_by_criterion, iter_grid
from intgrass.faces import bpf_saturated, verify_smooth


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=8)
    ap.add_argument("--max-m", type=int, default=3)
    ap.add_argument("--max-param", type=int, default=3)
    args = ap.parse_args()
    t0 = time.perf_counter()
    per_type: Counter = Counter()
    failures = []
    for v in iter_grid(args.max_n, args.max_m, args.max_param):
        per_type[v.tag] += 1
        b = build(v)
        verdict = verify_smooth(b.grading, b.u)
        if not verdict.is_smooth:
            failures.append((v, f"verdict {verdict}"))
            continue
        if fano_status_by_criterion(v) is not fano_status_by_cone(b.grading, b.u):
            failures.append((v, "Fano criterion and cone disagree"))
        if anticanonical(b.grading) != anticanonical_closed_form(v):
            failures.append((v, "anticanonical closed form differs"))
        if not bpf_saturated(b.grading, b.u):
            failures.append((v, "BPF monoid not saturated"))
    for tag in sorted(per_type):
        print(f"type {tag}: {per_type[tag]} instances")
    for v, why in failures[:20]:
        print(f"FAIL {v}: {why}")
    print(f"{sum(per_type.values())} instances, {len(failures)} failures, {time.perf_counter() - t0:.1f}s")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
