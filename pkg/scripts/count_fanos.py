"""Number of smooth Fano full varieties of type (2,n): closed formula against brute force."""

import argparse
import sys

from intgrass.classify import count_fano_formula, count_fano_oracle


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=30)
    args = ap.parse_args()
    bad = 0
    print(f"{'n':>3} {'formula':>10} {'oracle':>10}")
    for n in range(4, args.n_max + 1):
        f, o = count_fano_formula(n), count_fano_oracle(n)
        bad += f != o
        print(f"{n:>3} {f:>10} {o:>10}{'  MISMATCH' if f != o else ''}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
