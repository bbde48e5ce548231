#!/usr/bin/env python3
"""Tabulate w(n,k) by direct scan against the exact formula and the upper bound."""

import argparse

from permgraph import census as cs


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=9)
    args = ap.parse_args()

    print(f"{'n':>2} {'k':>2} {'w':>8} {'exact':>8} {'bound':>8}")
    for n in range(3, args.nmax + 1):
        for k in range(2, n):
            w = cs.w_count(n, k)
            exact = cs.w_formula(n, k) if n <= 2 * k else ""
            bound = cs.w_upper_bound(n, k) if n > 2 * k and n % 2 and k >= 3 else ""
            flag = ""
            if exact != "" and exact != w or bound != "" and w > bound:
                flag = "  MISMATCH"
            print(f"{n:>2} {k:>2} {w:>8} {exact!s:>8} {bound!s:>8}{flag}")


if __name__ == "__main__":
    main()
