#!/usr/bin/env python3
"""Print C(n,k), v(n,k), w(n,k) and closed-walk class counts for small graphs.

Values outside the closed-form regimes are new data; they are marked with '*'.
"""

import argparse
import time

from permgraph import census as cs
from permgraph.errors import ResourceLimitExceeded


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=6)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--limit", type=int, default=None, help="DFS expansion cap per length")
    args = ap.parse_args()

    print(f"{'n':>2} {'k':>2} {'C':>10} {'v':>7} {'w':>7} {'walks':>10}  checks")
    for n in range(2, args.nmax + 1):
        for k in range(1, n):
            t0 = time.perf_counter()
            try:
                r = cs.census(n, k, workers=args.threads, limit=args.limit)
            except ResourceLimitExceeded as exc:
                print(f"{n:>2} {k:>2}  stopped: {exc}")
                continue
            mark = "*" if k >= 3 and "C_G3" not in r.formula_values else ""
            bad = [name for name, ok in r.agreement.items() if not ok]
            print(f"{n:>2} {k:>2} {r.cycle_count:>9}{mark:1} {r.vertices_in_cycles:>7} "
                  f"{r.vertices_in_walks:>7} {r.walk_class_count:>10}  "
                  f"{'FAIL ' + ','.join(bad) if bad else 'ok'}  ({time.perf_counter() - t0:.2f}s)")


if __name__ == "__main__":
    main()
