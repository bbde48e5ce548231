#!/usr/bin/env python3
"""Run the whole claim registry and print one line per record; exit 1 on any failure."""

import argparse
import sys
import time

from permgraph.claims import REGISTRY, Options, run_claims


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()
    failed = 0
    for cid, (summary, _) in REGISTRY.items():
        t0 = time.perf_counter()
        recs = run_claims([cid], Options(workers=args.threads))
        bad = [r for r in recs if r.status != "pass"]
        failed += len(bad)
        print(f"{'ok' if not bad else 'FAIL':4} {cid:<9} {len(recs):>3} records  "
              f"{time.perf_counter() - t0:6.2f}s  {summary}")
        for r in bad:
            print(f"     {r.params} predicted={r.predicted} computed={r.computed}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
