#!/usr/bin/env python3
"""Sweep every verification relation over N in {3, 5, 7} and print a table.

Equivalent to `cyclic6j verify all` for each N, with one line per
(relation, N) and a wall-clock column.  Exit status 1 if anything fails.
"""

import argparse
import sys
import time

from cyclic6j.harness import RELATIONS, run_relation


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=50)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--N", type=int, nargs="*", default=[3, 5, 7])
    args = ap.parse_args()

    failures = 0
    t_start = time.time()
    for N in args.N:
        for name in RELATIONS:
            t0 = time.time()
            rep = run_relation(name, N, samples=args.samples, seed=args.seed)
            status = "PASS" if rep.passed else "FAIL"
            failures += not rep.passed
            extra = ""
            if rep.details.get("winners"):
                extra = f"  zeta: {','.join(rep.details['winners'])}"
            print(f"{status}  N={N}  {name:22s} max={max(rep.residuals):.3e} "
                  f"tol={rep.tolerance:.0e}  [{time.time() - t0:5.2f}s]{extra}")
    print(f"\ntotal {time.time() - t_start:.1f}s, {failures} failure(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
