#!/usr/bin/env python3
"""Deep scan of the 2/3-adic valuation conjecture for the sigma-table entries.

The acceptance suite runs i+j <= 30; this script goes as deep as you ask
(i+j <= 100 takes a few minutes and a few hundred MB of big integers).

    python scripts/conjecture_scan.py --maxsum 50
"""

import argparse
import sys
import time

from ellfgl.weierstrass import conjecture_check, sigma_table


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--maxsum", type=int, default=30, help="check all (i,j) with i+j <= maxsum")
    args = ap.parse_args()
    t0 = time.time()
    table = sigma_table(3 * args.maxsum)
    t1 = time.time()
    print(f"table filled to weight {3 * args.maxsum} ({len(table.entries)} entries, {t1 - t0:.1f}s)")
    rep = conjecture_check(args.maxsum, table)
    print(f"checked {rep.checked} index pairs, {rep.zero_entries} zero entries, "
          f"{len(rep.counterexamples)} counterexamples ({time.time() - t1:.1f}s)")
    for ij in rep.counterexamples:
        print(f"  counterexample at (i, j) = {ij}")
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
