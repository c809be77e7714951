#!/usr/bin/env python3
"""Run every verification anchor and print one PASS/FAIL line per anchor.

Equivalent to `ellfgl reproduce`; exits nonzero if anything fails.
"""

import argparse
import sys
import time

from ellfgl.reproduce import reproduce


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--only", default=None, help="substring filter on anchor names")
    args = ap.parse_args()
    t0 = time.time()
    results = reproduce(args.only)
    for name, ok, detail in results:
        line = f"{'PASS' if ok else 'FAIL'} {name}"
        if detail:
            line += f"  ({detail})"
        print(line)
    bad = [n for n, ok, _ in results if not ok]
    print(f"{len(results) - len(bad)}/{len(results)} anchors passed in {time.time() - t0:.1f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
