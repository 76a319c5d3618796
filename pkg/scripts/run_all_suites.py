"""Run every verification suite and print one summary line per suite."""
import argparse
import sys
import time

from minext.core import Caps
from minext.suites import SUITES, run_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-order", type=int)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--verbose", action="store_true", help="print FAIL and NOTE lines too")
    args = ap.parse_args()
    failed = 0
    for suite_id in SUITES:
        t0 = time.perf_counter()
        rep = run_suite(suite_id, max_order=args.max_order, jobs=args.jobs, caps=Caps())
        lines = rep.lines() if args.verbose else [rep.summary_line()]
        for line in lines:
            print(line)
        print(f"  ({time.perf_counter() - t0:.2f} s)")
        failed += not rep.ok
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
