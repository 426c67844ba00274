"""Print t, g and exact Tr for every e above n^2/4, as CSV.

    python3 scripts/sweep_table.py 5 8
"""

import argparse
import csv
import sys

from triedge.extremal import CSV_FIELDS
from triedge.search import sweep_bounds


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("n_min", type=int)
    ap.add_argument("n_max", type=int)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    w = csv.DictWriter(sys.stdout, fieldnames=CSV_FIELDS + ["gap"], lineterminator="\n")
    w.writeheader()
    bad = 0
    for n in range(args.n_min, args.n_max + 1):
        for rec in sweep_bounds(n, exact=n <= 10, workers=args.workers):
            row = rec.to_json()
            row["gap"] = rec.g_value - (rec.tr_exact if rec.tr_exact is not None else rec.t_value)
            w.writerow(row)
            bad += len(rec.check())
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
