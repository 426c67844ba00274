"""Dense-range family check for a range of n, one JSON report per line.

Checking n = 10 takes roughly a minute on a single core.
"""

import argparse
import json
import sys
import time

from triedge.search import check_conjecture1_dense


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-min", type=int, default=4)
    ap.add_argument("--n-max", type=int, default=9)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    ok = True
    for n in range(args.n_min, args.n_max + 1):
        start = time.perf_counter()
        rep = check_conjecture1_dense(n, workers=args.workers)
        out = rep.to_json()
        out["seconds"] = round(time.perf_counter() - start, 2)
        print(json.dumps(out), flush=True)
        ok &= rep.ok
    return 0 if ok else 2


if __name__ == "__main__":
    sys.exit(main())
