"""Seeded restarts of single-graph symmetrization against (w-1)/(2w)."""

import argparse
import random
import sys

import numpy as np

from triedge.graph import Graph
from triedge.simplex import motzkin_straus_search, motzkin_straus_value


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--graphs", type=int, default=200)
    ap.add_argument("--max-n", type=int, default=10)
    ap.add_argument("--restarts", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    nrng = np.random.default_rng(args.seed)
    worst = 0.0
    for _ in range(args.graphs):
        n = rng.randint(2, args.max_n)
        p = rng.random()
        g = Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])
        val, _ = motzkin_straus_search(g, args.restarts, nrng)
        worst = max(worst, abs(val - motzkin_straus_value(g)))
    print(f"graphs={args.graphs} restarts={args.restarts} max_abs_error={worst:.3e}")
    return 0 if worst <= 1e-6 else 2


if __name__ == "__main__":
    sys.exit(main())
