"""Run the triangular-edge reduction on every small graph with a
non-triangular edge and tally move kinds, stalls and lower bounds."""

import argparse
import sys
from collections import Counter

from triedge.graph import non_triangular_subgraph, tr_count
from triedge.search import enumerate_graphs
from triedge.simplex import NotApplicable, ReductionStalled, WeightVector, reduce_triangular, theorem7_bound


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=7)
    args = ap.parse_args()
    kinds, stalls, runs, slack = Counter(), 0, 0, []
    for n in range(2, args.max_n + 1):
        for g in enumerate_graphs(n):
            g2 = non_triangular_subgraph(g)
            if g2.edge_count == 0:
                continue
            runs += 1
            try:
                _, _, trace = reduce_triangular(g, g2, WeightVector.uniform(n))
            except ReductionStalled:
                stalls += 1
                continue
            kinds.update(m.kind for m in trace.moves)
            try:
                bound, _ = theorem7_bound(g)
                slack.append(tr_count(g) - bound)
            except NotApplicable:
                pass
    print(f"runs={runs} stalls={stalls}")
    for k, v in sorted(kinds.items()):
        print(f"  {k}: {v}")
    if slack:
        print(f"lower-bound slack: min={min(slack):.4f} max={max(slack):.4f} over {len(slack)} graphs")
    return 1 if stalls else 0


if __name__ == "__main__":
    sys.exit(main())
