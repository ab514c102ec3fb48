"""How large the exact hull scan gets, and where the witnesses sit.

For each non-normal corpus monoid prints the facet thresholds, the size of
the piece boxes the scan walks, the first hull hole (if any) and its degree
relative to the default degree bound. Holes above the bound are the cases a
bounded search would have called weakly Krull.
"""

import argparse
from math import prod

from wkrull import corpus as cp
from wkrull import monoid as mn


def box_size(S):
    tables = [mn._facet_gaps(S, P) for P in mn.height_one_primes(S)]
    total = 0
    for rays, pts in S._pieces:
        caps = []
        for r in rays:
            cap = 0
            for t in tables:
                sv = mn.dot(t.sigma, r)
                if sv > 0:
                    cap = max(cap, -(-t.threshold // sv))
            caps.append(cap + 1)
        total += len(pts) * prod(caps)
    return [t.threshold for t in tables], total


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--count", type=int, default=50)
    args = ap.parse_args()
    beyond = 0
    for i, (d, g) in enumerate(cp.generate(cp.CorpusConfig(seed=args.seed, count=args.count))):
        S = mn.build(d, g)
        if S.dim < 2 or S.is_normal:
            continue
        thresholds, size = box_size(S)
        holes = mn.hull_holes(S)
        deg = S.degree(holes[0]) if holes else None
        flag = ""
        if deg is not None and deg > S.default_bound:
            beyond += 1
            flag = "  above default bound"
        print(f"{i:3d} dim {S.dim} thresholds {thresholds} box {size:8d} "
              f"hole {list(S.lift(holes[0])) if holes else None} deg {deg} bound {S.default_bound}{flag}")
    print(f"holes above the default bound: {beyond}")


if __name__ == "__main__":
    main()
