"""Cross-check the weakly Krull decider against the direct oracle over several seeds.

    python scripts/corpus_crossval.py --seeds 1 2 3 --count 50
"""

import argparse
import json
import time

from wkrull import corpus as cp


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seeds", type=int, nargs="+", default=[1])
    ap.add_argument("--count", type=int, default=50)
    ap.add_argument("--out")
    args = ap.parse_args()

    rows = []
    for seed in args.seeds:
        t0 = time.perf_counter()
        s = cp.run(cp.CorpusConfig(seed=seed, count=args.count))
        dt = time.perf_counter() - t0
        rows.append({"seed": seed, "count": s["count"], "definite": s["definite"],
                     "contradictions": s["contradictions"], "agreement": s["agreement"],
                     "seconds": round(dt, 2)})
        print(f"seed {seed:3d}  definite {s['definite']}/{s['count']}  "
              f"contradictions {s['contradictions']}  {dt:6.1f}s  {s['agreement']}")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
