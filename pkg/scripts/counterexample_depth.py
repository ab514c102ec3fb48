"""Run the dyadic chain checks at every depth and time them."""

import argparse
import time

from wkrull import counterexample as ce


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-depth", type=int, default=ce.MAX_DEPTH)
    args = ap.parse_args()
    for depth in range(1, args.max_depth + 1):
        t0 = time.perf_counter()
        res = ce.run_suite(depth)
        dt = time.perf_counter() - t0
        status = " ".join(f"{r.name}={'ok' if r.passed else 'FAIL'}" for r in res)
        print(f"depth {depth:2d}  {dt:6.3f}s  {status}")


if __name__ == "__main__":
    main()
