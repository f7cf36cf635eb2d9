"""Classify random uniform varieties and tally the verdict summaries."""

import argparse
import random
from collections import Counter

from toric_ara.analyze import analyze
from toric_ara.model import Variety, VarietyError


def random_variety(rng, n_max, d_max, entry_max):
    n, d = rng.randint(1, n_max), rng.randint(1, d_max)
    a = [rng.randint(0, entry_max) for _ in range(n)]
    b = [rng.randint(0, entry_max) for _ in range(n)]
    return Variety.uniform(d, a, b)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--kmax", type=int, default=8)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    tally, rejected = Counter(), 0
    done = 0
    while done < args.count:
        try:
            v = random_variety(rng, 4, 9, 12)
        except VarietyError:
            rejected += 1
            continue
        _, _, report = analyze(v, args.kmax)
        tally[report.summary()] += 1
        done += 1
    for summary, k in tally.most_common():
        print(f"{k:5d}  {summary}")
    print(f"({rejected} draws rejected by the variety invariants)")


if __name__ == "__main__":
    main()
