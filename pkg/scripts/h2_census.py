#!/usr/bin/env python3
"""dim H^2 for every Nijenhuis representation of small shape over F_p,
next to the oracle's class count (which should be p^dim)."""
import argparse
import collections
import sys

from nijlie import oracle as O
from nijlie.cohomology import compute_H2


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=2)
    ap.add_argument("--n", type=int, default=2, help="dim g")
    ap.add_argument("--m", type=int, default=1, help="dim V")
    ap.add_argument("--no-oracle", action="store_true", help="skip the class count")
    a = ap.parse_args(argv)
    hist = collections.Counter()
    bad = 0
    for ctx in O.abelian_contexts(a.p, a.n, a.m):
        _, _, R = O.to_main_context(ctx)
        d = compute_H2(R).dim
        hist[d] += 1
        if not a.no_oracle:
            classes = O.class_partition(ctx, O.enumerate_cocycles(ctx))
            if len(classes) != a.p ** d:
                bad += 1
                print(f"mismatch: dim H2 = {d}, classes = {len(classes)}")
    for d in sorted(hist):
        print(f"dim H2 = {d}: {hist[d]} contexts")
    print(f"{sum(hist.values())} contexts, {bad} mismatches")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
