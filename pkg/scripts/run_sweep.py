#!/usr/bin/env python3
"""Exhaustive F_p sweep: every extension on g + h for the given shapes,
with the Wells verdicts compared to brute-force lift enumeration."""
import argparse
import sys
import time

from nijlie import oracle as O


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=2)
    ap.add_argument("--shapes", default="1x1,2x1,1x2")
    ap.add_argument("--kind", choices=("aut", "der", "both"), default="both")
    a = ap.parse_args(argv)
    shapes = [tuple(int(x) for x in s.split("x")) for s in a.shapes.split(",")]
    kinds = ("aut", "der") if a.kind == "both" else (a.kind,)
    status = 0
    for kind in kinds:
        t0 = time.time()
        tot, n = {}, 0
        for inst in O.sweep(a.p, shapes):
            if kind == "der" and inst.ctx.Ch.any():
                continue      # derivation inducibility is for abelian kernels
            r = O.exhaustive_inducibility_crosscheck(inst.ctx, inst.cocycle, kind)
            n += 1
            for k, v in r.items():
                tot[k] = tot.get(k, 0) + v
        print(f"{kind}: {n} extensions, " + ", ".join(f"{k}={v}" for k, v in sorted(tot.items()))
              + f"  ({time.time() - t0:.1f}s)")
        status |= bool(tot.get("disagreements"))
    return int(status)


if __name__ == "__main__":
    sys.exit(main())
