#!/usr/bin/env python3
"""Regenerate the frozen oracle fixtures, or compare them with a fresh run.

    python3 scripts/regenerate_fixtures.py --check
    python3 scripts/regenerate_fixtures.py --write [--path out.json]
"""
import argparse
import json
import sys

from nijlie import oracle as O


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    g = ap.add_mutually_exclusive_group(required=True)
    g.add_argument("--check", action="store_true")
    g.add_argument("--write", action="store_true")
    ap.add_argument("--path", default=O.FIXTURE_PATH)
    a = ap.parse_args(argv)
    if a.write:
        fx = O.write_fixtures(a.path)
        print(json.dumps(fx, indent=2, sort_keys=True))
        return 0
    fresh, frozen = O.generate_fixtures(), O.load_fixtures(a.path)
    bad = sorted(k for k in set(fresh) | set(frozen) if fresh.get(k) != frozen.get(k))
    for k in bad:
        print(f"mismatch {k}: frozen={frozen.get(k)!r} fresh={fresh.get(k)!r}")
    print("fixtures ok" if not bad else f"{len(bad)} mismatches")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
