#!/usr/bin/env python3
"""Sweep toroidal maps and tabulate size, symmetry type and whether a
dually-bipartite facet colouring exists.

Usage: python3 scripts/torus_sweep.py [--max 4] [--family 44]
"""

import argparse

from chirex.maniplex import classify_symmetry, dually_bipartite_colouring, schlafli
from chirex.toroidal import FAMILIES, TorusParams, build_toroidal_map, regular_quotient


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--max", type=int, default=4, help="sweep |b|, |c| up to this")
    ap.add_argument("--family", choices=FAMILIES, default=None)
    args = ap.parse_args()

    families = (args.family,) if args.family else FAMILIES
    print("%-14s %6s %8s %-8s %3s %8s" %
          ("map", "flags", "type", "symmetry", "db", "quotient"))
    for family in families:
        for b in range(0, args.max + 1):
            for c in range(0, args.max + 1):
                if (b, c) == (0, 0):
                    continue
                p = TorusParams(family, b, c)
                rooted = build_toroidal_map(p)
                man = rooted.maniplex
                db = dually_bipartite_colouring(man, rooted.base_flag) is not None
                quo = regular_quotient(p)
                print("%-14s %6d %8s %-8s %3s %8s" % (
                    p, man.num_flags, schlafli(rooted),
                    classify_symmetry(rooted).value,
                    "yes" if db else "no",
                    str(quo.params) if quo else "-"))


if __name__ == "__main__":
    main()
