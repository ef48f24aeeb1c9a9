#!/usr/bin/env python3
"""Run the dually-bipartite matching extension for a range of s values
and report last Schlafli entries and group orders.

Usage: python3 scripts/db_extension_sweep.py [--b 3] [--c 1] [--smax 3]
"""

import argparse
import time

from chirex.extend_db import extend_dually_bipartite
from chirex.gpr import gpr_group
from chirex.toroidal import TorusParams, build_toroidal_map


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--family", default="44")
    ap.add_argument("--b", type=int, default=3)
    ap.add_argument("--c", type=int, default=1)
    ap.add_argument("--smax", type=int, default=3)
    ap.add_argument("--seed", type=int, default=None)
    args = ap.parse_args()

    p = TorusParams(args.family, args.b, args.c)
    K = build_toroidal_map(p)
    print("base map %s with %d flags" % (p, K.maniplex.num_flags))
    print("%3s %9s %11s %16s %7s" % ("s", "vertices", "last entry", "group order", "time"))
    for s in range(1, args.smax + 1):
        t0 = time.time()
        result = extend_dually_bipartite(K, s, seed=args.seed)
        order = gpr_group(result.graph).order()
        print("%3d %9d %11d %16d %6.1fs" % (
            s, result.graph.num_vertices, result.last_entry, order, time.time() - t0))


if __name__ == "__main__":
    main()
