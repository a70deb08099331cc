#!/usr/bin/env python3
"""Boundary-expansion scan of the axis test graphs.

Checks |boundary(S u T)| >= (d_L |S| + d_R |T|) / 8 for left subsets S with
|S| <= n/4 and arbitrary right subsets T: exhaustively on the 8-point
3-axis graph over [2]^3, and on 10^5 seeded random pairs over [3]^3.
"""

import argparse
import pathlib
import sys

from ltclab import run_expansion_check
from ltclab.reports import json_bytes
from ltclab.tanner import product_graph


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=20260808)
    parser.add_argument("--samples", type=int, default=10**5)
    parser.add_argument("--out", default="out/expansion_scan.json")
    args = parser.parse_args()

    exhaustive = run_expansion_check(product_graph(2, 3), mode="exhaustive")
    sampled = run_expansion_check(
        product_graph(3, 3), mode="sampled", samples=args.samples, seed=args.seed
    )

    out = pathlib.Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_bytes(
        json_bytes({"exhaustive": exhaustive["report"], "sampled": sampled["report"]})
    )

    for name, res in (("exhaustive", exhaustive), ("sampled", sampled)):
        r = res["report"]
        print(
            f"{name:10s}: graph={r['graph']} pairs={r['pairs_checked']} "
            f"violations={r['violations']} worst_slack={r['worst_slack']} "
            f"({res['wall_time']:.2f}s)"
        )
    print(f"report    : {out}")
    return max(exhaustive["exit_code"], sampled["exit_code"])


if __name__ == "__main__":
    sys.exit(main())
