#!/usr/bin/env python3
"""Headline robustness sweep: the 3-axis tester of RS[31,1,31]^3 over GF(31).

The base code's fractional distance satisfies ((d-1)/n)^3 = (30/31)^3 > 7/8,
the regime in which the axis tester carries a worst-case robustness constant
of 2^-16.  This script certifies a 1000-word mixed corpus at that constant
and records the (much larger) empirical minimum ratio.

Writes out/robustness_sweep.json; rerunning with the same seed reproduces the
file byte for byte.
"""

import argparse
import pathlib
import sys
from fractions import Fraction

from ltclab import ExperimentConfig, product_instance, run_sweep
from ltclab.code import reed_solomon
from ltclab.field import Field
from ltclab.reports import json_bytes


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=20260808)
    parser.add_argument("--words", type=int, default=1000)
    parser.add_argument("--out", default="out/robustness_sweep.json")
    args = parser.parse_args()

    base = reed_solomon(Field(31), 31, 1)
    instance = product_instance(base, 3)
    config = ExperimentConfig(
        graph_spec="product:n=31,m=3",
        small_spec="rs:q=31,n=31,k=1^2",
        corpus=f"mixed:{args.words}",
        seed=args.seed,
        alpha=Fraction(1, 2**16),
    )
    result = run_sweep(config, instance=instance)

    out = pathlib.Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_bytes(json_bytes(result.document()))

    s = result.summary
    print(f"instance        : {s['instance']}")
    print(f"words           : {s['words']}  (corpus {s['corpus']}, seed {s['seed']})")
    print(f"alpha           : {s['alpha']}")
    print(f"violations      : {s['violations']}")
    print(f"min rho/delta   : {s['min_ratio']}  (~{s['min_ratio_decimal']})")
    print(f"hypotheses      : {s['hypotheses']}")
    print(f"wall time       : {result.wall_time:.2f}s")
    print(f"report          : {out}")
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
