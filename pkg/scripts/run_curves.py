#!/usr/bin/env python3
"""Outer diversity as a function of the number of candidates.

Sampled (N=1000, 10 repetitions) for every cheap family over m=2..20;
SPOC is omitted at m=20 by default for cost, as in the reference
experiments. Output: results/curves/curve.csv.
"""

import sys

from outdiv.cli import main

if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else "results/curves"
    raise SystemExit(main([
        "curve",
        "--families", "sp,spoc,spdf,gscat,gsbal,sc,1d",
        "--m-range", "2:20",
        "--n-samples", "1000",
        "--reps", "10",
        "--seed", "0",
        "--out", out,
    ]))
