#!/usr/bin/env python3
"""Most-diverse domain heuristics at m=8: IC, annealing, threshold-IC.

Emits the size-vs-outdiv CSV plus the first annealed domain per size,
with the structured m=8 domains overlaid for comparison.
Output: results/maxdiverse/sizes.csv.
"""

import sys

from outdiv.cli import main

if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else "results/maxdiverse"
    raise SystemExit(main([
        "maxdiverse",
        "--m", "8",
        "--methods", "ic,anneal,threshold",
        "--sizes", "2,4,8,16,32,64,128,256,512",
        "--thresholds", "5:25",
        "--reps", "10",
        "--seed", "0",
        "--overlay", "sp,spoc,spdf,gscat,gsbal,sc",
        "--out", out,
    ]))
