#!/usr/bin/env python3
"""Reproduce the eight-candidate diversity table.

Exact rows for the enumerable families, ten sampled instances for the
random ones. Output: results/table2/table2.csv (+ manifest).
"""

import sys

from outdiv.cli import main

if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else "results/table2"
    raise SystemExit(main(["table2", "--m", "8", "--reps", "10",
                           "--seed", "1000", "--out", out]))
