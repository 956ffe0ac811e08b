#!/usr/bin/env python3
"""Microscope inputs (member distance matrix + popularity) for the m=8
structured domains. Output: results/microscope/<family>/..."""

import sys

from outdiv.cli import main

FAMILIES = ["sp", "spoc", "spdf", "gscat", "gsbal", "sc"]

if __name__ == "__main__":
    base = sys.argv[1] if len(sys.argv) > 1 else "results/microscope"
    for family in FAMILIES:
        code = main(["microscope", "--family", family, "--m", "8",
                     "--seed", "0", "--out", f"{base}/{family}"])
        if code:
            raise SystemExit(code)
