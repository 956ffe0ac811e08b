#!/usr/bin/env python3
"""Report oracle setup cost and per-query cost separately.

The listed-domain oracles (single-crossing, Euclidean) front-load their
work into preprocessing, so quoting a single number would be
misleading; this prints both columns for each family at a given m.

Usage: python scripts/bench_oracles.py [m]
"""

import sys
import time

import numpy as np

from outdiv.distances import (
    build_listed_oracle,
    build_sp_tree_oracle,
    dist_gs_bal,
    dist_gs_cat,
    dist_sp,
    dist_spoc,
)
from outdiv.domains import sample_euclidean, sample_sc, sp_df_edges
from outdiv.rankings import sample_ranking


def bench(name, setup, n_queries, m, rng):
    t0 = time.perf_counter()
    query = setup()
    t_setup = time.perf_counter() - t0
    queries = [sample_ranking(m, rng) for _ in range(n_queries)]
    t0 = time.perf_counter()
    for v in queries:
        query(v)
    t_query = (time.perf_counter() - t0) / n_queries
    print(f"{name:18s} setup {t_setup * 1e3:9.2f} ms   query {t_query * 1e6:9.1f} us")


def main():
    m = int(sys.argv[1]) if len(sys.argv) > 1 else 8
    n = 2000 if m <= 16 else 50
    rng = np.random.default_rng(0)
    ident = tuple(range(m))
    print(f"m = {m}, {n} queries per oracle")
    bench("sp (path DP)", lambda: (lambda v: dist_sp(v, ident)), n, m, rng)
    bench("spoc (cycle DP)", lambda: (lambda v: dist_spoc(v, ident)), n, m, rng)
    if m >= 6:
        bench("spdf (tree DP)",
              lambda: build_sp_tree_oracle(m, sp_df_edges(m)).query, n, m, rng)
    bench("gs/cat", lambda: (lambda v: dist_gs_cat(v)), n, m, rng)
    bench("gs/bal", lambda: (lambda v: dist_gs_bal(v)), n, m, rng)
    bench("sc (listed)",
          lambda: build_listed_oracle(sample_sc(m, 0).rankings, shape="path").query,
          n, m, rng)
    if m <= 10:
        bench("2d (listed)",
              lambda: build_listed_oracle(
                  sample_euclidean(m, 2, 0).rankings, shape="tree").query,
              n, m, rng)


if __name__ == "__main__":
    main()
