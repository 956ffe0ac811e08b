"""Outer diversity of ordinal preference domains."""

__version__ = "0.1.0"

from .rankings import (
    Ranking,
    RankingSet,
    adjacent_transpositions,
    enumerate_all,
    max_swaps,
    reverse,
    swap_distance,
)
from .domains import (
    DomainError,
    DomainSpec,
    Euclidean,
    Explicit,
    FourAlignment,
    GsBal,
    GsCat,
    GsNode,
    GsTreeSpec,
    ResourceGuard,
    SingleCrossing,
    SpAxis,
    SpDf,
    SpGraph,
    SpTree,
    Spoc,
    balanced_tree,
    build_sp_df,
    caterpillar_tree,
    enumerate_domain,
    four_alignment,
    is_member,
    read_domain_file,
    sample_euclidean,
    sample_sc,
    write_domain_file,
)
from .distances import (
    ListedOracle,
    StructureError,
    build_listed_oracle,
    build_sp_tree_oracle,
    dist_bruteforce,
    dist_gs,
    dist_gs_bal,
    dist_gs_cat,
    dist_sp,
    dist_sp_tree,
    dist_spoc,
    oracle_for,
)
from .diversity import (
    DiversityReport,
    PopularityTable,
    direct_neighborhood,
    distance_histogram,
    exact_outdiv,
    popularity,
    sampled_outdiv,
)
from .maxdiverse import (
    AnnealingParams,
    exact_kmedian,
    export_kmedian_lp,
    fp_radius,
    ic_domain,
    k1c_radius,
    simulated_annealing,
    threshold_ic,
)
