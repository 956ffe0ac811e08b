"""Outer diversity: exact layer BFS, sampling, neighborhoods, popularity.

The exact route grows distance layers D_0, D_1, ... around the domain by
breadth-first search over adjacent transpositions; graph distance in
that search equals swap distance, so the layer sizes give the average
nearest-member distance in exact integer arithmetic. The sampled route
averages an oracle's swap(D, v) over uniform rankings.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .domains import DomainSpec, ResourceGuard, spec_m
from .distances import oracle_for
from .rankings import (
    Ranking,
    RankingSet,
    adjacent_transpositions,
    check_ranking,
    cross_distances,
    factorial,
    max_swaps,
    pair_sign_matrix,
    sample_ranking,
)

MAX_EXACT_M = 10
MAX_POPULARITY_M = 8


@dataclass
class DiversityReport:
    """ansd / out-div for one domain, exact or sampled."""

    m: int
    size: int
    ansd: float
    out_div: float
    ansd_exact: Fraction | None = None
    layers: list[int] | None = None
    n_samples: int | None = None
    repetitions: int | None = None
    estimates: list[float] | None = None
    std: float | None = None

    def to_dict(self) -> dict:
        out = {
            "m": self.m,
            "size": self.size,
            "ansd": self.ansd,
            "out_div": self.out_div,
        }
        if self.layers is not None:
            out["layers"] = self.layers
        if self.n_samples is not None:
            out.update(
                n_samples=self.n_samples,
                repetitions=self.repetitions,
                estimates=self.estimates,
                std=self.std,
            )
        return out


@dataclass
class PopularityTable:
    """Exact fractional popularity per member, ties split 1/p."""

    m: int
    members: list[Ranking]
    pop: list[Fraction]
    npop: list[Fraction]

    def max_members(self) -> list[Ranking]:
        top = max(self.npop)
        return [r for r, n in zip(self.members, self.npop) if n == top]


def _check_members(members: Sequence[Ranking]) -> int:
    if not members:
        raise ValueError("empty domain")
    m = len(members[0])
    seen = set()
    for r in members:
        check_ranking(r)
        if len(r) != m:
            raise ValueError("mixed ranking lengths")
        if r in seen:
            raise ValueError(f"duplicate member {r}")
        seen.add(r)
    return m


def distance_layers(members: Sequence[Ranking]) -> list[int]:
    """Sizes |D_0|, |D_1|, ... of the exact distance layers around D."""
    m = _check_members(members)
    if m > MAX_EXACT_M:
        raise ResourceGuard(f"exact BFS limited to m <= {MAX_EXACT_M}, got {m}")
    total = factorial(m)
    visited = RankingSet(m)
    frontier: list[Ranking] = []
    for r in members:
        visited.add(r)
        frontier.append(r)
    layers = [len(frontier)]
    while visited.count < total:
        nxt: list[Ranking] = []
        for v in frontier:
            for u in adjacent_transpositions(v):
                if visited.add(u):
                    nxt.append(u)
        layers.append(len(nxt))
        frontier = nxt
    return layers


def exact_outdiv(members: Sequence[Ranking]) -> DiversityReport:
    """Exact ansd / out-div for a listed domain via the layer BFS."""
    layers = distance_layers(members)
    m = len(members[0])
    weighted = sum(i * cnt for i, cnt in enumerate(layers))
    ansd = Fraction(weighted, factorial(m) * max_swaps(m)) if m > 1 else Fraction(0)
    return DiversityReport(
        m=m,
        size=len(members),
        ansd=float(ansd),
        out_div=float(1 - 2 * ansd),
        ansd_exact=ansd,
        layers=layers,
    )


def distance_histogram(members: Sequence[Ranking]) -> list[int]:
    """Alias of the exact layer vector, exported standalone for plotting."""
    return distance_layers(members)


def direct_neighborhood(members: Sequence[Ranking]) -> tuple[int, float]:
    """|D_1| and |D_1| / |D| (Table-2's last two columns)."""
    layers = distance_layers(members)
    d1 = layers[1] if len(layers) > 1 else 0
    return d1, d1 / len(members)


def sampled_outdiv(
    spec: DomainSpec,
    n_samples: int = 1000,
    reps: int = 10,
    seed: int = 0,
    oracle: Callable[[Sequence[int]], int] | None = None,
) -> DiversityReport:
    """Estimate out-div by averaging swap(D, v) over uniform rankings.

    Each repetition draws ``n_samples`` fresh rankings with its own
    derived seed; the report carries the per-repetition estimates, their
    mean and standard deviation.
    """
    m = spec_m(spec)
    if oracle is None:
        oracle = oracle_for(spec)
    c = max_swaps(m)
    estimates = []
    for rep in range(reps):
        rng = np.random.default_rng(seed + rep)
        total = 0
        for _ in range(n_samples):
            total += oracle(sample_ranking(m, rng))
        estimates.append(1.0 - 2.0 * total / (n_samples * c))
    mean = float(np.mean(estimates))
    std = float(np.std(estimates, ddof=1)) if reps > 1 else 0.0
    from .domains import predicted_size

    size = predicted_size(spec) or -1
    return DiversityReport(
        m=m,
        size=size,
        ansd=(1.0 - mean) / 2.0,
        out_div=mean,
        n_samples=n_samples,
        repetitions=reps,
        estimates=estimates,
        std=std,
    )


def pairwise_distance_matrix(members: Sequence[Ranking]) -> np.ndarray:
    """|D| x |D| swap distances (used by the microscope export)."""
    m = _check_members(members)
    signs = pair_sign_matrix(members, m)
    return cross_distances(signs, signs, m)


def popularity(members: Sequence[Ranking]) -> PopularityTable:
    """For each member, how many rankings have it as nearest member.

    Exact: all m! x |D| distances via one sign-matrix product, ties
    split as exact fractions 1/p. The total popularity mass is m!.
    """
    m = _check_members(members)
    if m > MAX_POPULARITY_M:
        raise ResourceGuard(f"popularity limited to m <= {MAX_POPULARITY_M}, got {m}")
    all_rankings = list(itertools.permutations(range(m)))
    xs = pair_sign_matrix(all_rankings, m)
    ys = pair_sign_matrix(members, m)
    dist = cross_distances(xs, ys, m)
    row_min = dist.min(axis=1)
    mask = dist == row_min[:, None]
    p = mask.sum(axis=1)
    pop = [Fraction(0)] * len(members)
    for tie_count in np.unique(p):
        rows = p == tie_count
        member_counts = mask[rows].sum(axis=0)
        for j, cnt in enumerate(member_counts):
            if cnt:
                pop[j] += Fraction(int(cnt), int(tie_count))
    assert sum(pop) == factorial(m)
    scale = Fraction(factorial(m), len(members))
    npop = [x / scale for x in pop]
    return PopularityTable(m=m, members=list(members), pop=pop, npop=npop)
