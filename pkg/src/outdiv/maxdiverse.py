"""Search for the most diverse domain of a given size.

The optimum is a k-median of the metric space of all rankings under
swap distance. Exact answers are only feasible for tiny candidate sets
(subset enumeration, cut down by the relabeling symmetry); beyond that
three heuristics are provided: plain uniform sampling (IC), simulated
annealing over single-member swaps, and threshold-filtered IC. The
standard binary-program formulation can be exported for external
solvers.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .domains import ResourceGuard
from .rankings import (
    Ranking,
    cross_distances,
    factorial,
    max_swaps,
    pair_sign_matrix,
    sample_ranking,
    swap_distance,
)

ENERGY_POOL_SIZE = 5000
EXACT_ENERGY_MAX_M = 8


@dataclass(frozen=True)
class AnnealingParams:
    initial_temperature: float = 0.5
    cooling_rate: float = 0.95
    max_iterations: int = 256
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.cooling_rate < 1:
            raise ValueError(f"cooling rate must be in (0,1), got {self.cooling_rate}")


def ic_domain(m: int, k: int, seed: int = 0) -> list[Ranking]:
    """k distinct rankings sampled uniformly (impartial culture)."""
    total = factorial(m)
    if k > total:
        raise ValueError(f"k={k} exceeds m!={total}")
    rng = np.random.default_rng(seed)
    members: list[Ranking] = []
    seen = set()
    while len(members) < k:
        r = sample_ranking(m, rng)
        if r not in seen:
            seen.add(r)
            members.append(r)
    return members


def exact_energy(members: Sequence[Ranking], m: int) -> float:
    """out-div computed exactly over all m! rankings (guarded to m <= 8)."""
    if m > EXACT_ENERGY_MAX_M:
        raise ResourceGuard(f"exact energy limited to m <= {EXACT_ENERGY_MAX_M}")
    xs = pair_sign_matrix(itertools.permutations(range(m)), m)
    ys = pair_sign_matrix(members, m)
    dist = cross_distances(xs, ys, m)
    mean_min = dist.min(axis=1).mean()
    return float(1.0 - 2.0 * mean_min / max_swaps(m))


class _EnergyPool:
    """Fixed evaluation pool: all rankings for m <= 6, else a seeded
    uniform sample. Holds the pool-to-member distance matrix so a
    single-member swap costs one matrix column."""

    def __init__(self, m: int, members: Sequence[Ranking], rng: np.random.Generator):
        self.m = m
        self.c = max_swaps(m)
        if m <= 6:
            pool = list(itertools.permutations(range(m)))
        else:
            pool = [sample_ranking(m, rng) for _ in range(ENERGY_POOL_SIZE)]
        self.pool_signs = pair_sign_matrix(pool, m)
        member_signs = pair_sign_matrix(members, m)
        self.dist = cross_distances(self.pool_signs, member_signs, m).astype(np.float32)

    def energy(self) -> float:
        return float(1.0 - 2.0 * self.dist.min(axis=1).mean() / self.c)

    def column_for(self, r: Ranking) -> np.ndarray:
        signs = pair_sign_matrix([r], self.m)
        return cross_distances(self.pool_signs, signs, self.m)[:, 0].astype(np.float32)

    def swap_member(self, j: int, col: np.ndarray) -> np.ndarray:
        old = self.dist[:, j].copy()
        self.dist[:, j] = col
        return old

    def restore(self, j: int, col: np.ndarray) -> None:
        self.dist[:, j] = col


def simulated_annealing(
    m: int,
    k: int,
    params: AnnealingParams | None = None,
    initial: Sequence[Ranking] | None = None,
) -> list[Ranking]:
    """Anneal single-member swaps; returns the best set seen.

    Moves replace a uniformly chosen member with a fresh IC sample
    (duplicates are redrawn). Worse moves are accepted with probability
    exp((E_new - E_current) / T); T starts at the configured initial
    temperature and decays geometrically each iteration. The best set is
    never worse than the initial one (IC by default).
    """
    params = params or AnnealingParams()
    rng = np.random.default_rng(params.seed)
    total = factorial(m)
    if k > total:
        raise ValueError(f"k={k} exceeds m!={total}")
    if initial is not None:
        if len(set(initial)) != k:
            raise ValueError(f"initial set must hold {k} distinct rankings")
        current = list(initial)
    else:
        current = ic_domain(m, k, seed=int(rng.integers(2**63)))
    if k == total:
        return current
    pool = _EnergyPool(m, current, rng)
    cur_e = pool.energy()
    best = list(current)
    best_e = cur_e
    member_set = set(current)
    temp = params.initial_temperature
    for _ in range(params.max_iterations):
        j = int(rng.integers(k))
        incoming = None
        for _ in range(100):
            r = sample_ranking(m, rng)
            if r not in member_set:
                incoming = r
                break
        if incoming is None:
            temp *= params.cooling_rate
            continue
        old_col = pool.swap_member(j, pool.column_for(incoming))
        new_e = pool.energy()
        accept = new_e >= cur_e or rng.random() < math.exp((new_e - cur_e) / temp)
        if accept:
            member_set.discard(current[j])
            member_set.add(incoming)
            current[j] = incoming
            cur_e = new_e
            if cur_e > best_e:
                best_e = cur_e
                best = list(current)
        else:
            pool.restore(j, old_col)
        temp *= params.cooling_rate
    return best


def threshold_ic(m: int, t: int, seed: int = 0, budget: int = 10**4) -> list[Ranking]:
    """Greedy threshold filter over a stream of IC samples.

    Keeps a sample iff it is new and at swap distance >= t from every
    ranking kept so far. The resulting size is not controllable.
    """
    if not 0 <= t <= max_swaps(m):
        raise ValueError(f"threshold {t} outside 0..{max_swaps(m)}")
    rng = np.random.default_rng(seed)
    kept: list[Ranking] = []
    kept_set: set[Ranking] = set()
    kept_signs: list[np.ndarray] = []
    chunk = 512
    drawn = 0
    while drawn < budget:
        n = min(chunk, budget - drawn)
        drawn += n
        samples = [sample_ranking(m, rng) for _ in range(n)]
        signs = pair_sign_matrix(samples, m)
        if kept_signs:
            base = cross_distances(signs, np.vstack(kept_signs), m).min(axis=1)
        else:
            base = np.full(n, max_swaps(m) + 1, dtype=np.int64)
        within = cross_distances(signs, signs, m)
        accepted_local: list[int] = []
        for i, r in enumerate(samples):
            if r in kept_set:
                continue
            d = int(base[i])
            if accepted_local:
                d = min(d, int(within[i, accepted_local].min()))
            if d >= t:
                kept.append(r)
                kept_set.add(r)
                accepted_local.append(i)
        for i in accepted_local:
            kept_signs.append(signs[i : i + 1])
    return kept


# ---------------------------------------------------------------------------
# Exact k-median for tiny instances


def _full_distance_matrix(m: int) -> tuple[list[Ranking], np.ndarray]:
    rankings = list(itertools.permutations(range(m)))
    signs = pair_sign_matrix(rankings, m)
    return rankings, cross_distances(signs, signs, m).astype(np.int64)


def exact_kmedian(m: int, k: int) -> tuple[list[Ranking], float]:
    """Provably optimal size-k domain and its out-div.

    Candidate relabeling is a swap-distance isometry acting transitively
    on rankings, so some optimal set contains the identity; enumeration
    runs over the remaining k-1 members only. Guarded to m <= 4 (any
    k <= 5) and m <= 6 with k <= 3.
    """
    total = factorial(m)
    if k < 1 or k > total:
        raise ValueError(f"k={k} outside 1..{total}")
    if not ((m <= 4 and k <= 5) or (m <= 6 and k <= 3) or k == total):
        raise ResourceGuard(f"exact k-median infeasible for m={m}, k={k}")
    rankings, dist = _full_distance_matrix(m)
    if k == total:
        return rankings, 1.0

    d0 = dist[0]
    n = total
    best_obj = None
    best_set: tuple[int, ...] = (0,)
    if k == 1:
        best_obj = int(d0.sum())
        best_set = (0,)
    elif k == 2:
        objs = np.minimum(d0[None, :], dist[1:]).sum(axis=1)
        a = int(objs.argmin())
        best_obj = int(objs[a])
        best_set = (0, a + 1)
    elif k == 3:
        for a in range(1, n - 1):
            base = np.minimum(d0, dist[a])
            objs = np.minimum(base[None, :], dist[a + 1 :]).sum(axis=1)
            b = int(objs.argmin())
            obj = int(objs[b])
            if best_obj is None or obj < best_obj:
                best_obj = obj
                best_set = (0, a, a + 1 + b)
    else:
        for rest in itertools.combinations(range(1, n), k - 1):
            idx = (0,) + rest
            obj = int(dist[list(idx)].min(axis=0).sum())
            if best_obj is None or obj < best_obj:
                best_obj = obj
                best_set = idx
    ansd = Fraction(best_obj, total * max_swaps(m))
    members = [rankings[i] for i in best_set]
    return members, float(1 - 2 * ansd)


def export_kmedian_lp(m: int, k: int, path) -> None:
    """Write the k-median binary program in LP text format.

    Variables y_i (ranking i selected) and x_i_j (ranking j assigned to
    ranking i); rankings indexed in lexicographic order. Intended for
    external solvers; the file has Theta((m!)^2) terms, so m is capped
    at 6.
    """
    if m > 6:
        raise ResourceGuard(f"LP export limited to m <= 6, got {m}")
    total = factorial(m)
    if not 1 <= k <= total:
        raise ValueError(f"k={k} outside 1..{total}")
    _, dist = _full_distance_matrix(m)
    n = total
    lines = [f"\\ k-median over all {n} rankings of {m} candidates, k={k}"]
    lines.append("Minimize")
    terms = [
        f"{dist[i, j]} x_{i}_{j}"
        for i in range(n)
        for j in range(n)
        if dist[i, j]
    ]
    lines.append(" obj: " + _wrap_sum(terms))
    lines.append("Subject To")
    for j in range(n):
        terms = [f"x_{i}_{j}" for i in range(n)]
        lines.append(f" assign_{j}: " + _wrap_sum(terms) + " = 1")
    for i in range(n):
        for j in range(n):
            lines.append(f" link_{i}_{j}: x_{i}_{j} - y_{i} <= 0")
    lines.append(" count: " + _wrap_sum([f"y_{i}" for i in range(n)]) + f" = {k}")
    lines.append("Binary")
    names = [f"y_{i}" for i in range(n)]
    names.extend(f"x_{i}_{j}" for i in range(n) for j in range(n))
    for start in range(0, len(names), 20):
        lines.append(" " + " ".join(names[start : start + 20]))
    lines.append("End")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def _wrap_sum(terms: list[str]) -> str:
    return " + ".join(terms)


# ---------------------------------------------------------------------------
# Largest-gap radii


def fp_radius(members: Sequence[Ranking], x: Sequence[int]) -> int:
    """Radius of the largest member-free ball centered at x (-1 if x in D)."""
    if not members:
        raise ValueError("empty domain")
    return min(swap_distance(u, x) for u in members) - 1


def k1c_radius(members: Sequence[Ranking], x: Sequence[int]) -> int:
    """Radius of the smallest ball at x containing the whole domain."""
    if not members:
        raise ValueError("empty domain")
    return max(swap_distance(u, x) for u in members)
