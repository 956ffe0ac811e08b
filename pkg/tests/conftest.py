"""Shared test helpers: independent oracles and random structure generators."""

from __future__ import annotations

import itertools
import random

import numpy as np

from outdiv.domains import GsNode
from outdiv.rankings import pair_sign_matrix, cross_distances


def pairwise_swap_oracle(u, v) -> int:
    """O(m^2) pair-enumeration swap distance, independent of merge counting."""
    m = len(u)
    pos_u = {c: i for i, c in enumerate(u)}
    pos_v = {c: i for i, c in enumerate(v)}
    count = 0
    for a in range(m):
        for b in range(a + 1, m):
            if (pos_u[a] < pos_u[b]) != (pos_v[a] < pos_v[b]):
                count += 1
    return count


def all_distances_to(members, m) -> np.ndarray:
    """m! x |D| distance matrix via sign vectors (vectorized pair enumeration)."""
    xs = pair_sign_matrix(itertools.permutations(range(m)), m)
    ys = pair_sign_matrix(members, m)
    return cross_distances(xs, ys, m)


def random_gs_tree(labels, rng: random.Random) -> GsNode:
    """Random ordered GS-tree over the given leaf labels."""
    labels = list(labels)
    if len(labels) == 1:
        return GsNode(candidate=labels[0])
    n_children = rng.randint(2, len(labels))
    cuts = sorted(rng.sample(range(1, len(labels)), n_children - 1))
    blocks = []
    prev = 0
    for cut in cuts + [len(labels)]:
        blocks.append(labels[prev:cut])
        prev = cut
    return GsNode(children=tuple(random_gs_tree(b, rng) for b in blocks))


def random_tree_edges(m: int, rng: random.Random):
    """Random labeled tree: attach each vertex to a random earlier one."""
    return tuple((i, rng.randrange(i)) for i in range(1, m))


def shuffled(m: int, rng: random.Random):
    v = list(range(m))
    rng.shuffle(v)
    return tuple(v)
