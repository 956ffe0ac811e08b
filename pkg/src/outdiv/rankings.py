"""Permutation primitives: rankings, swap distance, enumeration, indexing.

A ranking over ``m`` candidates is a tuple holding a permutation of
``0..m-1``, read top to bottom: ``r[0]`` is the most-preferred candidate.
All candidate naming lives at file-format boundaries; everything in here
is plain index arithmetic.

>>> swap_distance((0, 1, 2), (1, 2, 0))
2
>>> reverse((0, 1, 2))
(2, 1, 0)
"""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Iterator, Sequence

import numpy as np

Ranking = tuple[int, ...]

MAX_ENUM_M = 12


def check_ranking(r: Sequence[int]) -> Ranking:
    """Validate that ``r`` is a permutation of 0..m-1 and return it as a tuple."""
    t = tuple(r)
    m = len(t)
    if m < 1 or sorted(t) != list(range(m)):
        raise ValueError(f"not a permutation of 0..{m - 1}: {t!r}")
    return t


def positions(r: Sequence[int]) -> list[int]:
    """Inverse permutation: ``positions(r)[c]`` is the position of candidate c."""
    pos = [0] * len(r)
    for i, c in enumerate(r):
        pos[c] = i
    return pos


def max_swaps(m: int) -> int:
    """Largest possible swap distance between two rankings over m candidates."""
    return m * (m - 1) // 2


def _merge_count(seq: list[int]) -> int:
    """Number of inversions in ``seq``, counted by merge sort."""
    n = len(seq)
    if n < 2:
        return 0
    mid = n // 2
    left, right = seq[:mid], seq[mid:]
    inv = _merge_count(left) + _merge_count(right)
    merged = []
    i = j = 0
    while i < len(left) and j < len(right):
        if left[i] <= right[j]:
            merged.append(left[i])
            i += 1
        else:
            merged.append(right[j])
            j += 1
            inv += len(left) - i
    merged.extend(left[i:])
    merged.extend(right[j:])
    seq[:] = merged
    return inv


def swap_distance(u: Sequence[int], v: Sequence[int]) -> int:
    """Number of candidate pairs that u and v order oppositely (Kendall's tau).

    Relabels v through u's positions and counts inversions by merge sort,
    O(m log m).
    """
    if len(u) != len(v):
        raise ValueError(f"rankings over different sizes: {len(u)} vs {len(v)}")
    pos_u = positions(u)
    relabeled = [pos_u[c] for c in v]
    return _merge_count(relabeled)


def reverse(v: Sequence[int]) -> Ranking:
    """The ranking listing v's candidates bottom-to-top; antipodal to v."""
    return tuple(reversed(v))


def enumerate_all(m: int) -> Iterator[Ranking]:
    """Yield all m! rankings in lexicographic order.

    Guarded to m <= 12: beyond that the stream is unusable at desk scale.
    """
    if not 1 <= m <= MAX_ENUM_M:
        raise ValueError(f"m must be in 1..{MAX_ENUM_M}, got {m}")
    return itertools.permutations(range(m))


def adjacent_transpositions(v: Sequence[int]) -> Iterator[Ranking]:
    """Yield the m-1 rankings at swap distance exactly 1 from v."""
    t = tuple(v)
    for i in range(len(t) - 1):
        yield t[:i] + (t[i + 1], t[i]) + t[i + 2:]


class RankingSet:
    """Membership index over rankings of a fixed length m.

    Backed by a hash set of tuples: the per-probe cost is O(m) (tuple
    hashing), matching a prefix-tree index, with far less constant
    overhead in Python. Single writer; reads after construction are safe
    from any thread.
    """

    def __init__(self, m: int):
        self.m = m
        self._members: set[Ranking] = set()

    def add(self, r: Sequence[int]) -> bool:
        """Insert r; returns True if it was new. Idempotent on the count."""
        t = tuple(r)
        if len(t) != self.m:
            raise ValueError(f"expected length {self.m}, got {len(t)}")
        if t in self._members:
            return False
        self._members.add(t)
        return True

    def __contains__(self, r: Sequence[int]) -> bool:
        return tuple(r) in self._members

    def __len__(self) -> int:
        return len(self._members)

    @property
    def count(self) -> int:
        return len(self._members)


# Pair order used by every sign-vector encoding in the package.
def candidate_pairs(m: int) -> list[tuple[int, int]]:
    """All unordered candidate pairs (a, b), a < b, in lexicographic order."""
    return [(a, b) for a in range(m) for b in range(a + 1, m)]


def pair_sign_matrix(rankings: Iterable[Sequence[int]], m: int) -> np.ndarray:
    """Encode rankings as +/-1 vectors over candidate pairs.

    Row r, column (a, b) is +1 when r ranks a ahead of b. For two rows
    x, y the swap distance is ``(C(m,2) - x.y) / 2``, which turns bulk
    all-pairs distance computations into a single matrix product.
    """
    rows = list(rankings)
    pos = np.empty((len(rows), m), dtype=np.int32)
    for i, r in enumerate(rows):
        for p, c in enumerate(r):
            pos[i, c] = p
    idx_a, idx_b = zip(*candidate_pairs(m)) if m >= 2 else ((), ())
    a = np.fromiter(idx_a, dtype=np.int64, count=len(idx_a))
    b = np.fromiter(idx_b, dtype=np.int64, count=len(idx_b))
    signs = np.where(pos[:, a] < pos[:, b], 1, -1).astype(np.float32)
    return signs


def cross_distances(xs: np.ndarray, ys: np.ndarray, m: int) -> np.ndarray:
    """All-pairs swap distances between two sign-matrix encodings."""
    c = max_swaps(m)
    dots = xs @ ys.T
    return np.rint((c - dots) / 2).astype(np.int32)


def sample_ranking(m: int, rng: np.random.Generator) -> Ranking:
    """One uniform ranking (Fisher-Yates, via the supplied generator)."""
    return tuple(int(x) for x in rng.permutation(m))


def factorial(m: int) -> int:
    return math.factorial(m)
