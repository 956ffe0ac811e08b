"""Nearest-member swap distance oracles for the structured domains.

Every oracle answers ``min over u in D of swap_distance(u, v)`` for one
fixed domain D:

* path-restricted domains: two-phase dynamic program over (left, right)
  prefixes of the axis, O(m^2);
* cycle-restricted: the same program over cyclic intervals, O(m^2);
* tree-restricted: dynamic program over connected vertex sets, O(k m^k)
  for k tree leaves;
* group-separable trees: per-node orientation choice, O(m^2) in general
  and O(m log m) for the caterpillar (order-statistic counter) and the
  balanced tree (merge counting);
* listed domains (single-crossing, Euclidean): one base distance plus
  +/-1 propagation along a spanning structure whose edges are labeled by
  their single swapped pair, O(|D|) per query;
* ``dist_bruteforce``: the plain reference minimum, used as the oracle
  in every equivalence test.

The path/cycle programs are vectorized with numpy so single queries stay
usable up to m ~ 1000.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .domains import (
    DomainError,
    GsNode,
    ResourceGuard,
    sp_df_edges,
    tree_leaf_count,
    validate_gs_tree,
    _check_tree,
)
from .rankings import Ranking, positions, swap_distance

MAX_TREE_LEAVES = 5


class _PrefixCounter:
    """Fenwick-style counter over positions 0..m-1: point insert and
    count-below-p queries in O(log m)."""

    def __init__(self, m: int):
        self.m = m
        self.tree = [0] * (m + 1)

    def insert(self, p: int) -> None:
        i = p + 1
        while i <= self.m:
            self.tree[i] += 1
            i += i & (-i)

    def count_below(self, p: int) -> int:
        i = p
        total = 0
        while i > 0:
            total += self.tree[i]
            i -= i & (-i)
        return total


# ---------------------------------------------------------------------------
# Single-peaked on a path


def dist_sp(v: Sequence[int], axis: Sequence[int]) -> int:
    """Distance from v to the single-peaked domain over the given axis.

    Sweeps the (left, right) anti-diagonal of the prefix table: each
    entry is the cheapest way to push the outermost l axis candidates and
    the outermost r ones to the bottom of the vote.
    """
    m = len(axis)
    if len(v) != m:
        raise ValueError(f"ranking over {len(v)}, axis over {m}")
    if m == 1:
        return 0
    pos = positions(v)
    p = np.fromiter((pos[c] for c in axis), dtype=np.int64, count=m)
    below = (p[:, None] < p[None, :]).astype(np.int64)
    crow = np.cumsum(below, axis=1)
    selfpfx = crow[np.arange(m), np.arange(m)]

    # L(i, j) = candidates among axis[i..j] ranked below axis[i] (1-based i<=j)
    # R(j, i) = candidates among axis[j..i] ranked below axis[i]
    def l_terms(ls: np.ndarray, js: np.ndarray) -> np.ndarray:
        return crow[ls - 1, js - 1] - selfpfx[ls - 1]

    def r_terms(ls: np.ndarray, rs: np.ndarray) -> np.ndarray:
        # R(l+1, m+1-r) for vectors of l, r: anchored at axis[m-r]
        anchor = m - rs
        basecol = ls - 1
        base = np.where(basecol >= 0, crow[anchor, np.maximum(basecol, 0)], 0)
        return selfpfx[anchor] - base

    diag = np.zeros(1, dtype=np.int64)  # A[l][s-l] along the diagonal l+r=s
    for s in range(1, m):
        nxt = np.empty(s + 1, dtype=np.int64)
        ls = np.arange(1, s + 1)
        from_left = diag + l_terms(ls, m - s + ls)  # A[l-1][r] + L(l, m-r)
        rs = s - np.arange(0, s)
        from_right = diag + r_terms(np.arange(0, s), rs)  # A[l][r-1] + R(l+1, m+1-r)
        nxt[1:] = from_left
        nxt[0] = from_right[0]
        np.minimum(nxt[1:s], from_right[1:], out=nxt[1:s])
        diag = nxt
    return int(diag.min())


# ---------------------------------------------------------------------------
# Single-peaked on a circle


def dist_spoc(v: Sequence[int], cycle: Sequence[int]) -> int:
    """Distance from v to the single-peaked-on-a-circle domain.

    Same prefix program as the path case, but over cyclic intervals; the
    table is periodic in the interval's start, so one length-m vector per
    span suffices. Answer: best over intervals covering all but one
    candidate (the bottom one).
    """
    m = len(cycle)
    if len(v) != m:
        raise ValueError(f"ranking over {len(v)}, cycle over {m}")
    if m <= 2:
        return 0
    pos = positions(v)
    p = np.fromiter((pos[c] for c in cycle), dtype=np.int64, count=m)

    idx = (np.arange(m)[:, None] + np.arange(m)[None, :]) % m
    ahead_fwd = (p[idx] < p[:, None]).astype(np.int64)
    lt = np.cumsum(ahead_fwd, axis=1)  # Lt[t][j]: preferred over c_t in c_t..c_{t+j}

    idx_back = (np.arange(m)[:, None] - np.arange(m)[None, :]) % m
    ahead_back = (p[idx_back] < p[:, None]).astype(np.int64)
    ahead_back[:, 0] = 0
    rb = np.cumsum(ahead_back, axis=1)  # Rb[t][j]: preferred over c_t in j predecessors

    starts = np.arange(m)
    a = p.copy()  # span 1: distance contribution is c_i's position in v
    for r in range(1, m - 1):
        lterm = lt[(starts + r) % m, m - 1 - r]
        rterm = rb[starts, m - 1 - r]
        a = np.minimum(a + lterm, np.roll(a, -1) + rterm)
    return int(a.min())


# ---------------------------------------------------------------------------
# Single-peaked on a tree


@dataclass
class SpTreeOracle:
    """Preprocessed connected-set structure for one tree.

    ``sets`` is ordered largest-first (supersets before subsets); the
    v-independent skeleton (leaf recurrences and expansion transitions)
    is built once, so each query is a linear pass over it.
    """

    m: int
    sets: list[int]
    set_index: dict[int, int]
    # per (set, leaf) pair, in increasing-size order: how to build I
    i_entries: list[tuple[int, int, int, int]]  # (set_idx, x, ref_entry, y_ref)
    i_lookup: dict[tuple[int, int], int]
    # per set (decreasing size): (parent_set_idx, I entry of the added leaf)
    transitions: list[list[tuple[int, int]]]
    singleton_entries: list[int]

    def query(self, v: Sequence[int]) -> int:
        if len(v) != self.m:
            raise ValueError(f"ranking over {len(v)}, tree over {self.m}")
        pos = positions(v)
        ivals = [0] * len(self.i_entries)
        for e, (_, x, ref, y_ref) in enumerate(self.i_entries):
            if ref >= 0:
                ivals[e] = ivals[ref] + (1 if pos[x] < pos[y_ref] else 0)
        a = [0] * len(self.sets)
        for si in range(1, len(self.sets)):
            best = None
            for parent_idx, i_entry in self.transitions[si]:
                cand = a[parent_idx] + ivals[i_entry]
                if best is None or cand < best:
                    best = cand
            a[si] = best
        return min(a[si] for si in self.singleton_entries)


def build_sp_tree_oracle(m: int, edges: Sequence[tuple[int, int]]) -> SpTreeOracle:
    adj = _check_tree(m, edges)
    k = tree_leaf_count(m, edges)
    if k > MAX_TREE_LEAVES:
        raise ResourceGuard(f"tree has {k} leaves; oracle limited to {MAX_TREE_LEAVES}")

    full = (1 << m) - 1
    neighbor_mask = [0] * m
    for x in range(m):
        for y in adj[x]:
            neighbor_mask[x] |= 1 << y

    # enumerate all connected sets by peeling induced leaves off the full set
    seen = {full}
    order = [full]
    head = 0
    while head < len(order):
        s = order[head]
        head += 1
        if s.bit_count() == 1:
            continue
        for x in _bits(s):
            if (neighbor_mask[x] & s).bit_count() == 1:
                t = s & ~(1 << x)
                if t not in seen:
                    seen.add(t)
                    order.append(t)
    sets = sorted(seen, key=lambda s: (-s.bit_count(), s))
    set_index = {s: i for i, s in enumerate(sets)}

    def induced_leaves(s: int) -> list[int]:
        if s.bit_count() == 1:
            return list(_bits(s))
        return [x for x in _bits(s) if (neighbor_mask[x] & s).bit_count() == 1]

    # I entries in increasing set size so the recurrence refs are ready
    i_entries: list[tuple[int, int, int, int]] = []
    i_lookup: dict[tuple[int, int], int] = {}
    for s in sorted(seen, key=lambda s: (s.bit_count(), s)):
        si = set_index[s]
        leaves = induced_leaves(s)
        for x in leaves:
            if s.bit_count() == 1:
                i_entries.append((si, x, -1, -1))
            else:
                y_ref = next(y for y in leaves if y != x)
                ref = i_lookup[(set_index[s & ~(1 << y_ref)], x)]
                i_entries.append((si, x, ref, y_ref))
            i_lookup[(si, x)] = len(i_entries) - 1

    transitions: list[list[tuple[int, int]]] = [[] for _ in sets]
    for s in seen:
        if s == full:
            continue
        si = set_index[s]
        outside_attached = set()
        for x in _bits(s):
            outside_attached.update(_bits(neighbor_mask[x] & ~s))
        for y in outside_attached:
            parent = s | (1 << y)
            pi = set_index[parent]
            transitions[si].append((pi, i_lookup[(pi, y)]))

    singleton_entries = [set_index[1 << c] for c in range(m)]
    return SpTreeOracle(
        m=m,
        sets=sets,
        set_index=set_index,
        i_entries=i_entries,
        i_lookup=i_lookup,
        transitions=transitions,
        singleton_entries=singleton_entries,
    )


def _bits(mask: int):
    while mask:
        low = mask & (-mask)
        yield low.bit_length() - 1
        mask ^= low


def dist_sp_tree(v: Sequence[int], m: int, edges: Sequence[tuple[int, int]]) -> int:
    """One-shot tree distance; build the oracle once when querying many."""
    return build_sp_tree_oracle(m, edges).query(v)


# ---------------------------------------------------------------------------
# Group-separable


def dist_gs(v: Sequence[int], tree: GsNode) -> int:
    """Distance to GS(tree): per internal node, orient its children to the
    cheaper of the two block orders; pairs across children are counted at
    exactly one node."""
    m = validate_gs_tree(tree)
    if len(v) != m:
        raise ValueError(f"ranking over {len(v)}, tree over {m}")
    pos = positions(v)
    total = 0

    def walk(node: GsNode) -> list[int]:
        nonlocal total
        if node.is_leaf:
            return [pos[node.candidate]]
        blocks = [walk(ch) for ch in node.children]
        straight = 0
        pairs = 0
        for i in range(len(blocks)):
            for j in range(i + 1, len(blocks)):
                pairs += len(blocks[i]) * len(blocks[j])
                for pa in blocks[i]:
                    for pb in blocks[j]:
                        if pb < pa:  # v ranks the j-block candidate higher
                            straight += 1
        total += min(straight, pairs - straight)
        merged: list[int] = []
        for b in blocks:
            merged.extend(b)
        return merged

    walk(tree)
    return total


def dist_gs_cat(v: Sequence[int]) -> int:
    """Caterpillar distance in O(m log m): walk leaves from the deepest
    node up, keeping processed positions in a prefix counter."""
    m = len(v)
    if m <= 1:
        return 0
    pos = positions(v)
    counter = _PrefixCounter(m)
    counter.insert(pos[m - 1])
    total = 0
    for c in range(m - 2, -1, -1):
        t = m - 1 - c
        inv = counter.count_below(pos[c])
        total += min(inv, t - inv)
        counter.insert(pos[c])
    return total


def dist_gs_bal(v: Sequence[int]) -> int:
    """Balanced-tree distance in O(m log m) by merge counting.

    Each merge counts the cross-block pairs ordered against the frontier
    and charges the cheaper orientation, then returns the block's
    candidates in v-order.
    """
    m = len(v)
    if m <= 1:
        return 0
    pos = positions(v)
    total = 0

    def solve(block: list[int]) -> list[int]:
        nonlocal total
        if len(block) == 1:
            return [pos[block[0]]]
        half = (len(block) + 1) // 2
        left = solve(block[:half])
        right = solve(block[half:])
        inv = 0
        merged: list[int] = []
        i = j = 0
        while i < len(left) and j < len(right):
            if left[i] < right[j]:
                merged.append(left[i])
                i += 1
            else:
                inv += len(left) - i
                merged.append(right[j])
                j += 1
        merged.extend(left[i:])
        merged.extend(right[j:])
        total += min(inv, len(left) * len(right) - inv)
        return merged

    solve(list(range(m)))
    return total


# ---------------------------------------------------------------------------
# Listed domains (single-crossing, Euclidean, any explicit list)


@dataclass
class ListedOracle:
    """Member list plus a spanning structure with single-swap edges.

    ``labels[i]`` is the unique candidate pair on which member i and its
    parent disagree; queries propagate one base distance along the edges.
    """

    members: list[Ranking]
    parents: list[int]
    labels: list[tuple[int, int]]  # (a, b) with a ahead of b in members[i]

    def query(self, v: Sequence[int]) -> int:
        pos = positions(v)
        dist = [0] * len(self.members)
        dist[0] = swap_distance(self.members[0], v)
        best = dist[0]
        for i in range(1, len(self.members)):
            a, b = self.labels[i]
            d = dist[self.parents[i]] + (1 if pos[a] > pos[b] else -1)
            dist[i] = d
            if d < best:
                best = d
        return best

    def all_distances(self, v: Sequence[int]) -> list[int]:
        pos = positions(v)
        dist = [0] * len(self.members)
        dist[0] = swap_distance(self.members[0], v)
        for i in range(1, len(self.members)):
            a, b = self.labels[i]
            dist[i] = dist[self.parents[i]] + (1 if pos[a] > pos[b] else -1)
        return dist


class StructureError(ValueError):
    """Member list does not admit the requested spanning structure."""


def _swapped_pair(child: Ranking, parent: Ranking) -> tuple[int, int]:
    """The unique pair ordered (a, b) in child but (b, a) in parent."""
    diffs = [i for i in range(len(child)) if child[i] != parent[i]]
    if len(diffs) != 2 or diffs[1] != diffs[0] + 1:
        raise StructureError("members differ by more than one adjacent swap")
    i = diffs[0]
    if (child[i], child[i + 1]) != (parent[i + 1], parent[i]):
        raise StructureError("members are not a single transposition apart")
    return child[i], child[i + 1]


def build_listed_oracle(members: Sequence[Ranking], shape: str = "tree") -> ListedOracle:
    """Spanning path (generation order) or DFS spanning tree over the
    swap-distance-1 graph of the member list."""
    members = list(members)
    if not members:
        raise ValueError("empty member list")
    if shape == "path":
        parents = [0] + list(range(len(members) - 1))
        labels = [(-1, -1)]
        for i in range(1, len(members)):
            labels.append(_swapped_pair(members[i], members[i - 1]))
        return ListedOracle(members=members, parents=parents, labels=labels)
    if shape != "tree":
        raise ValueError(f"shape must be 'path' or 'tree', got {shape!r}")

    index = {r: i for i, r in enumerate(members)}
    m = len(members[0])
    order = [0]
    parents_by_node = {0: 0}
    stack = [0]
    seen = {0}
    while stack:
        i = stack.pop()
        r = members[i]
        for t in range(m - 1):
            u = r[:t] + (r[t + 1], r[t]) + r[t + 2:]
            j = index.get(u)
            if j is not None and j not in seen:
                seen.add(j)
                parents_by_node[j] = i
                order.append(j)
                stack.append(j)
    if len(seen) != len(members):
        raise StructureError(
            f"swap-distance-1 graph is disconnected: reached {len(seen)} of {len(members)}"
        )
    ordered_members = [members[i] for i in order]
    new_pos = {i: k for k, i in enumerate(order)}
    parents = [0] * len(order)
    labels: list[tuple[int, int]] = [(-1, -1)]
    for k in range(1, len(order)):
        i = order[k]
        parents[k] = new_pos[parents_by_node[i]]
        labels.append(_swapped_pair(ordered_members[k], ordered_members[parents[k]]))
    return ListedOracle(members=ordered_members, parents=parents, labels=labels)


# ---------------------------------------------------------------------------
# Reference oracle


def dist_bruteforce(members: Sequence[Ranking], v: Sequence[int]) -> int:
    """Exact minimum of swap_distance over an explicit member list."""
    if not members:
        raise ValueError("empty member list")
    return min(swap_distance(u, v) for u in members)


# ---------------------------------------------------------------------------
# Dispatch


def oracle_for(spec) -> Callable[[Sequence[int]], int]:
    """A swap(D, .) evaluator for the given domain spec.

    General single-peaked graphs get no fast oracle (the problem is
    NP-complete); small ones fall back to brute force over the
    enumerated domain, large ones are refused.
    """
    from . import domains as dm

    if isinstance(spec, dm.SpAxis):
        axis = spec.axis
        return lambda v: dist_sp(v, axis)
    if isinstance(spec, dm.Spoc):
        cycle = spec.cycle
        return lambda v: dist_spoc(v, cycle)
    if isinstance(spec, dm.SpDf):
        oracle = build_sp_tree_oracle(spec.m, sp_df_edges(spec.m))
        return oracle.query
    if isinstance(spec, dm.SpTree):
        oracle = build_sp_tree_oracle(spec.m, spec.edges)
        return oracle.query
    if isinstance(spec, dm.GsCat):
        return dist_gs_cat
    if isinstance(spec, dm.GsBal):
        return dist_gs_bal
    if isinstance(spec, dm.GsTreeSpec):
        tree = spec.tree
        return lambda v: dist_gs(v, tree)
    if isinstance(spec, dm.SingleCrossing):
        members = dm.sample_sc(spec.m, spec.seed).rankings
        return build_listed_oracle(members, shape="path").query
    if isinstance(spec, dm.Euclidean):
        members = dm.sample_euclidean(spec.m, spec.d, spec.seed).rankings
        return build_listed_oracle(members, shape="tree").query
    if isinstance(spec, dm.Explicit):
        members = spec.rankings
        try:
            return build_listed_oracle(members, shape="tree").query
        except StructureError:
            return lambda v: dist_bruteforce(members, v)
    if isinstance(spec, dm.FourAlignment):
        members = dm.enumerate_domain(spec)
        return lambda v: dist_bruteforce(members, v)
    if isinstance(spec, dm.SpGraph):
        # no fast oracle exists for general graphs; small ones fall back
        # to brute force over the enumerated domain
        if spec.m > 8:
            raise ResourceGuard(
                f"general SP-graph at m={spec.m}: enumeration-backed fallback capped at m=8"
            )
        members = dm.enumerate_domain(spec)
        return lambda v: dist_bruteforce(members, v)
    raise DomainError(f"no oracle for {type(spec).__name__}")
