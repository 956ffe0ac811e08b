"""Structured preference domains: constructors, enumerators, membership.

Each domain family is described by a small frozen dataclass (the spec of
the domain, not its member list). ``enumerate_domain`` materializes the
member list, ``is_member`` answers membership without enumeration where
the family allows it.

Families: single-peaked on a path / cycle / tree / graph, the
double-forked tree, group-separable trees (general, caterpillar,
balanced), sampled single-crossing, Euclidean in 1-3 dimensions,
explicit lists, and the block-aligned hardness fixture.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np
from scipy.optimize import linprog

from .rankings import (
    Ranking,
    check_ranking,
    enumerate_all,
    max_swaps,
    positions,
    reverse,
)

MAX_DOMAIN_SIZE = 10**8

# Euclidean feasibility thresholds: a ranking's cell must have margin
# above FEASIBLE_EPS to count as nonempty; an accepted cell with maximal
# margin below DEGENERATE_EPS signals a near-degenerate point set.
FEASIBLE_EPS = 1e-9
DEGENERATE_EPS = 1e-7
BOX_BOUND = 10.0


class DomainError(ValueError):
    """Malformed domain specification."""


class ResourceGuard(RuntimeError):
    """Request exceeds the configured desk-scale limits."""


# ---------------------------------------------------------------------------
# GS-trees


@dataclass(frozen=True)
class GsNode:
    """Node of an ordered group-separable tree.

    A leaf carries a candidate index; an internal node carries >= 2
    children. Reading leaves left to right gives the frontier.
    """

    candidate: int | None = None
    children: tuple["GsNode", ...] = ()

    @property
    def is_leaf(self) -> bool:
        return self.candidate is not None

    def leaves(self) -> list[int]:
        if self.is_leaf:
            return [self.candidate]
        out: list[int] = []
        for ch in self.children:
            out.extend(ch.leaves())
        return out

    def frontier(self) -> Ranking:
        return tuple(self.leaves())

    def internal_count(self) -> int:
        if self.is_leaf:
            return 0
        return 1 + sum(ch.internal_count() for ch in self.children)


def validate_gs_tree(tree: GsNode, m: int | None = None) -> int:
    """Check leaf labels form a permutation of 0..m-1; return m."""
    leaves = tree.leaves()
    if m is None:
        m = len(leaves)
    if sorted(leaves) != list(range(m)):
        raise DomainError(f"GS-tree leaves are not 0..{m - 1}: {leaves}")

    def walk(node: GsNode) -> None:
        if node.is_leaf:
            if node.children:
                raise DomainError("leaf with children")
            return
        if len(node.children) < 2:
            raise DomainError("internal GS node with fewer than 2 children")
        for ch in node.children:
            walk(ch)

    walk(tree)
    return m


def caterpillar_tree(m: int, order: Sequence[int] | None = None) -> GsNode:
    """Binary caterpillar: each internal node has a leaf child; the leaf
    nearest the root is order[0]."""
    if order is None:
        order = range(m)
    order = list(order)
    if m == 1:
        return GsNode(candidate=order[0])
    node = GsNode(children=(GsNode(candidate=order[-2]), GsNode(candidate=order[-1])))
    for c in reversed(order[:-2]):
        node = GsNode(children=(GsNode(candidate=c), node))
    return node


def balanced_tree(m: int, order: Sequence[int] | None = None) -> GsNode:
    """Balanced binary tree; for m not a power of two the left subtree
    takes ceil(k/2) leaves, so leaf depths differ by at most one."""
    if order is None:
        order = range(m)
    order = list(order)

    def build(block: list[int]) -> GsNode:
        if len(block) == 1:
            return GsNode(candidate=block[0])
        half = (len(block) + 1) // 2
        return GsNode(children=(build(block[:half]), build(block[half:])))

    return build(order)


# ---------------------------------------------------------------------------
# Domain specs


@dataclass(frozen=True)
class SpAxis:
    """Single-peaked with respect to a path (the societal axis)."""

    axis: Ranking

    @property
    def m(self) -> int:
        return len(self.axis)


@dataclass(frozen=True)
class Spoc:
    """Single-peaked on a circle, given as the cyclic candidate order."""

    cycle: Ranking

    @property
    def m(self) -> int:
        return len(self.cycle)


@dataclass(frozen=True)
class SpTree:
    """Single-peaked with respect to a tree over the candidates."""

    m: int
    edges: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class SpGraph:
    """Single-peaked with respect to an arbitrary connected graph."""

    m: int
    edges: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class GsTreeSpec:
    """Group-separable domain given by an explicit GS-tree."""

    tree: GsNode

    @property
    def m(self) -> int:
        return len(self.tree.leaves())


@dataclass(frozen=True)
class GsCat:
    """Group-separable, caterpillar tree in identity leaf order."""

    m: int


@dataclass(frozen=True)
class GsBal:
    """Group-separable, balanced tree in identity leaf order."""

    m: int


@dataclass(frozen=True)
class SpDf:
    """Single-peaked double-forked tree: a path with two pendant leaves
    at each end."""

    m: int


@dataclass(frozen=True)
class SingleCrossing:
    """Sampled single-crossing domain (sampler seed determines members)."""

    m: int
    seed: int


@dataclass(frozen=True)
class Euclidean:
    """Rankings induced by distance to m fixed points in [-1,1]^d."""

    m: int
    d: int
    seed: int
    points: tuple[tuple[float, ...], ...] = field(default=(), compare=True)


@dataclass(frozen=True)
class Explicit:
    """An explicit, duplicate-free member list."""

    rankings: tuple[Ranking, ...]

    @property
    def m(self) -> int:
        return len(self.rankings[0])


@dataclass(frozen=True)
class FourAlignment:
    """Four re-indexed copies of every base ranking, concatenated."""

    base_m: int

    @property
    def m(self) -> int:
        return 4 * self.base_m


DomainSpec = (
    SpAxis | Spoc | SpTree | SpGraph | GsTreeSpec | GsCat | GsBal | SpDf
    | SingleCrossing | Euclidean | Explicit | FourAlignment
)


def spec_m(spec: DomainSpec) -> int:
    return spec.m


# ---------------------------------------------------------------------------
# Graph helpers


def _adjacency(m: int, edges: Sequence[tuple[int, int]]) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(m)]
    for a, b in edges:
        if not (0 <= a < m and 0 <= b < m) or a == b:
            raise DomainError(f"bad edge ({a},{b}) for m={m}")
        adj[a].append(b)
        adj[b].append(a)
    return adj


def _check_connected(m: int, adj: list[list[int]]) -> None:
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != m:
        raise DomainError("graph is not connected")


def _check_tree(m: int, edges: Sequence[tuple[int, int]]) -> list[list[int]]:
    adj = _adjacency(m, edges)
    if len(edges) != m - 1:
        raise DomainError(f"tree over {m} vertices needs {m - 1} edges, got {len(edges)}")
    _check_connected(m, adj)
    return adj


def sp_df_edges(m: int) -> tuple[tuple[int, int], ...]:
    """Double-forked tree: path 2..m-3 with pendant leaves {0,1} at the
    front and {m-2, m-1} at the back."""
    if m < 6:
        raise DomainError(f"double-forked tree needs m >= 6, got {m}")
    edges = [(0, 2), (1, 2), (m - 2, m - 3), (m - 1, m - 3)]
    edges.extend((i, i + 1) for i in range(2, m - 3))
    return tuple(edges)


def build_sp_df(m: int) -> SpTree:
    return SpTree(m=m, edges=sp_df_edges(m))


def tree_leaf_count(m: int, edges: Sequence[tuple[int, int]]) -> int:
    adj = _adjacency(m, edges)
    if m == 1:
        return 1
    return sum(1 for nb in adj if len(nb) == 1)


# ---------------------------------------------------------------------------
# Predicted sizes and enumeration


def predicted_size(spec: DomainSpec) -> int | None:
    """Closed-form size where the family has one; None otherwise."""
    m = spec.m
    if isinstance(spec, SpAxis):
        return 2 ** (m - 1)
    if isinstance(spec, Spoc):
        return m * 2 ** (m - 2) if m >= 2 else 1
    if isinstance(spec, SpDf):
        return 2 ** (m + 1) - 16
    if isinstance(spec, (GsCat, GsBal)):
        return 2 ** (m - 1)
    if isinstance(spec, GsTreeSpec):
        return 2 ** spec.tree.internal_count()
    if isinstance(spec, SingleCrossing):
        return 1 + m * (m - 1) // 2
    if isinstance(spec, Explicit):
        return len(spec.rankings)
    if isinstance(spec, FourAlignment):
        return math.factorial(spec.base_m)
    return None


def _enum_sp_graph(m: int, adj: list[list[int]]) -> Iterator[Ranking]:
    """All rankings whose every prefix induces a connected subgraph."""
    prefix: list[int] = []
    in_prefix = [False] * m

    def extend() -> Iterator[Ranking]:
        if len(prefix) == m:
            yield tuple(prefix)
            return
        if not prefix:
            candidates = range(m)
        else:
            candidates = sorted(
                {y for x in prefix for y in adj[x] if not in_prefix[y]}
            )
        for c in candidates:
            prefix.append(c)
            in_prefix[c] = True
            yield from extend()
            prefix.pop()
            in_prefix[c] = False

    yield from extend()


def _enum_gs(tree: GsNode) -> Iterator[Ranking]:
    """All frontiers over per-node child reversals (2^#internal, distinct)."""

    def frontiers(node: GsNode) -> Iterator[tuple[int, ...]]:
        if node.is_leaf:
            yield (node.candidate,)
            return
        child_lists = [list(frontiers(ch)) for ch in node.children]

        def combine(blocks: list[list[tuple[int, ...]]]) -> Iterator[tuple[int, ...]]:
            if len(blocks) == 1:
                yield from blocks[0]
                return
            for head in blocks[0]:
                for tail in combine(blocks[1:]):
                    yield head + tail

        for flipped in (False, True):
            order = child_lists[::-1] if flipped else child_lists
            yield from combine(order)

    # Reversing a node with identically-ordered frontier blocks would
    # duplicate; distinct leaf labels make every orientation distinct,
    # except the degenerate single-leaf tree.
    if tree.is_leaf:
        yield (tree.candidate,)
        return
    yield from frontiers(tree)


def _enum_spoc(cycle: Sequence[int]) -> Iterator[Ranking]:
    """Top-down: the top-t candidates always form a cyclic interval."""
    m = len(cycle)
    if m == 1:
        yield (cycle[0],)
        return
    for start in range(m):
        # interval [lo..hi] as offsets around the cycle from `start`
        def extend(vote: list[int], lo: int, hi: int) -> Iterator[Ranking]:
            if len(vote) == m:
                yield tuple(vote)
                return
            remaining = m - len(vote)
            if remaining == 1:
                c = cycle[(start + lo - 1) % m]
                yield tuple(vote) + (c,)
                return
            left = cycle[(start + lo - 1) % m]
            yield from extend(vote + [left], lo - 1, hi)
            right = cycle[(start + hi + 1) % m]
            yield from extend(vote + [right], lo, hi + 1)

        yield from extend([cycle[start]], 0, 0)


def enumerate_domain(spec: DomainSpec) -> list[Ranking]:
    """Materialize the domain's member list, duplicate-free.

    Closed-form sizes are checked after generation; a predicted size
    above the desk-scale bound is rejected up front.
    """
    size = predicted_size(spec)
    if size is not None and size > MAX_DOMAIN_SIZE:
        raise ResourceGuard(f"predicted size {size} exceeds {MAX_DOMAIN_SIZE}")
    m = spec.m

    if isinstance(spec, SpAxis):
        check_ranking(spec.axis)
        edges = tuple((spec.axis[i], spec.axis[i + 1]) for i in range(m - 1))
        members = list(_enum_sp_graph(m, _adjacency(m, edges)))
    elif isinstance(spec, Spoc):
        check_ranking(spec.cycle)
        members = list(_enum_spoc(spec.cycle))
    elif isinstance(spec, (SpTree, SpDf)):
        edges = sp_df_edges(m) if isinstance(spec, SpDf) else spec.edges
        adj = _check_tree(m, edges)
        members = list(_enum_sp_graph(m, adj))
    elif isinstance(spec, SpGraph):
        adj = _adjacency(m, spec.edges)
        _check_connected(m, adj)
        members = list(_enum_sp_graph(m, adj))
    elif isinstance(spec, GsTreeSpec):
        validate_gs_tree(spec.tree)
        members = list(_enum_gs(spec.tree))
    elif isinstance(spec, GsCat):
        members = list(_enum_gs(caterpillar_tree(m)))
    elif isinstance(spec, GsBal):
        members = list(_enum_gs(balanced_tree(m)))
    elif isinstance(spec, SingleCrossing):
        members = list(sample_sc(m, spec.seed).rankings)
    elif isinstance(spec, Euclidean):
        members = list(sample_euclidean(m, spec.d, spec.seed).rankings)
    elif isinstance(spec, Explicit):
        seen = set()
        for r in spec.rankings:
            check_ranking(r)
            if r in seen:
                raise DomainError(f"duplicate member {r}")
            seen.add(r)
        members = list(spec.rankings)
    elif isinstance(spec, FourAlignment):
        members = [
            _concat_blocks(u, 4) for u in enumerate_all(spec.base_m)
        ]
    else:
        raise DomainError(f"unknown spec {spec!r}")

    if size is not None and len(members) != size:
        raise AssertionError(
            f"{type(spec).__name__}: enumerated {len(members)} members, expected {size}"
        )
    return members


def _concat_blocks(u: Sequence[int], copies: int) -> Ranking:
    base = len(u)
    out: list[int] = []
    for i in range(copies):
        out.extend(i * base + c for c in u)
    return tuple(out)


def four_alignment(base_m: int) -> FourAlignment:
    if base_m < 1 or 4 * base_m > 16:
        raise DomainError(f"base_m must satisfy 1 <= base_m <= 4, got {base_m}")
    return FourAlignment(base_m=base_m)


# ---------------------------------------------------------------------------
# Membership


def _prefix_is_cyclic_interval(pos_on_cycle: list[int], m: int) -> bool:
    k = len(pos_on_cycle)
    if k in (0, m):
        return True
    on = [False] * m
    for p in pos_on_cycle:
        on[p] = True
    adjacent = sum(1 for p in pos_on_cycle if on[(p + 1) % m])
    return adjacent == k - 1


def is_member(spec: DomainSpec, v: Sequence[int]) -> bool:
    """Does ranking v belong to the domain described by spec?"""
    v = check_ranking(v)
    m = spec.m
    if len(v) != m:
        raise ValueError(f"ranking over {len(v)} candidates, domain over {m}")

    if isinstance(spec, SpAxis):
        axis_pos = positions(spec.axis)
        lo = hi = axis_pos[v[0]]
        for c in v[1:]:
            p = axis_pos[c]
            if p == lo - 1:
                lo = p
            elif p == hi + 1:
                hi = p
            else:
                return False
        return True

    if isinstance(spec, Spoc):
        cyc_pos = positions(spec.cycle)
        prefix: list[int] = []
        for c in v[:-1]:
            prefix.append(cyc_pos[c])
            if not _prefix_is_cyclic_interval(prefix, m):
                return False
        return True

    if isinstance(spec, (SpTree, SpDf, SpGraph)):
        if isinstance(spec, SpDf):
            edges = sp_df_edges(m)
        else:
            edges = spec.edges
        adj = _adjacency(m, edges)
        in_prefix = [False] * m
        in_prefix[v[0]] = True
        for c in v[1:]:
            if not any(in_prefix[y] for y in adj[c]):
                return False
            in_prefix[c] = True
        return True

    if isinstance(spec, GsTreeSpec):
        return _gs_member(spec.tree, positions(v))
    if isinstance(spec, GsCat):
        return _gs_cat_member(v)
    if isinstance(spec, GsBal):
        return _gs_member(balanced_tree(m), positions(v))

    if isinstance(spec, (SingleCrossing, Euclidean, Explicit, FourAlignment)):
        if isinstance(spec, Euclidean):
            pts = euclidean_points(spec)
            return cell_margin_lp(pts, v) > FEASIBLE_EPS
        if isinstance(spec, FourAlignment):
            return _four_alignment_member(spec.base_m, v)
        members = (
            spec.rankings
            if isinstance(spec, Explicit)
            else tuple(enumerate_domain(spec))
        )
        return v in set(members)

    raise DomainError(f"unknown spec {spec!r}")


def _gs_member(node: GsNode, pos: list[int]) -> bool:
    """Per internal node: child position ranges must be disjoint and run in
    frontier order or its exact reverse."""

    def walk(nd: GsNode) -> tuple[int, int, bool]:
        if nd.is_leaf:
            p = pos[nd.candidate]
            return p, p, True
        spans = []
        ok = True
        for ch in nd.children:
            lo, hi, good = walk(ch)
            spans.append((lo, hi))
            ok = ok and good
        if not ok:
            return min(s[0] for s in spans), max(s[1] for s in spans), False
        forward = all(spans[i][1] < spans[i + 1][0] for i in range(len(spans) - 1))
        backward = all(spans[i][0] > spans[i + 1][1] for i in range(len(spans) - 1))
        return (
            min(s[0] for s in spans),
            max(s[1] for s in spans),
            forward or backward,
        )

    return walk(node)[2]


def _gs_cat_member(v: Sequence[int]) -> bool:
    """Caterpillar membership: indices rise to m-1, then fall."""
    m = len(v)
    peak = v.index(m - 1)
    rising = all(v[i] < v[i + 1] for i in range(peak))
    falling = all(v[i] > v[i + 1] for i in range(peak, m - 1))
    return rising and falling


def _four_alignment_member(base_m: int, v: Sequence[int]) -> bool:
    blocks = [v[i * base_m:(i + 1) * base_m] for i in range(4)]
    for i, block in enumerate(blocks):
        if not all(i * base_m <= c < (i + 1) * base_m for c in block):
            return False
    base = [c - 0 * base_m for c in blocks[0]]
    return all(
        [c - i * base_m for c in blocks[i]] == base for i in range(1, 4)
    )


# ---------------------------------------------------------------------------
# Single-crossing sampler


def sample_sc(m: int, seed: int, start: Ranking | None = None) -> Explicit:
    """Sample a single-crossing domain of exactly 1 + C(m,2) rankings.

    Starting from the identity ranking, repeatedly swap a uniformly
    chosen adjacent pair that has not been swapped before; after C(m,2)
    steps every pair has crossed exactly once and the final ranking is
    the reverse of the first. (This sampler is NOT uniform over
    single-crossing domains; no polynomial uniform sampler is known.)
    """
    if m < 2:
        raise DomainError(f"single-crossing sampler needs m >= 2, got {m}")
    rng = np.random.default_rng(seed)
    vote = list(start) if start is not None else list(range(m))
    members = [tuple(vote)]
    swapped: set[tuple[int, int]] = set()
    for _ in range(max_swaps(m)):
        options = [
            i
            for i in range(m - 1)
            if _pair_key(vote[i], vote[i + 1]) not in swapped
        ]
        i = options[int(rng.integers(len(options)))]
        swapped.add(_pair_key(vote[i], vote[i + 1]))
        vote[i], vote[i + 1] = vote[i + 1], vote[i]
        members.append(tuple(vote))
    assert members[-1] == reverse(members[0])
    return Explicit(rankings=tuple(members))


def _pair_key(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


# ---------------------------------------------------------------------------
# Euclidean domains


def euclidean_points(spec: Euclidean) -> np.ndarray:
    if spec.points:
        return np.asarray(spec.points, dtype=float)
    rng = np.random.default_rng(spec.seed)
    return rng.uniform(-1.0, 1.0, size=(spec.m, spec.d))


def _cell_constraints(pts: np.ndarray, v: Sequence[int]) -> tuple[np.ndarray, np.ndarray]:
    """Half-space form of v's preference cell, rows normalized to unit norm.

    x prefers a to b iff |x-a| < |x-b| iff 2(b-a).x < |b|^2 - |a|^2; by
    transitivity the m-1 consecutive-pair constraints suffice.
    """
    a = pts[np.asarray(v[:-1])]
    b = pts[np.asarray(v[1:])]
    g = 2.0 * (b - a)
    h = (b * b).sum(axis=1) - (a * a).sum(axis=1)
    norms = np.linalg.norm(g, axis=1)
    if np.any(norms < 1e-12):
        raise DomainError("coincident candidate points")
    return g / norms[:, None], h / norms


def point_margin(pts: np.ndarray, v: Sequence[int], x: np.ndarray) -> float:
    """Worst constraint slack of point x inside v's cell (clipped by the box)."""
    g, h = _cell_constraints(pts, v)
    slack = float(np.min(h - g @ x))
    box = float(BOX_BOUND - np.max(np.abs(x)))
    return min(slack, box)


def cell_margin_lp(pts: np.ndarray, v: Sequence[int]) -> float:
    """Maximal margin of v's cell within the bounding box (LP; <=0 if empty)."""
    g, h = _cell_constraints(pts, v)
    d = pts.shape[1]
    n = g.shape[0]
    c = np.zeros(d + 1)
    c[-1] = -1.0
    a_ub = np.hstack([g, np.ones((n, 1))])
    bounds = [(-BOX_BOUND, BOX_BOUND)] * d + [(None, None)]
    res = linprog(c, A_ub=a_ub, b_ub=h, bounds=bounds, method="highs")
    if res.status != 0:
        return -math.inf
    return -res.fun


def _arrangement_cell_bound(n_planes: int, d: int) -> int:
    return sum(math.comb(n_planes, i) for i in range(d + 1))


class _DegeneratePoints(Exception):
    pass


def _enumerate_cells(pts: np.ndarray, m: int, d: int, rng: np.random.Generator) -> list[Ranking]:
    """BFS over adjacent transpositions restricted to nonempty cells.

    Seeds come from rankings realized at 200*m random voter points. A
    cheap certificate (witness point carried along the search, reflected
    across the crossed bisector) avoids most LP solves; the LP decides
    the boundary cases and certifies emptiness.
    """
    status: dict[Ranking, bool] = {}
    witness: dict[Ranking, np.ndarray] = {}
    queue: list[Ranking] = []

    def classify(v: Ranking, guess: np.ndarray | None) -> bool:
        known = status.get(v)
        if known is not None:
            return known
        feasible = False
        if guess is not None:
            margin = point_margin(pts, v, guess)
            if margin >= DEGENERATE_EPS:
                feasible = True
                witness[v] = guess
        if not feasible:
            margin = cell_margin_lp(pts, v)
            if margin > FEASIBLE_EPS:
                if margin < DEGENERATE_EPS:
                    raise _DegeneratePoints()
                feasible = True
        status[v] = feasible
        if feasible:
            queue.append(v)
        return feasible

    for _ in range(200 * m):
        x = rng.uniform(-2.0, 2.0, size=d)
        dist2 = ((pts - x) ** 2).sum(axis=1)
        v = tuple(int(c) for c in np.argsort(dist2, kind="stable"))
        if v not in status:
            classify(v, x)

    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        w = witness.get(v)
        for i in range(m - 1):
            u = v[:i] + (v[i + 1], v[i]) + v[i + 2:]
            if u in status:
                continue
            guess = None
            if w is not None:
                # reflect the witness across the bisector of the swapped pair
                a, b = pts[v[i]], pts[v[i + 1]]
                g = 2.0 * (b - a)
                nrm = np.linalg.norm(g)
                if nrm >= 1e-12:
                    gu = g / nrm
                    hu = float((b @ b - a @ a) / nrm)
                    guess = w - 2.0 * (gu @ w - hu) * gu
            classify(u, guess)

    members = sorted(r for r, ok in status.items() if ok)
    lower = 1 + max_swaps(m)
    upper = _arrangement_cell_bound(max_swaps(m), d)
    if not lower <= len(members) <= upper:
        raise _DegeneratePoints()
    if d == 1 and len(members) != lower:
        raise _DegeneratePoints()
    return members


def sample_euclidean(m: int, d: int, seed: int) -> Explicit:
    """Sample candidate points in [-1,1]^d and enumerate the induced domain.

    Near-degenerate point sets (coincident points, cells with margin in
    the ambiguous band) are resampled, up to 100 attempts.
    """
    if m < 2:
        raise DomainError(f"Euclidean domain needs m >= 2, got {m}")
    if d not in (1, 2, 3):
        raise DomainError(f"dimension must be 1, 2 or 3, got {d}")
    rng = np.random.default_rng(seed)
    for _ in range(100):
        pts = rng.uniform(-1.0, 1.0, size=(m, d))
        if len(np.unique(pts, axis=0)) != m:
            continue
        try:
            members = _enumerate_cells(pts, m, d, rng)
        except (_DegeneratePoints, DomainError):
            continue
        return Explicit(rankings=tuple(members))
    raise DomainError("could not sample a non-degenerate Euclidean point set")


def euclidean_spec_with_points(m: int, d: int, seed: int) -> Euclidean:
    """An Euclidean spec carrying its sampled points (for serialization)."""
    rng = np.random.default_rng(seed)
    pts = rng.uniform(-1.0, 1.0, size=(m, d))
    return Euclidean(m=m, d=d, seed=seed, points=tuple(map(tuple, pts.tolist())))


# ---------------------------------------------------------------------------
# File formats


def format_ranking(r: Sequence[int]) -> str:
    return " ".join(str(c) for c in r)


def parse_ranking(line: str) -> Ranking:
    return check_ranking(int(tok) for tok in line.split())


def write_domain_file(path, members: Sequence[Ranking], family: str = "explicit") -> None:
    m = len(members[0])
    with open(path, "w") as fh:
        fh.write(f"# m={m} family={family}\n")
        for r in members:
            fh.write(format_ranking(r) + "\n")


def read_domain_file(path) -> tuple[str, list[Ranking]]:
    family = "explicit"
    members: list[Ranking] = []
    m = None
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                for tok in line[1:].split():
                    if tok.startswith("m="):
                        m = int(tok[2:])
                    elif tok.startswith("family="):
                        family = tok[7:]
                continue
            members.append(parse_ranking(line))
    if not members:
        raise DomainError(f"no rankings in {path}")
    if m is not None and len(members[0]) != m:
        raise DomainError(f"header says m={m}, rankings have length {len(members[0])}")
    seen = set()
    for r in members:
        if r in seen:
            raise DomainError(f"duplicate ranking {r} in {path}")
        seen.add(r)
    return family, members


def spec_to_record(spec: DomainSpec) -> str:
    """One-line key=value serialization of a domain spec."""
    if isinstance(spec, SpAxis):
        return f"family=sp axis={','.join(map(str, spec.axis))}"
    if isinstance(spec, Spoc):
        return f"family=spoc cycle={','.join(map(str, spec.cycle))}"
    if isinstance(spec, SpDf):
        return f"family=spdf m={spec.m}"
    if isinstance(spec, SpTree):
        edges = ";".join(f"{a},{b}" for a, b in spec.edges)
        return f"family=sptree m={spec.m} edges={edges}"
    if isinstance(spec, SpGraph):
        edges = ";".join(f"{a},{b}" for a, b in spec.edges)
        return f"family=spgraph m={spec.m} edges={edges}"
    if isinstance(spec, GsCat):
        return f"family=gscat m={spec.m}"
    if isinstance(spec, GsBal):
        return f"family=gsbal m={spec.m}"
    if isinstance(spec, SingleCrossing):
        return f"family=sc m={spec.m} seed={spec.seed}"
    if isinstance(spec, Euclidean):
        rec = f"family=euclidean m={spec.m} d={spec.d} seed={spec.seed}"
        if spec.points:
            pts = ";".join(",".join(repr(x) for x in p) for p in spec.points)
            rec += f" points={pts}"
        return rec
    if isinstance(spec, FourAlignment):
        return f"family=fouralign base_m={spec.base_m}"
    raise DomainError(f"no record form for {type(spec).__name__}")


def spec_from_record(record: str) -> DomainSpec:
    fields = dict(tok.split("=", 1) for tok in record.split())
    family = fields.pop("family")
    if family == "sp":
        return SpAxis(axis=tuple(int(x) for x in fields["axis"].split(",")))
    if family == "spoc":
        return Spoc(cycle=tuple(int(x) for x in fields["cycle"].split(",")))
    if family == "spdf":
        return SpDf(m=int(fields["m"]))
    if family in ("sptree", "spgraph"):
        edges = tuple(
            tuple(int(x) for x in e.split(","))
            for e in fields["edges"].split(";")
        )
        cls = SpTree if family == "sptree" else SpGraph
        return cls(m=int(fields["m"]), edges=edges)  # type: ignore[arg-type]
    if family == "gscat":
        return GsCat(m=int(fields["m"]))
    if family == "gsbal":
        return GsBal(m=int(fields["m"]))
    if family == "sc":
        return SingleCrossing(m=int(fields["m"]), seed=int(fields["seed"]))
    if family == "euclidean":
        points: tuple[tuple[float, ...], ...] = ()
        if "points" in fields:
            points = tuple(
                tuple(float(x) for x in p.split(","))
                for p in fields["points"].split(";")
            )
        return Euclidean(
            m=int(fields["m"]), d=int(fields["d"]), seed=int(fields["seed"]),
            points=points,
        )
    if family == "fouralign":
        return FourAlignment(base_m=int(fields["base_m"]))
    raise DomainError(f"unknown family {family!r}")
