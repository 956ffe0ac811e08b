import random

import pytest

from conftest import random_gs_tree, random_tree_edges, shuffled
from outdiv.domains import (
    DomainError,
    Explicit,
    FourAlignment,
    GsBal,
    GsCat,
    GsTreeSpec,
    ResourceGuard,
    SpAxis,
    SpDf,
    Spoc,
    SpTree,
    balanced_tree,
    caterpillar_tree,
    enumerate_domain,
    is_member,
    sample_euclidean,
    sample_sc,
    sp_df_edges,
)
from outdiv.distances import (
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
from outdiv.rankings import enumerate_all, max_swaps, reverse, swap_distance


class TestDistSp:
    @pytest.mark.parametrize("m", [2, 3, 4, 5])
    def test_exhaustive_vs_bruteforce(self, m):
        axis = tuple(range(m))
        members = enumerate_domain(SpAxis(axis=axis))
        for v in enumerate_all(m):
            assert dist_sp(v, axis) == dist_bruteforce(members, v)

    def test_members_at_zero(self):
        axis = tuple(range(6))
        for v in enumerate_domain(SpAxis(axis=axis)):
            assert dist_sp(v, axis) == 0

    def test_shuffled_axis(self):
        rng = random.Random(1)
        for _ in range(20):
            m = rng.randint(2, 6)
            axis = shuffled(m, rng)
            members = enumerate_domain(SpAxis(axis=axis))
            v = shuffled(m, rng)
            assert dist_sp(v, axis) == dist_bruteforce(members, v)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            dist_sp((0, 1, 2), (0, 1, 2, 3))


class TestDistSpoc:
    @pytest.mark.parametrize("m", [3, 4, 5])
    def test_exhaustive_vs_bruteforce(self, m):
        cycle = tuple(range(m))
        members = enumerate_domain(Spoc(cycle=cycle))
        for v in enumerate_all(m):
            assert dist_spoc(v, cycle) == dist_bruteforce(members, v)

    def test_members_at_zero(self):
        cycle = tuple(range(6))
        for v in enumerate_domain(Spoc(cycle=cycle)):
            assert dist_spoc(v, cycle) == 0

    def test_equals_min_over_cut_axes(self):
        # cutting the cycle after position j gives an SP axis; SPOC is the
        # union of the m cut domains
        rng = random.Random(2)
        for _ in range(500):
            m = rng.randint(3, 8)
            cycle = shuffled(m, rng)
            v = shuffled(m, rng)
            cuts = [
                tuple(cycle[(j + 1 + t) % m] for t in range(m))
                for j in range(m)
            ]
            assert dist_spoc(v, cycle) == min(dist_sp(v, axis) for axis in cuts)


class TestDistSpTree:
    def test_path_equals_dist_sp(self):
        m = 6
        edges = tuple((i, i + 1) for i in range(m - 1))
        oracle = build_sp_tree_oracle(m, edges)
        for v in enumerate_all(m):
            assert oracle.query(v) == dist_sp(v, tuple(range(m)))

    @pytest.mark.parametrize("seed", range(6))
    def test_random_trees_vs_bruteforce(self, seed):
        rng = random.Random(seed)
        m = rng.randint(2, 7)
        edges = random_tree_edges(m, rng)
        from outdiv.domains import tree_leaf_count

        if tree_leaf_count(m, edges) > 5:
            pytest.skip("too many leaves for the oracle guard")
        members = enumerate_domain(SpTree(m=m, edges=edges))
        oracle = build_sp_tree_oracle(m, edges)
        for v in enumerate_all(m):
            assert oracle.query(v) == dist_bruteforce(members, v)

    def test_spdf_m6_vs_bruteforce(self):
        members = enumerate_domain(SpDf(m=6))
        oracle = build_sp_tree_oracle(6, sp_df_edges(6))
        for v in enumerate_all(6):
            assert oracle.query(v) == dist_bruteforce(members, v)

    def test_leaf_guard(self):
        # star with 6 leaves
        edges = tuple((0, i) for i in range(1, 7))
        with pytest.raises(ResourceGuard):
            build_sp_tree_oracle(7, edges)

    def test_cycle_rejected(self):
        edges = ((0, 1), (1, 2), (2, 0))
        with pytest.raises(DomainError):
            build_sp_tree_oracle(3, edges)

    def test_one_shot_helper(self):
        edges = ((0, 1), (1, 2))
        assert dist_sp_tree((2, 1, 0), 3, edges) == 0


class TestDistGs:
    def test_frontier_at_zero(self):
        rng = random.Random(3)
        for _ in range(10):
            m = rng.randint(2, 7)
            labels = list(range(m))
            rng.shuffle(labels)
            tree = random_gs_tree(labels, rng)
            assert dist_gs(tree.frontier(), tree) == 0

    @pytest.mark.parametrize("seed", range(5))
    def test_random_trees_vs_bruteforce(self, seed):
        rng = random.Random(seed + 50)
        m = rng.randint(2, 6)
        labels = list(range(m))
        rng.shuffle(labels)
        tree = random_gs_tree(labels, rng)
        members = enumerate_domain(GsTreeSpec(tree=tree))
        for v in enumerate_all(m):
            assert dist_gs(v, tree) == dist_bruteforce(members, v)

    def test_identity_zero_for_cat_and_bal(self):
        assert dist_gs_cat(tuple(range(9))) == 0
        assert dist_gs_bal(tuple(range(9))) == 0

    @pytest.mark.parametrize("m", [2, 3, 4, 5])
    def test_cat_bal_exhaustive_vs_bruteforce(self, m):
        cat = enumerate_domain(GsCat(m=m))
        bal = enumerate_domain(GsBal(m=m))
        for v in enumerate_all(m):
            assert dist_gs_cat(v) == dist_bruteforce(cat, v)
            assert dist_gs_bal(v) == dist_bruteforce(bal, v)

    def test_cat_equals_general_up_to_m64(self):
        rng = random.Random(4)
        for _ in range(300):
            m = rng.choice([2, 3, 5, 9, 17, 33, 64])
            v = shuffled(m, rng)
            assert dist_gs_cat(v) == dist_gs(v, caterpillar_tree(m))

    def test_bal_equals_general_up_to_m64(self):
        rng = random.Random(5)
        for _ in range(300):
            m = rng.choice([2, 3, 5, 9, 17, 33, 64])
            v = shuffled(m, rng)
            assert dist_gs_bal(v) == dist_gs(v, balanced_tree(m))


class TestListedOracle:
    def test_sc_path_labels_distinct(self):
        m = 6
        dom = sample_sc(m, seed=7)
        oracle = build_listed_oracle(dom.rankings, shape="path")
        labels = oracle.labels[1:]
        assert len(labels) == max_swaps(m)
        assert len({frozenset(p) for p in labels}) == max_swaps(m)

    def test_query_of_first_member_is_zero(self):
        dom = sample_sc(5, seed=8)
        oracle = build_listed_oracle(dom.rankings, shape="path")
        assert oracle.query(dom.rankings[0]) == 0

    def test_single_member(self):
        oracle = build_listed_oracle([(0, 1, 2)], shape="tree")
        assert len(oracle.members) == 1
        assert oracle.query((2, 1, 0)) == 3

    def test_propagation_steps_are_unit(self):
        rng = random.Random(9)
        dom = sample_sc(6, seed=10)
        oracle = build_listed_oracle(dom.rankings, shape="tree")
        for _ in range(50):
            v = shuffled(6, rng)
            dists = oracle.all_distances(v)
            for i in range(1, len(dists)):
                assert abs(dists[i] - dists[oracle.parents[i]]) == 1

    def test_all_distances_match_swap(self):
        rng = random.Random(10)
        dom = sample_sc(5, seed=12)
        for shape in ("path", "tree"):
            oracle = build_listed_oracle(dom.rankings, shape=shape)
            for _ in range(30):
                v = shuffled(5, rng)
                dists = oracle.all_distances(v)
                assert dists == [swap_distance(u, v) for u in oracle.members]

    def test_euclidean_dfs_spans_members(self):
        dom = sample_euclidean(3, 2, seed=1)
        oracle = build_listed_oracle(dom.rankings, shape="tree")
        assert sorted(oracle.members) == sorted(dom.rankings)

    def test_disconnected_rejected(self):
        with pytest.raises(StructureError):
            build_listed_oracle([(0, 1, 2), (2, 0, 1)], shape="tree")

    def test_non_adjacent_path_rejected(self):
        with pytest.raises(StructureError):
            build_listed_oracle([(0, 1, 2), (2, 0, 1)], shape="path")

    @pytest.mark.parametrize("m,seed", [(5, 1), (6, 2), (7, 3)])
    def test_sc_vs_bruteforce(self, m, seed):
        rng = random.Random(seed)
        dom = sample_sc(m, seed=seed)
        oracle = build_listed_oracle(dom.rankings, shape="path")
        for _ in range(200):
            v = shuffled(m, rng)
            assert oracle.query(v) == dist_bruteforce(dom.rankings, v)


class TestBruteforce:
    def test_singleton(self):
        assert dist_bruteforce([(0, 1, 2)], (0, 1, 2)) == 0

    def test_vote_and_reverse(self):
        u = (0, 1, 2, 3)
        assert dist_bruteforce([u, reverse(u)], u) == 0

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            dist_bruteforce([], (0, 1))

    def test_four_alignment_kemeny_identity(self):
        # distance from a concatenated profile to the aligned domain is the
        # 4-vote Kemeny optimum over the base candidates
        rng = random.Random(11)
        base_m = 3
        members = enumerate_domain(FourAlignment(base_m=base_m))
        for _ in range(20):
            votes = [shuffled(base_m, rng) for _ in range(4)]
            concat = tuple(
                i * base_m + c for i, vote in enumerate(votes) for c in vote
            )
            kemeny = min(
                sum(swap_distance(v, u) for v in votes)
                for u in enumerate_all(base_m)
            )
            assert dist_bruteforce(members, concat) == kemeny


class TestBoundsAndZeroIffMember:
    @pytest.mark.parametrize("m", [3, 4, 5])
    def test_zero_iff_member(self, m):
        specs = [
            SpAxis(axis=tuple(range(m))),
            Spoc(cycle=tuple(range(m))),
            GsCat(m=m),
            GsBal(m=m),
        ]
        for spec in specs:
            oracle = oracle_for(spec)
            for v in enumerate_all(m):
                d = oracle(v)
                assert 0 <= d <= max_swaps(m)
                assert (d == 0) == is_member(spec, v)


class TestOracleDispatch:
    def test_sp_graph_small_falls_back_to_bruteforce(self):
        from outdiv.domains import SpGraph

        m = 4
        edges = tuple((i, (i + 1) % m) for i in range(m)) + ((0, 2),)
        spec = SpGraph(m=m, edges=edges)
        oracle = oracle_for(spec)
        members = enumerate_domain(spec)
        for v in enumerate_all(m):
            assert oracle(v) == dist_bruteforce(members, v)

    def test_sp_graph_large_refused(self):
        from outdiv.domains import SpGraph

        m = 9
        edges = tuple((i, (i + 1) % m) for i in range(m))
        with pytest.raises(ResourceGuard):
            oracle_for(SpGraph(m=m, edges=edges))

    def test_explicit_non_connected_uses_bruteforce(self):
        members = ((0, 1, 2), (2, 1, 0))
        oracle = oracle_for(Explicit(rankings=members))
        assert oracle((0, 2, 1)) == 1
