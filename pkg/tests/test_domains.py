import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_gs_tree, random_tree_edges
from outdiv.domains import (
    DomainError,
    Euclidean,
    Explicit,
    FourAlignment,
    GsBal,
    GsCat,
    GsTreeSpec,
    SingleCrossing,
    SpAxis,
    SpDf,
    SpGraph,
    SpTree,
    Spoc,
    balanced_tree,
    build_sp_df,
    caterpillar_tree,
    cell_margin_lp,
    enumerate_domain,
    euclidean_points,
    four_alignment,
    is_member,
    FEASIBLE_EPS,
    parse_ranking,
    read_domain_file,
    sample_euclidean,
    sample_sc,
    sp_df_edges,
    spec_from_record,
    spec_to_record,
    write_domain_file,
)
from outdiv.rankings import enumerate_all, max_swaps, reverse, swap_distance


def brute_filter(spec, m):
    return [v for v in enumerate_all(m) if is_member(spec, v)]


class TestEnumerationMatchesMembership:
    """For every family the enumerator and the membership predicate agree."""

    @pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
    def test_sp(self, m):
        spec = SpAxis(axis=tuple(range(m)))
        assert sorted(enumerate_domain(spec)) == brute_filter(spec, m)

    @pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
    def test_spoc(self, m):
        spec = Spoc(cycle=tuple(range(m)))
        assert sorted(enumerate_domain(spec)) == brute_filter(spec, m)

    @pytest.mark.parametrize("m", [3, 4, 5, 6])
    def test_gs_cat_and_bal(self, m):
        for spec in (GsCat(m=m), GsBal(m=m)):
            assert sorted(enumerate_domain(spec)) == brute_filter(spec, m)

    def test_spdf_m6(self):
        spec = SpDf(m=6)
        members = sorted(enumerate_domain(spec))
        assert members == brute_filter(spec, 6)
        assert len(members) == 2**7 - 16 == 112

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_random_gs_tree(self, seed):
        rng = random.Random(seed)
        m = rng.randint(3, 6)
        labels = list(range(m))
        rng.shuffle(labels)
        spec = GsTreeSpec(tree=random_gs_tree(labels, rng))
        assert sorted(enumerate_domain(spec)) == brute_filter(spec, m)

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_random_sp_tree(self, seed):
        rng = random.Random(seed + 100)
        m = rng.randint(3, 6)
        spec = SpTree(m=m, edges=random_tree_edges(m, rng))
        assert sorted(enumerate_domain(spec)) == brute_filter(spec, m)

    def test_sp_graph_cycle_plus_chord(self):
        m = 5
        edges = tuple((i, (i + 1) % m) for i in range(m)) + ((0, 2),)
        spec = SpGraph(m=m, edges=edges)
        assert sorted(enumerate_domain(spec)) == brute_filter(spec, m)

    def test_four_alignment(self):
        spec = FourAlignment(base_m=2)
        members = enumerate_domain(spec)
        assert sorted(members) == brute_filter(spec, 8)


class TestSizes:
    @pytest.mark.parametrize("m", range(2, 11))
    def test_formulas(self, m):
        assert len(enumerate_domain(SpAxis(axis=tuple(range(m))))) == 2 ** (m - 1)
        assert len(enumerate_domain(Spoc(cycle=tuple(range(m))))) == m * 2 ** (m - 2)
        assert len(enumerate_domain(GsCat(m=m))) == 2 ** (m - 1)
        assert len(enumerate_domain(GsBal(m=m))) == 2 ** (m - 1)
        assert len(sample_sc(m, seed=3).rankings) == 1 + m * (m - 1) // 2
        if m >= 6:
            assert len(enumerate_domain(SpDf(m=m))) == 2 ** (m + 1) - 16

    def test_table_sizes_m8(self):
        assert len(enumerate_domain(SpAxis(axis=tuple(range(8))))) == 128
        assert len(enumerate_domain(Spoc(cycle=tuple(range(8))))) == 512
        assert len(enumerate_domain(SpDf(m=8))) == 496


class TestMembershipExamples:
    def test_sp_hand_examples(self):
        spec = SpAxis(axis=(0, 1, 2, 3))
        assert is_member(spec, (1, 2, 0, 3))
        assert not is_member(spec, (0, 3, 1, 2))

    def test_gs_cat_hand_examples(self):
        assert is_member(GsCat(m=4), (0, 1, 3, 2))
        assert not is_member(GsCat(m=4), (0, 2, 1, 3))

    def test_explicit_contains_itself(self):
        v = (2, 0, 1)
        assert is_member(Explicit(rankings=(v,)), v)

    @pytest.mark.parametrize("m", [4, 5, 6, 7, 8])
    def test_gs_cat_updown_equals_tree_frontiers(self, m):
        tree_spec = GsTreeSpec(tree=caterpillar_tree(m))
        updown = {v for v in enumerate_all(m) if is_member(GsCat(m=m), v)}
        assert updown == set(enumerate_domain(tree_spec))

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            is_member(SpAxis(axis=(0, 1, 2)), (0, 1, 2, 3))


class TestSingleCrossing:
    @pytest.mark.parametrize("m,seed", [(2, 0), (4, 1), (6, 2), (8, 3)])
    def test_sampler_properties(self, m, seed):
        members = sample_sc(m, seed).rankings
        assert len(members) == 1 + m * (m - 1) // 2
        assert len(set(members)) == len(members)
        assert members[-1] == reverse(members[0])
        for prev, cur in zip(members, members[1:]):
            assert swap_distance(prev, cur) == 1

    @pytest.mark.parametrize("m,seed", [(4, 5), (6, 6)])
    def test_single_crossing_property(self, m, seed):
        members = sample_sc(m, seed).rankings
        for a in range(m):
            for b in range(a + 1, m):
                flips = 0
                prev = None
                for v in members:
                    ab = v.index(a) < v.index(b)
                    if prev is not None and ab != prev:
                        flips += 1
                    prev = ab
                assert flips == 1

    def test_deterministic(self):
        assert sample_sc(6, 9).rankings == sample_sc(6, 9).rankings

    def test_m8_table_size(self):
        assert len(sample_sc(8, 0).rankings) == 29


class TestEuclidean:
    def test_1d_m8_size(self):
        assert len(sample_euclidean(8, 1, seed=4).rankings) == 29

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_m3_d2_equals_brute_force(self, seed):
        dom = sample_euclidean(3, 2, seed)
        pts = euclidean_points(Euclidean(m=3, d=2, seed=seed))
        brute = sorted(
            v for v in enumerate_all(3) if cell_margin_lp(pts, v) > FEASIBLE_EPS
        )
        assert sorted(dom.rankings) == brute

    @pytest.mark.parametrize("m,seed", [(4, 0), (5, 1)])
    def test_small_d2_equals_brute_force(self, m, seed):
        dom = sample_euclidean(m, 2, seed)
        pts = euclidean_points(Euclidean(m=m, d=2, seed=seed))
        brute = sorted(
            v for v in enumerate_all(m) if cell_margin_lp(pts, v) > FEASIBLE_EPS
        )
        assert sorted(dom.rankings) == brute

    def test_size_bounds(self):
        m = 6
        lower = 1 + max_swaps(m)
        for d, seed in ((1, 7), (2, 8), (3, 9)):
            size = len(sample_euclidean(m, d, seed).rankings)
            assert size >= lower
            if d == 1:
                assert size == lower

    def test_rejects_bad_dimension(self):
        with pytest.raises(DomainError):
            sample_euclidean(4, 4, seed=0)


class TestFourAlignment:
    def test_base1(self):
        assert enumerate_domain(four_alignment(1)) == [(0, 1, 2, 3)]

    def test_base3(self):
        members = enumerate_domain(four_alignment(3))
        assert len(members) == 6
        assert all(len(v) == 12 for v in members)

    def test_too_large(self):
        with pytest.raises(DomainError):
            four_alignment(5)


class TestSpDf:
    def test_m8_size(self):
        assert len(enumerate_domain(build_sp_df(8))) == 496

    def test_rejects_small_m(self):
        with pytest.raises(DomainError):
            build_sp_df(5)

    def test_leaves_are_pendants_at_path_ends(self):
        m = 9
        edges = sp_df_edges(m)
        degree = [0] * m
        for a, b in edges:
            degree[a] += 1
            degree[b] += 1
        leaves = [c for c in range(m) if degree[c] == 1]
        assert sorted(leaves) == [0, 1, m - 2, m - 1]
        neighbors = {0: 2, 1: 2, m - 2: m - 3, m - 1: m - 3}
        for leaf, anchor in neighbors.items():
            assert (leaf, anchor) in edges or (anchor, leaf) in edges


class TestValidationErrors:
    def test_disconnected_graph(self):
        with pytest.raises(DomainError):
            enumerate_domain(SpGraph(m=4, edges=((0, 1), (2, 3))))

    def test_bad_tree_edge_count(self):
        with pytest.raises(DomainError):
            enumerate_domain(SpTree(m=4, edges=((0, 1), (1, 2), (2, 3), (3, 0))))

    def test_duplicate_explicit(self):
        with pytest.raises(DomainError):
            enumerate_domain(Explicit(rankings=((0, 1), (0, 1))))

    def test_gs_tree_bad_labels(self):
        from outdiv.domains import GsNode

        tree = GsNode(children=(GsNode(candidate=0), GsNode(candidate=2)))
        with pytest.raises(DomainError):
            enumerate_domain(GsTreeSpec(tree=tree))


class TestFileFormats:
    def test_domain_file_round_trip(self, tmp_path):
        members = enumerate_domain(SpAxis(axis=(0, 1, 2, 3)))
        path = tmp_path / "sp.domain"
        write_domain_file(path, members, family="sp")
        family, loaded = read_domain_file(path)
        assert family == "sp"
        assert loaded == members
        header = path.read_text().splitlines()[0]
        assert header == "# m=4 family=sp"

    def test_ranking_text_form(self):
        assert parse_ranking("2 0 1 3") == (2, 0, 1, 3)

    def test_duplicate_in_file_rejected(self, tmp_path):
        path = tmp_path / "dup.domain"
        path.write_text("# m=2 family=explicit\n0 1\n0 1\n")
        with pytest.raises(DomainError):
            read_domain_file(path)

    @pytest.mark.parametrize("spec", [
        SpAxis(axis=(2, 0, 1)),
        Spoc(cycle=(0, 1, 2, 3)),
        SpDf(m=7),
        SpTree(m=3, edges=((0, 1), (1, 2))),
        GsCat(m=5),
        GsBal(m=6),
        SingleCrossing(m=4, seed=9),
        FourAlignment(base_m=2),
    ])
    def test_spec_record_round_trip(self, spec):
        assert spec_from_record(spec_to_record(spec)) == spec

    def test_euclidean_record_round_trip(self):
        from outdiv.domains import euclidean_spec_with_points

        spec = euclidean_spec_with_points(4, 2, seed=11)
        back = spec_from_record(spec_to_record(spec))
        assert back.m == spec.m and back.d == spec.d and back.seed == spec.seed
        assert np.allclose(np.asarray(back.points), np.asarray(spec.points))


class TestGsTreeShapes:
    def test_caterpillar_frontier_is_identity(self):
        assert caterpillar_tree(5).frontier() == (0, 1, 2, 3, 4)

    def test_balanced_depths_differ_by_at_most_one(self):
        for m in (2, 3, 5, 7, 8, 12):
            tree = balanced_tree(m)
            depths = []

            def walk(node, d):
                if node.is_leaf:
                    depths.append(d)
                else:
                    for ch in node.children:
                        walk(ch, d + 1)

            walk(tree, 0)
            assert max(depths) - min(depths) <= 1

    @given(st.integers(1, 10))
    @settings(max_examples=20)
    def test_internal_counts(self, m):
        assert caterpillar_tree(m).internal_count() == max(m - 1, 0)
        assert balanced_tree(m).internal_count() == max(m - 1, 0)
