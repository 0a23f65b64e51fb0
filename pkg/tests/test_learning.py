from __future__ import annotations

import math
import random

import pytest

from navlearn import (
    AlphaOutOfRangeError,
    RewardModel,
    WalkCapError,
    bfs_distances,
    build_hotspot_table,
    gen_barabasi_albert,
    gen_erdos_renyi,
    hotspot_jaccard,
    iteration_rng,
    largest_component,
    learn,
    load_model,
    loop_erase,
    pair_schedule,
    paired_walk,
    save_model,
    select_alpha,
)
from navlearn.learning import model_to_json
from helpers import check_simple_path, knee_by_bruteforce, random_walk, star_graph


class TestLoopErase:
    def test_single_cycle(self):
        assert loop_erase([0, 1, 2, 1, 3]) == [0, 1, 3]

    def test_immediate_backtrack(self):
        assert loop_erase([0, 1, 0, 2]) == [0, 2]

    def test_simple_walk_unchanged(self):
        assert loop_erase([4, 2, 7, 1]) == [4, 2, 7, 1]

    def test_single_vertex(self):
        assert loop_erase([3]) == [3]

    def test_empty_raises(self):
        with pytest.raises(ValueError):
            loop_erase([])

    def test_random_walks_produce_valid_simple_paths(self):
        g, _ = largest_component(gen_erdos_renyi(30, 0.15, 3))
        rng = random.Random(99)
        for _ in range(500):
            walk = random_walk(g, rng.randrange(g.n), rng.randrange(40), rng)
            path = loop_erase(walk)
            assert path[0] == walk[0] and path[-1] == walk[-1]
            assert len(path) <= len(walk)
            assert check_simple_path(g, path)


class TestPairedWalk:
    def test_k2_forced_moves(self):
        g = gen_erdos_renyi(2, 1.0, 0)
        h, path_u, path_v = paired_walk(g, 0, 1, random.Random(5))
        assert h == 0
        assert path_u == [0]
        assert path_v == [1, 0]

    def test_star_leaves_meet_at_center(self):
        g = star_graph(6)
        for seed in range(5):
            h, path_u, path_v = paired_walk(g, 2, 5, random.Random(seed))
            assert h == 0
            assert path_u == [2, 0]
            assert path_v == [5, 0]

    def test_paths_valid_on_random_graph(self):
        g, _ = largest_component(gen_erdos_renyi(50, 0.1, 17))
        rng = random.Random(23)
        for _ in range(200):
            u = rng.randrange(g.n)
            v = rng.randrange(g.n - 1)
            if v >= u:
                v += 1
            h, path_u, path_v = paired_walk(g, u, v, random.Random(rng.random()))
            assert path_u[0] == u and path_u[-1] == h
            assert path_v[0] == v and path_v[-1] == h
            assert check_simple_path(g, path_u)
            assert check_simple_path(g, path_v)

    def test_equal_endpoints_rejected(self):
        g = star_graph(3)
        with pytest.raises(ValueError):
            paired_walk(g, 1, 1, random.Random(0))

    def test_cap_exhaustion_raises_after_retries(self):
        g = star_graph(3)
        with pytest.raises(WalkCapError):
            paired_walk(g, 1, 2, random.Random(0), cap=0)


class TestLearn:
    def test_empty_schedule(self):
        g = star_graph(4)
        model = learn(g, [], seed=1)
        assert model.flags == [0] * 5
        assert model.edge_reward == {}
        assert model.iterations_done == 0

    def test_single_pair_on_k2(self):
        g = gen_erdos_renyi(2, 1.0, 0)
        model = learn(g, [(0, 1)], seed=7)
        assert sum(model.flags) == 1
        # one side meets at distance 0 (no reward), the other adds 1/1
        assert sum(model.edge_reward.values()) == pytest.approx(1.0)

    def test_degenerate_pair_rejected(self):
        with pytest.raises(ValueError):
            learn(star_graph(3), [(2, 2)], seed=1)

    def test_accounting_against_replay_oracle(self):
        g = gen_barabasi_albert(500, 4, 11)
        pairs = pair_schedule(g.n, seed=11, iterations=1000)
        model = learn(g, pairs, seed=11)
        assert sum(model.flags) == 1000
        expected_total = 0.0
        expected_flags = [0] * g.n
        for i, (u, v) in enumerate(pairs):
            h, path_u, path_v = paired_walk(g, u, v, iteration_rng(11, i))
            expected_flags[h] += 1
            contribution = (len(path_u) > 1) + (len(path_v) > 1)
            assert contribution in (0, 1, 2)
            expected_total += contribution
        assert model.flags == expected_flags
        assert sum(model.edge_reward.values()) == pytest.approx(expected_total)

    def test_rewards_only_on_graph_edges(self):
        g, _ = largest_component(gen_erdos_renyi(40, 0.12, 5))
        model = learn(g, pair_schedule(g.n, 5, iterations=300), seed=5)
        for a, b in model.edge_reward:
            assert g.adjacent(a, b)

    def test_rewards_nonnegative_and_sparse(self):
        g = gen_barabasi_albert(60, 3, 2)
        model = learn(g, pair_schedule(g.n, 3, iterations=200), seed=3)
        assert all(r > 0 for r in model.edge_reward.values())
        assert len(model.edge_reward) <= 2 * g.m

    def test_deterministic_and_worker_independent(self):
        g = gen_barabasi_albert(80, 3, 4)
        pairs = pair_schedule(g.n, 9, iterations=2500)
        base = learn(g, pairs, seed=9)
        again = learn(g, pairs, seed=9)
        threaded = learn(g, pairs, seed=9, workers=4)
        assert base == again == threaded

    def test_outgoing_view_matches_flat_map(self):
        g = gen_barabasi_albert(40, 2, 6)
        model = learn(g, pair_schedule(g.n, 2, iterations=150), seed=2)
        for (a, b), r in model.edge_reward.items():
            assert model.outgoing(a)[b] == r
            assert model.reward(a, b) == r
        assert model.reward(0, 0) == 0.0


class TestSelectAlpha:
    def test_flat_curve_degenerates(self):
        assert select_alpha([5, 5, 5, 5]) == 1

    def test_single_point(self):
        assert select_alpha([42]) == 1

    def test_sharp_knee(self):
        # frozen from the brute-force chord-distance oracle
        assert knee_by_bruteforce([100, 10, 9, 8, 7, 6]) == 2
        assert select_alpha([100, 10, 9, 8, 7, 6]) == 2

    def test_matches_bruteforce_on_random_curves(self):
        rng = random.Random(31)
        for _ in range(300):
            size = rng.randrange(1, 40)
            curve = sorted(
                (rng.randrange(0, 50) for _ in range(size)), reverse=True
            )
            assert select_alpha(curve) == knee_by_bruteforce(curve)

    def test_rejects_unsorted(self):
        with pytest.raises(ValueError):
            select_alpha([1, 2, 3])

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            select_alpha([])


class TestHotspotTable:
    def test_alpha_one_single_lookup(self):
        g = star_graph(5)
        model = learn(g, pair_schedule(g.n, 1, iterations=50), seed=1)
        table = build_hotspot_table(g, model, alpha=1)
        assert table.alpha == 1
        assert table.lookup == [[[table.hotspots[0]]]]

    def test_star_center_is_top_hotspot(self):
        g = star_graph(8)
        model = learn(g, pair_schedule(g.n, 2, iterations=100), seed=2)
        table = build_hotspot_table(g, model)
        assert table.ordering[0] == 0
        assert table.hotspots[0] == 0

    def test_lookup_lengths_match_bfs(self):
        g = gen_barabasi_albert(500, 4, 21)
        model = learn(g, pair_schedule(g.n, 21, iterations=5000), seed=21)
        table = build_hotspot_table(g, model)
        for i, hs in enumerate(table.hotspots):
            dist = bfs_distances(g, hs)
            for j, ht in enumerate(table.hotspots):
                assert len(table.lookup[i][j]) - 1 == dist[ht]

    def test_lookup_paths_reverse_cleanly(self):
        g, _ = largest_component(gen_erdos_renyi(60, 0.1, 8))
        model = learn(g, pair_schedule(g.n, 4, iterations=400), seed=4)
        table = build_hotspot_table(g, model, alpha=6)
        for i in range(table.alpha):
            assert table.lookup[i][i] == [table.hotspots[i]]
            for j in range(table.alpha):
                forward = table.lookup[i][j]
                assert check_simple_path(g, forward)
                assert check_simple_path(g, forward[::-1])

    def test_ordering_breaks_ties_by_id(self):
        model = RewardModel(flags=[2, 5, 2, 5, 0], edge_reward={}, iterations_done=14)
        g = star_graph(4)
        table = build_hotspot_table(g, model, alpha=4)
        assert table.ordering == [1, 3, 0, 2, 4]
        assert table.hotspots == [1, 3, 0, 2]

    def test_alpha_out_of_range(self):
        g = star_graph(3)
        model = learn(g, pair_schedule(g.n, 1, iterations=20), seed=1)
        with pytest.raises(AlphaOutOfRangeError):
            build_hotspot_table(g, model, alpha=0)
        with pytest.raises(AlphaOutOfRangeError):
            build_hotspot_table(g, model, alpha=g.n + 1)

    def test_empty_model_rejected(self):
        g = star_graph(3)
        with pytest.raises(ValueError):
            build_hotspot_table(g, RewardModel([0] * 4, {}, 0))


class TestPairSchedule:
    def test_exhaustive_contains_every_pair_once(self):
        pairs = pair_schedule(30, seed=5)
        assert len(pairs) == 435
        assert len(set(pairs)) == 435
        assert all(u < v for u, v in pairs)

    def test_exhaustive_is_shuffled_deterministically(self):
        a = pair_schedule(30, seed=5)
        b = pair_schedule(30, seed=5)
        c = pair_schedule(30, seed=6)
        assert a == b
        assert a != c
        assert a != sorted(a)

    def test_iteration_prefix(self):
        full = pair_schedule(40, seed=7)
        prefix = pair_schedule(40, seed=7, iterations=100)
        assert prefix == full[:100]

    def test_sampled_branch_for_large_n(self):
        pairs = pair_schedule(1000, seed=3)
        assert len(pairs) == 100 * 1000
        assert all(u != v for u, v in pairs)

    def test_explicit_iterations_sampled(self):
        pairs = pair_schedule(1000, seed=3, iterations=500)
        assert len(pairs) == 500

    def test_too_small_n(self):
        with pytest.raises(ValueError):
            pair_schedule(1, seed=0)


class TestModelPersistence:
    def test_roundtrip(self, tmp_path):
        g, _ = largest_component(gen_erdos_renyi(50, 0.12, 14))
        model = learn(g, pair_schedule(g.n, 14, iterations=600), seed=14)
        table = build_hotspot_table(g, model)
        path = tmp_path / "model.json"
        save_model(path, model, table)
        loaded_model, loaded_table = load_model(path, g)
        assert loaded_model == model
        assert loaded_table.alpha == table.alpha
        assert loaded_table.hotspots == table.hotspots
        assert loaded_table.lookup == table.lookup

    def test_serialization_is_stable(self):
        g = star_graph(6)
        model = learn(g, pair_schedule(g.n, 2, iterations=40), seed=2)
        table = build_hotspot_table(g, model)
        assert model_to_json(model, table) == model_to_json(model, table)

    def test_wrong_graph_size_rejected(self, tmp_path):
        g = star_graph(6)
        model = learn(g, pair_schedule(g.n, 2, iterations=40), seed=2)
        table = build_hotspot_table(g, model)
        path = tmp_path / "model.json"
        save_model(path, model, table)
        with pytest.raises(ValueError):
            load_model(path, star_graph(9))

    def test_bad_version_rejected(self, tmp_path):
        path = tmp_path / "model.json"
        path.write_text('{"version": 99}', encoding="utf-8")
        with pytest.raises(ValueError):
            load_model(path, star_graph(3))


def test_hotspot_jaccard_basics():
    assert hotspot_jaccard([1, 2, 3], [1, 2, 3]) == 1.0
    assert hotspot_jaccard([1, 2], [3, 4]) == 0.0
    assert hotspot_jaccard([1, 2, 3], [2, 3, 4]) == pytest.approx(0.5)
