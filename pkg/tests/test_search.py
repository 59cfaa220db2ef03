import random
import time

import pytest

from pathskyline.bounds import QueryTimeout, multi_dijkstra, pareto_prep
from pathskyline.generate import generate_grid
from pathskyline.graph import Edge, MultiCostGraph, path_cost
from pathskyline.oracle import brute_force_skyline
from pathskyline.search import answer_query, label_correcting_search

from conftest import build_random_int_graph

METHODS = ["none", "pp", "bpp", "md"]


def methods_for(d):
    return METHODS + (["dd"] if d == 2 else [])


def test_single_edge_all_methods(single_edge):
    for m in methods_for(2):
        q = answer_query(single_edge, 0, 1, m)
        assert q.cost_vectors() == [(3.0, 4.0)], m
        assert not q.unreachable
        assert q.metrics.skyline_size == 1


def test_diamond_all_methods(diamond):
    for m in methods_for(2):
        q = answer_query(diamond, 0, 3, m)
        assert q.cost_vectors() == [(3.0, 4.0), (6.0, 3.0)], m


def test_matches_oracle_with_and_without_bounds():
    rng = random.Random(101)
    for _ in range(80):
        n = rng.randint(5, 12)
        d = rng.choice([2, 3])
        g = build_random_int_graph(rng, n, rng.randint(n, 3 * n), d)
        s, t = rng.sample(range(n), 2)
        expected = sorted(brute_force_skyline(g, s, t).costs())
        for m in methods_for(d):
            assert sorted(answer_query(g, s, t, m).cost_vectors()) == expected, m


def test_returned_paths_are_valid_simple_paths():
    rng = random.Random(103)
    for _ in range(25):
        g = build_random_int_graph(rng, 10, 30, 2)
        s, t = rng.sample(range(10), 2)
        q = answer_query(g, s, t, "pp")
        for p in q.paths:
            assert p.start == s and p.end == t
            assert len(set(p.nodes())) == len(p.nodes())
            assert path_cost(p) == p.cost


def test_pruning_never_removes_cost_vectors():
    rng = random.Random(107)
    for _ in range(40):
        d = rng.choice([2, 3])
        g = build_random_int_graph(rng, rng.randint(5, 20), 50, d)
        s, t = rng.sample(range(g.node_count), 2)
        base = sorted(answer_query(g, s, t, "none").cost_vectors())
        for m in methods_for(d)[1:]:
            assert sorted(answer_query(g, s, t, m).cost_vectors()) == base, m


def test_bounds_reduce_assembled_paths():
    rng = random.Random(109)
    worse = 0
    for _ in range(30):
        d = rng.choice([2, 3])
        g = build_random_int_graph(rng, rng.randint(8, 20), 60, d)
        s, t = rng.sample(range(g.node_count), 2)
        with_bounds = answer_query(g, s, t, "pp").metrics.assembled_paths
        without = answer_query(g, s, t, "none").metrics.assembled_paths
        if with_bounds > without:
            worse += 1
    assert worse == 0, f"{worse}/30 instances assembled more with bounds"


def test_source_equals_target_trivial_query(diamond):
    q = answer_query(diamond, 2, 2, "pp")
    assert not q.unreachable
    assert len(q.paths) == 1
    assert q.paths[0].cost == (0.0, 0.0)
    assert q.paths[0].nodes() == [2]


def test_unreachable_flagged_empty_skyline():
    g = MultiCostGraph(3, 2, [Edge(0, 1, (1.0, 1.0))])
    for m in methods_for(2):
        q = answer_query(g, 0, 2, m)
        assert q.unreachable and q.paths == [], m


def test_bounds_for_wrong_query_rejected(diamond):
    bounds = pareto_prep(diamond, 0, 3)
    with pytest.raises(ValueError, match="bounds were computed for"):
        label_correcting_search(diamond, 1, 3, bounds)


def test_invalid_method_and_ids(diamond):
    with pytest.raises(ValueError, match="unknown method"):
        answer_query(diamond, 0, 3, "fastest")
    with pytest.raises(ValueError, match="outside"):
        answer_query(diamond, 0, 99)
    with pytest.raises(ValueError, match="exactly 2 criteria"):
        answer_query(build_random_int_graph(random.Random(0), 6, 12, 3), 0, 1, "dd")


def test_local_skylines_pairwise_nondominated_audit():
    rng = random.Random(113)
    for _ in range(10):
        g = build_random_int_graph(rng, 12, 40, 2)
        s, t = rng.sample(range(12), 2)
        label_correcting_search(g, s, t, pareto_prep(g, s, t), audit=True)


def test_result_ordered_by_cost(diamond):
    q = answer_query(diamond, 0, 3, "none")
    assert q.cost_vectors() == sorted(q.cost_vectors())


def test_disabling_global_check_single_source_mode():
    rng = random.Random(127)
    g = build_random_int_graph(rng, 10, 35, 2)
    s, t = 0, 9
    checked = answer_query(g, s, t, "none")
    unchecked = answer_query(g, s, t, "none", global_check=False)
    assert sorted(checked.cost_vectors()) == sorted(unchecked.cost_vectors())
    assert unchecked.metrics.assembled_paths >= checked.metrics.assembled_paths


def test_metrics_phase_breakdown(diamond):
    q = answer_query(diamond, 0, 3, "md")
    m = q.metrics
    assert m.bound_visited_nodes == 8  # 2 criteria x 4 co-reaching nodes
    assert m.visited_node_count == m.bound_visited_nodes
    assert m.total_seconds >= m.bound_seconds + m.search_seconds - 1e-6
    plain = answer_query(diamond, 0, 3, "none").metrics
    assert plain.visited_node_count == plain.search_visited_nodes
    assert plain.bound_visited_nodes == 0


def test_search_deadline_times_out():
    g = generate_grid(30, 30, d=2, rho=0.0, seed=4)
    with pytest.raises(QueryTimeout):
        answer_query(g, 0, 899, "none", deadline=time.perf_counter() + 1e-4)


def test_seeding_from_bounds_prunes_from_the_start(diamond):
    bounds = multi_dijkstra(diamond, 0, 3)
    stats = {}
    sky = label_correcting_search(diamond, 0, 3, bounds, stats=stats)
    assert sorted(c for c, _ in sky) == [(3.0, 4.0), (6.0, 3.0)]
    assert stats["assembled_paths"] <= answer_query(diamond, 0, 3, "none").metrics.assembled_paths
