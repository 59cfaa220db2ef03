import math
import random
import time

import pytest

from pathskyline.bounds import (QueryTimeout, bidirectional_pareto_prep,
                                double_dijkstra, multi_dijkstra, pareto_prep,
                                reconstruct_path)
from pathskyline.generate import generate_grid
from pathskyline.graph import Edge, MultiCostGraph, path_cost
from pathskyline.oracle import brute_force_skyline, dijkstra_single

from conftest import build_random_int_graph

ALL = {
    "pp": pareto_prep,
    "bpp": bidirectional_pareto_prep,
    "md": multi_dijkstra,
    "dd": double_dijkstra,
}


def algorithms_for(d):
    return {name: fn for name, fn in ALL.items() if name != "dd" or d == 2}


def test_two_node_graph_all_algorithms(single_edge):
    for name, fn in ALL.items():
        r = fn(single_edge, 0, 1)
        assert r.lb_s_t == (3.0, 4.0), name
        assert r.shortest_paths.costs() == [(3.0, 4.0)], name
        assert r.reachable
        assert len(r.labels) == 2


def test_diamond_worked_example(diamond):
    for name, fn in ALL.items():
        r = fn(diamond, 0, 3)
        assert sorted(r.shortest_paths.costs()) == [(3.0, 4.0), (6.0, 3.0)], name
        assert r.lb_s_t == (3.0, 3.0), name
        # per-criterion minima of the optima set equal lb(s)
        for i in range(2):
            assert min(c[i] for c in r.shortest_paths.costs()) == r.lb_s_t[i]


def test_diamond_reconstruct_criterion_paths(diamond):
    r = pareto_prep(diamond, 0, 3)
    p0 = reconstruct_path(0, 3, r.labels, 0)
    assert p0.nodes() == [0, 1, 3]
    assert p0.cost == (3.0, 4.0)
    p1 = reconstruct_path(0, 3, r.labels, 1)
    assert p1.nodes() == [0, 1, 2, 3]
    assert p1.cost == (6.0, 3.0)


def test_validation_errors(diamond):
    with pytest.raises(ValueError, match="must differ"):
        pareto_prep(diamond, 1, 1)
    with pytest.raises(ValueError, match="outside"):
        pareto_prep(diamond, 0, 9)
    with pytest.raises(ValueError, match="2 criteria"):
        double_dijkstra(build_random_int_graph(random.Random(0), 5, 10, 3), 0, 1)
    with pytest.raises(ValueError, match="successor chain"):
        reconstruct_path(0, 3, {}, 0)


def test_unreachable_is_explicit_not_an_error():
    g = MultiCostGraph(3, 2, [Edge(0, 1, (1.0, 1.0))])
    for name, fn in ALL.items():
        r = fn(g, 0, 2)
        assert not r.reachable, name
        assert all(math.isinf(x) for x in r.lb_s_t), name
        assert len(r.shortest_paths) == 0, name


def test_exactness_at_source_against_dijkstra():
    rng = random.Random(23)
    for _ in range(60):
        n = rng.randint(5, 50)
        d = rng.choice([2, 3, 4, 5])
        g = build_random_int_graph(rng, n, rng.randint(n, 4 * n), d)
        s, t = rng.sample(range(n), 2)
        results = {name: fn(g, s, t) for name, fn in algorithms_for(d).items()}
        for i in range(d):
            dist, _ = dijkstra_single(g, s, t, i)
            for name, r in results.items():
                assert r.lb_s_t[i] == dist, (name, i)
                if r.reachable:
                    p = reconstruct_path(s, t, r.labels, i)
                    assert p.cost[i] == dist, (name, i)
                    assert path_cost(p) == p.cost


def test_returned_optima_nondominated_in_oracle_skyline():
    rng = random.Random(31)
    for _ in range(60):
        n = rng.randint(5, 11)
        d = rng.choice([2, 3])
        g = build_random_int_graph(rng, n, rng.randint(n, 3 * n), d)
        s, t = rng.sample(range(n), 2)
        oracle = brute_force_skyline(g, s, t)
        for name, r in ((k, fn(g, s, t)) for k, fn in algorithms_for(d).items()):
            assert len(r.shortest_paths) <= d, name
            for cost in r.shortest_paths.costs():
                assert not oracle.dominates(cost), (name, cost)


def test_bpp_matches_pp_everywhere():
    rng = random.Random(47)
    for _ in range(120):
        n = rng.randint(4, 40)
        d = rng.choice([2, 3, 4])
        g = build_random_int_graph(rng, n, rng.randint(n, 4 * n), d)
        s, t = rng.sample(range(n), 2)
        a, b = pareto_prep(g, s, t), bidirectional_pareto_prep(g, s, t)
        assert a.lb_s_t == b.lb_s_t
        assert sorted(a.shortest_paths.costs()) == sorted(b.shortest_paths.costs())


def test_md_labels_exact_and_full_sweep():
    rng = random.Random(53)
    g = build_random_int_graph(rng, 30, 120, 3)
    s, t = 0, 29
    r = multi_dijkstra(g, s, t)
    # reverse reachability: nodes that can reach t
    co_reaching = {t}
    frontier = [t]
    while frontier:
        nxt = []
        for n in frontier:
            for e in g.reverse[n]:
                if e.src not in co_reaching:
                    co_reaching.add(e.src)
                    nxt.append(e.src)
        frontier = nxt
    assert r.visited_node_count == 3 * len(co_reaching)
    assert set(r.labels) == co_reaching
    # exact per-criterion distances everywhere, equal to pp at s
    pp = pareto_prep(g, s, t)
    for n, lab in r.labels.items():
        if n == t:
            continue
        for i in range(3):
            dist, _ = dijkstra_single(g, n, t, i)
            assert lab.lb[i] == dist
    assert pp.lb_s_t == r.lb_s_t


def test_suffix_admissibility_on_oracle_paths():
    rng = random.Random(61)
    for _ in range(50):
        n = rng.randint(5, 12)
        d = rng.choice([2, 3])
        g = build_random_int_graph(rng, n, rng.randint(n, 3 * n), d)
        s, t = rng.sample(range(n), 2)
        r = pareto_prep(g, s, t)
        for cost, path in brute_force_skyline(g, s, t):
            remaining = list(cost)
            for k, node in enumerate(path.nodes()[:-1]):
                lab = r.labels.get(node)
                assert lab is not None, "solution-graph node must be visited"
                for i in range(d):
                    assert lab.lb[i] <= remaining[i]
                for i in range(d):
                    remaining[i] -= path.edges[k].cost[i]


def test_dd_visits_no_more_than_md():
    rng = random.Random(71)
    for _ in range(40):
        n = rng.randint(5, 60)
        g = build_random_int_graph(rng, n, rng.randint(n, 4 * n), 2)
        s, t = rng.sample(range(n), 2)
        dd, md = double_dijkstra(g, s, t), multi_dijkstra(g, s, t)
        assert dd.visited_node_count <= md.visited_node_count
        assert dd.lb_s_t == md.lb_s_t


def test_grid_bpp_visits_fewer_nodes_than_pp_on_average():
    g = generate_grid(40, 40, d=2, rho=0.5, seed=2)
    rng = random.Random(8)
    pp_total = bpp_total = 0
    for _ in range(15):
        s, t = rng.sample(range(g.node_count), 2)
        pp_total += pareto_prep(g, s, t).visited_node_count
        bpp_total += bidirectional_pareto_prep(g, s, t).visited_node_count
    assert bpp_total <= pp_total


def test_zero_cost_cycle_terminates():
    edges = [
        Edge(0, 1, (0.0, 0.0)),
        Edge(1, 2, (0.0, 0.0)),
        Edge(2, 0, (0.0, 0.0)),
        Edge(1, 3, (1.0, 2.0)),
        Edge(2, 3, (2.0, 1.0)),
    ]
    g = MultiCostGraph(4, 2, edges)
    for name, fn in ALL.items():
        r = fn(g, 0, 3)
        assert r.lb_s_t == (1.0, 1.0), name


def test_deadline_raises_query_timeout():
    g = generate_grid(30, 30, d=3, rho=0.0, seed=1)
    with pytest.raises(QueryTimeout):
        pareto_prep(g, 0, 899, deadline=time.perf_counter() - 1.0)


def test_forward_context_present_only_for_bpp(diamond):
    assert pareto_prep(diamond, 0, 3).forward is None
    fwd = bidirectional_pareto_prep(diamond, 0, 3).forward
    assert fwd is not None
    assert len(fwd.mincost_beta) == 2
