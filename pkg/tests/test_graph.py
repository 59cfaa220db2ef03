import io
import random

import pytest

from pathskyline.generate import (CorrelatedCostSampler, generate_graph,
                                  generate_grid, generate_random,
                                  measure_correlation)
from pathskyline.graph import (Edge, GraphFormatError, MultiCostGraph, Path,
                               compact_node_ids, dump_graph, load_graph,
                               path_cost)

GRID_FILE = """2
# 2x2 grid, hand written
0 1 1 2
1 0 2 1
0 2 3 1
2 0 1 3
1 3 2 2
3 1 1 1
2 3 4 1
3 2 1 4
"""


def test_path_cost_empty_is_zero():
    p = Path.from_edges((), start=0, d=2)
    assert path_cost(p) == (0.0, 0.0)
    assert p.cost == (0.0, 0.0)
    assert p.nodes() == [0]


def test_path_cost_single_edge():
    p = Path.from_edges([Edge(0, 1, (3.0, 4.0))])
    assert path_cost(p) == (3.0, 4.0)


def test_path_cost_two_edges_summed():
    p = Path.from_edges([Edge(0, 1, (1.0, 2.0)), Edge(1, 2, (5.0, 1.0))])
    # hand-summed: (1+5, 2+1)
    assert path_cost(p) == (6.0, 3.0)
    assert p.cost == path_cost(p)


def test_path_rejects_broken_adjacency():
    with pytest.raises(ValueError, match="broken adjacency"):
        Path.from_edges([Edge(0, 1, (1.0, 1.0)), Edge(2, 3, (1.0, 1.0))])


def test_path_rejects_repeated_node():
    with pytest.raises(ValueError, match="visited twice"):
        Path.from_edges([Edge(0, 1, (1.0, 1.0)), Edge(1, 2, (1.0, 1.0)),
                         Edge(2, 0, (1.0, 1.0))])


def test_load_single_edge_graph():
    g = load_graph("2\n0 1 3 4\n")
    assert g.node_count == 2
    assert g.d == 2
    assert g.edge_count == 1
    assert g.forward[0][0].cost == (3.0, 4.0)
    assert g.reverse[1][0] is g.forward[0][0]


def test_load_reports_negative_cost_with_line_number():
    with pytest.raises(GraphFormatError, match="line 2.*negative"):
        load_graph("2\n0 1 -1 4\n")


def test_load_rejects_bad_field_count():
    with pytest.raises(GraphFormatError, match="line 3"):
        load_graph("2\n0 1 3 4\n0 1 3\n")


def test_load_rejects_non_finite_and_non_numeric():
    with pytest.raises(GraphFormatError, match="not finite"):
        load_graph("2\n0 1 inf 4\n")
    with pytest.raises(GraphFormatError, match="not a number"):
        load_graph("2\n0 1 x 4\n")


def test_load_rejects_self_loop_by_default():
    with pytest.raises(GraphFormatError, match="self-loop"):
        load_graph("2\n1 1 3 4\n")
    g = load_graph("2\n1 1 3 4\n0 1 1 1\n", allow_self_loops=True)
    assert g.edge_count == 2


def test_load_rejects_missing_header_and_bad_d():
    with pytest.raises(GraphFormatError, match="missing criterion count"):
        load_graph("# nothing\n")
    with pytest.raises(GraphFormatError, match="criterion count"):
        load_graph("1\n0 1 3\n")
    with pytest.raises(GraphFormatError, match="criterion count"):
        load_graph("9\n")


def test_transpose_symmetry_against_file_rescan():
    g = load_graph(io.StringIO(GRID_FILE))
    # independent rescan of the text
    seen = []
    for line in GRID_FILE.splitlines():
        line = line.strip()
        if not line or line.startswith("#") or len(line.split()) == 1:
            continue
        f = line.split()
        seen.append((int(f[0]), int(f[1]), (float(f[2]), float(f[3]))))
    forward = sorted((e.src, e.dst, e.cost) for adj in g.forward for e in adj)
    reverse = sorted((e.src, e.dst, e.cost) for adj in g.reverse for e in adj)
    assert forward == sorted(seen)
    assert reverse == sorted(seen)


def test_roundtrip_identity():
    g = load_graph(GRID_FILE)
    assert load_graph(dump_graph(g)) == g
    rg = generate_random(30, 90, d=3, rho=0.3, seed=5)
    assert load_graph(dump_graph(rg)) == rg


def test_parallel_edges_kept_as_distinct_records():
    g = load_graph("2\n0 1 3 4\n0 1 3 4\n0 1 1 9\n")
    assert g.edge_count == 3
    assert len(g.forward[0]) == 3


def test_compact_node_ids_remaps_sparse_ids():
    edges = [Edge(10, 70, (1.0, 2.0)), Edge(70, 400, (2.0, 1.0))]
    g, mapping = compact_node_ids(edges, 2)
    assert g.node_count == 3
    assert mapping == [10, 70, 400]
    assert g.forward[0][0].dst == 1


def test_grid_generator_is_deterministic():
    a = generate_grid(2, 2, d=2, seed=7)
    b = generate_grid(2, 2, d=2, seed=7)
    assert a == b
    assert dump_graph(a) == dump_graph(b)
    assert generate_grid(2, 2, d=2, seed=8) != a


def test_grid_3x3_has_9_nodes_24_directed_edges():
    g = generate_grid(3, 3, d=2, seed=0)
    assert g.node_count == 9
    assert g.edge_count == 24  # 12 undirected lattice edges, both directions


def test_random_generator_hits_target_correlation():
    g = generate_random(100, 300, d=2, rho=0.9, seed=1)
    assert abs(measure_correlation(g) - 0.9) <= 0.15


def test_random_generator_rejects_too_few_edges():
    with pytest.raises(ValueError, match="strongly connect"):
        generate_random(10, 9, d=2, seed=0)


def test_random_generator_strongly_connected():
    g = generate_random(40, 40, d=2, seed=3)  # bare cycle
    # walk forward from node 0; must reach every node
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for n in frontier:
            for e in g.forward[n]:
                if e.dst not in seen:
                    seen.add(e.dst)
                    nxt.append(e.dst)
        frontier = nxt
    assert len(seen) == 40


def test_sampler_rejects_infeasible_negative_rho():
    with pytest.raises(ValueError, match="infeasible"):
        CorrelatedCostSampler(4, -0.9, random.Random(0))


def test_generate_graph_dispatch_errors():
    with pytest.raises(ValueError, match="width and height"):
        generate_graph("grid")
    with pytest.raises(ValueError, match="unknown graph kind"):
        generate_graph("torus", width=2, height=2)


def test_costs_within_range_and_nonnegative():
    g = generate_random(50, 200, d=3, rho=-0.2, seed=9)
    for e in g.edges():
        assert len(e.cost) == 3
        for c in e.cost:
            assert 1.0 <= c < 10.0
