import random

import pytest

from pathskyline.graph import Edge, MultiCostGraph


def build_random_int_graph(rng: random.Random, n: int, m: int, d: int) -> MultiCostGraph:
    """Random digraph with uniform integer costs in 1..10 (exact float sums)."""
    edges = []
    for _ in range(m):
        u = rng.randrange(n)
        v = rng.randrange(n - 1)
        if v >= u:
            v += 1
        edges.append(Edge(u, v, tuple(float(rng.randint(1, 10)) for _ in range(d))))
    return MultiCostGraph(n, d, edges)


@pytest.fixture
def diamond() -> MultiCostGraph:
    """Worked four-node example: s=0, t=3, skyline {(3,4), (6,3)}.

    0->1->3 costs (3,4); 0->1->2->3 costs (6,3); per-criterion optima at
    the source are therefore (3,3).
    """
    edges = [
        Edge(0, 1, (1.0, 1.0)),
        Edge(1, 3, (2.0, 3.0)),
        Edge(1, 2, (2.0, 1.0)),
        Edge(2, 3, (3.0, 1.0)),
    ]
    return MultiCostGraph(4, 2, edges)


@pytest.fixture
def single_edge() -> MultiCostGraph:
    return MultiCostGraph(2, 2, [Edge(0, 1, (3.0, 4.0))])
