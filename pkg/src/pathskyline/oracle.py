"""Deliberately naive reference implementations for testing.

These share no search machinery with the production algorithms: the
skyline oracle enumerates every simple s->t path outright, and the
single-criterion oracle is a textbook forward Dijkstra.  Both exist to
pin down expected values independently.
"""

import math
from heapq import heappop, heappush

from .dominance import Skyline
from .graph import MultiCostGraph, Path

DEFAULT_NODE_LIMIT = 14


def brute_force_skyline(g: MultiCostGraph, s: int, t: int,
                        node_limit: int = DEFAULT_NODE_LIMIT) -> Skyline:
    """Exact pareto front of s->t cost vectors by exhaustive enumeration.

    Depth-first over all simple paths with no pruning whatsoever; refuses
    graphs beyond node_limit because the path count explodes.
    """
    if g.node_count > node_limit:
        raise ValueError(
            f"graph has {g.node_count} nodes; exhaustive enumeration is capped at {node_limit}")
    for name, v in (("source", s), ("target", t)):
        if not 0 <= v < g.node_count:
            raise ValueError(f"{name} node {v!r} outside [0, {g.node_count})")
    sky = Skyline()
    if s == t:
        sky.insert((0.0,) * g.d, Path.from_edges((), start=s, d=g.d))
        return sky
    on_path = [False] * g.node_count
    on_path[s] = True
    stack: list = []

    def visit(node: int, cost: tuple[float, ...]) -> None:
        for e in g.forward[node]:
            w = e.dst
            total = tuple(a + b for a, b in zip(cost, e.cost))
            if w == t:
                sky.insert(total, Path.from_edges([*stack, e]))
            elif not on_path[w]:
                on_path[w] = True
                stack.append(e)
                visit(w, total)
                stack.pop()
                on_path[w] = False

    visit(s, (0.0,) * g.d)
    return sky


def dijkstra_single(g: MultiCostGraph, s: int, t: int, i: int) -> tuple[float, Path | None]:
    """Textbook shortest path on forward edges using only cost component i.

    Returns (inf, None) when t is unreachable.
    """
    if not 0 <= i < g.d:
        raise ValueError(f"criterion {i} outside [0, {g.d})")
    for name, v in (("source", s), ("target", t)):
        if not 0 <= v < g.node_count:
            raise ValueError(f"{name} node {v!r} outside [0, {g.node_count})")
    if s == t:
        return 0.0, Path.from_edges((), start=s, d=g.d)
    dist = {s: 0.0}
    pred = {}
    done = set()
    heap = [(0.0, s)]
    while heap:
        dn, n = heappop(heap)
        if n in done:
            continue
        done.add(n)
        if n == t:
            break
        for e in g.forward[n]:
            w = e.dst
            if w in done:
                continue
            nd = dn + e.cost[i]
            if nd < dist.get(w, math.inf):
                dist[w] = nd
                pred[w] = e
                heappush(heap, (nd, w))
    if t not in done:
        return math.inf, None
    edges = []
    node = t
    while node != s:
        e = pred[node]
        edges.append(e)
        node = e.src
    edges.reverse()
    return dist[t], Path.from_edges(edges)
