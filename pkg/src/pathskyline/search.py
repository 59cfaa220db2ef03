"""Label-correcting path skyline search and the query front door.

The search keeps, per visited node, a skyline of locally nondominated
partial s->node paths with processed flags, and a queue of node entries
keyed by the sum of the per-criterion minima of that skyline.  Popping an
entry extends every unprocessed path that survives the global domination
check over all outgoing edges; candidates register at their target node
only if locally nondominated there.  Paths reaching t land in the result
skyline, which doubles as the path set the global check prunes against.

With lower bounds attached, the result is seeded with the per-criterion
shortest paths and the global check projects each partial path to
max(cost + lb(node -> t), lb(s -> t)); without them every estimate is
the zero vector and the check degrades to plain domination by a found
path.  Either way the returned cost-vector set is exactly the pareto
front, one witness path per distinct cost vector.

Partial paths are parent-linked records; only result paths are
materialized to edge lists.  Cyclic extensions need no explicit test: a
walk returning to a node is dominated by (or duplicates) the stored
prefix there and fails registration.
"""

import math
from dataclasses import dataclass
from heapq import heappop, heappush
from operator import add
from time import perf_counter

from .bounds import (LowerBoundResult, QueryTimeout, bidirectional_pareto_prep,
                     double_dijkstra, multi_dijkstra, pareto_prep)
from .dominance import Skyline, SortedSkyline2D, make_skyline
from .graph import MultiCostGraph, Path

INF = math.inf

BOUND_METHODS = {
    "none": None,
    "pp": pareto_prep,
    "bpp": bidirectional_pareto_prep,
    "md": multi_dijkstra,
    "dd": double_dijkstra,
}


class _PathRec:
    """Partial path as a parent-linked record ending at ``node``."""

    __slots__ = ("node", "edge", "parent", "cost", "processed")

    def __init__(self, node, edge, parent, cost):
        self.node = node
        self.edge = edge
        self.parent = parent
        self.cost = cost
        self.processed = False


def _materialize(item, d: int) -> Path:
    if isinstance(item, Path):
        return item
    edges = []
    rec = item
    while rec.edge is not None:
        edges.append(rec.edge)
        rec = rec.parent
    if not edges:
        return Path.from_edges((), start=rec.node, d=d)
    edges.reverse()
    return Path.from_edges(edges)


def _audit_node_table(table) -> None:
    """O(n^2) pairwise nondomination scan over every local skyline."""
    from .dominance import dominates

    for node, entry in table.items():
        costs = entry.costs()
        for i, a in enumerate(costs):
            for b in costs[i + 1:]:
                if dominates(a, b) or dominates(b, a) or a == b:
                    raise AssertionError(
                        f"local skyline at node {node} holds comparable costs {a} and {b}")


def label_correcting_search(g: MultiCostGraph, s: int, t: int,
                            bounds: LowerBoundResult | None = None, *,
                            global_check: bool = True,
                            deadline: float | None = None,
                            stats: dict | None = None,
                            audit: bool = False) -> Skyline | SortedSkyline2D:
    """Compute the full path skyline S(s, t); returns a container of Paths.

    ``bounds`` must have been produced for the same (s, t).  Disabling
    ``global_check`` degenerates into the single-source-style exhaustive
    search (skylines to every reachable node get fully assembled).
    """
    d = g.d
    for name, v in (("source", s), ("target", t)):
        if not isinstance(v, int) or not 0 <= v < g.node_count:
            raise ValueError(f"{name} node {v!r} outside [0, {g.node_count})")
    if s == t:
        raise ValueError("source and target must differ (degenerate query handled by answer_query)")
    if bounds is not None and (bounds.source != s or bounds.target != t):
        raise ValueError(
            f"bounds were computed for ({bounds.source}, {bounds.target}), not ({s}, {t})")

    result = make_skyline(d)
    zero = (0.0,) * d
    if bounds is not None:
        for cost, item in bounds.shortest_paths:
            result.insert(cost, item)
        labels = bounds.labels
        lb_s_t = tuple(x if math.isfinite(x) else 0.0 for x in bounds.lb_s_t)
        floor = bounds.missing_label_floor
    else:
        labels = {}
        lb_s_t = zero
        floor = zero

    lb_cache: dict[int, tuple[float, ...]] = {}

    def lb_to_t(n: int) -> tuple[float, ...]:
        v = lb_cache.get(n)
        if v is None:
            lab = labels.get(n)
            v = floor if lab is None else tuple(
                x if x < INF else f for x, f in zip(lab.lb, floor))
            lb_cache[n] = v
        return v

    out_adj = g.forward
    table: dict[int, Skyline | SortedSkyline2D] = {}
    heap: list[tuple[float, int]] = []
    # conservative per-node count of unprocessed paths, so duplicate queue
    # entries are skipped without rescanning the local skyline
    pending: dict[int, int] = {}
    assembled = 0
    have_bounds = bounds is not None
    result_dominates = result.dominates
    result_insert = result.insert
    table_get = table.get
    pending_get = pending.get

    def extend(node: int, recs: list[_PathRec]) -> None:
        nonlocal assembled
        lbv = lb_to_t(node)
        edges = out_adj[node]
        for p in recs:
            p.processed = True
            pc = p.cost
            if global_check:
                # without bounds the projection collapses to the path cost
                projected = tuple(map(max, map(add, pc, lbv), lb_s_t)) if have_bounds else pc
                if result_dominates(projected):
                    continue
            for e in edges:
                ncost = tuple(map(add, pc, e.cost))
                assembled += 1
                w = e.dst
                if w == t:
                    result_insert(ncost, _PathRec(w, e, p, ncost))
                    continue
                entry = table_get(w)
                if entry is None:
                    entry = table[w] = make_skyline(d)
                elif entry.rejects(ncost):
                    continue
                entry.insert(ncost, _PathRec(w, e, p, ncost))
                pending[w] = pending_get(w, 0) + 1
                heappush(heap, (entry.min_sum(), w))

    # the empty path at s seeds the search and absorbs any walk cycling back
    root = _PathRec(s, None, None, zero)
    start_entry = make_skyline(d)
    start_entry.insert(zero, root)
    table[s] = start_entry
    extend(s, [root])

    while heap:
        if deadline is not None and perf_counter() > deadline:
            raise QueryTimeout("skyline search exceeded its deadline")
        _, node = heappop(heap)
        if pending_get(node, 0) == 0:
            continue
        pending[node] = 0
        todo = [rec for _, rec in table[node] if not rec.processed]
        if todo:
            extend(node, todo)

    if audit:
        _audit_node_table(table)

    paths = sorted((_materialize(item, d) for _, item in result), key=lambda p: p.cost)
    final = make_skyline(d)
    for p in paths:
        final.insert(p.cost, p)
    if stats is not None:
        stats["assembled_paths"] = assembled
        stats["search_visited_nodes"] = len(table) - 1  # minus the start sentinel
    return final


@dataclass
class QueryMetrics:
    visited_node_count: int = 0
    bound_visited_nodes: int = 0
    bound_relaxed_edges: int = 0
    search_visited_nodes: int = 0
    assembled_paths: int = 0
    skyline_size: int = 0
    bound_seconds: float = 0.0
    search_seconds: float = 0.0
    total_seconds: float = 0.0


@dataclass
class QueryResult:
    source: int
    target: int
    method: str
    d: int
    paths: list[Path]
    unreachable: bool
    metrics: QueryMetrics

    def cost_vectors(self) -> list[tuple[float, ...]]:
        return [p.cost for p in self.paths]


def answer_query(g: MultiCostGraph, s: int, t: int, method: str = "pp", *,
                 global_check: bool = True,
                 deadline: float | None = None) -> QueryResult:
    """Run the selected bound algorithm (or none) followed by the pruned
    label-correcting search.  All methods return the same skyline cost set.

    The headline visited_node_count is the preparation phase's node-entry
    count for methods with one, otherwise the search's own; both raw
    numbers are always in the metrics.
    """
    if method not in BOUND_METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {sorted(BOUND_METHODS)}")
    for name, v in (("source", s), ("target", t)):
        if not isinstance(v, int) or not 0 <= v < g.node_count:
            raise ValueError(f"{name} node {v!r} outside [0, {g.node_count})")
    if method == "dd" and g.d != 2:
        raise ValueError(f"method 'dd' supports exactly 2 criteria, graph has {g.d}")

    t0 = perf_counter()
    if s == t:
        trivial = Path.from_edges((), start=s, d=g.d)
        metrics = QueryMetrics(skyline_size=1, total_seconds=perf_counter() - t0)
        return QueryResult(s, t, method, g.d, [trivial], False, metrics)

    bounds = None
    bound_seconds = 0.0
    if method != "none":
        tb = perf_counter()
        bounds = BOUND_METHODS[method](g, s, t, deadline=deadline)
        bound_seconds = perf_counter() - tb
        if not bounds.reachable:
            metrics = QueryMetrics(
                visited_node_count=bounds.visited_node_count,
                bound_visited_nodes=bounds.visited_node_count,
                bound_relaxed_edges=bounds.relaxed_edge_count,
                bound_seconds=bound_seconds,
                total_seconds=perf_counter() - t0,
            )
            return QueryResult(s, t, method, g.d, [], True, metrics)

    stats: dict = {}
    ts = perf_counter()
    sky = label_correcting_search(g, s, t, bounds, global_check=global_check,
                                  deadline=deadline, stats=stats)
    search_seconds = perf_counter() - ts
    paths = [item for _, item in sky]
    bound_visited = bounds.visited_node_count if bounds is not None else 0
    metrics = QueryMetrics(
        visited_node_count=bound_visited if method != "none" else stats["search_visited_nodes"],
        bound_visited_nodes=bound_visited,
        bound_relaxed_edges=bounds.relaxed_edge_count if bounds is not None else 0,
        search_visited_nodes=stats["search_visited_nodes"],
        assembled_paths=stats["assembled_paths"],
        skyline_size=len(paths),
        bound_seconds=bound_seconds,
        search_seconds=search_seconds,
        total_seconds=perf_counter() - t0,
    )
    return QueryResult(s, t, method, g.d, paths, not paths, metrics)
