"""Query-time lower-bound searches.

Four algorithms compute, for a query (s, t), per-node vectors of lower
bounds on the remaining cost to t plus the single-criterion shortest
s->t paths:

* ``pareto_prep`` — one backward label-correcting traversal from t that
  relaxes all criteria at once and prunes nodes whose bound vector is
  dominated by an s->t path already found.
* ``bidirectional_pareto_prep`` — adds a forward twin from s; once both
  searches have expanded a common rendezvous node, the forward side is
  frozen and its labels strengthen the backward pruning check.
* ``multi_dijkstra`` — d independent full reverse Dijkstra sweeps.
* ``double_dijkstra`` — the two-criteria variant that stops each sweep
  once the frontier passes the other criterion's upper bound.

All four produce exact per-criterion optima at s.  Relaxations break
cost ties lexicographically by the sum of the remaining criteria along
the chain, so each reconstructed shortest path is nondominated even when
several paths share the optimal value.
"""

import math
from dataclasses import dataclass, field
from heapq import heappop, heappush
from time import perf_counter
from typing import Callable

from .dominance import Skyline, SortedSkyline2D, make_skyline
from .graph import Edge, MultiCostGraph, Path

INF = math.inf


class QueryTimeout(RuntimeError):
    """Raised by a search that ran past its cooperative deadline."""


class NodeLabel:
    """Per-node search state: bound vector, tie-break accumulator, successor edges.

    ``lb[i]`` is the cost (criterion i) of the best chain to the search
    root found so far, +inf while unvisited.  ``succ[i]`` is the first
    edge of that chain; ``aux[i]`` accumulates the other criteria's cost
    along it and orders ties.
    """

    __slots__ = ("lb", "aux", "succ")

    def __init__(self, lb: list[float], aux: list[float], succ: list[Edge | None]):
        self.lb = lb
        self.aux = aux
        self.succ = succ

    @classmethod
    def unvisited(cls, d: int) -> "NodeLabel":
        return cls([INF] * d, [INF] * d, [None] * d)

    @classmethod
    def zero(cls, d: int) -> "NodeLabel":
        return cls([0.0] * d, [0.0] * d, [None] * d)


@dataclass
class ForwardBoundContext:
    """Frozen state of the forward half of bidirectional ParetoPrep."""

    forward_labels: dict[int, NodeLabel]
    mincost_beta: tuple[float, ...]
    rendezvous: int | None


@dataclass
class LowerBoundResult:
    source: int
    target: int
    method: str
    labels: dict[int, NodeLabel]
    shortest_paths: Skyline | SortedSkyline2D
    lb_s_t: tuple[float, ...]
    visited_node_count: int
    relaxed_edge_count: int
    forward: ForwardBoundContext | None = None
    # Valid per-criterion lower bound on the n->t cost for any node n whose
    # label (or label component) is missing.  ParetoPrep variants: every
    # continuation to t from an unlabeled node crosses a domination-skipped
    # frontier node, so the frontier's component minimum applies (+inf when
    # nothing was skipped: unlabeled then means t is unreachable).
    # MultiDijkstra: unlabeled means unreachable (+inf).  DoubleDijkstra: a
    # node its criterion-k sweep never settled has distance >= that sweep's
    # stopping bound.
    missing_label_floor: tuple[float, ...] = ()

    def __post_init__(self):
        if not self.missing_label_floor:
            self.missing_label_floor = (0.0,) * len(self.lb_s_t)

    @property
    def reachable(self) -> bool:
        return math.isfinite(self.lb_s_t[0])


def _validate_query(g: MultiCostGraph, s: int, t: int) -> None:
    for name, v in (("source", s), ("target", t)):
        if not isinstance(v, int) or not 0 <= v < g.node_count:
            raise ValueError(f"{name} node {v!r} outside [0, {g.node_count})")
    if s == t:
        raise ValueError("source and target must differ")


def reconstruct_path(s: int, t: int, labels: dict[int, NodeLabel], i: int) -> Path:
    """Follow the criterion-i successor chain from s to t.

    The chain's criterion-i cost telescopes to labels[s].lb[i].  A broken
    or cyclic chain is an internal invariant violation.
    """
    lab = labels.get(s)
    if lab is None or lab.succ[i] is None:
        raise ValueError(f"no criterion-{i} successor chain at node {s}")
    edges = []
    node = s
    limit = len(labels) + 1
    while node != t:
        nxt = labels[node].succ[i] if node in labels else None
        if nxt is None:
            raise RuntimeError(f"successor chain for criterion {i} breaks at node {node}")
        edges.append(nxt)
        node = nxt.dst
        if len(edges) > limit:
            raise RuntimeError(f"successor chain for criterion {i} exceeds node count (cycle)")
    return Path.from_edges(edges)


class _PrepEngine:
    """One direction of a ParetoPrep search.

    Backward form (incoming=True): root is the query target, edges are
    relaxed against their sources, and a completed chain at ``terminal``
    (the query source) is an s->t path.  The forward twin mirrors every
    role.  ``terminal`` is never enqueued.

    The open set is a lazy heap keyed by the linear sum of the label
    vector (ties then broken by node id): label improvements re-push, and
    pops whose key no longer matches the current sum are stale.  Label
    sums only decrease, so the matching entry is always present.
    """

    def __init__(self, g: MultiCostGraph, root: int, terminal: int, incoming: bool,
                 sky: Skyline | SortedSkyline2D, deadline: float | None = None):
        self.g = g
        self.d = g.d
        self.root = root
        self.terminal = terminal
        self.incoming = incoming
        self.sky = sky
        self.deadline = deadline
        self.labels: dict[int, NodeLabel] = {root: NodeLabel.zero(g.d)}
        self.heap: list[tuple[float, int]] = [(0.0, root)]
        self.open_ids: set[int] = {root}
        self.skipped: set[int] = set()
        self.expanded: set[int] = set()
        self.relaxed = 0
        self.estimator: Callable[[int], tuple[float, ...]] | None = None
        self.last_expanded: int | None = None

    def step(self) -> bool:
        """Run one node selection (steps 2-5); False once the open set is empty."""
        if self.deadline is not None and perf_counter() > self.deadline:
            raise QueryTimeout("lower-bound search exceeded its deadline")
        self.last_expanded = None
        heap, open_ids, labels = self.heap, self.open_ids, self.labels
        while heap:
            key, n = heappop(heap)
            if n not in open_ids:
                continue
            lab = labels[n]
            if key != sum(lab.lb):
                continue  # improved since this entry was pushed
            open_ids.discard(n)
            self._process(n, lab)
            return True
        return False

    def _process(self, n: int, lab: NodeLabel) -> None:
        # step 3: skip nodes that cannot lie on a nondominated s->t path
        vec = tuple(lab.lb)
        if self.estimator is not None:
            est = self.estimator(n)
            vec = tuple(a + b for a, b in zip(vec, est))
        if self.sky.dominates(vec):
            self.skipped.add(n)
            return
        # step 4: relax the neighbors feeding this node
        self.skipped.discard(n)
        self.expanded.add(n)
        self.last_expanded = n
        d = self.d
        lb_n, aux_n = lab.lb, lab.aux
        terminal, labels = self.terminal, self.labels
        terminal_dims: list[int] = []
        edges = self.g.reverse[n] if self.incoming else self.g.forward[n]
        for e in edges:
            self.relaxed += 1
            m = e.src if self.incoming else e.dst
            lab_m = labels.get(m)
            if lab_m is None:
                lab_m = labels[m] = NodeLabel.unvisited(d)
            ecost = e.cost
            etotal = sum(ecost)
            lb_m, aux_m = lab_m.lb, lab_m.aux
            changed = False
            for i in range(d):
                cand = lb_n[i] + ecost[i]
                cur = lb_m[i]
                if cand > cur:
                    continue
                cand_aux = aux_n[i] + (etotal - ecost[i])
                if cand == cur and cand_aux >= aux_m[i]:
                    continue
                lb_m[i] = cand
                aux_m[i] = cand_aux
                lab_m.succ[i] = e
                changed = True
                if m == terminal:
                    terminal_dims.append(i)
            if changed and m != terminal:
                if m not in self.open_ids:
                    self.open_ids.add(m)
                heappush(self.heap, (sum(lb_m), m))
        # step 5: a full chain reached the terminal; register the s->t path
        for i in dict.fromkeys(terminal_dims):
            p = self._build_terminal_path(i)
            self.sky.insert(p.cost, p)

    def _build_terminal_path(self, i: int) -> Path:
        edges = self._chain_edges(self.terminal, i)
        if not self.incoming:
            edges.reverse()
        return Path.from_edges(edges)

    def _chain_edges(self, start: int, i: int) -> list[Edge]:
        """Successor chain from start to this engine's root, in traversal order."""
        labels = self.labels
        limit = len(labels) + 1
        edges: list[Edge] = []
        node = start
        while node != self.root:
            e = labels[node].succ[i]
            if e is None:
                raise RuntimeError(f"successor chain for criterion {i} breaks at node {node}")
            edges.append(e)
            node = e.dst if self.incoming else e.src
            if len(edges) > limit:
                raise RuntimeError(f"successor chain for criterion {i} exceeds node count (cycle)")
        return edges

    def suffix_floor(self) -> tuple[float, ...]:
        """Component minimum over the skipped frontier once the open set is
        drained.  Any simple continuation from an unlabeled node to the root
        crosses a skipped node (it cannot revisit ``terminal``, and a chain
        of nodes expanded with their current labels would have labeled it),
        so this bounds those continuations from below."""
        acc = [INF] * self.d
        for n in self.skipped:
            lb = self.labels[n].lb
            for i, x in enumerate(lb):
                if x < acc[i]:
                    acc[i] = x
        return tuple(acc)


def _finalize(method: str, g: MultiCostGraph, s: int, t: int,
              labels: dict[int, NodeLabel], visited: int, relaxed: int,
              forward: ForwardBoundContext | None = None,
              floor: tuple[float, ...] = ()) -> LowerBoundResult:
    """Package a finished search: rebuild the per-criterion optima from the
    final successor chains (the running pruning set may hold stale
    intermediate paths) and report unreachability explicitly."""
    d = g.d
    lab_s = labels.get(s)
    final = make_skyline(d)
    if lab_s is None:
        lb_s_t = (INF,) * d
    else:
        lb_s_t = tuple(lab_s.lb)
        for i in range(d):
            if math.isfinite(lab_s.lb[i]):
                p = reconstruct_path(s, t, labels, i)
                final.insert(p.cost, p)
    return LowerBoundResult(
        source=s, target=t, method=method, labels=labels, shortest_paths=final,
        lb_s_t=lb_s_t, visited_node_count=visited, relaxed_edge_count=relaxed,
        forward=forward, missing_label_floor=floor,
    )


def pareto_prep(g: MultiCostGraph, s: int, t: int, *,
                deadline: float | None = None) -> LowerBoundResult:
    """Single backward traversal computing all d lower-bound vectors and the
    per-criterion shortest s->t paths."""
    _validate_query(g, s, t)
    sky = make_skyline(g.d)
    eng = _PrepEngine(g, root=t, terminal=s, incoming=True, sky=sky, deadline=deadline)
    while eng.step():
        pass
    return _finalize("pp", g, s, t, eng.labels, len(eng.labels), eng.relaxed,
                     floor=eng.suffix_floor())


def _frontier_min(eng: _PrepEngine) -> tuple[float, ...]:
    """Component-wise minimum label over the engine's frontier (open plus
    domination-skipped nodes).  Every path leaving the explored region
    crosses the frontier, so this lower-bounds the remaining searches."""
    acc = [INF] * eng.d
    for n in eng.open_ids | eng.skipped:
        lb = eng.labels[n].lb
        for i, x in enumerate(lb):
            if x < acc[i]:
                acc[i] = x
    return tuple(acc)


def _splice_walk(edges: list[Edge], start: int) -> list[Edge]:
    """Drop cycles from an edge walk, keeping a simple path with <= cost."""
    kept: list[Edge] = []
    nodes = [start]
    index = {start: 0}
    for e in edges:
        if e.dst in index:
            k = index[e.dst]
            for n in nodes[k + 1:]:
                del index[n]
            del kept[k:]
            del nodes[k + 1:]
        else:
            kept.append(e)
            nodes.append(e.dst)
            index[e.dst] = len(nodes) - 1
    return kept


def _seed_rendezvous_paths(g: MultiCostGraph, s: int, t: int, fwd: _PrepEngine,
                           bwd: _PrepEngine, r: int,
                           sky: Skyline | SortedSkyline2D) -> None:
    """Merge the current forward s->r and backward r->t chains per criterion
    into s->t paths (cycles spliced out) and register them for pruning."""
    for i in range(g.d):
        fwd_edges = fwd._chain_edges(r, i)
        fwd_edges.reverse()
        walk = fwd_edges + bwd._chain_edges(r, i)
        p = Path.from_edges(_splice_walk(walk, s))
        sky.insert(p.cost, p)


def bidirectional_pareto_prep(g: MultiCostGraph, s: int, t: int, *,
                              deadline: float | None = None) -> LowerBoundResult:
    """ParetoPrep from both ends.

    The searches alternate single node selections (backward first) until
    one exhausts or both have expanded a common rendezvous node.  At that
    point the forward side freezes: its frontier minimum and node labels
    become lower bounds on the s->n prefix cost, sharpening the backward
    domination check, and the merged per-criterion s->t chains seed the
    pruning set.  Returns the same contract as ``pareto_prep``.
    """
    _validate_query(g, s, t)
    sky = make_skyline(g.d)
    bwd = _PrepEngine(g, root=t, terminal=s, incoming=True, sky=sky, deadline=deadline)
    fwd = _PrepEngine(g, root=s, terminal=t, incoming=False, sky=sky, deadline=deadline)
    rendezvous = None
    while True:
        if not bwd.step():
            # backward finished before meeting: already a complete run
            return _finalize(
                "bpp", g, s, t, bwd.labels,
                len(bwd.labels) + len(fwd.labels), bwd.relaxed + fwd.relaxed,
                forward=ForwardBoundContext(fwd.labels, _frontier_min(fwd), None),
                floor=bwd.suffix_floor())
        if bwd.last_expanded is not None and bwd.last_expanded in fwd.expanded:
            rendezvous = bwd.last_expanded
            break
        if not fwd.step():
            break  # forward region exhausted; freeze whatever frontier is left
        if fwd.last_expanded is not None and fwd.last_expanded in bwd.expanded:
            rendezvous = fwd.last_expanded
            break
    mincost = _frontier_min(fwd)
    if rendezvous is not None:
        _seed_rendezvous_paths(g, s, t, fwd, bwd, rendezvous, sky)
    fwd_labels = fwd.labels

    def estimate(n: int) -> tuple[float, ...]:
        lab = fwd_labels.get(n)
        if lab is None:
            return mincost
        return tuple(a if a < b else b for a, b in zip(lab.lb, mincost))

    bwd.estimator = estimate
    while bwd.step():
        pass
    return _finalize(
        "bpp", g, s, t, bwd.labels,
        len(bwd.labels) + len(fwd.labels), bwd.relaxed + fwd.relaxed,
        forward=ForwardBoundContext(fwd_labels, mincost, rendezvous),
        floor=bwd.suffix_floor())


class _LexDijkstra:
    """Reverse Dijkstra from the target for one criterion.

    Keys are (distance, other-criteria sum) pairs so equal-distance ties
    settle on the chain with the least remaining cost; the reconstructed
    optimum is then nondominated.  Only settled nodes carry exact values.
    """

    def __init__(self, g: MultiCostGraph, root: int, crit: int,
                 deadline: float | None = None):
        self.g = g
        self.i = crit
        self.deadline = deadline
        self.dist: dict[int, float] = {root: 0.0}
        self.aux: dict[int, float] = {root: 0.0}
        self.succ: dict[int, Edge] = {}
        self.done: set[int] = set()
        self.heap: list[tuple[float, float, int]] = [(0.0, 0.0, root)]
        self.relaxed = 0

    def run(self, *, stop_node: int | None = None,
            strict_cap: float | None = None) -> None:
        """Settle nodes in key order; stop after settling stop_node or once
        no frontier distance is strictly below strict_cap."""
        heap, dist, aux, done = self.heap, self.dist, self.aux, self.done
        g, i = self.g, self.i
        while heap:
            if strict_cap is not None and heap[0][0] >= strict_cap:
                return
            if self.deadline is not None and perf_counter() > self.deadline:
                raise QueryTimeout("lower-bound search exceeded its deadline")
            dn, an, n = heappop(heap)
            if n in done or dn != dist[n] or an != aux[n]:
                continue
            done.add(n)
            for e in g.reverse[n]:
                self.relaxed += 1
                m = e.src
                if m in done:
                    continue
                nd = dn + e.cost[i]
                na = an + (sum(e.cost) - e.cost[i])
                cur = dist.get(m, INF)
                if nd < cur or (nd == cur and na < aux[m]):
                    dist[m] = nd
                    aux[m] = na
                    self.succ[m] = e
                    heappush(heap, (nd, na, m))
            if n == stop_node:
                return

    def reconstruct(self, s: int, t: int) -> Path:
        edges = []
        node = s
        limit = len(self.dist) + 1
        while node != t:
            e = self.succ.get(node)
            if e is None:
                raise RuntimeError(f"criterion-{self.i} chain breaks at node {node}")
            edges.append(e)
            node = e.dst
            if len(edges) > limit:
                raise RuntimeError(f"criterion-{self.i} chain exceeds node count (cycle)")
        return Path.from_edges(edges)


def _merge_runs(g: MultiCostGraph, runs: list[_LexDijkstra]) -> dict[int, NodeLabel]:
    """Combine per-criterion sweeps into one label table.

    A component is finite only where its sweep settled the node; frontier
    estimates are not lower bounds and stay at the unvisited sentinel.
    """
    d = g.d
    labels: dict[int, NodeLabel] = {}
    for i, run in enumerate(runs):
        for n in run.done:
            lab = labels.get(n)
            if lab is None:
                lab = labels[n] = NodeLabel.unvisited(d)
            lab.lb[i] = run.dist[n]
            lab.aux[i] = run.aux[n]
            lab.succ[i] = run.succ.get(n)
    return labels


def multi_dijkstra(g: MultiCostGraph, s: int, t: int, *,
                   deadline: float | None = None) -> LowerBoundResult:
    """One full reverse Dijkstra sweep per criterion; exact bounds everywhere
    that reaches t, at the price of processing the whole graph d times."""
    _validate_query(g, s, t)
    runs = []
    visited = 0
    relaxed = 0
    for i in range(g.d):
        run = _LexDijkstra(g, t, i, deadline=deadline)
        run.run()
        runs.append(run)
        visited += len(run.dist)
        relaxed += run.relaxed
    labels = _merge_runs(g, runs)
    return _finalize("md", g, s, t, labels, visited, relaxed, floor=(INF,) * g.d)


def double_dijkstra(g: MultiCostGraph, s: int, t: int, *,
                    deadline: float | None = None) -> LowerBoundResult:
    """Two-criteria MultiDijkstra with early termination.

    Each sweep first runs until it settles s, which yields the other
    criterion's upper bound (the skyline's weakest value there), then both
    sweeps continue only while some frontier node is strictly below their
    own criterion's bound.
    """
    if g.d != 2:
        raise ValueError(f"double_dijkstra supports exactly 2 criteria, graph has {g.d}")
    _validate_query(g, s, t)
    runs = [_LexDijkstra(g, t, i, deadline=deadline) for i in range(2)]
    for run in runs:
        run.run(stop_node=s)
    if s not in runs[0].done or s not in runs[1].done:
        labels = _merge_runs(g, runs)
        visited = len(runs[0].dist) + len(runs[1].dist)
        return _finalize("dd", g, s, t, labels, visited,
                         runs[0].relaxed + runs[1].relaxed, floor=(INF, INF))
    optimum = [run.reconstruct(s, t) for run in runs]
    caps = (optimum[1].cost[0], optimum[0].cost[1])
    for run, cap in zip(runs, caps):
        run.run(strict_cap=cap)
    labels = _merge_runs(g, runs)
    visited = len(runs[0].dist) + len(runs[1].dist)
    return _finalize("dd", g, s, t, labels, visited,
                     runs[0].relaxed + runs[1].relaxed, floor=caps)
