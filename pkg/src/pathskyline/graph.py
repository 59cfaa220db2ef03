"""Multicost graph model and edge-list text format.

A multicost graph is a directed graph whose edges carry a fixed-length
vector of d nonnegative costs (one per optimization criterion).  Both
adjacency directions are materialized because the lower-bound searches
traverse edges backwards.  Graphs are immutable after construction and
safe to share across concurrent query executions.

Text format (UTF-8), the sole persistent representation::

    # comment lines and blank lines are ignored
    2              <- first significant line: criterion count d
    0 1 3 4        <- "from to c_1 ... c_d", whitespace separated
    1 0 2.5 1

Node ids are dense nonnegative integers; the node count is one plus the
largest id referenced.
"""

import math
from dataclasses import dataclass
from typing import Iterable, TextIO

MIN_CRITERIA = 2
MAX_CRITERIA = 8


class GraphFormatError(ValueError):
    """Raised when edge-list text cannot be parsed into a valid graph."""


@dataclass(frozen=True, slots=True)
class Edge:
    src: int
    dst: int
    cost: tuple[float, ...]


class MultiCostGraph:
    """Directed graph with per-edge cost vectors and both adjacency directions."""

    __slots__ = ("node_count", "d", "forward", "reverse", "edge_count")

    def __init__(self, node_count: int, d: int, edges: Iterable[Edge],
                 allow_self_loops: bool = False):
        if not MIN_CRITERIA <= d <= MAX_CRITERIA:
            raise ValueError(f"criterion count must be in [{MIN_CRITERIA}, {MAX_CRITERIA}], got {d}")
        if node_count < 1:
            raise ValueError("graph needs at least one node")
        self.d = d
        self.node_count = node_count
        forward: list[list[Edge]] = [[] for _ in range(node_count)]
        reverse: list[list[Edge]] = [[] for _ in range(node_count)]
        count = 0
        for e in edges:
            self._check_edge(e, allow_self_loops)
            forward[e.src].append(e)
            reverse[e.dst].append(e)
            count += 1
        self.forward = forward
        self.reverse = reverse
        self.edge_count = count

    def _check_edge(self, e: Edge, allow_self_loops: bool) -> None:
        if not (0 <= e.src < self.node_count and 0 <= e.dst < self.node_count):
            raise ValueError(f"edge ({e.src}, {e.dst}) references a node outside [0, {self.node_count})")
        if e.src == e.dst and not allow_self_loops:
            raise ValueError(f"self-loop at node {e.src} (cannot lie on a simple nondominated path)")
        if len(e.cost) != self.d:
            raise ValueError(f"edge ({e.src}, {e.dst}) has {len(e.cost)} cost components, expected {self.d}")
        for c in e.cost:
            if not math.isfinite(c) or c < 0:
                raise ValueError(f"edge ({e.src}, {e.dst}) has invalid cost component {c!r}")

    def outgoing(self, n: int) -> list[Edge]:
        return self.forward[n]

    def incoming(self, n: int) -> list[Edge]:
        return self.reverse[n]

    def edges(self) -> Iterable[Edge]:
        for adj in self.forward:
            yield from adj

    def __eq__(self, other) -> bool:
        return (isinstance(other, MultiCostGraph)
                and self.node_count == other.node_count
                and self.d == other.d
                and self.forward == other.forward)

    def __repr__(self) -> str:
        return f"MultiCostGraph(nodes={self.node_count}, edges={self.edge_count}, d={self.d})"


@dataclass(frozen=True, slots=True)
class Path:
    """A simple path: adjacent edges, no node visited twice, cached cost sum.

    ``start`` disambiguates the empty path (used for s == t queries).
    Construct through :meth:`from_edges`, which validates the chain and
    computes the cost in canonical front-to-back order.
    """

    start: int
    edges: tuple[Edge, ...]
    cost: tuple[float, ...]

    @classmethod
    def from_edges(cls, edges: Iterable[Edge], *, start: int | None = None,
                   d: int | None = None) -> "Path":
        edges = tuple(edges)
        if not edges:
            if start is None or d is None:
                raise ValueError("empty path needs explicit start node and criterion count")
            return cls(start, (), (0.0,) * d)
        if start is not None and start != edges[0].src:
            raise ValueError(f"start {start} does not match first edge source {edges[0].src}")
        seen = {edges[0].src}
        cost = list(edges[0].cost)
        for prev, e in zip(edges, edges[1:]):
            if prev.dst != e.src:
                raise ValueError(f"broken adjacency: edge into {prev.dst} followed by edge from {e.src}")
            for i, c in enumerate(e.cost):
                cost[i] += c
        for e in edges:
            if e.dst in seen:
                raise ValueError(f"node {e.dst} visited twice; not a simple path")
            seen.add(e.dst)
        return cls(edges[0].src, edges, tuple(cost))

    @property
    def end(self) -> int:
        return self.edges[-1].dst if self.edges else self.start

    def nodes(self) -> list[int]:
        return [self.start] + [e.dst for e in self.edges]

    def __len__(self) -> int:
        return len(self.edges)


def path_cost(p: Path) -> tuple[float, ...]:
    """Component-wise sum of the path's edge costs (empty path: zero vector)."""
    if not p.edges:
        return p.cost
    total = [0.0] * len(p.edges[0].cost)
    for e in p.edges:
        for i, c in enumerate(e.cost):
            total[i] += c
    return tuple(total)


def _parse_cost(token: str, lineno: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise GraphFormatError(f"line {lineno}: cost component {token!r} is not a number") from None
    if not math.isfinite(value):
        raise GraphFormatError(f"line {lineno}: cost component {token!r} is not finite")
    if value < 0:
        raise GraphFormatError(f"line {lineno}: negative cost component {token!r}")
    return value


def load_graph(stream: TextIO | str, *, allow_self_loops: bool = False) -> MultiCostGraph:
    """Parse the edge-list text format into a graph.

    Accepts an open text stream or a string.  Errors carry 1-based line
    numbers.  The node count is 1 + the largest node id referenced.
    """
    if isinstance(stream, str):
        lines = stream.splitlines()
    else:
        lines = stream.read().splitlines()
    d = None
    edges: list[Edge] = []
    max_node = 0
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if d is None:
            try:
                d = int(line)
            except ValueError:
                raise GraphFormatError(f"line {lineno}: expected criterion count, got {line!r}") from None
            if not MIN_CRITERIA <= d <= MAX_CRITERIA:
                raise GraphFormatError(
                    f"line {lineno}: criterion count must be in [{MIN_CRITERIA}, {MAX_CRITERIA}], got {d}")
            continue
        tokens = line.split()
        if len(tokens) != 2 + d:
            raise GraphFormatError(
                f"line {lineno}: expected 'from to' plus {d} costs ({2 + d} fields), got {len(tokens)}")
        try:
            src, dst = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: node ids must be integers") from None
        if src < 0 or dst < 0:
            raise GraphFormatError(f"line {lineno}: node ids must be nonnegative")
        if src == dst and not allow_self_loops:
            raise GraphFormatError(f"line {lineno}: self-loop at node {src}")
        cost = tuple(_parse_cost(tok, lineno) for tok in tokens[2:])
        edges.append(Edge(src, dst, cost))
        max_node = max(max_node, src, dst)
    if d is None:
        raise GraphFormatError("empty input: missing criterion count header")
    return MultiCostGraph(max_node + 1, d, edges, allow_self_loops=allow_self_loops)


def _format_cost(value: float) -> str:
    if value == int(value) and abs(value) < 1e15:
        return str(int(value))
    return repr(value)


def dump_graph(g: MultiCostGraph) -> str:
    """Serialize to the edge-list text format; load_graph(dump_graph(g)) == g."""
    out = [str(g.d)]
    for adj in g.forward:
        for e in adj:
            out.append(f"{e.src} {e.dst} " + " ".join(_format_cost(c) for c in e.cost))
    return "\n".join(out) + "\n"


def compact_node_ids(edges: Iterable[Edge], d: int) -> tuple[MultiCostGraph, list[int]]:
    """Remap sparse external ids to dense ones.

    Returns the compacted graph and the dense->external id table.
    """
    edges = list(edges)
    external = sorted({e.src for e in edges} | {e.dst for e in edges})
    index = {ext: i for i, ext in enumerate(external)}
    remapped = [Edge(index[e.src], index[e.dst], e.cost) for e in edges]
    return MultiCostGraph(len(external), d, remapped), external
