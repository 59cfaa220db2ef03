"""Synthetic graph generators with tunable inter-criterion cost correlation.

Stands in for real road-network data at desk scale.  Costs are drawn per
directed edge from a Gaussian copula: an equicorrelated normal vector
(pairwise correlation rho) is pushed through the normal CDF and scaled
linearly to [low, high).  The uniformized Pearson correlation is
(6/pi)*asin(rho/2), within a few percent of rho over the whole range,
so a target of rho=0.9 measures around 0.89.

Generation is deterministic for a fixed seed (stdlib ``random.Random``).
"""

import math
import random

from .graph import Edge, MultiCostGraph, MIN_CRITERIA, MAX_CRITERIA


def _equicorrelated_cholesky(d: int, rho: float) -> list[list[float]]:
    """Lower Cholesky factor of the d x d matrix with 1s on the diagonal and rho off it."""
    m = [[1.0 if i == j else rho for j in range(d)] for i in range(d)]
    lower = [[0.0] * d for _ in range(d)]
    for i in range(d):
        for j in range(i + 1):
            acc = sum(lower[i][k] * lower[j][k] for k in range(j))
            if i == j:
                lower[i][j] = math.sqrt(max(m[i][i] - acc, 0.0))
            elif lower[j][j] > 1e-12:
                lower[i][j] = (m[i][j] - acc) / lower[j][j]
    return lower


class CorrelatedCostSampler:
    """Draws cost vectors whose criterion pairs target Pearson correlation rho."""

    def __init__(self, d: int, rho: float, rng: random.Random,
                 low: float = 1.0, high: float = 10.0):
        if not MIN_CRITERIA <= d <= MAX_CRITERIA:
            raise ValueError(f"criterion count must be in [{MIN_CRITERIA}, {MAX_CRITERIA}], got {d}")
        if not -1.0 <= rho <= 1.0:
            raise ValueError(f"correlation must be in [-1, 1], got {rho}")
        if d > 2 and rho < -1.0 / (d - 1):
            raise ValueError(
                f"equicorrelation {rho} is infeasible for {d} criteria (minimum {-1.0 / (d - 1):.3f})")
        if not (0 <= low < high) or not math.isfinite(high):
            raise ValueError(f"cost range [{low}, {high}) is invalid")
        self.d = d
        self.rng = rng
        self.low = low
        self.high = high
        self._chol = _equicorrelated_cholesky(d, rho)

    def sample(self) -> tuple[float, ...]:
        g = [self.rng.gauss(0.0, 1.0) for _ in range(self.d)]
        span = self.high - self.low
        out = []
        for row in self._chol:
            z = sum(row[k] * g[k] for k in range(self.d))
            u = 0.5 * (1.0 + math.erf(z / math.sqrt(2.0)))
            out.append(self.low + span * u)
        return tuple(out)


def generate_grid(width: int, height: int, d: int = 2, rho: float = 0.0,
                  seed: int = 0, low: float = 1.0, high: float = 10.0) -> MultiCostGraph:
    """Bidirectional 4-neighbor lattice; node id = y*width + x.

    Every undirected lattice edge becomes two directed edges with
    independently drawn costs.
    """
    if width < 1 or height < 1:
        raise ValueError("grid dimensions must be positive")
    if width * height < 2:
        raise ValueError("grid needs at least two nodes")
    sampler = CorrelatedCostSampler(d, rho, random.Random(seed), low, high)
    edges: list[Edge] = []
    for y in range(height):
        for x in range(width):
            n = y * width + x
            if x + 1 < width:
                m = n + 1
                edges.append(Edge(n, m, sampler.sample()))
                edges.append(Edge(m, n, sampler.sample()))
            if y + 1 < height:
                m = n + width
                edges.append(Edge(n, m, sampler.sample()))
                edges.append(Edge(m, n, sampler.sample()))
    return MultiCostGraph(width * height, d, edges)


def generate_random(nodes: int, edges: int, d: int = 2, rho: float = 0.0,
                    seed: int = 0, low: float = 1.0, high: float = 10.0) -> MultiCostGraph:
    """Strongly connected random digraph: a random Hamiltonian cycle plus
    uniformly drawn extra edges (parallel edges permitted, self-loops not).

    Requires edges >= nodes so the connecting cycle fits.
    """
    if nodes < 2:
        raise ValueError("random graph needs at least two nodes")
    if edges < nodes:
        raise ValueError(
            f"{edges} edges cannot strongly connect {nodes} nodes (need at least {nodes})")
    rng = random.Random(seed)
    sampler = CorrelatedCostSampler(d, rho, rng, low, high)
    order = list(range(nodes))
    rng.shuffle(order)
    edge_list: list[Edge] = []
    for i in range(nodes):
        edge_list.append(Edge(order[i], order[(i + 1) % nodes], sampler.sample()))
    for _ in range(edges - nodes):
        u = rng.randrange(nodes)
        v = rng.randrange(nodes - 1)
        if v >= u:
            v += 1
        edge_list.append(Edge(u, v, sampler.sample()))
    return MultiCostGraph(nodes, d, edge_list)


def generate_graph(kind: str, *, width: int | None = None, height: int | None = None,
                   nodes: int | None = None, edges: int | None = None,
                   d: int = 2, rho: float = 0.0, seed: int = 0,
                   low: float = 1.0, high: float = 10.0) -> MultiCostGraph:
    """Dispatcher used by the CLI and the service."""
    if kind == "grid":
        if width is None or height is None:
            raise ValueError("grid generation needs width and height")
        return generate_grid(width, height, d=d, rho=rho, seed=seed, low=low, high=high)
    if kind == "random":
        if nodes is None:
            raise ValueError("random generation needs a node count")
        if edges is None:
            edges = 3 * nodes
        return generate_random(nodes, edges, d=d, rho=rho, seed=seed, low=low, high=high)
    raise ValueError(f"unknown graph kind {kind!r} (expected 'grid' or 'random')")


def measure_correlation(g: MultiCostGraph) -> float:
    """Mean pairwise Pearson correlation between criteria over all edge costs."""
    from statistics import correlation

    columns = [[] for _ in range(g.d)]
    for e in g.edges():
        for i, c in enumerate(e.cost):
            columns[i].append(c)
    if len(columns[0]) < 2:
        raise ValueError("need at least two edges to measure correlation")
    pairs = []
    for i in range(g.d):
        for j in range(i + 1, g.d):
            pairs.append(correlation(columns[i], columns[j]))
    return sum(pairs) / len(pairs)
