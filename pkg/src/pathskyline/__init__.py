"""Pareto-optimal (skyline) path queries over directed multicost graphs.

Core pieces: the multicost graph model with a text edge-list format and
synthetic generators; dominance relations and skyline containers; the
lower-bound searches (ParetoPrep, its bidirectional variant, and the
MultiDijkstra / DoubleDijkstra baselines); the pruned label-correcting
search that assembles the full path skyline; brute-force oracles for
verification; and a benchmark harness.  An HTTP service lives in
``pathskyline.service`` and a CLI in ``pathskyline.cli``.
"""

__version__ = "0.1.0"

from .bench import BenchRecord, generate_tasks, run_bench
from .bounds import (ForwardBoundContext, LowerBoundResult, NodeLabel,
                     QueryTimeout, bidirectional_pareto_prep, double_dijkstra,
                     multi_dijkstra, pareto_prep, reconstruct_path)
from .dominance import (Skyline, SortedSkyline2D, dominates,
                        is_globally_dominated, make_skyline, vec_add, vec_max)
from .generate import (generate_graph, generate_grid, generate_random,
                       measure_correlation)
from .graph import (Edge, GraphFormatError, MultiCostGraph, Path,
                    compact_node_ids, dump_graph, load_graph, path_cost)
from .oracle import brute_force_skyline, dijkstra_single
from .search import (QueryMetrics, QueryResult, answer_query,
                     label_correcting_search)

__all__ = [
    "BenchRecord",
    "Edge",
    "ForwardBoundContext",
    "GraphFormatError",
    "LowerBoundResult",
    "MultiCostGraph",
    "NodeLabel",
    "Path",
    "QueryMetrics",
    "QueryResult",
    "QueryTimeout",
    "Skyline",
    "SortedSkyline2D",
    "answer_query",
    "bidirectional_pareto_prep",
    "brute_force_skyline",
    "compact_node_ids",
    "dijkstra_single",
    "dominates",
    "double_dijkstra",
    "dump_graph",
    "generate_graph",
    "generate_grid",
    "generate_random",
    "generate_tasks",
    "is_globally_dominated",
    "label_correcting_search",
    "load_graph",
    "make_skyline",
    "measure_correlation",
    "multi_dijkstra",
    "pareto_prep",
    "path_cost",
    "reconstruct_path",
    "run_bench",
    "vec_add",
    "vec_max",
]
