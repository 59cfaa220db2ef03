"""FastAPI service wrapping the core package.

Graphs are loaded or generated once into an in-memory registry and are
immutable afterwards, so any number of concurrent query requests may
share them.  Endpoints:

    GET    /health
    POST   /graphs                 load (edge-list text) or generate a graph
    GET    /graphs                 list registered graphs
    GET    /graphs/{gid}           graph info
    DELETE /graphs/{gid}
    POST   /graphs/{gid}/query     path skyline between two nodes
    POST   /graphs/{gid}/bench     benchmark sweep over tasks x methods
    POST   /graphs/{gid}/validate  oracle check on a small graph
"""

import threading
from dataclasses import asdict
from time import perf_counter

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..bench import generate_tasks, run_bench
from ..bounds import QueryTimeout
from ..generate import generate_graph
from ..graph import GraphFormatError, MultiCostGraph, load_graph
from ..oracle import brute_force_skyline
from ..search import answer_query
from .models import (BenchRecordModel, BenchRequest, BenchResponse,
                     CreateGraphRequest, GraphInfo, HealthResponse,
                     QueryMetricsModel, QueryRequest, QueryResponse,
                     SkylineEntry, ValidateRequest, ValidateResponse)


class GraphRegistry:
    def __init__(self):
        self._lock = threading.Lock()
        self._graphs: dict[str, tuple[MultiCostGraph, str | None]] = {}
        self._next = 1

    def add(self, g: MultiCostGraph, name: str | None) -> str:
        with self._lock:
            gid = f"g{self._next}"
            self._next += 1
            self._graphs[gid] = (g, name)
        return gid

    def get(self, gid: str) -> tuple[MultiCostGraph, str | None]:
        try:
            return self._graphs[gid]
        except KeyError:
            raise HTTPException(status_code=404, detail=f"no graph {gid!r}") from None

    def remove(self, gid: str) -> None:
        with self._lock:
            if self._graphs.pop(gid, None) is None:
                raise HTTPException(status_code=404, detail=f"no graph {gid!r}")

    def items(self) -> list[tuple[str, MultiCostGraph, str | None]]:
        with self._lock:
            return [(gid, g, name) for gid, (g, name) in self._graphs.items()]

    def __len__(self) -> int:
        return len(self._graphs)


app = FastAPI(title="pathskyline", version=__version__,
              description="Pareto-optimal (skyline) path queries over multicost graphs")
registry = GraphRegistry()


def _info(gid: str, g: MultiCostGraph, name: str | None) -> GraphInfo:
    return GraphInfo(graph_id=gid, name=name, nodes=g.node_count,
                     edges=g.edge_count, criteria=g.d)


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", graphs=len(registry))


@app.post("/graphs", response_model=GraphInfo, status_code=201)
def create_graph(req: CreateGraphRequest) -> GraphInfo:
    try:
        if req.text is not None:
            g = load_graph(req.text)
        else:
            spec = req.generate
            g = generate_graph(spec.kind, width=spec.width, height=spec.height,
                               nodes=spec.nodes, edges=spec.edges, d=spec.criteria,
                               rho=spec.rho, seed=spec.seed, low=spec.low,
                               high=spec.high)
    except (GraphFormatError, ValueError) as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from None
    gid = registry.add(g, req.name)
    return _info(gid, g, req.name)


@app.get("/graphs", response_model=list[GraphInfo])
def list_graphs() -> list[GraphInfo]:
    return [_info(gid, g, name) for gid, g, name in registry.items()]


@app.get("/graphs/{gid}", response_model=GraphInfo)
def graph_info(gid: str) -> GraphInfo:
    g, name = registry.get(gid)
    return _info(gid, g, name)


@app.delete("/graphs/{gid}", status_code=204)
def delete_graph(gid: str) -> None:
    registry.remove(gid)


@app.post("/graphs/{gid}/query", response_model=QueryResponse)
def query_graph(gid: str, req: QueryRequest) -> QueryResponse:
    g, _ = registry.get(gid)
    deadline = perf_counter() + req.timeout_s if req.timeout_s else None
    try:
        result = answer_query(g, req.source, req.target, req.method,
                              global_check=req.global_check, deadline=deadline)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from None
    except QueryTimeout as exc:
        raise HTTPException(status_code=408, detail=str(exc)) from None
    skyline = [
        SkylineEntry(cost=list(p.cost),
                     nodes=p.nodes() if req.include_paths else None)
        for p in result.paths
    ]
    return QueryResponse(graph_id=gid, source=req.source, target=req.target,
                         method=req.method, unreachable=result.unreachable,
                         skyline=skyline,
                         metrics=QueryMetricsModel(**asdict(result.metrics)))


@app.post("/graphs/{gid}/bench", response_model=BenchResponse)
def bench_graph(gid: str, req: BenchRequest) -> BenchResponse:
    g, _ = registry.get(gid)
    retries = 0
    try:
        if req.tasks is not None:
            tasks = [tuple(t) for t in req.tasks]
        else:
            tasks, retries = generate_tasks(g, req.random_tasks, seed=req.seed)
        records, summary = run_bench(
            g, tasks, list(req.methods), reps=req.reps, timeout_s=req.timeout_s,
            workers=req.workers, criteria_labels=req.criteria_labels,
            global_check=req.global_check)
    except (ValueError, RuntimeError) as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from None
    return BenchResponse(
        graph_id=gid,
        records=[BenchRecordModel(**asdict(r)) for r in records],
        summary=summary, task_retries=retries)


@app.post("/graphs/{gid}/validate", response_model=ValidateResponse)
def validate_graph(gid: str, req: ValidateRequest) -> ValidateResponse:
    g, _ = registry.get(gid)
    if g.node_count > req.node_limit:
        raise HTTPException(
            status_code=422,
            detail=f"graph has {g.node_count} nodes; oracle validation is "
                   f"capped at {req.node_limit}")
    if req.tasks is not None:
        tasks = [tuple(t) for t in req.tasks]
    else:
        import random
        rng = random.Random(req.seed)
        tasks = []
        for _ in range(req.sample):
            s = rng.randrange(g.node_count)
            t = rng.randrange(g.node_count)
            if s != t:
                tasks.append((s, t))
    methods = ["none", "pp", "bpp", "md"] + (["dd"] if g.d == 2 else [])
    mismatches = []
    for s, t in tasks:
        expected = sorted(brute_force_skyline(g, s, t, req.node_limit).costs())
        for method in methods:
            got = sorted(answer_query(g, s, t, method).cost_vectors())
            if got != expected:
                mismatches.append(
                    f"({s}, {t}) method {method}: got {got}, oracle says {expected}")
    return ValidateResponse(ok=not mismatches, tasks_checked=len(tasks),
                            mismatches=mismatches)
