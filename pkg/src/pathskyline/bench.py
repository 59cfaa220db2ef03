"""Benchmark sweeps over (task, method) grids.

Emits one record per task and method with the three measured variables
(visited nodes, assembled paths, wall runtime averaged over repetitions)
plus a per-method summary with ratios against a baseline method.  Tasks
that overrun the timeout are recorded with a flag, never dropped.
Records always come out in task-major, method-minor order, regardless of
how a worker pool schedules them.
"""

import csv
import io
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from time import perf_counter

from .bounds import QueryTimeout
from .graph import MultiCostGraph
from .search import answer_query

CSV_COLUMNS = [
    "task_id", "source", "target", "method", "d", "criteria", "reps",
    "skyline_size", "visited_nodes", "bound_visited_nodes",
    "search_visited_nodes", "assembled_paths", "runtime_us", "timeout",
]


@dataclass
class BenchRecord:
    task_id: int
    source: int
    target: int
    method: str
    d: int
    criteria: str
    reps: int
    skyline_size: int | None
    visited_nodes: int | None
    bound_visited_nodes: int | None
    search_visited_nodes: int | None
    assembled_paths: int | None
    runtime_us: float
    timeout: bool


def default_criteria_labels(d: int) -> list[str]:
    return [f"c{i + 1}" for i in range(d)]


def _reachable(g: MultiCostGraph, s: int, t: int) -> bool:
    seen = {s}
    frontier = [s]
    while frontier:
        nxt = []
        for n in frontier:
            for e in g.forward[n]:
                w = e.dst
                if w == t:
                    return True
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return False


def generate_tasks(g: MultiCostGraph, count: int, seed: int = 0,
                   max_retries: int = 10000) -> tuple[list[tuple[int, int]], int]:
    """Sample reachable s != t pairs; returns (tasks, rejected-draw count)."""
    if g.node_count < 2:
        raise ValueError("need at least two nodes to sample tasks")
    rng = random.Random(seed)
    tasks: list[tuple[int, int]] = []
    retries = 0
    while len(tasks) < count:
        s = rng.randrange(g.node_count)
        t = rng.randrange(g.node_count)
        if s != t and _reachable(g, s, t):
            tasks.append((s, t))
        else:
            retries += 1
            if retries > max_retries:
                raise RuntimeError(
                    f"gave up sampling tasks after {retries} rejected draws "
                    f"({len(tasks)}/{count} found)")
    return tasks, retries


def _run_cell(g: MultiCostGraph, task_id: int, s: int, t: int, method: str,
              d: int, criteria: str, reps: int, timeout_s: float | None,
              global_check: bool) -> BenchRecord:
    times = []
    result = None
    for _ in range(reps):
        start = perf_counter()
        deadline = start + timeout_s if timeout_s else None
        try:
            result = answer_query(g, s, t, method, global_check=global_check,
                                  deadline=deadline)
        except QueryTimeout:
            return BenchRecord(task_id, s, t, method, d, criteria, reps,
                               None, None, None, None, None,
                               round((perf_counter() - start) * 1e6, 3), True)
        times.append(perf_counter() - start)
    m = result.metrics
    return BenchRecord(
        task_id, s, t, method, d, criteria, reps,
        m.skyline_size, m.visited_node_count, m.bound_visited_nodes,
        m.search_visited_nodes, m.assembled_paths,
        round(sum(times) / len(times) * 1e6, 3), False)


def run_bench(g: MultiCostGraph, tasks: list[tuple[int, int]], methods: list[str],
              reps: int = 3, timeout_s: float | None = 300.0, workers: int = 1,
              criteria_labels: list[str] | None = None,
              global_check: bool = True) -> tuple[list[BenchRecord], dict]:
    """Run every method on every task; fail hard if methods disagree on
    skyline size for any completed task."""
    if reps < 1:
        raise ValueError("need at least one repetition")
    if not methods:
        raise ValueError("need at least one method")
    labels = criteria_labels or default_criteria_labels(g.d)
    if len(labels) != g.d:
        raise ValueError(f"{len(labels)} criteria labels for {g.d} criteria")
    criteria = ",".join(labels)
    cells = [(tid, s, t, method)
             for tid, (s, t) in enumerate(tasks) for method in methods]

    def work(cell):
        tid, s, t, method = cell
        return _run_cell(g, tid, s, t, method, g.d, criteria, reps, timeout_s,
                         global_check)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(work, cells))
    else:
        records = [work(cell) for cell in cells]

    sizes: dict[int, int] = {}
    for rec in records:
        if rec.timeout:
            continue
        seen = sizes.setdefault(rec.task_id, rec.skyline_size)
        if seen != rec.skyline_size:
            raise RuntimeError(
                f"task {rec.task_id}: method {rec.method} found skyline size "
                f"{rec.skyline_size}, others found {seen}")
    return records, summarize(records, baseline=methods[0])


def _mean(values: list[float]) -> float | None:
    return round(sum(values) / len(values), 3) if values else None


def summarize(records: list[BenchRecord], baseline: str) -> dict:
    """Per-method means plus ratios against the baseline method (ratio > 1
    means the method beats the baseline, mirroring the N-times columns)."""
    by_method: dict[str, list[BenchRecord]] = {}
    for rec in records:
        by_method.setdefault(rec.method, []).append(rec)
    summary: dict = {"baseline": baseline, "methods": {}}
    means: dict[str, dict] = {}
    for method, recs in by_method.items():
        ok = [r for r in recs if not r.timeout]
        means[method] = {
            "tasks": len(recs),
            "timeouts": sum(1 for r in recs if r.timeout),
            "mean_runtime_us": _mean([r.runtime_us for r in ok]),
            "mean_visited_nodes": _mean([float(r.visited_nodes) for r in ok]),
            "mean_assembled_paths": _mean([float(r.assembled_paths) for r in ok]),
            "mean_skyline_size": _mean([float(r.skyline_size) for r in ok]),
        }
    base = means.get(baseline, {})
    for method, stats in means.items():
        for key, ratio_key in (("mean_runtime_us", "runtime_ratio"),
                               ("mean_assembled_paths", "assembled_ratio")):
            b, v = base.get(key), stats.get(key)
            stats[ratio_key] = round(b / v, 3) if b and v else None
        summary["methods"][method] = stats
    return summary


def records_to_csv(records: list[BenchRecord]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for rec in records:
        row = asdict(rec)
        row["timeout"] = "true" if rec.timeout else "false"
        writer.writerow({k: ("" if row[k] is None else row[k]) for k in CSV_COLUMNS})
    return buf.getvalue()


def records_to_json_obj(records: list[BenchRecord], summary: dict) -> dict:
    return {"records": [asdict(r) for r in records], "summary": summary}


def parse_tasks_file(text: str) -> list[tuple[int, int]]:
    """Task list format: one 's t' pair per line, # comments allowed."""
    tasks = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"tasks line {lineno}: expected 's t', got {line!r}")
        try:
            tasks.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise ValueError(f"tasks line {lineno}: node ids must be integers") from None
    return tasks
