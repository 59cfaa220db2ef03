"""Command-line front end.

Thin client over the core package: each subcommand maps onto one service
operation (``query`` can also proxy to a running service via --server).

Exit codes:
    0  success
    2  command-line usage error (argparse)
    3  graph or tasks file cannot be parsed
    4  invalid arguments (node ids, method/criteria mismatch, ...)
    5  target unreachable from source
    6  validation found a mismatch against the oracle
"""

import argparse
import json
import os
import sys
from time import perf_counter

from . import __version__
from .bench import (generate_tasks, parse_tasks_file, records_to_csv,
                    records_to_json_obj, run_bench)
from .generate import generate_graph, measure_correlation
from .graph import GraphFormatError, dump_graph, load_graph
from .oracle import brute_force_skyline
from .search import BOUND_METHODS, answer_query

EXIT_OK = 0
EXIT_FORMAT = 3
EXIT_INVALID = 4
EXIT_UNREACHABLE = 5
EXIT_VALIDATION = 6

EPILOG = """exit codes:
  0  success
  2  usage error
  3  graph/tasks file parse error
  4  invalid arguments (node ids, method, parameters)
  5  target unreachable
  6  oracle validation failed

environment:
  PATHSKYLINE_WORKERS  default worker count for bench (default 1)
"""


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _load(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return load_graph(fh)


def cmd_generate(args) -> int:
    try:
        g = generate_graph(args.kind, width=args.width, height=args.height,
                           nodes=args.nodes, edges=args.edges, d=args.criteria,
                           rho=args.rho, seed=args.seed, low=args.low,
                           high=args.high)
    except ValueError as exc:
        return _fail(EXIT_INVALID, str(exc))
    text = dump_graph(g)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {g.node_count} nodes, {g.edge_count} edges, d={g.d} "
              f"to {args.output}", file=sys.stderr)
        if args.report_correlation:
            print(f"measured correlation: {measure_correlation(g):.4f}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _query_payload(args, result, d: int) -> dict:
    # no wall-clock fields: query JSON must be byte-identical across runs
    return {
        "graph": args.graph,
        "source": args.source,
        "target": args.target,
        "method": args.method,
        "d": d,
        "unreachable": result.unreachable,
        "skyline": [
            {"cost": list(p.cost)} | ({"nodes": p.nodes()} if args.paths else {})
            for p in result.paths
        ],
        "metrics": {
            "visited_node_count": result.metrics.visited_node_count,
            "bound_visited_nodes": result.metrics.bound_visited_nodes,
            "search_visited_nodes": result.metrics.search_visited_nodes,
            "assembled_paths": result.metrics.assembled_paths,
            "skyline_size": result.metrics.skyline_size,
        },
    }


def _query_via_server(args) -> int:
    import httpx

    with open(args.graph, "r", encoding="utf-8") as fh:
        text = fh.read()
    base = args.server.rstrip("/")
    with httpx.Client(base_url=base, timeout=args.http_timeout) as client:
        created = client.post("/graphs", json={"text": text, "name": args.graph})
        if created.status_code != 201:
            return _fail(EXIT_FORMAT, f"server rejected graph: {created.text}")
        gid = created.json()["graph_id"]
        try:
            resp = client.post(f"/graphs/{gid}/query", json={
                "source": args.source, "target": args.target,
                "method": args.method, "include_paths": args.paths,
                "global_check": not args.no_global_check,
            })
        finally:
            if not args.keep:
                client.delete(f"/graphs/{gid}")
    if resp.status_code != 200:
        return _fail(EXIT_INVALID, f"server error: {resp.text}")
    body = resp.json()
    print(json.dumps(body, sort_keys=True, indent=2))
    return EXIT_UNREACHABLE if body["unreachable"] else EXIT_OK


def cmd_query(args) -> int:
    if args.server:
        return _query_via_server(args)
    try:
        g = _load(args.graph)
    except OSError as exc:
        return _fail(EXIT_FORMAT, f"cannot read {args.graph}: {exc}")
    except GraphFormatError as exc:
        return _fail(EXIT_FORMAT, str(exc))
    started = perf_counter()
    try:
        result = answer_query(g, args.source, args.target, args.method,
                              global_check=not args.no_global_check)
    except ValueError as exc:
        return _fail(EXIT_INVALID, str(exc))
    elapsed = perf_counter() - started
    if args.emit == "json":
        print(json.dumps(_query_payload(args, result, g.d), sort_keys=True, indent=2))
    else:
        if result.unreachable:
            print(f"target {args.target} is unreachable from {args.source}")
        else:
            print(f"skyline of {len(result.paths)} paths from {args.source} "
                  f"to {args.target} (method {args.method}):")
            for p in result.paths:
                line = "  cost (" + ", ".join(f"{c:g}" for c in p.cost) + ")"
                if args.paths:
                    line += "  via " + " -> ".join(str(n) for n in p.nodes())
                print(line)
        m = result.metrics
        print(f"visited {m.visited_node_count} nodes "
              f"(bound {m.bound_visited_nodes}, search {m.search_visited_nodes}), "
              f"assembled {m.assembled_paths} paths, {elapsed * 1e6:.0f} us")
    return EXIT_UNREACHABLE if result.unreachable else EXIT_OK


def cmd_bench(args) -> int:
    try:
        g = _load(args.graph)
    except OSError as exc:
        return _fail(EXIT_FORMAT, f"cannot read {args.graph}: {exc}")
    except GraphFormatError as exc:
        return _fail(EXIT_FORMAT, str(exc))
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    for m in methods:
        if m not in BOUND_METHODS:
            return _fail(EXIT_INVALID, f"unknown method {m!r}")
        if m == "dd" and g.d != 2:
            return _fail(EXIT_INVALID, f"method 'dd' needs d == 2, graph has d={g.d}")
    retries = 0
    try:
        if args.tasks:
            with open(args.tasks, "r", encoding="utf-8") as fh:
                tasks = parse_tasks_file(fh.read())
        else:
            tasks, retries = generate_tasks(g, args.random_tasks, seed=args.task_seed)
    except OSError as exc:
        return _fail(EXIT_FORMAT, f"cannot read {args.tasks}: {exc}")
    except ValueError as exc:
        return _fail(EXIT_FORMAT, str(exc))
    labels = args.criteria_labels.split(",") if args.criteria_labels else None
    try:
        records, summary = run_bench(
            g, tasks, methods, reps=args.reps, timeout_s=args.timeout,
            workers=args.workers, criteria_labels=labels,
            global_check=not args.no_global_check)
    except (ValueError, RuntimeError) as exc:
        return _fail(EXIT_INVALID, str(exc))
    summary["task_retries"] = retries
    if args.emit == "csv":
        out = records_to_csv(records)
        out += "# summary: " + json.dumps(summary, sort_keys=True) + "\n"
    else:
        out = json.dumps(records_to_json_obj(records, summary),
                         sort_keys=True, indent=2) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
        print(f"wrote {len(records)} records to {args.output}", file=sys.stderr)
    else:
        sys.stdout.write(out)
    return EXIT_OK


def cmd_validate(args) -> int:
    try:
        g = _load(args.graph)
    except OSError as exc:
        return _fail(EXIT_FORMAT, f"cannot read {args.graph}: {exc}")
    except GraphFormatError as exc:
        return _fail(EXIT_FORMAT, str(exc))
    if g.node_count > args.node_limit:
        return _fail(EXIT_INVALID,
                     f"graph has {g.node_count} nodes; oracle validation is "
                     f"capped at {args.node_limit}")
    import random
    rng = random.Random(args.seed)
    tasks = []
    for _ in range(args.sample):
        s = rng.randrange(g.node_count)
        t = rng.randrange(g.node_count)
        if s != t:
            tasks.append((s, t))
    methods = ["none", "pp", "bpp", "md"] + (["dd"] if g.d == 2 else [])
    failures = 0
    for s, t in tasks:
        expected = sorted(brute_force_skyline(g, s, t, args.node_limit).costs())
        for method in methods:
            got = sorted(answer_query(g, s, t, method).cost_vectors())
            if got != expected:
                failures += 1
                print(f"MISMATCH ({s}, {t}) method {method}: got {got}, "
                      f"oracle says {expected}")
    print(f"checked {len(tasks)} tasks x {len(methods)} methods: "
          f"{'all consistent with the oracle' if not failures else f'{failures} mismatches'}")
    return EXIT_OK if not failures else EXIT_VALIDATION


def cmd_serve(args) -> int:
    import uvicorn

    from .service import app
    uvicorn.run(app, host=args.host, port=args.port, log_level=args.log_level)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pathskyline",
        description="Pareto-optimal (skyline) path queries over multicost graphs",
        epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a synthetic graph in edge-list format")
    p.add_argument("kind", choices=["grid", "random"])
    p.add_argument("--width", type=int, help="grid width")
    p.add_argument("--height", type=int, help="grid height")
    p.add_argument("--nodes", type=int, help="random graph node count")
    p.add_argument("--edges", type=int, help="random graph edge count (default 3x nodes)")
    p.add_argument("--criteria", "-d", type=int, default=2, help="cost criteria count")
    p.add_argument("--rho", type=float, default=0.0,
                   help="target pairwise cost correlation in [-1, 1]")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--low", type=float, default=1.0, help="cost range lower bound")
    p.add_argument("--high", type=float, default=10.0, help="cost range upper bound")
    p.add_argument("--output", "-o", help="output file (default stdout)")
    p.add_argument("--report-correlation", action="store_true",
                   help="print the measured correlation to stderr")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("query", help="compute the path skyline between two nodes")
    p.add_argument("graph", help="graph file in edge-list format")
    p.add_argument("source", type=int)
    p.add_argument("target", type=int)
    p.add_argument("--method", choices=sorted(BOUND_METHODS), default="pp")
    p.add_argument("--emit", choices=["json", "text"], default="json")
    p.add_argument("--paths", action="store_true", help="include node sequences")
    p.add_argument("--no-global-check", action="store_true",
                   help="disable global domination pruning (single-source style)")
    p.add_argument("--server", help="run against a pathskyline service at this URL")
    p.add_argument("--keep", action="store_true",
                   help="with --server: leave the uploaded graph registered")
    p.add_argument("--http-timeout", type=float, default=600.0)
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("bench", help="benchmark methods over a task list")
    p.add_argument("graph")
    p.add_argument("--tasks", help="tasks file with one 's t' pair per line")
    p.add_argument("--random-tasks", type=int, help="sample this many reachable pairs")
    p.add_argument("--task-seed", type=int, default=0)
    p.add_argument("--methods", default="pp",
                   help="comma-separated subset of none,pp,bpp,md,dd")
    p.add_argument("--reps", type=int, default=3, help="repetitions per cell")
    p.add_argument("--timeout", type=float, default=300.0,
                   help="per-run timeout in seconds")
    p.add_argument("--workers", type=int,
                   default=int(os.environ.get("PATHSKYLINE_WORKERS", "1")))
    p.add_argument("--criteria-labels", help="comma-separated criterion names")
    p.add_argument("--no-global-check", action="store_true")
    p.add_argument("--emit", choices=["csv", "json"], default="csv")
    p.add_argument("--output", "-o", help="output file (default stdout)")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("validate",
                       help="check every method against the brute-force oracle")
    p.add_argument("graph")
    p.add_argument("--sample", type=int, default=10, help="random tasks to check")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--node-limit", type=int, default=14)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--log-level", default="info")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "bench" and bool(args.tasks) == bool(args.random_tasks):
        return _fail(EXIT_INVALID, "provide exactly one of --tasks or --random-tasks")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
