"""Command-line front end.

Subcommands:
    detect    find communities and write a membership file plus JSON report
    check     audit a membership file for internally-disconnected communities
    bench     run the (strategy x threads x repeats) benchmark matrix
    generate  emit deterministic test graphs as edge-list files

Exit codes: 0 success (for check: no disconnected communities), 1 check
found disconnected communities, 2 usage, I/O, or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from .connectivity import community_sizes, disconnected_communities, fraction_disconnected
from .generate import cliques_bridges_edges, planted_partition_edges, write_edgelist
from .graph import EdgeListSpec, Graph, GraphFormatError, load_edgelist, load_mtx
from .lpa import SPLIT_STRATEGIES, LpaParams, RunReport, lpa
from .metrics import ModularityUndefinedError, modularity


class CliError(Exception):
    """Usage or input error reported with exit code 2."""


def _resolve_format(path: str, explicit: str | None) -> str:
    if explicit:
        return explicit
    return "mtx" if path.lower().endswith(".mtx") else "edgelist"


def _load_graph(args) -> Graph:
    fmt = _resolve_format(args.input, args.format)
    if fmt == "mtx":
        return load_mtx(args.input)
    return load_edgelist(EdgeListSpec(args.input, indexing=args.indexing))


def _write_membership(path: str | Path, labels: np.ndarray) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# vertex\tcommunity\n")
        for i, c in enumerate(labels.tolist()):
            fh.write(f"{i}\t{c}\n")


def _read_membership(path: str | Path, n: int) -> np.ndarray:
    labels = np.empty(n, dtype=np.int64)
    count = 0
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise CliError(f"{path}:{lineno}: expected 'vertex<TAB>community'")
            try:
                vertex = int(parts[0])
                label = int(parts[1])
            except ValueError:
                raise CliError(f"{path}:{lineno}: entries must be integers") from None
            if count >= n:
                raise CliError(
                    f"{path}: {count + 1} or more membership rows for a graph with {n} vertices"
                )
            if vertex != count:
                raise CliError(
                    f"{path}:{lineno}: expected vertex {count} (rows must be ascending)"
                )
            if not 0 <= label < n:
                raise CliError(f"{path}:{lineno}: community {label} is not a vertex id")
            labels[count] = label
            count += 1
    if count != n:
        raise CliError(f"{path}: {count} membership rows for a graph with {n} vertices")
    return labels


def _graph_doc(g: Graph) -> dict:
    return {"vertices": g.num_vertices, "arcs": g.num_arcs, "m": g.total_weight_half}


def _modularity_or_none(g: Graph, labels: np.ndarray) -> float | None:
    try:
        return modularity(g, labels)
    except ModularityUndefinedError:
        return None


def _result_doc(g: Graph, report: RunReport, params: LpaParams) -> dict:
    labels = report.final_labels
    sizes = community_sizes(g, labels)
    flags = disconnected_communities(g, labels, params.worker_count, params.chunk_size)
    return {
        "iterations": report.iterations,
        "delta_n_history": list(report.delta_n_history),
        "modularity": _modularity_or_none(g, labels),
        "num_communities": int(np.count_nonzero(sizes)),
        "fraction_disconnected": fraction_disconnected(flags, sizes),
    }


def _write_json(path: str | Path, doc: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def cmd_detect(args) -> int:
    g = _load_graph(args)
    params = LpaParams(
        tolerance=args.tolerance,
        max_iterations=args.max_iterations,
        split_strategy=args.split,
        worker_count=args.threads,
        chunk_size=args.chunk_size,
    )
    t0 = time.perf_counter()
    report = lpa(g, params)
    total_s = time.perf_counter() - t0

    doc = {
        "graph": _graph_doc(g),
        "params": {
            "tolerance": params.tolerance,
            "max_iterations": params.max_iterations,
            "split_strategy": params.split_strategy,
            "workers": params.worker_count,
            "chunk_size": params.chunk_size,
        },
        "result": _result_doc(g, report, params),
        "timings": {
            "propagation_s": report.phase_times["propagation"],
            "splitting_s": report.phase_times["splitting"],
            "total_s": total_s,
        },
    }
    if args.output:
        _write_membership(args.output, report.final_labels)
    if args.report:
        _write_json(args.report, doc)
    res = doc["result"]
    print(
        f"detect: {g.num_vertices} vertices, {res['num_communities']} communities, "
        f"Q={res['modularity']}, fraction_disconnected={res['fraction_disconnected']}, "
        f"{res['iterations']} iterations, {total_s:.3f}s"
    )
    return 0


def cmd_check(args) -> int:
    g = _load_graph(args)
    labels = _read_membership(args.membership, g.num_vertices)
    sizes = community_sizes(g, labels)
    flags = disconnected_communities(g, labels, args.threads, args.chunk_size)
    disconnected = np.nonzero(flags)[0].tolist()
    doc = {
        "graph": _graph_doc(g),
        "result": {
            "modularity": _modularity_or_none(g, labels),
            "num_communities": int(np.count_nonzero(sizes)),
            "fraction_disconnected": fraction_disconnected(flags, sizes),
            "disconnected_communities": disconnected,
        },
    }
    if args.report:
        _write_json(args.report, doc)
    res = doc["result"]
    print(
        f"check: {res['num_communities']} communities, Q={res['modularity']}, "
        f"{len(disconnected)} disconnected"
    )
    return 1 if disconnected else 0


def _parse_int_list(text: str, flag: str) -> list[int]:
    try:
        values = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise CliError(f"{flag} expects a comma-separated integer list, got {text!r}") from None
    if not values or any(v < 1 for v in values):
        raise CliError(f"{flag} entries must be positive, got {text!r}")
    return values


def _parse_split_list(text: str) -> list[str]:
    values = [tok.strip() for tok in text.split(",") if tok.strip()]
    for v in values:
        if v not in SPLIT_STRATEGIES:
            raise CliError(f"unknown split strategy {v!r} (choose from {SPLIT_STRATEGIES})")
    if not values:
        raise CliError("--split-list must name at least one strategy")
    return values


def cmd_bench(args) -> int:
    g = _load_graph(args)
    threads_list = _parse_int_list(args.threads_list, "--threads-list")
    split_list = _parse_split_list(args.split_list)
    if args.repeats < 1:
        raise CliError(f"--repeats must be positive, got {args.repeats}")
    if args.warmup < 0:
        raise CliError(f"--warmup must be non-negative, got {args.warmup}")

    runs = []
    means = []
    for strategy in split_list:
        for threads in threads_list:
            rows = []
            params = LpaParams(
                tolerance=args.tolerance,
                max_iterations=args.max_iterations,
                split_strategy=strategy,
                worker_count=threads,
                chunk_size=args.chunk_size,
            )
            for _ in range(args.warmup):
                lpa(g, params)  # untimed: absorbs JIT load and first-touch costs
            for repeat in range(args.repeats):
                t0 = time.perf_counter()
                report = lpa(g, params)
                total_s = time.perf_counter() - t0
                labels = report.final_labels
                sizes = community_sizes(g, labels)
                flags = disconnected_communities(g, labels, threads, args.chunk_size)
                row = {
                    "strategy": strategy,
                    "threads": threads,
                    "repeat": repeat,
                    "propagation_s": report.phase_times["propagation"],
                    "splitting_s": report.phase_times["splitting"],
                    "total_s": total_s,
                    "modularity": _modularity_or_none(g, labels),
                    "fraction_disconnected": fraction_disconnected(flags, sizes),
                    "iterations": report.iterations,
                }
                rows.append(row)
                runs.append(row)
                print(
                    f"bench: split={strategy} threads={threads} repeat={repeat} "
                    f"total={total_s:.4f}s Q={row['modularity']}"
                )
            qs = [r["modularity"] for r in rows if r["modularity"] is not None]
            means.append(
                {
                    "strategy": strategy,
                    "threads": threads,
                    "repeats": args.repeats,
                    "mean_propagation_s": sum(r["propagation_s"] for r in rows) / len(rows),
                    "mean_splitting_s": sum(r["splitting_s"] for r in rows) / len(rows),
                    "mean_total_s": sum(r["total_s"] for r in rows) / len(rows),
                    "mean_modularity": sum(qs) / len(qs) if qs else None,
                    "mean_fraction_disconnected": sum(
                        r["fraction_disconnected"] for r in rows
                    ) / len(rows),
                }
            )
    doc = {
        "graph": _graph_doc(g),
        "config": {
            "threads_list": threads_list,
            "split_list": split_list,
            "repeats": args.repeats,
            "warmup": args.warmup,
            "tolerance": args.tolerance,
            "max_iterations": args.max_iterations,
            "chunk_size": args.chunk_size,
        },
        "runs": runs,
        "means": means,
    }
    if args.report:
        _write_json(args.report, doc)
    for row in means:
        print(
            f"bench mean: split={row['strategy']} threads={row['threads']} "
            f"total={row['mean_total_s']:.4f}s Q={row['mean_modularity']}"
        )
    return 0


def cmd_generate(args) -> int:
    if args.model == "planted-partition":
        edges = planted_partition_edges(
            args.n, args.communities, args.p_in, args.p_out, args.seed
        )
    else:
        edges = cliques_bridges_edges(args.n, args.communities)
    header = (
        f"model={args.model} n={args.n} communities={args.communities} "
        f"p_in={args.p_in} p_out={args.p_out} seed={args.seed}"
    )
    write_edgelist(args.output, edges, header=header)
    print(f"generate: wrote {edges.shape[0]} edges to {args.output}")
    return 0


def _add_input_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="graph file path")
    p.add_argument(
        "--format",
        choices=("mtx", "edgelist"),
        default=None,
        help="input format (default: mtx for *.mtx, else edgelist)",
    )
    p.add_argument(
        "--indexing",
        type=int,
        choices=(0, 1),
        default=0,
        help="vertex id base of edge-list input (default 0)",
    )


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tolerance", type=float, default=0.05)
    p.add_argument("--max-iterations", type=int, default=20)
    p.add_argument(
        "--threads", type=int, default=os.cpu_count() or 1,
        help="worker threads (default: hardware parallelism)",
    )
    p.add_argument("--chunk-size", type=int, default=1024)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lpakit",
        description="Parallel label-propagation community detection with "
        "internally-connected output communities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", help="detect communities")
    _add_input_flags(p)
    _add_run_flags(p)
    p.add_argument("--split", choices=SPLIT_STRATEGIES, default="bfs")
    p.add_argument("--output", help="membership TSV output path")
    p.add_argument("--report", help="JSON report output path")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("check", help="audit a membership file")
    _add_input_flags(p)
    p.add_argument("--membership", required=True, help="membership TSV path")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("--chunk-size", type=int, default=1024)
    p.add_argument("--report", help="JSON report output path")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("bench", help="run the benchmark matrix")
    _add_input_flags(p)
    _add_run_flags(p)
    p.add_argument("--threads-list", default="1", help='e.g. "1,2,4"')
    p.add_argument("--split-list", default="none,lp,lpp,bfs")
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument(
        "--warmup", type=int, default=1,
        help="untimed runs per configuration before the timed repeats",
    )
    p.add_argument("--report", help="JSON report output path")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("generate", help="generate a test graph")
    p.add_argument(
        "--model", choices=("planted-partition", "cliques-bridges"), required=True
    )
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--communities", type=int, required=True)
    p.add_argument("--p-in", type=float, default=0.5)
    p.add_argument("--p-out", type=float, default=0.01)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_generate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"lpakit: error: {exc}", file=sys.stderr)
        return 2
    except GraphFormatError as exc:
        print(f"lpakit: parse error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"lpakit: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"lpakit: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
