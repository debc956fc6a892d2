"""Command-line front end: ``stats``, ``query``, ``bench`` and ``verify``.

Exit codes: 0 on success, 1 when verification finds a mismatch, 2 on bad
input (unreadable files, parse or validation errors, infeasible configs).
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence

from . import __version__
from .bench import DEFAULT_DEGREES, DEFAULT_LENGTHS, BenchConfig, degree_sweep, format_bench, length_sweep
from .errors import HinMotifError, QueryValidationError
from .ingest import graph_stats, read_graph
from .pipeline import prepare_graph, run_query
from .query import Metric, parse_query
from .report import format_query, format_stats
from .verify import run_equivalence

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT = 2


class InputError(Exception):
    """Bad command-line input; reported on stderr with exit code 2."""


def _threshold(text: str) -> tuple[str, int]:
    name, sep, value = text.rpartition("=")
    if not sep or not name:
        raise argparse.ArgumentTypeError(f"expected TYPE=N, got {text!r}")
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"threshold for {name!r} is not an integer: {value!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"threshold for {name!r} must be nonnegative")
    return name, n


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return n


def _number_list(kind):
    def parse(text: str):
        try:
            return [kind(x) for x in text.split(",") if x.strip()]
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None

    return parse


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("tsv", "json"), default="tsv", help="output format")
    common.add_argument("--threads", type=_positive, default=1, help="engine worker threads")
    common.add_argument("--seed", type=int, default=0, help="random seed")

    parser = argparse.ArgumentParser(
        prog="hinmotif", description="Outlier motif detection in heterogeneous information networks."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", parents=[common], help="node and edge statistics of a graph")
    p.add_argument("--graph", required=True, help="edge-list TSV file")
    p.add_argument("--degree-threshold", type=_threshold, action="append", default=[], metavar="TYPE=N")

    p = sub.add_parser("query", parents=[common], help="rank candidate motifs by outlier score")
    p.add_argument("--graph", required=True, help="edge-list TSV file")
    p.add_argument("--query", required=True, help="query JSON file")
    p.add_argument("--metric", choices=[m.value for m in Metric if m.name != "MOS"], help="override the query's metric")
    p.add_argument("--top", type=_positive, help="rows shown at each end of the ranking")
    p.add_argument("--groups", type=_positive, default=10, help="score groups for --distribution")
    p.add_argument("--distribution", action="store_true", help="append per-group node frequencies")
    p.add_argument("--degree-threshold", type=_threshold, action="append", default=[], metavar="TYPE=N")

    p = sub.add_parser("bench", parents=[common], help="timing sweeps on synthetic graphs")
    p.add_argument("--sweep", choices=("degree", "length", "both"), default="both")
    p.add_argument("--nodes", type=_positive, default=2000)
    p.add_argument("--types", type=_positive, default=2)
    p.add_argument("--degree", type=float, default=8.0, help="expected degree for the length sweep")
    p.add_argument("--degrees", type=_number_list(float), default=list(DEFAULT_DEGREES))
    p.add_argument("--lengths", type=_number_list(int), default=list(DEFAULT_LENGTHS))
    p.add_argument("--search-length", type=_positive, default=3)
    p.add_argument("--score-length", type=_positive, default=3, help="score-path length for the degree sweep")
    p.add_argument("--pattern-size", type=_positive, default=2)
    p.add_argument("--starts", type=_positive, default=8, help="seeded start instances per query")
    p.add_argument("--repeats", type=_positive, default=5)

    p = sub.add_parser("verify", parents=[common], help="engine versus brute-force oracle")
    p.add_argument("--cases", type=_positive, default=100)
    p.add_argument("--max-nodes", type=_positive, default=40)
    return parser


def _load_graph(path: str):
    try:
        return read_graph(path)
    except OSError as exc:
        raise InputError(f"cannot read graph {path}: {exc.strerror or exc}") from None


def cmd_stats(args, out) -> int:
    graph = prepare_graph(_load_graph(args.graph), dict(args.degree_threshold))
    out.write(format_stats(graph_stats(graph), args.format))
    return EXIT_OK


def cmd_query(args, out) -> int:
    graph = _load_graph(args.graph)
    try:
        with open(args.query, "rb") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read query {args.query}: {exc.strerror or exc}") from None
    spec = parse_query(text)
    if args.metric:
        spec = spec.with_overrides(metric=Metric.parse(args.metric))
    result = run_query(graph, spec, threads=args.threads, degree_thresholds=dict(args.degree_threshold))
    out.write(
        format_query(
            result,
            args.format,
            top_k=args.top,
            groups=args.groups if args.distribution else None,
        )
    )
    return EXIT_OK


def cmd_bench(args, out) -> int:
    try:
        base = BenchConfig(
            types=args.types,
            nodes=args.nodes,
            degree=args.degree,
            search_length=args.search_length,
            pattern_size=args.pattern_size,
            starts=args.starts,
            score_length=args.score_length,
            repeats=args.repeats,
            seed=args.seed,
            threads=args.threads,
        )
        for k in args.degrees if args.sweep != "length" else ():
            BenchConfig(nodes=args.nodes, degree=k)
        for length in args.lengths if args.sweep != "degree" else ():
            if length < 2:
                raise ValueError("score-path lengths must be at least 2")
    except ValueError as exc:
        raise InputError(f"infeasible benchmark config: {exc}") from None
    points = []
    if args.sweep in ("degree", "both"):
        points += degree_sweep(base, args.degrees)
    if args.sweep in ("length", "both"):
        points += length_sweep(base, args.lengths)
    out.write(format_bench(points, base, args.format))
    return EXIT_OK


def cmd_verify(args, out) -> int:
    report = run_equivalence(args.cases, args.seed, args.max_nodes)
    checks = " ".join(f"{k}={v}" for k, v in sorted(report.checks.items()))
    if report.ok:
        out.write(f"all {report.cases} cases passed ({checks})\n")
        return EXIT_OK
    for failure in report.failures:
        out.write(f"{failure}\n")
    out.write(f"{len(report.failures)} of {report.cases} cases failed (seed={args.seed})\n")
    return EXIT_VERIFY_FAILED


COMMANDS = {"stats": cmd_stats, "query": cmd_query, "bench": cmd_bench, "verify": cmd_verify}


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except QueryValidationError as exc:
        err.write("hinmotif: query is invalid:\n")
        for v in exc.violations:
            err.write(f"  - {v}\n")
        return EXIT_INPUT
    except (InputError, HinMotifError, ValueError) as exc:
        err.write(f"hinmotif: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
