"""Command-line entry point.

Subcommands: ``run`` executes an experiment file, ``summarize``
recomputes summary.tsv from stored records, ``list-problems`` and
``list-algorithms`` describe what the corpus and harness offer.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .harness import (
    ALGORITHM_NAMES,
    ConfigError,
    _CUCKOO_PARAM_KEYS,
    _HILL_CLIMB_PARAM_KEYS,
    format_summary,
    load_experiment,
    read_records,
    read_target,
    run_experiment,
    summarize,
    write_summary,
)
from .problems import get_problem, problem_names


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cuckoo",
        description="Run seeded optimizer experiments and summarize their results.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_parser = sub.add_parser("run", help="run an experiment file")
    run_parser.add_argument("experiment", help="path to an experiment YAML file")
    run_parser.add_argument("--output", help="override the output directory")
    run_parser.add_argument("--workers", type=int, help="parallel worker processes")

    summarize_parser = sub.add_parser(
        "summarize", help="recompute summary.tsv from a results directory"
    )
    summarize_parser.add_argument("results", help="output directory of a previous run")

    sub.add_parser("list-problems", help="list the benchmark corpus")
    sub.add_parser("list-algorithms", help="list available algorithms")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _run(args)
        if args.command == "summarize":
            return _summarize(args)
        if args.command == "list-problems":
            return _list_problems()
        return _list_algorithms()
    except (ConfigError, FileNotFoundError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _run(args) -> int:
    spec = load_experiment(args.experiment)
    overrides = {}
    if args.output is not None:
        overrides["output"] = args.output
    if args.workers is not None:
        if args.workers < 1:
            print("error: --workers must be >= 1", file=sys.stderr)
            return 2
        overrides["workers"] = args.workers
    if overrides:
        from dataclasses import replace

        spec = replace(spec, **overrides)
    rows = run_experiment(spec)
    print(format_summary(rows), end="")
    print(f"# wrote {Path(spec.output) / 'summary.tsv'}")
    records = read_records(spec.output)
    failed = [r for r in records if r["status"] != "ok"]
    if failed:
        for record in failed:
            print(
                f"# trial failed: {record['problem']}/{record['algorithm']}"
                f" t{record['trial']:03d}: {record['error']}",
                file=sys.stderr,
            )
        return 1
    return 0


def _summarize(args) -> int:
    records = read_records(args.results)
    rows = summarize(records, read_target(args.results))
    write_summary(rows, Path(args.results) / "summary.tsv")
    print(format_summary(rows), end="")
    return 0


def _list_problems() -> int:
    for name in problem_names():
        problem = get_problem(name)
        constraints = len(problem.inequality_constraints) + len(problem.equality_constraints)
        if name in ("spring_design", "welded_beam"):
            shape = f"fixed d={problem.dimension}, {constraints} inequality constraints"
        else:
            shape = f"scalable, default d={problem.dimension}"
        print(f"{name}\t{shape}")
    return 0


def _list_algorithms() -> int:
    print(f"cuckoo\tparams: {', '.join(sorted(_CUCKOO_PARAM_KEYS))}")
    print(f"hill_climb\tparams: {', '.join(sorted(_HILL_CLIMB_PARAM_KEYS))}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
