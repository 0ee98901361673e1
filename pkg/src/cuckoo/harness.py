"""Experiment harness: seeded trial grids over problems and algorithms.

An experiment is a YAML file naming problems, algorithm configurations,
a trial count, a base seed, and a stop criterion.  Running it produces,
under the output directory:

* ``records/<problem>__<algorithm>__t<NNN>.tsv`` - one convergence
  record per trial (columns: iteration, best_objective, evaluations),
* ``records/<...>.meta.yaml`` - sidecar metadata per trial (seed, final
  result, termination reason, wall time),
* ``summary.tsv`` - one statistics row per (problem, algorithm) cell,
* ``experiment.yaml`` - the fully resolved experiment for provenance.

Trial seeds are ``base_seed + trial``, so reruns of the same file
reproduce every record byte for byte (sidecars are exempt: they carry
wall times).  Medians use the lower-median convention: the element at
index (k - 1) // 2 of the sorted k values, never an average, so every
reported number is one that actually occurred.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional

import yaml

from .baselines import HillClimbParams, hill_climb_restart
from .core import AlgorithmParams, StopCriterion, cuckoo_search
from .levy import LevyConfig
from .problems import PenaltyConfig, get_problem

__all__ = [
    "ALGORITHM_NAMES",
    "AlgorithmRef",
    "ExperimentSpec",
    "ProblemRef",
    "SummaryRow",
    "load_experiment",
    "lower_median",
    "read_records",
    "run_experiment",
    "spec_from_dict",
    "summarize",
    "write_summary",
]

ALGORITHM_NAMES = ("cuckoo", "hill_climb")

_CUCKOO_PARAM_KEYS = frozenset({"n", "p_a", "alpha", "tail_exponent", "min_step", "compare_to"})
_HILL_CLIMB_PARAM_KEYS = frozenset({"step_fraction", "shrink_factor", "stall_limit"})
_TOP_LEVEL_KEYS = frozenset(
    {"problems", "algorithms", "trials", "base_seed", "stop", "penalty", "output", "workers"}
)

_SUMMARY_COLUMNS = (
    "problem",
    "algorithm",
    "trials",
    "success_rate",
    "median_evals_to_target",
    "best_final",
    "median_final",
    "worst_final",
    "wall_time_seconds",
)


@dataclass(frozen=True)
class ProblemRef:
    name: str
    dimension: int


@dataclass(frozen=True)
class AlgorithmRef:
    name: str
    label: str
    params: dict


@dataclass(frozen=True)
class ExperimentSpec:
    problems: tuple[ProblemRef, ...]
    algorithms: tuple[AlgorithmRef, ...]
    trials: int
    base_seed: int
    stop: StopCriterion
    penalty: PenaltyConfig
    output: str
    workers: int


@dataclass(frozen=True)
class SummaryRow:
    problem: str
    algorithm: str
    trials: int
    success_rate: Optional[float]
    median_evals_to_target: Optional[int]
    best_final: float
    median_final: float
    worst_final: float
    wall_time_seconds: float


class ConfigError(ValueError):
    """The experiment file is malformed; raised before any run starts."""


def lower_median(values):
    """The sorted middle element, taking the lower one for even counts."""
    ordered = sorted(values)
    if not ordered:
        raise ValueError("lower_median of empty sequence")
    return ordered[(len(ordered) - 1) // 2]


# --- experiment loading -------------------------------------------------------

def load_experiment(path) -> ExperimentSpec:
    """Parse and validate an experiment YAML file."""
    text = Path(path).read_text(encoding="utf-8")
    data = yaml.safe_load(text)
    if not isinstance(data, dict):
        raise ConfigError(f"experiment file must hold a mapping, got {type(data).__name__}")
    return spec_from_dict(data)


def spec_from_dict(data: dict) -> ExperimentSpec:
    """Build a validated spec from a plain dict (the YAML layout)."""
    unknown = set(data) - _TOP_LEVEL_KEYS
    if unknown:
        raise ConfigError(f"unknown experiment keys: {sorted(unknown)}")
    for key in ("problems", "algorithms", "trials", "base_seed", "stop"):
        if key not in data:
            raise ConfigError(f"experiment is missing required key {key!r}")

    problems = tuple(_parse_problem(entry) for entry in _as_list(data["problems"], "problems"))
    names = [p.name for p in problems]
    if len(set(names)) != len(names):
        raise ConfigError(f"duplicate problem names: {names}")

    stop = _parse_stop(data["stop"])
    algorithms = tuple(
        _parse_algorithm(entry, stop) for entry in _as_list(data["algorithms"], "algorithms")
    )
    labels = [a.label for a in algorithms]
    if len(set(labels)) != len(labels):
        raise ConfigError(f"duplicate algorithm labels: {labels}; set distinct 'label' values")

    trials = data["trials"]
    if not isinstance(trials, int) or trials < 1:
        raise ConfigError(f"trials must be a positive integer, got {trials!r}")
    base_seed = data["base_seed"]
    if not isinstance(base_seed, int) or base_seed < 0:
        raise ConfigError(f"base_seed must be a non-negative integer, got {base_seed!r}")

    penalty_block = data.get("penalty", {})
    if not isinstance(penalty_block, dict):
        raise ConfigError("penalty must be a mapping")
    unknown = set(penalty_block) - {"penalty_weight", "eq_tolerance"}
    if unknown:
        raise ConfigError(f"unknown penalty keys: {sorted(unknown)}")
    try:
        penalty = PenaltyConfig(**penalty_block)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad penalty block: {exc}") from exc

    output = data.get("output", "results")
    if not isinstance(output, str) or not output:
        raise ConfigError(f"output must be a non-empty string, got {output!r}")
    workers = data.get("workers", 1)
    if not isinstance(workers, int) or workers < 1:
        raise ConfigError(f"workers must be a positive integer, got {workers!r}")

    return ExperimentSpec(
        problems=problems,
        algorithms=algorithms,
        trials=trials,
        base_seed=base_seed,
        stop=stop,
        penalty=penalty,
        output=output,
        workers=workers,
    )


def _as_list(value, key: str) -> list:
    if not isinstance(value, list) or not value:
        raise ConfigError(f"{key} must be a non-empty list")
    return value


def _parse_problem(entry) -> ProblemRef:
    if isinstance(entry, str):
        name, dimension = entry, None
    elif isinstance(entry, dict):
        unknown = set(entry) - {"name", "dimension"}
        if unknown:
            raise ConfigError(f"unknown problem keys: {sorted(unknown)}")
        name = entry.get("name")
        dimension = entry.get("dimension")
    else:
        raise ConfigError(f"problem entries must be names or mappings, got {entry!r}")
    if not isinstance(name, str):
        raise ConfigError(f"problem name must be a string, got {name!r}")
    if dimension is not None and not isinstance(dimension, int):
        raise ConfigError(f"problem dimension must be an integer, got {dimension!r}")
    try:
        built = get_problem(name, dimension)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return ProblemRef(name=name, dimension=built.dimension)


def _parse_algorithm(entry, stop: StopCriterion) -> AlgorithmRef:
    if isinstance(entry, str):
        entry = {"name": entry}
    if not isinstance(entry, dict):
        raise ConfigError(f"algorithm entries must be names or mappings, got {entry!r}")
    unknown = set(entry) - {"name", "label", "params"}
    if unknown:
        raise ConfigError(f"unknown algorithm keys: {sorted(unknown)}")
    name = entry.get("name")
    if name not in ALGORITHM_NAMES:
        raise ConfigError(f"unknown algorithm {name!r}; available: {', '.join(ALGORITHM_NAMES)}")
    label = entry.get("label", name)
    if not isinstance(label, str) or not label or "__" in label:
        raise ConfigError(f"algorithm label must be a nonempty string without '__', got {label!r}")
    params = entry.get("params", {})
    if not isinstance(params, dict):
        raise ConfigError("algorithm params must be a mapping")
    allowed = _CUCKOO_PARAM_KEYS if name == "cuckoo" else _HILL_CLIMB_PARAM_KEYS
    unknown = set(params) - allowed
    if unknown:
        raise ConfigError(f"unknown {name} params: {sorted(unknown)}; allowed: {sorted(allowed)}")
    try:
        _build_params(name, params, stop)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad {name} params: {exc}") from exc
    return AlgorithmRef(name=name, label=label, params=dict(params))


def _parse_stop(block) -> StopCriterion:
    if not isinstance(block, dict):
        raise ConfigError("stop must be a mapping")
    unknown = set(block) - {"max_evaluations", "target_objective", "stagnation_window"}
    if unknown:
        raise ConfigError(f"unknown stop keys: {sorted(unknown)}")
    try:
        return StopCriterion(**block)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad stop block: {exc}") from exc


def _build_params(name: str, block: dict, stop: StopCriterion):
    if name == "cuckoo":
        levy = LevyConfig(
            tail_exponent=block.get("tail_exponent", 1.5),
            min_step=block.get("min_step", 1e-3),
        )
        return AlgorithmParams(
            n=block.get("n", 25),
            p_a=block.get("p_a", 0.25),
            alpha=block.get("alpha"),
            levy=levy,
            stop=stop,
            compare_to=block.get("compare_to", "random"),
        )
    return HillClimbParams(
        step_fraction=block.get("step_fraction", 0.1),
        shrink_factor=block.get("shrink_factor", 0.5),
        stall_limit=block.get("stall_limit", 20),
        stop=stop,
    )


def spec_to_dict(spec: ExperimentSpec) -> dict:
    """Plain-dict form of a spec; parseable by :func:`spec_from_dict`."""
    return {
        "problems": [{"name": p.name, "dimension": p.dimension} for p in spec.problems],
        "algorithms": [
            {"name": a.name, "label": a.label, "params": dict(a.params)}
            for a in spec.algorithms
        ],
        "trials": spec.trials,
        "base_seed": spec.base_seed,
        "stop": {k: v for k, v in asdict(spec.stop).items() if v is not None},
        "penalty": asdict(spec.penalty),
        "output": spec.output,
        "workers": spec.workers,
    }


# --- running ------------------------------------------------------------------

def _execute_trial(task: dict) -> dict:
    """Run one (problem, algorithm, trial) cell; never raises.

    Takes and returns plain data only, so it can cross a process
    boundary, and so serial and parallel execution share one code path.
    """
    started = time.perf_counter()
    record = {
        "problem": task["problem"],
        "dimension": task["dimension"],
        "algorithm": task["label"],
        "trial": task["trial"],
        "seed": task["seed"],
        "status": "ok",
        "error": None,
    }
    try:
        problem = get_problem(task["problem"], task["dimension"])
        stop = StopCriterion(**task["stop"])
        penalty = PenaltyConfig(**task["penalty"])
        params = _build_params(task["name"], task["params"], stop)
        if task["name"] == "cuckoo":
            result = cuckoo_search(problem, params, seed=task["seed"], penalty=penalty)
        else:
            result = hill_climb_restart(problem, params, seed=task["seed"], penalty=penalty)
        record.update(
            history=[float(v) for v in result.history],
            history_evaluations=[int(e) for e in result.history_evaluations],
            best_objective=float(result.best_objective),
            best_position=[float(v) for v in result.best_position],
            best_feasible=bool(result.best_feasible),
            evaluations=int(result.evaluations),
            terminated_by=result.terminated_by,
        )
    except Exception as exc:  # a failed trial must not sink the rest of the grid
        record.update(
            status="error",
            error=f"{type(exc).__name__}: {exc}",
            history=[],
            history_evaluations=[],
            best_objective=None,
            best_position=None,
            best_feasible=False,
            evaluations=0,
            terminated_by="error",
        )
    record["wall_time_seconds"] = time.perf_counter() - started
    return record


def _tasks(spec: ExperimentSpec) -> list[dict]:
    stop = {k: v for k, v in asdict(spec.stop).items() if v is not None}
    penalty = asdict(spec.penalty)
    tasks = []
    for problem in spec.problems:
        for algorithm in spec.algorithms:
            for trial in range(spec.trials):
                tasks.append(
                    {
                        "problem": problem.name,
                        "dimension": problem.dimension,
                        "name": algorithm.name,
                        "label": algorithm.label,
                        "params": dict(algorithm.params),
                        "stop": stop,
                        "penalty": penalty,
                        "trial": trial,
                        "seed": spec.base_seed + trial,
                    }
                )
    return tasks


def run_experiment(spec: ExperimentSpec) -> list[SummaryRow]:
    """Run the full grid, write records and summary, return the rows."""
    tasks = _tasks(spec)
    if spec.workers > 1:
        with ProcessPoolExecutor(max_workers=spec.workers) as pool:
            records = list(pool.map(_execute_trial, tasks))
    else:
        records = [_execute_trial(task) for task in tasks]

    out_dir = Path(spec.output)
    records_dir = out_dir / "records"
    records_dir.mkdir(parents=True, exist_ok=True)
    for record in records:
        _write_record(record, records_dir)
    (out_dir / "experiment.yaml").write_text(
        yaml.safe_dump(spec_to_dict(spec), sort_keys=False), encoding="utf-8"
    )
    rows = summarize(records, spec.stop.target_objective)
    write_summary(rows, out_dir / "summary.tsv")
    return rows


def _record_stem(record: dict) -> str:
    return f"{record['problem']}__{record['algorithm']}__t{record['trial']:03d}"


def _write_record(record: dict, records_dir: Path) -> None:
    stem = _record_stem(record)
    lines = ["iteration\tbest_objective\tevaluations"]
    for i, (value, evals) in enumerate(zip(record["history"], record["history_evaluations"])):
        lines.append(f"{i}\t{value!r}\t{evals}")
    (records_dir / f"{stem}.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")

    meta = {k: v for k, v in record.items() if k not in ("history", "history_evaluations")}
    (records_dir / f"{stem}.meta.yaml").write_text(
        yaml.safe_dump(meta, sort_keys=True), encoding="utf-8"
    )


def read_records(output_dir) -> list[dict]:
    """Load all records (sidecar plus history) from a results directory."""
    records_dir = Path(output_dir) / "records"
    if not records_dir.is_dir():
        raise FileNotFoundError(f"no records directory under {output_dir!r}")
    records = []
    for meta_path in sorted(records_dir.glob("*.meta.yaml")):
        record = yaml.safe_load(meta_path.read_text(encoding="utf-8"))
        tsv_path = meta_path.with_name(meta_path.name.replace(".meta.yaml", ".tsv"))
        history, history_evaluations = [], []
        for line in tsv_path.read_text(encoding="utf-8").splitlines()[1:]:
            _, value, evals = line.split("\t")
            history.append(float(value))
            history_evaluations.append(int(evals))
        record["history"] = history
        record["history_evaluations"] = history_evaluations
        records.append(record)
    if not records:
        raise FileNotFoundError(f"no records found under {records_dir}")
    return records


def read_target(output_dir) -> Optional[float]:
    """The experiment's target objective, from the stored resolved spec."""
    path = Path(output_dir) / "experiment.yaml"
    if not path.is_file():
        raise FileNotFoundError(f"missing {path}; cannot recover the target objective")
    data = yaml.safe_load(path.read_text(encoding="utf-8"))
    return data.get("stop", {}).get("target_objective")


# --- summarizing --------------------------------------------------------------

def summarize(records: list[dict], target_objective: Optional[float]) -> list[SummaryRow]:
    """Per-cell statistics over trials, sorted by (problem, algorithm).

    Failed trials count as +inf finals (and as misses), keeping every
    statistic defined over exactly the requested number of trials.
    median_evals_to_target covers the successful trials only and is
    absent when there are none (or no target was set).
    """
    ordered = sorted(records, key=lambda r: (r["problem"], r["algorithm"], r["trial"]))
    groups: dict[tuple[str, str], list[dict]] = {}
    for record in ordered:
        groups.setdefault((record["problem"], record["algorithm"]), []).append(record)

    rows = []
    for (problem, algorithm), group in sorted(groups.items()):
        finals = []
        evals_to_target = []
        wall = 0.0
        for record in group:
            wall += record["wall_time_seconds"]
            if record["status"] != "ok":
                finals.append(float("inf"))
                continue
            finals.append(record["best_objective"])
            if target_objective is not None:
                for value, evals in zip(record["history"], record["history_evaluations"]):
                    if value <= target_objective:
                        evals_to_target.append(evals)
                        break
        successes = len(evals_to_target)
        rows.append(
            SummaryRow(
                problem=problem,
                algorithm=algorithm,
                trials=len(group),
                success_rate=None if target_objective is None else successes / len(group),
                median_evals_to_target=lower_median(evals_to_target) if successes else None,
                best_final=min(finals),
                median_final=lower_median(finals),
                worst_final=max(finals),
                wall_time_seconds=wall,
            )
        )
    return rows


def format_summary(rows: list[SummaryRow]) -> str:
    """Summary rows as TSV text (also what summary.tsv contains)."""
    lines = ["\t".join(_SUMMARY_COLUMNS)]
    for row in rows:
        lines.append(
            "\t".join(
                (
                    row.problem,
                    row.algorithm,
                    str(row.trials),
                    "NA" if row.success_rate is None else repr(row.success_rate),
                    "NA" if row.median_evals_to_target is None else str(row.median_evals_to_target),
                    repr(row.best_final),
                    repr(row.median_final),
                    repr(row.worst_final),
                    f"{row.wall_time_seconds:.3f}",
                )
            )
        )
    return "\n".join(lines) + "\n"


def write_summary(rows: list[SummaryRow], path) -> None:
    Path(path).write_text(format_summary(rows), encoding="utf-8")
