"""Random-restart hill climbing, the comparison baseline.

Shares the problem, penalty, stop-criterion, and result contracts with
the cuckoo search optimizer so the experiment harness can treat both
uniformly.  One evaluation is one iteration here: history gains an entry
per evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import STAGNATION_EPS, RunResult, StopCriterion
from .problems import PenaltyConfig, Problem, evaluate

__all__ = ["HillClimbParams", "hill_climb_restart"]


@dataclass(frozen=True)
class HillClimbParams:
    """Settings for the restarting hill climber.

    Each move perturbs one uniformly chosen coordinate by a uniform
    offset within the current per-coordinate step, which starts at
    step_fraction of the bound width and shrinks by shrink_factor after
    every rejected move.  stall_limit consecutive rejections trigger a
    restart from a fresh uniform point with the step reset.
    """

    step_fraction: float = 0.1
    shrink_factor: float = 0.5
    stall_limit: int = 20
    stop: StopCriterion = field(default_factory=lambda: StopCriterion(max_evaluations=50_000))

    def __post_init__(self) -> None:
        if not 0.0 < self.step_fraction <= 1.0:
            raise ValueError(f"step_fraction must be in (0, 1], got {self.step_fraction}")
        if not 0.0 < self.shrink_factor < 1.0:
            raise ValueError(f"shrink_factor must be in (0, 1), got {self.shrink_factor}")
        if self.stall_limit < 1:
            raise ValueError(f"stall_limit must be >= 1, got {self.stall_limit}")


def hill_climb_restart(
    problem: Problem,
    params: Optional[HillClimbParams] = None,
    seed: int = 0,
    penalty: Optional[PenaltyConfig] = None,
    accept_log: Optional[list] = None,
) -> RunResult:
    """Run the baseline on ``problem`` until the stop criterion fires.

    Only strict improvements are accepted.  The stop criterion is
    checked after every evaluation, so max_evaluations is never
    overshot.  accept_log, when given, collects
    (restart_index, objective) pairs for the start of each climb and
    every accepted move; it exists for diagnostics and tests.
    """
    if params is None:
        params = HillClimbParams()
    if penalty is None:
        penalty = PenaltyConfig()
    rng = np.random.default_rng(seed)
    stop = params.stop
    lower, upper = problem.lower, problem.upper
    width = upper - lower
    dimension = problem.dimension

    evaluations = 0
    history: list[float] = []
    history_evaluations: list[int] = []
    best_position: Optional[np.ndarray] = None
    best_objective = float("inf")
    best_feasible = False
    stall_iterations = 0
    reason: Optional[str] = None

    def consume(position: np.ndarray) -> tuple[float, bool]:
        """Evaluate one point, update best/history, check termination."""
        nonlocal evaluations, best_position, best_objective, best_feasible
        nonlocal stall_iterations, reason
        value, feasible = evaluate(problem, position, penalty)
        evaluations += 1
        if value < best_objective - STAGNATION_EPS:
            stall_iterations = 0
        else:
            stall_iterations += 1
        if value < best_objective:
            best_position = position.copy()
            best_objective = value
            best_feasible = feasible
        history.append(best_objective)
        history_evaluations.append(evaluations)
        # precedence: target over budget over stagnation
        if stop.target_objective is not None and best_objective <= stop.target_objective:
            reason = "target"
        elif stop.max_evaluations is not None and evaluations >= stop.max_evaluations:
            reason = "max_evaluations"
        elif stop.stagnation_window is not None and stall_iterations >= stop.stagnation_window:
            reason = "stagnation"
        return value, feasible

    restart_index = 0
    while reason is None:
        current = rng.uniform(lower, upper)
        current_value, _ = consume(current)
        if accept_log is not None:
            accept_log.append((restart_index, current_value))
        step = params.step_fraction * width
        failures = 0
        while reason is None:
            coord = int(rng.integers(dimension))
            offset = float(rng.uniform(-step[coord], step[coord]))
            candidate = current.copy()
            candidate[coord] = min(max(candidate[coord] + offset, lower[coord]), upper[coord])
            value, _ = consume(candidate)
            if value < current_value:
                current, current_value = candidate, value
                failures = 0
                if accept_log is not None:
                    accept_log.append((restart_index, value))
            else:
                failures += 1
                step = step * params.shrink_factor
                if failures >= params.stall_limit:
                    break
        restart_index += 1

    assert best_position is not None
    return RunResult(
        best_position=best_position,
        best_objective=best_objective,
        best_feasible=best_feasible,
        history=history,
        history_evaluations=history_evaluations,
        evaluations=evaluations,
        seed=seed,
        terminated_by=reason,
    )
