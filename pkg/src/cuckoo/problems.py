"""Benchmark problems and constraint handling.

A :class:`Problem` bundles an objective with box bounds and optional
constraint functions.  Constraints enter the search through a quadratic
exterior penalty (:func:`evaluate`), so optimizers only ever see a plain
scalar objective plus a feasibility flag.

The corpus covers four classic unconstrained test functions (sphere,
Rosenbrock, Ackley, Rastrigin, all scalable) and two constrained
engineering designs (tension/compression spring, welded beam) with their
standard bounds and best-known reference points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

__all__ = [
    "BEST_KNOWN",
    "EvaluationError",
    "PenaltyConfig",
    "Problem",
    "corpus",
    "evaluate",
    "get_problem",
    "problem_names",
]

Objective = Callable[[np.ndarray], float]


class EvaluationError(RuntimeError):
    """Objective or penalty evaluation produced a non-finite value."""

    def __init__(self, message: str, x) -> None:
        super().__init__(message)
        self.x = np.array(x, dtype=float)


@dataclass(frozen=True)
class PenaltyConfig:
    """Quadratic exterior penalty settings.

    Violations are squared, summed, and scaled by penalty_weight.  The
    weight must be large relative to objective curvature: a quadratic
    exterior penalty is flat at the boundary, so its unconstrained
    optimum sits slightly outside the feasible set at distance roughly
    (objective gradient) / (2 * weight).  The default keeps that offset
    below float-noise scale for objectives of order one.

    Equality constraints h(x) = 0 count as violated only beyond
    eq_tolerance, i.e. when ``|h(x)| - eq_tolerance > 0``.
    """

    penalty_weight: float = 1e8
    eq_tolerance: float = 1e-4

    def __post_init__(self) -> None:
        if not self.penalty_weight > 0.0:
            raise ValueError(f"penalty_weight must be positive, got {self.penalty_weight}")
        if not self.eq_tolerance >= 0.0:
            raise ValueError(f"eq_tolerance must be >= 0, got {self.eq_tolerance}")


@dataclass(frozen=True, eq=False)
class Problem:
    """A box-bounded minimization problem.

    bounds is a (dimension, 2) array of [lower, upper] rows with
    lower < upper everywhere.  Inequality constraints are satisfied when
    g(x) <= 0; equality constraints when |h(x)| <= eq_tolerance.
    """

    name: str
    bounds: np.ndarray
    objective: Objective
    inequality_constraints: tuple[Objective, ...] = ()
    equality_constraints: tuple[Objective, ...] = ()

    def __post_init__(self) -> None:
        arr = np.array(self.bounds, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] < 1:
            raise ValueError(f"bounds must have shape (d, 2), got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("bounds must be finite")
        if not np.all(arr[:, 0] < arr[:, 1]):
            raise ValueError("each lower bound must be strictly below its upper bound")
        arr.setflags(write=False)
        object.__setattr__(self, "bounds", arr)

    @property
    def dimension(self) -> int:
        return self.bounds.shape[0]

    @property
    def lower(self) -> np.ndarray:
        return self.bounds[:, 0]

    @property
    def upper(self) -> np.ndarray:
        return self.bounds[:, 1]


def evaluate(problem: Problem, x, penalty: Optional[PenaltyConfig] = None) -> tuple[float, bool]:
    """Penalized objective at ``x``.

    Returns ``(value, feasible)`` where value is the raw objective plus
    ``penalty_weight`` times the summed squared violations, and feasible
    is True iff every violation term is exactly zero.  Raises
    :class:`EvaluationError` if the result is NaN or infinite.
    """
    if penalty is None:
        penalty = PenaltyConfig()
    x = np.asarray(x, dtype=float)
    raw = float(problem.objective(x))
    violation_sq = 0.0
    feasible = True
    for g in problem.inequality_constraints:
        v = float(g(x))
        if v > 0.0:
            violation_sq += v * v
            feasible = False
    for h in problem.equality_constraints:
        v = abs(float(h(x))) - penalty.eq_tolerance
        if v > 0.0:
            violation_sq += v * v
            feasible = False
    value = raw + penalty.penalty_weight * violation_sq
    if not math.isfinite(value):
        raise EvaluationError(
            f"non-finite penalized objective ({value!r}) on {problem.name!r}", x
        )
    return value, feasible


# --- unconstrained test functions -------------------------------------------

def sphere(dimension: int = 10) -> Problem:
    """Sum of squares on [-5.12, 5.12]^d.  Global minimum f(0) = 0."""
    _check_dimension(dimension)

    def f(x: np.ndarray) -> float:
        return float(np.sum(x * x))

    return Problem("sphere", _box(-5.12, 5.12, dimension), f)


def rosenbrock(dimension: int = 10) -> Problem:
    """Banana-valley function on [-5, 10]^d, d >= 2.

    sum(100 * (x[i+1] - x[i]^2)^2 + (1 - x[i])^2); minimum f(1,...,1) = 0.
    """
    _check_dimension(dimension, minimum=2)

    def f(x: np.ndarray) -> float:
        return float(np.sum(100.0 * (x[1:] - x[:-1] ** 2) ** 2 + (1.0 - x[:-1]) ** 2))

    return Problem("rosenbrock", _box(-5.0, 10.0, dimension), f)


def ackley(dimension: int = 10) -> Problem:
    """Ackley function on [-32.768, 32.768]^d with a = 20, b = 0.2, c = 2*pi.

    Nearly flat far field with one deep funnel; minimum f(0) = 0.
    """
    _check_dimension(dimension)

    def f(x: np.ndarray) -> float:
        d = x.size
        root_mean_sq = math.sqrt(float(np.sum(x * x)) / d)
        cos_mean = float(np.sum(np.cos(2.0 * math.pi * x))) / d
        return -20.0 * math.exp(-0.2 * root_mean_sq) - math.exp(cos_mean) + 20.0 + math.e

    return Problem("ackley", _box(-32.768, 32.768, dimension), f)


def rastrigin(dimension: int = 10) -> Problem:
    """Rastrigin function on [-5.12, 5.12]^d.

    10*d + sum(x_i^2 - 10*cos(2*pi*x_i)); a regular grid of local minima
    around the global minimum f(0) = 0.
    """
    _check_dimension(dimension)

    def f(x: np.ndarray) -> float:
        return float(10.0 * x.size + np.sum(x * x - 10.0 * np.cos(2.0 * math.pi * x)))

    return Problem("rastrigin", _box(-5.12, 5.12, dimension), f)


# --- constrained engineering designs -----------------------------------------

def spring_design() -> Problem:
    """Tension/compression spring weight minimization (Arora's formulation).

    Variables: wire diameter w in [0.05, 2], mean coil diameter D in
    [0.25, 1.3], number of active coils N in [2, 15] (treated as
    continuous).  Objective (N + 2) * D * w^2; four inequality
    constraints on shear stress, surge frequency, deflection, and
    outside diameter.
    """

    def f(x: np.ndarray) -> float:
        w, D, N = x
        return float((N + 2.0) * D * w * w)

    gs = (
        lambda x: 1.0 - x[1] ** 3 * x[2] / (71785.0 * x[0] ** 4),
        lambda x: (4.0 * x[1] ** 2 - x[0] * x[1])
        / (12566.0 * (x[1] * x[0] ** 3 - x[0] ** 4))
        + 1.0 / (5108.0 * x[0] ** 2)
        - 1.0,
        lambda x: 1.0 - 140.45 * x[0] / (x[1] ** 2 * x[2]),
        lambda x: (x[0] + x[1]) / 1.5 - 1.0,
    )
    bounds = [(0.05, 2.0), (0.25, 1.3), (2.0, 15.0)]
    return Problem("spring_design", bounds, f, inequality_constraints=gs)


def welded_beam() -> Problem:
    """Welded beam fabrication cost minimization (Rao's formulation as
    standardized by Coello).

    Variables: weld thickness h in [0.1, 2], weld length l in [0.1, 10],
    bar height t in [0.1, 10], bar thickness b in [0.1, 2].  Constants:
    load P = 6000 lb, overhang L = 14 in, E = 30e6 psi, G = 12e6 psi,
    allowable shear 13600 psi, allowable bending 30000 psi, allowable
    deflection 0.25 in.  Seven inequality constraints cover weld shear
    stress, bar bending stress, h <= b, a side cost cap, minimum weld
    thickness, tip deflection, and buckling load.
    """
    P, L, E, G = 6000.0, 14.0, 30e6, 12e6

    def f(x: np.ndarray) -> float:
        h, l, t, b = x
        return float(1.10471 * h * h * l + 0.04811 * t * b * (14.0 + l))

    def weld_shear(x: np.ndarray) -> float:
        h, l, t, _ = x
        tau1 = P / (math.sqrt(2.0) * h * l)
        moment = P * (L + l / 2.0)
        radius = math.sqrt(l * l / 4.0 + ((h + t) / 2.0) ** 2)
        polar = 2.0 * (math.sqrt(2.0) * h * l * (l * l / 12.0 + ((h + t) / 2.0) ** 2))
        tau2 = moment * radius / polar
        return math.sqrt(tau1 * tau1 + 2.0 * tau1 * tau2 * l / (2.0 * radius) + tau2 * tau2)

    def buckling_load(x: np.ndarray) -> float:
        _, _, t, b = x
        return (4.013 * E * math.sqrt(t * t * b**6 / 36.0) / L**2) * (
            1.0 - (t / (2.0 * L)) * math.sqrt(E / (4.0 * G))
        )

    gs = (
        lambda x: weld_shear(x) - 13600.0,
        lambda x: 6.0 * P * L / (x[3] * x[2] ** 2) - 30000.0,
        lambda x: x[0] - x[3],
        lambda x: 0.10471 * x[0] ** 2 + 0.04811 * x[2] * x[3] * (14.0 + x[1]) - 5.0,
        lambda x: 0.125 - x[0],
        lambda x: 4.0 * P * L**3 / (E * x[2] ** 3 * x[3]) - 0.25,
        lambda x: P - buckling_load(x),
    )
    bounds = [(0.1, 2.0), (0.1, 10.0), (0.1, 10.0), (0.1, 2.0)]
    return Problem("welded_beam", bounds, f, inequality_constraints=gs)


# Best-known solutions reported across the structural-optimization
# benchmarking literature (spring point from the He & Wang lineage, beam
# point from the Coello-standardized formulation).  Used only as
# self-consistency references: we evaluate OUR formulation at these
# points; no literature-optimality claim is made.  At this 6-digit
# rounding the spring point leaves one constraint violated by ~2e-5.
BEST_KNOWN: dict[str, tuple[np.ndarray, float]] = {
    "spring_design": (np.array([0.051690, 0.356750, 11.287126]), 0.012665),
    "welded_beam": (np.array([0.205730, 3.470489, 9.036624, 0.205730]), 1.724852),
}


_SCALABLE: dict[str, Callable[[int], Problem]] = {
    "sphere": sphere,
    "rosenbrock": rosenbrock,
    "ackley": ackley,
    "rastrigin": rastrigin,
}
_FIXED: dict[str, Callable[[], Problem]] = {
    "spring_design": spring_design,
    "welded_beam": welded_beam,
}

DEFAULT_DIMENSION = 10


def problem_names() -> list[str]:
    """Names accepted by :func:`get_problem`."""
    return list(_SCALABLE) + list(_FIXED)


def get_problem(name: str, dimension: Optional[int] = None) -> Problem:
    """Build a corpus problem by name.

    Scalable problems default to dimension 10; the engineering designs
    have fixed dimensions and reject any other request.
    """
    if name in _SCALABLE:
        return _SCALABLE[name](DEFAULT_DIMENSION if dimension is None else dimension)
    if name in _FIXED:
        built = _FIXED[name]()
        if dimension is not None and dimension != built.dimension:
            raise ValueError(
                f"{name} has fixed dimension {built.dimension}, got request for {dimension}"
            )
        return built
    raise ValueError(f"unknown problem {name!r}; available: {', '.join(problem_names())}")


def corpus() -> list[Problem]:
    """All corpus problems at their default dimensions."""
    return [get_problem(name) for name in problem_names()]


def _box(lo: float, hi: float, dimension: int) -> list[tuple[float, float]]:
    return [(lo, hi)] * dimension


def _check_dimension(dimension: int, minimum: int = 1) -> None:
    if not isinstance(dimension, (int, np.integer)) or dimension < minimum:
        raise ValueError(f"dimension must be an integer >= {minimum}, got {dimension!r}")
