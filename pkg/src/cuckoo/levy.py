"""Heavy-tailed step sampling for the global random walk.

Step lengths follow a power law: the density is proportional to
``s ** -(1 + tail_exponent)`` above a lower cutoff ``min_step`` and zero
below it.  Draws use inverse-transform sampling from that truncated
Pareto law, which reproduces the tail exactly, costs one uniform per
magnitude, and replays bit-identically from a seeded generator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "LevyConfig",
    "levy_tail_density",
    "sample_step_length",
    "sample_levy_vector",
    "tail_prefactor",
]


@dataclass(frozen=True)
class LevyConfig:
    """Parameters of the heavy-tailed step law.

    tail_exponent must lie in (1, 3]; smaller values give heavier tails
    (1.5 is a good general-purpose default).  min_step is the lower
    cutoff of the law; the density is truncated to zero below it.  seed
    is only consulted by :meth:`rng`; optimizer runs own their stream.
    """

    tail_exponent: float = 1.5
    min_step: float = 1e-3
    seed: int = 0

    def __post_init__(self) -> None:
        if not 1.0 < self.tail_exponent <= 3.0:
            raise ValueError(
                f"tail_exponent must be in (1, 3], got {self.tail_exponent}"
            )
        if not self.min_step > 0.0:
            raise ValueError(f"min_step must be positive, got {self.min_step}")

    def rng(self) -> np.random.Generator:
        """Fresh generator seeded from this config."""
        return np.random.default_rng(self.seed)


def tail_prefactor(cfg: LevyConfig) -> float:
    """Constant factor of the tail density for ``cfg``.

    Positive only for tail_exponent < 2: the sine factor vanishes at 2
    and is negative beyond, so the closed form stops being a usable
    density there.  Sampling never consults this constant, so draws stay
    valid across the whole configurable range.
    """
    lam = cfg.tail_exponent
    return lam * math.gamma(lam) * math.sin(math.pi * lam / 2.0) / math.pi


def levy_tail_density(s, cfg: LevyConfig):
    """Density of the step-length law at ``s`` (scalar or array).

    Zero below the cutoff, ``tail_prefactor(cfg) * s**-(1+tail_exponent)``
    at and above it.  ``s`` must be positive.
    """
    arr = np.asarray(s, dtype=float)
    if np.any(arr <= 0.0):
        raise ValueError("step length must be positive")
    out = np.where(
        arr < cfg.min_step,
        0.0,
        tail_prefactor(cfg) * arr ** (-1.0 - cfg.tail_exponent),
    )
    return float(out) if out.ndim == 0 else out


def sample_step_length(cfg: LevyConfig, rng: np.random.Generator, size=None):
    """Draw step lengths ``>= cfg.min_step`` with the configured tail.

    Inverse-transform sampling: ``s = min_step * u ** (-1/tail_exponent)``
    with u uniform on (0, 1].  The open-at-zero interval matters: u = 0
    would be an infinite step, so the uniform is taken as
    ``1 - rng.random()``.  Returns a float when size is None, otherwise
    an array of the requested shape.
    """
    u = 1.0 - rng.random(size)
    s = cfg.min_step * u ** (-1.0 / cfg.tail_exponent)
    return float(s) if size is None else s


def sample_levy_vector(dim: int, cfg: LevyConfig, rng: np.random.Generator) -> np.ndarray:
    """Signed heavy-tailed step for each of ``dim`` coordinates.

    Consumes exactly two blocks from ``rng``: ``dim`` magnitude uniforms,
    then ``dim`` sign uniforms (< 0.5 maps to +1).  Components are
    independent and symmetric about zero.
    """
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    magnitudes = sample_step_length(cfg, rng, size=dim)
    signs = np.where(rng.random(dim) < 0.5, 1.0, -1.0)
    return signs * magnitudes
