"""Deterministic multi-start derivative-free maximization.

All starts advance in lock-step so that every objective call is a single
vectorized evaluation over a ``(starts, params)`` array.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.stats import qmc

Objective = Callable[[np.ndarray], np.ndarray]

DEFAULT_SEED = 0x5EED


@dataclass
class MultiStartResult:
    x: np.ndarray  # (starts, params) final points
    f: np.ndarray  # (starts,) final objective values
    step: np.ndarray  # (starts,) final compass step
    sweeps: int


def start_points(lower, upper, n_grid: int, n_random: int, seed: int) -> np.ndarray:
    """``n_grid`` unscrambled Sobol points followed by ``n_random`` uniform draws."""
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    dim = lower.size
    grid = qmc.Sobol(d=dim, scramble=False).random(n_grid) if n_grid else np.empty((0, dim))
    rng = np.random.default_rng(seed)
    rand = rng.random((n_random, dim))
    unit = np.vstack([grid, rand])
    return lower + unit * (upper - lower)


def compass_search(
    objective: Objective,
    x0: np.ndarray,
    step0: float = 0.5,
    tol: float = 1e-12,
    max_sweeps: int = 500,
) -> MultiStartResult:
    """Maximize ``objective`` from every row of ``x0`` by coordinate compass moves.

    Each sweep tries ``+h`` then ``-h`` along each coordinate in turn and keeps
    any strict improvement immediately.  A start whose sweep made no progress
    halves its step; it stops once the step drops below ``tol``.
    """
    x = np.array(x0, dtype=float, copy=True)
    f = np.asarray(objective(x), dtype=float)
    h = np.full(x.shape[0], float(step0))
    n_params = x.shape[1]
    sweeps = 0
    while sweeps < max_sweeps:
        active = h >= tol
        if not active.any():
            break
        sweeps += 1
        improved = np.zeros(x.shape[0], dtype=bool)
        for k in range(n_params):
            for sign in (1.0, -1.0):
                trial = x.copy()
                trial[:, k] += sign * h
                ft = objective(trial)
                better = active & (ft > f)
                if better.any():
                    x[better] = trial[better]
                    f[better] = ft[better]
                    improved |= better
        h = np.where(active & ~improved, h * 0.5, h)
    return MultiStartResult(x=x, f=f, step=h, sweeps=sweeps)

