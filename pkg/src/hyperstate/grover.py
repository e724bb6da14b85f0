"""Plain Grover iterations (oracle followed by inversion about the mean)."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgumentError
from .state import SolutionSet, StateVector, apply_oracle, uniform_superposition


@dataclass
class GroverStep:
    iteration: int
    success_probability: float
    state: StateVector | None = None


@dataclass
class GroverTrace:
    n: int
    sols: SolutionSet
    steps: list[GroverStep] = field(default_factory=list)
    first_oracle_state: StateVector | None = None

    def probabilities(self) -> list[float]:
        return [s.success_probability for s in self.steps]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["iteration", "success_probability"])
        for s in self.steps:
            writer.writerow([s.iteration, f"{s.success_probability:.12g}"])
        return buf.getvalue()


def diffusion(state: StateVector) -> StateVector:
    """``(2|psi0><psi0| - 1)|state>``, i.e. reflect every amplitude about the mean."""
    mean = state.amps.mean()
    return StateVector(state.n, 2.0 * mean - state.amps)


def success_probability(state: StateVector, sols: SolutionSet) -> float:
    return float(np.sum(np.abs(state.amps[list(sols.solutions)]) ** 2))


def run_grover(n: int, sols: SolutionSet, iterations: int, keep_states: bool = False) -> GroverTrace:
    if sols.n != n:
        raise InvalidArgumentError(f"solution set is for n={sols.n}, expected n={n}")
    if isinstance(iterations, bool) or not isinstance(iterations, int) or iterations < 0:
        raise InvalidArgumentError(f"iterations must be a nonnegative integer, got {iterations!r}")
    if sols.m >= 1 << n:
        raise InvalidArgumentError("every basis state is marked; nothing to search")
    state = uniform_superposition(n)
    trace = GroverTrace(n, sols)
    trace.steps.append(GroverStep(0, success_probability(state, sols), state if keep_states else None))
    for k in range(1, iterations + 1):
        state = apply_oracle(state, sols)
        if k == 1:
            trace.first_oracle_state = state
        state = diffusion(state)
        trace.steps.append(GroverStep(k, success_probability(state, sols), state if keep_states else None))
    return trace


def rotation_angle(n: int, m: int) -> float:
    return math.asin(math.sqrt(m / 2**n))


def closed_form_success(n: int, m: int, k: int) -> float:
    """``sin^2((2k+1) theta)`` with ``sin(theta) = sqrt(M / 2^n)``."""
    return math.sin((2 * k + 1) * rotation_angle(n, m)) ** 2


def optimal_iterations(n: int, m: int) -> int:
    return int(math.floor(math.pi / (4.0 * rotation_angle(n, m))))
