"""Boolean functions, their algebraic normal form and the REW-state bridge.

Monomials are index-space bitmasks (see :mod:`hyperstate.state`); the empty
mask ``0`` is the constant term.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

from .errors import InvalidArgumentError
from .state import SolutionSet, StateVector, check_qubits


@dataclass(frozen=True, eq=False)
class BooleanFunction:
    n: int
    table: np.ndarray

    def __post_init__(self):
        check_qubits(self.n)
        table = np.asarray(self.table)
        if table.shape != (1 << self.n,):
            raise InvalidArgumentError(
                f"truth table for n={self.n} needs {1 << self.n} entries, got shape {table.shape}"
            )
        if not np.all((table == 0) | (table == 1)):
            raise InvalidArgumentError("truth table entries must be 0 or 1")
        table = table.astype(np.uint8)
        table.flags.writeable = False
        object.__setattr__(self, "table", table)

    def __eq__(self, other):
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.n, self.table.tobytes()))

    def weight(self) -> int:
        return int(self.table.sum())

    def support(self) -> tuple[int, ...]:
        return tuple(int(x) for x in np.flatnonzero(self.table))


@dataclass(frozen=True)
class ANF:
    """GF(2) polynomial as a sorted tuple of monomial masks."""

    n: int
    monomials: tuple[int, ...]

    def __post_init__(self):
        check_qubits(self.n)
        mons = tuple(int(m) for m in self.monomials)
        if len(set(mons)) != len(mons):
            raise InvalidArgumentError("duplicate monomials in ANF")
        if any(m < 0 or m >> self.n for m in mons):
            raise InvalidArgumentError(f"monomial mask out of range for n={self.n}")
        object.__setattr__(self, "monomials", tuple(sorted(mons)))

    def __contains__(self, mask: int) -> bool:
        return mask in self._lookup

    @cached_property
    def _lookup(self) -> frozenset:
        return frozenset(self.monomials)

    def coefficients(self) -> np.ndarray:
        coeffs = np.zeros(1 << self.n, dtype=np.uint8)
        coeffs[list(self.monomials)] = 1
        return coeffs


def function_from_solutions(sols: SolutionSet) -> BooleanFunction:
    table = np.zeros(1 << sols.n, dtype=np.uint8)
    table[list(sols.solutions)] = 1
    return BooleanFunction(sols.n, table)


def _butterfly(n: int, bits: np.ndarray) -> np.ndarray:
    # In-place GF(2) Moebius transform, one XOR pass per index bit.
    out = bits.astype(np.uint8, copy=True)
    for b in range(n):
        view = out.reshape(-1, 2, 1 << b)
        view[:, 1, :] ^= view[:, 0, :]
    return out


def mobius_transform(f: BooleanFunction) -> ANF:
    coeffs = _butterfly(f.n, f.table)
    return ANF(f.n, tuple(int(m) for m in np.flatnonzero(coeffs)))


def anf_to_function(a: ANF) -> BooleanFunction:
    return BooleanFunction(a.n, _butterfly(a.n, a.coefficients()))


def anf_from_monomials(n: int, monomials: Iterable[int]) -> ANF:
    """Build an ANF, cancelling repeated monomials pairwise (x + x = 0)."""
    acc: set[int] = set()
    for m in monomials:
        acc ^= {int(m)}
    return ANF(n, tuple(acc))


def anf_to_hypergraph(a: ANF):
    from .hypergraph import Hypergraph

    edges = tuple(m for m in a.monomials if m)
    phase = -1 if 0 in a else 1
    return Hypergraph(a.n, edges, phase)


def hypergraph_to_anf(h) -> ANF:
    mons = list(h.edges)
    if h.global_phase == -1:
        mons.append(0)
    return ANF(h.n, tuple(mons))


def rew_from_function(f: BooleanFunction) -> StateVector:
    signs = 1.0 - 2.0 * f.table.astype(np.float64)
    return StateVector(f.n, signs / np.sqrt(1 << f.n))


def function_from_rew(state: StateVector, atol: float = 1e-9) -> BooleanFunction:
    """Recover ``f`` from a REW state with a real positive-or-negative sign pattern."""
    scale = np.sqrt(state.dim)
    scaled = state.amps * scale
    if np.max(np.abs(scaled.imag)) > atol or np.max(np.abs(np.abs(scaled.real) - 1.0)) > atol:
        raise InvalidArgumentError("state is not a real equally weighted state")
    return BooleanFunction(state.n, (scaled.real < 0).astype(np.uint8))
