"""Dense state vectors and the small gate set used throughout the package.

Basis convention: qubit 0 is the most significant bit of the basis index, so
``|110>`` on three qubits is index 6.  A vertex/qubit subset is encoded as an
index-space bitmask, i.e. qubit ``i`` maps to bit ``1 << (n - 1 - i)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidArgumentError

MAX_QUBITS = 24


def check_qubits(n: int, cap: int = MAX_QUBITS) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise InvalidArgumentError(f"qubit count must be an integer, got {n!r}")
    if not 1 <= n <= cap:
        raise InvalidArgumentError(f"qubit count must be in [1, {cap}], got {n}")
    return int(n)


def qubit_bit(n: int, qubit: int) -> int:
    """Index-space bit of ``qubit`` (qubit 0 is the most significant)."""
    return 1 << (n - 1 - qubit)


def mask_from_qubits(n: int, qubits: Iterable[int]) -> int:
    mask = 0
    for q in qubits:
        if not 0 <= q < n:
            raise InvalidArgumentError(f"qubit {q} out of range for n={n}")
        mask |= qubit_bit(n, q)
    return mask


def qubits_from_mask(n: int, mask: int) -> tuple[int, ...]:
    return tuple(q for q in range(n) if mask & qubit_bit(n, q))


def basis_index(bits: str) -> int:
    """``'110'`` -> 6, reading the ket left to right."""
    return int(bits, 2)


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized pure state of ``n`` qubits stored as ``2**n`` complex amplitudes.

    The amplitude array is made read-only; gates return new instances.
    """

    n: int
    amps: np.ndarray

    def __post_init__(self):
        check_qubits(self.n)
        amps = np.array(self.amps, dtype=np.complex128)
        if amps.shape != (1 << self.n,):
            raise InvalidArgumentError(
                f"expected {1 << self.n} amplitudes for n={self.n}, got shape {amps.shape}"
            )
        amps.flags.writeable = False
        object.__setattr__(self, "amps", amps)

    @classmethod
    def basis(cls, n: int, index: int) -> "StateVector":
        check_qubits(n)
        if not 0 <= index < (1 << n):
            raise InvalidArgumentError(f"basis index {index} out of range for n={n}")
        amps = np.zeros(1 << n, dtype=np.complex128)
        amps[index] = 1.0
        return cls(n, amps)

    @classmethod
    def product(cls, qubit_states: Sequence[Sequence[complex]]) -> "StateVector":
        """Tensor product of single-qubit vectors, first entry is qubit 0."""
        amps = np.ones(1, dtype=np.complex128)
        for v in qubit_states:
            amps = np.kron(amps, np.asarray(v, dtype=np.complex128))
        return cls(len(qubit_states), amps)

    @property
    def dim(self) -> int:
        return 1 << self.n

    def norm_sq(self) -> float:
        return float(np.vdot(self.amps, self.amps).real)

    def allclose(self, other: "StateVector", atol: float = 1e-12) -> bool:
        return self.n == other.n and max_abs_diff(self, other) <= atol

    def _replace(self, amps: np.ndarray) -> "StateVector":
        return StateVector(self.n, amps)

    def __repr__(self):
        return f"StateVector(n={self.n}, amps={np.array2string(self.amps, precision=4)})"


@dataclass(frozen=True)
class SolutionSet:
    """Marked basis indices of a Grover search on ``n`` qubits."""

    n: int
    solutions: tuple[int, ...]

    def __post_init__(self):
        check_qubits(self.n)
        sols = tuple(sorted(set(int(s) for s in self.solutions)))
        if not sols:
            raise InvalidArgumentError("solution set must be nonempty")
        if sols[0] < 0 or sols[-1] >= (1 << self.n):
            raise InvalidArgumentError(f"solution indices must lie in [0, {1 << self.n})")
        object.__setattr__(self, "solutions", sols)

    @property
    def m(self) -> int:
        return len(self.solutions)

    def __iter__(self):
        return iter(self.solutions)

    def __len__(self):
        return len(self.solutions)


def hamming_distance(a: int, b: int) -> int:
    return bin(a ^ b).count("1")


def canonical_m1_solutions(n: int) -> SolutionSet:
    """The fully symmetric single solution ``|1...1>``."""
    return SolutionSet(n, ((1 << n) - 1,))


def canonical_m2_solutions(n: int, d: int) -> SolutionSet:
    """``|0..0>_d |1..1>_{n-d}`` and ``|1..1>_n``, at Hamming distance ``d``."""
    check_qubits(n)
    if not 1 <= d <= n:
        raise InvalidArgumentError(f"Hamming distance must be in [1, {n}], got {d}")
    return SolutionSet(n, ((1 << (n - d)) - 1, (1 << n) - 1))


def _index_array(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.int64)


def uniform_superposition(n: int) -> StateVector:
    n = check_qubits(n)
    return StateVector(n, np.full(1 << n, 1.0 / np.sqrt(1 << n), dtype=np.complex128))


def apply_oracle(state: StateVector, sols: SolutionSet) -> StateVector:
    if sols.n != state.n:
        raise InvalidArgumentError(f"solution set is for n={sols.n}, state has n={state.n}")
    amps = state.amps.copy()
    amps[list(sols.solutions)] *= -1
    return state._replace(amps)


def _check_mask(n: int, mask: int) -> int:
    mask = int(mask)
    if mask <= 0:
        raise InvalidArgumentError("C^kZ needs a nonempty qubit mask")
    if mask >> n:
        raise InvalidArgumentError(f"mask {mask:#b} uses qubits beyond n={n}")
    return mask


def apply_ckz(state: StateVector, mask: int) -> StateVector:
    """Controlled-Z on the qubits in ``mask``: flip the sign where all of them are 1."""
    mask = _check_mask(state.n, mask)
    idx = _index_array(state.n)
    amps = state.amps.copy()
    amps[(idx & mask) == mask] *= -1
    return state._replace(amps)


def apply_pauli_x(state: StateVector, qubit: int) -> StateVector:
    if not 0 <= qubit < state.n:
        raise InvalidArgumentError(f"qubit {qubit} out of range for n={state.n}")
    idx = _index_array(state.n)
    return state._replace(state.amps[idx ^ qubit_bit(state.n, qubit)])


def apply_pauli_x_mask(state: StateVector, mask: int) -> StateVector:
    """X on every qubit in ``mask`` at once."""
    if mask < 0 or mask >> state.n:
        raise InvalidArgumentError(f"mask {mask:#b} out of range for n={state.n}")
    idx = _index_array(state.n)
    return state._replace(state.amps[idx ^ mask])


def check_permutation(n: int, perm: Sequence[int]) -> tuple[int, ...]:
    perm = tuple(int(p) for p in perm)
    if len(perm) != n or sorted(perm) != list(range(n)):
        raise InvalidArgumentError(f"{perm} is not a permutation of range({n})")
    return perm


def permute_qubits(state: StateVector, perm: Sequence[int]) -> StateVector:
    """Relabel qubits so that input qubit ``i`` becomes output qubit ``perm[i]``."""
    perm = check_permutation(state.n, perm)
    tensor = state.amps.reshape((2,) * state.n)
    out = np.transpose(tensor, np.argsort(perm))
    return state._replace(out.reshape(-1))


def invert_permutation(perm: Sequence[int]) -> tuple[int, ...]:
    return tuple(int(i) for i in np.argsort(perm))


def inner_product(a: StateVector, b: StateVector) -> complex:
    """``<a|b>``, conjugating the first argument."""
    if a.n != b.n:
        raise InvalidArgumentError(f"dimension mismatch: n={a.n} vs n={b.n}")
    return complex(np.vdot(a.amps, b.amps))


def max_abs_diff(a: StateVector, b: StateVector) -> float:
    if a.n != b.n:
        raise InvalidArgumentError(f"dimension mismatch: n={a.n} vs n={b.n}")
    return float(np.max(np.abs(a.amps - b.amps)))


def qubit_state(alpha: float, beta: float) -> np.ndarray:
    """``cos(a/2)|0> + e^{ib} sin(a/2)|1>``."""
    return np.array([np.cos(alpha / 2), np.exp(1j * beta) * np.sin(alpha / 2)])


def read_state_file(text: str) -> StateVector:
    """Parse the plain-text state format: ``n`` then ``2**n`` lines of ``re im``."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InvalidArgumentError("empty state file")
    try:
        n = int(lines[0])
    except ValueError:
        raise InvalidArgumentError(f"first line must be the qubit count, got {lines[0]!r}")
    check_qubits(n)
    if len(lines) - 1 != (1 << n):
        raise InvalidArgumentError(f"expected {1 << n} amplitude lines, got {len(lines) - 1}")
    amps = np.empty(1 << n, dtype=np.complex128)
    for i, ln in enumerate(lines[1:]):
        parts = ln.split()
        if len(parts) != 2:
            raise InvalidArgumentError(f"line {i + 2}: expected 're im', got {ln!r}")
        try:
            amps[i] = complex(float(parts[0]), float(parts[1]))
        except ValueError:
            raise InvalidArgumentError(f"line {i + 2}: not a number pair: {ln!r}")
    return StateVector(n, amps)


def format_state_file(state: StateVector) -> str:
    rows = [str(state.n)]
    rows += [f"{a.real:.17g} {a.imag:.17g}" for a in state.amps]
    return "\n".join(rows) + "\n"
