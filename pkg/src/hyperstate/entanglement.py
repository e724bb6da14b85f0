"""Geometric measure of entanglement with respect to fully product states.

``E(psi) = 1 - max |<psi|phi_1 ... phi_n>|^2`` where each single-qubit factor
is ``cos(a/2)|0> + e^{ib} sin(a/2)|1>``.  Three routes are provided:

* :func:`geometric_measure_m1` for the one-solution Grover state, using the
  permutation symmetry (one shared qubit state) and a real 1-D search;
* :func:`geometric_measure_m2` for the two-solution states, with one qubit
  state per symmetric block, by multi-start compass search;
* :func:`geometric_measure_bruteforce` for any small state, with an
  independent qubit state per site.  This one serves as the reference.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgumentError, UnsupportedSizeError
from .optimize import DEFAULT_SEED, compass_search, start_points
from .state import StateVector, qubit_state

TWO_PI = 2.0 * np.pi
BRUTEFORCE_MAX_QUBITS = 7
M1_SCAN_POINTS = 10_000
M1_BISECT_TOL = 1e-13
M2_GRID_STARTS = 32
M2_RANDOM_STARTS = 32
BRUTE_GRID_STARTS = 128
BRUTE_RANDOM_STARTS = 128
STEP_TOL = 1e-12
MAX_SWEEPS = 500
AGREEMENT_TOL = 1e-9
TIE_TOL = 1e-12
BETA_SNAP = 1e-9
PHASE_SNAP = 1e-3
SNAP_LOSS = 1e-14


@dataclass(frozen=True)
class Block:
    size: int
    alpha: float
    beta: float


@dataclass(frozen=True)
class ProductAnsatz:
    """``|phi_1>^{size_1} (x) |phi_2>^{size_2} (x) ...`` in qubit order."""

    blocks: tuple[Block, ...]

    @property
    def n(self) -> int:
        return sum(b.size for b in self.blocks)

    def qubit_angles(self) -> list[tuple[float, float]]:
        return [(b.alpha, b.beta) for b in self.blocks for _ in range(b.size)]

    def state(self) -> StateVector:
        return StateVector.product([qubit_state(a, b) for a, b in self.qubit_angles()])

    def angles(self) -> tuple[float, ...]:
        return tuple(x for b in self.blocks for x in (b.alpha, b.beta))


@dataclass(frozen=True)
class EntanglementResult:
    value: float
    max_overlap_sq: float
    optimal: ProductAnsatz
    starts_used: int
    converged: bool
    residual: float
    method: str = ""
    seed: int | None = None
    extra: dict = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "value": self.value,
            "overlap": self.max_overlap_sq,
            "blocks": [
                {"size": b.size, "alpha": b.alpha, "beta": b.beta} for b in self.optimal.blocks
            ],
            "starts_used": self.starts_used,
            "converged": self.converged,
            "residual": self.residual,
            "seed": self.seed,
        }


def _result(overlap_sq: float, ansatz: ProductAnsatz, **kw) -> EntanglementResult:
    overlap_sq = min(float(overlap_sq), 1.0)
    return EntanglementResult(value=1.0 - overlap_sq, max_overlap_sq=overlap_sq, optimal=ansatz, **kw)


def canonical_angles(alpha, beta):
    """Map any ``(alpha, beta)`` to ``alpha in [0, pi]``, ``beta in [0, 2 pi)``.

    The single-qubit state is preserved up to a global phase.  When the state
    is a basis state ``beta`` is meaningless and is set to 0.
    """
    alpha = np.mod(np.asarray(alpha, dtype=float), TWO_PI)
    beta = np.asarray(beta, dtype=float)
    flip = alpha > np.pi
    alpha = np.where(flip, TWO_PI - alpha, alpha)
    beta = np.mod(np.where(flip, beta + np.pi, beta), TWO_PI)
    beta = np.where(beta > TWO_PI - BETA_SNAP, 0.0, beta)
    pole = (np.abs(np.sin(alpha / 2)) < 1e-15) | (np.abs(np.cos(alpha / 2)) < 1e-15)
    beta = np.where(pole, 0.0, beta)
    return alpha, beta


# ---------------------------------------------------------------- one solution


def overlap_m1(n: int, alpha, beta):
    """``|<psi_M=1| phi^n>|^2`` for the state with a minus sign on ``|1...1>``.

    Vectorized over the angles.
    """
    c = np.cos(np.asarray(alpha) / 2)
    s = np.exp(1j * np.asarray(beta)) * np.sin(np.asarray(alpha) / 2)
    amp = (c + s) ** n - 2.0 * s**n
    return np.abs(amp) ** 2 / 2.0**n


def _m1_real(n: int, alpha):
    c, s = np.cos(alpha / 2), np.sin(alpha / 2)
    g = (c + s) ** n - 2.0 * s**n
    return g * g / 2.0**n


def _m1_real_derivative(n: int, alpha):
    c, s = np.cos(alpha / 2), np.sin(alpha / 2)
    g = (c + s) ** n - 2.0 * s**n
    dg = 0.5 * n * (c + s) ** (n - 1) * (c - s) - n * s ** (n - 1) * c
    return 2.0 * g * dg / 2.0**n


def geometric_measure_m1(n: int, scan_points: int = M1_SCAN_POINTS) -> EntanglementResult:
    """E for the one-solution state, taking the phase of the shared qubit to be 0.

    The derivative of the real overlap is scanned on a uniform grid in
    ``alpha``; every sign change is bisected down to ``1e-13`` and the best
    critical point (or end point) wins.
    """
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 2:
        raise InvalidArgumentError(f"one-solution measure needs an integer n >= 2, got {n!r}")
    grid = np.linspace(0.0, np.pi, scan_points)
    dF = _m1_real_derivative(n, grid)
    candidates = [0.0, np.pi]
    widths = [0.0]
    sign = np.sign(dF)
    for j in np.flatnonzero(sign[:-1] * sign[1:] <= 0):
        if sign[j] == 0:
            candidates.append(grid[j])
            continue
        lo, hi = grid[j], grid[j + 1]
        f_lo = dF[j]
        while hi - lo >= M1_BISECT_TOL:
            mid = 0.5 * (lo + hi)
            f_mid = _m1_real_derivative(n, mid)
            if f_mid == 0.0:
                lo = hi = mid
                break
            if np.sign(f_mid) == np.sign(f_lo):
                lo, f_lo = mid, f_mid
            else:
                hi = mid
        candidates.append(0.5 * (lo + hi))
        widths.append(hi - lo)
    candidates = np.array(candidates)
    values = _m1_real(n, candidates)
    best = values.max()
    # lexicographically smallest alpha among equal maxima
    alpha = float(candidates[values >= best - TIE_TOL].min())
    ansatz = ProductAnsatz((Block(n, alpha, 0.0),))
    return _result(
        _m1_real(n, alpha),
        ansatz,
        starts_used=len(candidates),
        converged=bool(max(widths) < M1_BISECT_TOL),
        residual=float(max(widths)),
        method="restricted-m1",
    )


def m1_critical_polynomial(n: int) -> np.ndarray:
    """Coefficients (highest power first) of ``(1+t)^(n-1) (1-t) - 2 t^(n-1)``.

    With ``t = tan(alpha/2)`` and zero relative phase, the squared overlap is
    ``((1+t)^n - 2t^n)^2 / (2(1+t^2))^n``; its interior stationary points
    other than the zeros of the numerator are the nonnegative real roots of
    this polynomial.
    """
    p = np.polynomial.polynomial
    coeffs = p.polysub(p.polymul(p.polypow([1.0, 1.0], n - 1), [1.0, -1.0]), 2.0 * _monomial(n - 1))
    return coeffs[::-1]


def _monomial(k: int) -> np.ndarray:
    m = np.zeros(k + 1)
    m[k] = 1.0
    return m


# ---------------------------------------------------------------- two solutions


def _check_nd(n: int, d: int) -> None:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 2:
        raise InvalidArgumentError(f"two-solution measure needs an integer n >= 2, got {n!r}")
    if isinstance(d, bool) or not isinstance(d, (int, np.integer)) or not 1 <= d <= n:
        raise InvalidArgumentError(f"Hamming distance must be in [1, {n}], got {d!r}")


def overlap_m2(n: int, d: int, alpha, beta, gamma, delta):
    """Squared overlap of the two-solution state at Hamming distance ``d`` with
    ``phi(alpha, beta)^d (x) phi(gamma, delta)^(n-d)``.

    Solutions are ``|0..0>_d|1..1>_(n-d)`` and ``|1..1>``.  Vectorized.
    """
    if not 1 <= d <= n:
        raise InvalidArgumentError(f"Hamming distance must be in [1, {n}], got {d}")
    alpha, beta, gamma, delta = (np.asarray(v, dtype=float) for v in (alpha, beta, gamma, delta))
    ca, sa = np.cos(alpha / 2), np.sin(alpha / 2)
    cg, sg = np.cos(gamma / 2), np.sin(gamma / 2)
    eb, ed = np.exp(1j * beta), np.exp(1j * delta)
    k = n - d
    amp = (ca + eb * sa) ** d * (cg + ed * sg) ** k - 2.0 * np.exp(1j * k * delta) * sg**k * (
        ca**d + np.exp(1j * d * beta) * sa**d
    )
    return np.abs(amp) ** 2 / 2.0**n


def _snap_phases(objective, x: np.ndarray, f: np.ndarray) -> None:
    """Replace relative phases within ``PHASE_SNAP`` of 0 (mod 2 pi) by exactly 0
    wherever that costs no more than ``SNAP_LOSS`` in the objective.  In place.
    """
    for k in range(1, x.shape[1], 2):
        col = x[:, k]
        near = (col != 0.0) & ((col < PHASE_SNAP) | (col > TWO_PI - PHASE_SNAP))
        if not near.any():
            continue
        trial = x.copy()
        trial[near, k] = 0.0
        ft = objective(trial)
        keep = near & (ft >= f - SNAP_LOSS)
        x[keep, k] = 0.0
        f[keep] = np.maximum(f[keep], ft[keep])


def _pick_best(f: np.ndarray, angles: np.ndarray) -> int:
    """Index of the best start; ties go to the lexicographically smallest angles."""
    best = f.max()
    tied = np.flatnonzero(f >= best - TIE_TOL)
    return int(min(tied, key=lambda i: tuple(angles[i])))


def _top_two_agree(f: np.ndarray) -> bool:
    if f.size < 2:
        return True
    top = np.sort(f)[::-1]
    return bool(top[0] - top[1] <= AGREEMENT_TOL)


def geometric_measure_m2(n: int, d: int, seed: int = DEFAULT_SEED) -> EntanglementResult:
    """E for the two-solution state at Hamming distance ``d``.

    64 starts (32 Sobol, 32 seeded uniform) over the angle box, each refined
    by compass search to a step below ``1e-12`` or 500 sweeps.  For ``d = n``
    the state is fully symmetric and only the first block's angles are used.
    """
    _check_nd(n, d)
    if d == n:
        lower, upper = [0.0, 0.0], [np.pi, TWO_PI]

        def objective(x):
            return overlap_m2(n, d, x[:, 0], x[:, 1], 0.0, 0.0)

    else:
        lower, upper = [0.0, 0.0, 0.0, 0.0], [np.pi, TWO_PI, np.pi, TWO_PI]

        def objective(x):
            return overlap_m2(n, d, x[:, 0], x[:, 1], x[:, 2], x[:, 3])

    x0 = start_points(lower, upper, M2_GRID_STARTS, M2_RANDOM_STARTS, seed)
    res = compass_search(objective, x0, tol=STEP_TOL, max_sweeps=MAX_SWEEPS)

    canon = np.empty_like(res.x)
    canon[:, 0::2], canon[:, 1::2] = canonical_angles(res.x[:, 0::2], res.x[:, 1::2])
    f = objective(canon)
    _snap_phases(objective, canon, f)
    i = _pick_best(f, canon)
    a = canon[i]
    if d == n:
        blocks = (Block(n, float(a[0]), float(a[1])),)
    else:
        blocks = (Block(d, float(a[0]), float(a[1])), Block(n - d, float(a[2]), float(a[3])))
    return _result(
        f[i],
        ProductAnsatz(blocks),
        starts_used=x0.shape[0],
        converged=_top_two_agree(f),
        residual=float(res.step[i]),
        method="restricted-m2",
        seed=seed,
        extra={"sweeps": res.sweeps},
    )


# ---------------------------------------------------------------- unrestricted


def product_overlaps(state: StateVector, angles: np.ndarray) -> np.ndarray:
    """``|<state| phi_1 ... phi_n>|^2`` for each row of ``angles``.

    Rows hold ``(alpha_0, beta_0, alpha_1, beta_1, ...)`` in qubit order.
    """
    angles = np.atleast_2d(angles)
    k = angles.shape[0]
    t = np.broadcast_to(np.conj(state.amps), (k, state.dim))
    for q in range(state.n):
        a, b = angles[:, 2 * q], angles[:, 2 * q + 1]
        c = np.cos(a / 2)[:, None]
        s = (np.exp(1j * b) * np.sin(a / 2))[:, None]
        t = t.reshape(k, 2, -1)
        t = c * t[:, 0] + s * t[:, 1]
    return np.abs(t[:, 0]) ** 2


def geometric_measure_bruteforce(state: StateVector, seed: int = DEFAULT_SEED) -> EntanglementResult:
    """E over all product states, one independent qubit state per site.

    Uses 256 starts (128 Sobol, 128 seeded uniform) in the ``2n``-dimensional
    angle box with the same compass refinement as the restricted routes.
    """
    if state.n > BRUTEFORCE_MAX_QUBITS:
        raise UnsupportedSizeError(
            f"brute-force search supports n <= {BRUTEFORCE_MAX_QUBITS}, got n={state.n}"
        )
    n = state.n
    lower = np.zeros(2 * n)
    upper = np.tile([np.pi, TWO_PI], n)
    x0 = start_points(lower, upper, BRUTE_GRID_STARTS, BRUTE_RANDOM_STARTS, seed)

    def objective(x):
        return product_overlaps(state, x)

    res = compass_search(objective, x0, tol=STEP_TOL, max_sweeps=MAX_SWEEPS)
    canon = np.empty_like(res.x)
    canon[:, 0::2], canon[:, 1::2] = canonical_angles(res.x[:, 0::2], res.x[:, 1::2])
    f = objective(canon)
    _snap_phases(objective, canon, f)
    i = _pick_best(f, canon)
    blocks = tuple(Block(1, float(canon[i, 2 * q]), float(canon[i, 2 * q + 1])) for q in range(n))
    return _result(
        f[i],
        ProductAnsatz(blocks),
        starts_used=x0.shape[0],
        converged=_top_two_agree(f),
        residual=float(res.step[i]),
        method="bruteforce",
        seed=seed,
        extra={"sweeps": res.sweeps},
    )


def fit_decay_rate(ns, values) -> tuple[float, float]:
    """Least-squares fit of ``E ~ A exp(-rate n)``; returns ``(rate, A)``."""
    ns = np.asarray(ns, dtype=float)
    logs = np.log(np.asarray(values, dtype=float))
    slope, intercept = np.polyfit(ns, logs, 1)
    return float(-slope), float(np.exp(intercept))
