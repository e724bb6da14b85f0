"""Self-checks run by ``hyperstate verify``.

Each check returns a :class:`Check` with the largest error it measured so the
report shows how far from its tolerance every invariant sits.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import anf, entanglement, grover, hypergraph
from .optimize import DEFAULT_SEED
from .state import (
    SolutionSet,
    StateVector,
    apply_ckz,
    apply_oracle,
    apply_pauli_x,
    apply_pauli_x_mask,
    canonical_m1_solutions,
    canonical_m2_solutions,
    max_abs_diff,
    permute_qubits,
    uniform_superposition,
)

LEVELS = {
    # max n for state/hypergraph suites, max n for brute-force cross-checks,
    # max n for exhaustive Moebius, random-function count
    "quick": {"n_max": 5, "brute_n_max": 4, "exhaustive_n": 3, "random_funcs": 50},
    "full": {"n_max": 10, "brute_n_max": 5, "exhaustive_n": 4, "random_funcs": 200},
}


@dataclass
class Check:
    name: str
    passed: bool
    error: float
    tol: float
    detail: str = ""

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        extra = f"  {self.detail}" if self.detail else ""
        return f"[{tag}] {self.name}: err={self.error:.3e} tol={self.tol:.0e}{extra}"


def _check(name: str, error: float, tol: float, detail: str = "") -> Check:
    return Check(name, bool(error <= tol), float(error), tol, detail)


def _random_state(rng: np.random.Generator, n: int) -> StateVector:
    v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return StateVector(n, v / np.linalg.norm(v))


def naive_mobius(f: anf.BooleanFunction) -> anf.ANF:
    """``a_S = XOR of f(T) over T subset of S`` by direct enumeration."""
    size = 1 << f.n
    mons = []
    for s in range(size):
        acc = 0
        for t in range(size):
            if t & s == t:
                acc ^= int(f.table[t])
        if acc:
            mons.append(s)
    return anf.ANF(f.n, tuple(mons))


def state_checks(cfg: dict, rng: np.random.Generator) -> Iterator[Check]:
    worst_norm = worst_inv = worst_comm = 0.0
    for n in range(1, cfg["n_max"] + 1):
        psi = _random_state(rng, n)
        sols = SolutionSet(n, tuple(rng.choice(1 << n, size=min(3, 1 << n), replace=False)))
        masks = rng.integers(1, 1 << n, size=2)
        q = int(rng.integers(n))
        outs = [
            (apply_oracle(psi, sols), lambda s: apply_oracle(s, sols)),
            (apply_ckz(psi, int(masks[0])), lambda s: apply_ckz(s, int(masks[0]))),
            (apply_pauli_x(psi, q), lambda s: apply_pauli_x(s, q)),
        ]
        for out, gate in outs:
            worst_norm = max(worst_norm, abs(out.norm_sq() - 1.0))
            worst_inv = max(worst_inv, max_abs_diff(gate(out), psi))
        a = apply_ckz(apply_ckz(psi, int(masks[0])), int(masks[1]))
        b = apply_ckz(apply_ckz(psi, int(masks[1])), int(masks[0]))
        worst_comm = max(worst_comm, max_abs_diff(a, b))
    yield _check("gate norm preservation", worst_norm, 1e-12)
    yield _check("gate involutions (exact)", worst_inv, 0.0)
    yield _check("C^kZ commutation", worst_comm, 0.0)


def anf_checks(cfg: dict, rng: np.random.Generator) -> Iterator[Check]:
    bad = 0
    parity_bad = 0
    for n in range(1, cfg["exhaustive_n"] + 1):
        for bits in itertools.product((0, 1), repeat=1 << n):
            f = anf.BooleanFunction(n, np.array(bits))
            a = anf.mobius_transform(f)
            bad += anf.anf_to_function(a) != f
            bad += anf.mobius_transform(anf.anf_to_function(a)) != a
            odd = f.weight() % 2 == 1
            parity_bad += odd != (((1 << n) - 1) in a)
    yield _check(f"Moebius involution, exhaustive n<={cfg['exhaustive_n']}", bad, 0)
    yield _check(f"parity vs full monomial, exhaustive n<={cfg['exhaustive_n']}", parity_bad, 0)

    naive_bad = 0
    for n in range(1, min(cfg["n_max"], 8) + 1):
        for _ in range(3):
            f = anf.BooleanFunction(n, rng.integers(0, 2, size=1 << n))
            naive_bad += anf.mobius_transform(f) != naive_mobius(f)
    yield _check("butterfly vs naive subset sum", naive_bad, 0)

    worst = 0.0
    for _ in range(cfg["random_funcs"]):
        n = int(rng.integers(1, cfg["n_max"] + 1))
        f = anf.BooleanFunction(n, rng.integers(0, 2, size=1 << n))
        h = anf.anf_to_hypergraph(anf.mobius_transform(f))
        worst = max(worst, max_abs_diff(hypergraph.hypergraph_state(h), anf.rew_from_function(f)))
    yield _check(f"REW <-> hypergraph state, {cfg['random_funcs']} random f", worst, 1e-12)


def hypergraph_checks(cfg: dict, rng: np.random.Generator) -> Iterator[Check]:
    for n in range(1, cfg["n_max"] + 1):
        h = hypergraph.grover_m1_hypergraph(n)
        target = apply_oracle(uniform_superposition(n), canonical_m1_solutions(n))
        yield _check(f"M=1 hypergraph soundness n={n}", max_abs_diff(hypergraph.hypergraph_state(h), target), 1e-12)
    for n in range(2, cfg["n_max"] + 1):
        for d in range(1, n + 1):
            sols = canonical_m2_solutions(n, d)
            h = hypergraph.grover_m2_hypergraph(n, d)
            err = max_abs_diff(hypergraph.hypergraph_state(h), apply_oracle(uniform_superposition(n), sols))
            full = h.full_mask in h.edges
            yield _check(
                f"M=2 hypergraph soundness n={n} d={d}", err if not full else np.inf, 1e-12,
                f"edges={len(h.edges)} phase={h.global_phase:+d}",
            )
            ref = anf.anf_to_hypergraph(anf.mobius_transform(anf.function_from_solutions(sols)))
            yield _check(f"ANF agreement n={n} d={d}", 0.0 if ref == h else 1.0, 0.0)
    worst = 0.0
    for n in range(2, cfg["n_max"] + 1):
        state = hypergraph.hypergraph_state(hypergraph.grover_m2_hypergraph(n, 1))
        plus = np.array([1.0, 1.0]) / np.sqrt(2)
        rest = apply_oracle(uniform_superposition(n - 1), canonical_m1_solutions(n - 1))
        worst = max(worst, float(np.max(np.abs(state.amps - np.kron(plus, rest.amps)))))
    yield _check("d=1 factorization |+> x psi_M=1", worst, 1e-12)
    worst = 0.0
    for n in range(2, cfg["n_max"] + 1):
        f = anf.BooleanFunction(n, rng.integers(0, 2, size=1 << n))
        h = anf.anf_to_hypergraph(anf.mobius_transform(f))
        perm = tuple(int(p) for p in rng.permutation(n))
        a = hypergraph.hypergraph_state(hypergraph.relabel(h, perm))
        b = permute_qubits(hypergraph.hypergraph_state(h), perm)
        worst = max(worst, max_abs_diff(a, b))
    yield _check("relabeling closure", worst, 1e-12)
    rt_bad = 0
    for _ in range(20):
        n = int(rng.integers(1, cfg["n_max"] + 1))
        f = anf.BooleanFunction(n, rng.integers(0, 2, size=1 << n))
        h = anf.anf_to_hypergraph(anf.mobius_transform(f))
        rt_bad += hypergraph.parse(hypergraph.serialize(h, "json")) != h
    yield _check("JSON round-trip", rt_bad, 0)


def entanglement_checks(cfg: dict, rng: np.random.Generator, seed: int) -> Iterator[Check]:
    for n in range(2, cfg["brute_n_max"] + 1):
        psi = apply_oracle(uniform_superposition(n), canonical_m1_solutions(n))
        b = entanglement.geometric_measure_bruteforce(psi, seed=seed).value
        r = entanglement.geometric_measure_m1(n).value
        yield _check(f"restricted vs brute force M=1 n={n}", abs(b - r), 1e-6, f"E={r:.12g}")
        for d in range(1, n + 1):
            psi = apply_oracle(uniform_superposition(n), canonical_m2_solutions(n, d))
            b = entanglement.geometric_measure_bruteforce(psi, seed=seed).value
            r = entanglement.geometric_measure_m2(n, d, seed=seed).value
            yield _check(f"restricted vs brute force M=2 n={n} d={d}", abs(b - r), 1e-6, f"E={r:.12g}")

    worst = 0.0
    for n in range(3, cfg["n_max"] + 1):
        worst = max(
            worst,
            abs(entanglement.geometric_measure_m2(n, 1, seed=seed).value - entanglement.geometric_measure_m1(n - 1).value),
        )
    yield _check("d=1 reduction E(n,1) = E_M=1(n-1)", worst, 1e-8)

    m1 = [entanglement.geometric_measure_m1(n).value for n in range(2, cfg["n_max"] + 3)]
    steps = np.diff(m1)
    yield _check("E_M=1 strictly decreasing", max(0.0, float(steps.max())), 0.0)
    worst_order = 0.0
    for n in range(4, cfg["n_max"] + 1):
        vals = [entanglement.geometric_measure_m2(n, d, seed=seed).value for d in range(1, n + 1)]
        worst_order = max(worst_order, -float(np.diff(vals).min()))
    yield _check("E_M=2 strictly increasing in d", max(0.0, worst_order), 0.0)

    n = min(cfg["brute_n_max"], 4)
    psi = apply_oracle(uniform_superposition(n), canonical_m2_solutions(n, 2))
    base = entanglement.geometric_measure_bruteforce(psi, seed=seed).value
    worst = 0.0
    for _ in range(3):
        mask = int(rng.integers(0, 1 << n))
        perm = tuple(int(p) for p in rng.permutation(n))
        moved = permute_qubits(apply_pauli_x_mask(psi, mask), perm)
        worst = max(worst, abs(entanglement.geometric_measure_bruteforce(moved, seed=seed).value - base))
    yield _check(f"LU invariance n={n}", worst, 1e-6)


def grover_checks(cfg: dict) -> Iterator[Check]:
    worst = 0.0
    for n in range(2, cfg["n_max"] + 3):
        for m in (1, 2, 4):
            if m >= 1 << n:
                continue
            sols = SolutionSet(n, tuple(range(m)))
            k_opt = grover.optimal_iterations(n, m)
            trace = grover.run_grover(n, sols, k_opt)
            for step in trace.steps:
                worst = max(worst, abs(step.success_probability - grover.closed_form_success(n, m, step.iteration)))
    yield _check("Grover success vs closed form", worst, 1e-10)


def run_checks(level: str = "quick", seed: int = DEFAULT_SEED) -> list[Check]:
    if level not in LEVELS:
        raise ValueError(f"unknown verify level {level!r}")
    cfg = LEVELS[level]
    rng = np.random.default_rng(seed)
    checks: list[Check] = []
    checks += state_checks(cfg, rng)
    checks += anf_checks(cfg, rng)
    checks += hypergraph_checks(cfg, rng)
    checks += entanglement_checks(cfg, rng, seed)
    checks += grover_checks(cfg)
    return checks
