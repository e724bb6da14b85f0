"""Hypergraphs, hypergraph-state synthesis and the Grover constructions.

Edges are stored as index-space bitmasks (vertex ``i`` is bit ``n-1-i``),
the same encoding :func:`hyperstate.state.apply_ckz` takes.  The canonical
edge order is by order (popcount) first, then by the sorted vertex tuple.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidArgumentError, ParseError, ValidationError
from .state import (
    StateVector,
    check_permutation,
    check_qubits,
    mask_from_qubits,
    qubits_from_mask,
    uniform_superposition,
)


@dataclass(frozen=True)
class Hypergraph:
    n: int
    edges: tuple[int, ...] = ()
    global_phase: int = 1

    def __post_init__(self):
        check_qubits(self.n)
        edges = tuple(int(e) for e in self.edges)
        for e in edges:
            if e <= 0:
                raise ValidationError("hyperedges must be nonempty")
            if e >> self.n:
                raise ValidationError(f"hyperedge {e:#b} uses vertices beyond n={self.n}")
        if len(set(edges)) != len(edges):
            raise ValidationError("duplicate hyperedges")
        if self.global_phase not in (1, -1) or isinstance(self.global_phase, bool):
            raise ValidationError(f"global phase must be +1 or -1, got {self.global_phase!r}")
        n = self.n
        edges = tuple(sorted(edges, key=lambda e: (bin(e).count("1"), qubits_from_mask(n, e))))
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_vertex_sets(cls, n: int, edges: Sequence[Sequence[int]], global_phase: int = 1):
        return cls(n, tuple(mask_from_qubits(n, e) for e in edges), global_phase)

    def vertex_sets(self) -> list[list[int]]:
        return [list(qubits_from_mask(self.n, e)) for e in self.edges]

    def orders(self) -> list[int]:
        return [bin(e).count("1") for e in self.edges]

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1


def hypergraph_state(h: Hypergraph) -> StateVector:
    """Apply ``C^kZ`` for every edge to ``|+>^n`` and multiply by the global phase.

    All gates are diagonal sign flips, so they are accumulated as one parity
    array instead of touching the amplitudes once per edge.
    """
    psi0 = uniform_superposition(h.n)
    idx = np.arange(1 << h.n, dtype=np.int64)
    flips = np.zeros(1 << h.n, dtype=bool)
    for e in h.edges:
        flips ^= (idx & e) == e
    signs = np.where(flips, -1.0, 1.0) * h.global_phase
    return StateVector(h.n, psi0.amps * signs)


def relabel(h: Hypergraph, perm: Sequence[int]) -> Hypergraph:
    """Rename vertex ``i`` to ``perm[i]``."""
    perm = check_permutation(h.n, perm)
    edges = [[perm[v] for v in vs] for vs in h.vertex_sets()]
    return Hypergraph.from_vertex_sets(h.n, edges, h.global_phase)


def grover_m1_hypergraph(n: int) -> Hypergraph:
    n = check_qubits(n)
    return Hypergraph(n, ((1 << n) - 1,), 1)


def grover_m2_hypergraph(n: int, d: int) -> Hypergraph:
    """Hypergraph of the state with minus signs on ``|0..0>_d|1..1>`` and ``|1..1>``.

    Writing ``G`` for the last ``n-d`` vertices and ``A`` for the first ``d``,
    the marking function is ``x_G * ([x_A = 0] + [x_A = 1])``.  Expanding
    ``[x_A = 0] = prod(1 + x_i)`` over GF(2) and cancelling the top monomial
    against ``[x_A = 1]`` gives the edges ``G | S`` for every proper subset
    ``S`` of ``A``.  For ``d = n`` the empty monomial survives and becomes a
    global phase of -1; for ``d = 1`` only ``G`` itself is left.
    """
    n = check_qubits(n)
    if n < 2:
        raise InvalidArgumentError(f"two solutions need n >= 2, got {n}")
    if not 1 <= d <= n:
        raise InvalidArgumentError(f"Hamming distance must be in [1, {n}], got {d}")
    group = (1 << (n - d)) - 1
    head = ((1 << n) - 1) ^ group
    edges = []
    phase = 1
    # enumerate subsets of the head block, skipping the full block
    sub = head
    while True:
        sub = (sub - 1) & head
        mask = group | sub
        if mask:
            edges.append(mask)
        else:
            phase = -1
        if sub == 0:
            break
    return Hypergraph(n, tuple(edges), phase)


def serialize(h: Hypergraph, fmt: str = "json") -> str:
    if fmt == "json":
        doc = {"n": h.n, "phase": h.global_phase, "edges": h.vertex_sets()}
        return json.dumps(doc, separators=(",", ":"))
    if fmt == "dot":
        return _to_dot(h)
    raise InvalidArgumentError(f"unknown hypergraph format {fmt!r}")


def _to_dot(h: Hypergraph) -> str:
    singles = {vs[0] for vs in h.vertex_sets() if len(vs) == 1}
    lines = ["graph hypergraph {", f'  label="n={h.n}, phase={h.global_phase:+d}";']
    for v in range(h.n):
        if v in singles:
            lines.append(f'  q{v} [label="{v}", style=filled, fillcolor=black, fontcolor=white, z=1];')
        else:
            lines.append(f'  q{v} [label="{v}"];')
    for k, vs in enumerate(h.vertex_sets()):
        if len(vs) == 2:
            lines.append(f"  q{vs[0]} -- q{vs[1]};")
        elif len(vs) >= 3:
            lines.append(f'  e{k} [shape=box, style=filled, fillcolor=grey, label="{len(vs)}"];')
            lines.extend(f"  e{k} -- q{v};" for v in vs)
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse(text: str, fmt: str = "json") -> Hypergraph:
    if fmt != "json":
        raise InvalidArgumentError(f"only json can be parsed, got {fmt!r}")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.pos) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be a JSON object", 0)
    missing = {"n", "phase", "edges"} - doc.keys()
    if missing:
        raise ValidationError(f"missing keys: {sorted(missing)}")
    extra = doc.keys() - {"n", "phase", "edges"}
    if extra:
        raise ValidationError(f"unknown keys: {sorted(extra)}")

    n, phase, edges = doc["n"], doc["phase"], doc["edges"]
    if not _is_int(n) or n < 1:
        raise ValidationError(f"n must be a positive integer, got {n!r}")
    if not _is_int(phase) or phase not in (1, -1):
        raise ValidationError(f"phase must be 1 or -1, got {phase!r}")
    if not isinstance(edges, list):
        raise ValidationError("edges must be a list")
    masks = []
    for k, edge in enumerate(edges):
        if not isinstance(edge, list) or not edge:
            raise ValidationError(f"edge {k} must be a nonempty list of vertices")
        if not all(_is_int(v) for v in edge):
            raise ValidationError(f"edge {k} has non-integer vertices")
        if any(not 0 <= v < n for v in edge):
            raise ValidationError(f"edge {k} has a vertex outside [0, {n})")
        if len(set(edge)) != len(edge):
            raise ValidationError(f"edge {k} repeats a vertex")
        masks.append(mask_from_qubits(n, edge))
    if len(set(masks)) != len(masks):
        raise ValidationError("duplicate hyperedges")
    try:
        return Hypergraph(n, tuple(masks), phase)
    except InvalidArgumentError as exc:
        raise ValidationError(str(exc)) from None


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)
