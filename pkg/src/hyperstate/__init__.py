"""Grover oracle states, their hypergraph form and geometric entanglement."""

from .anf import (
    ANF,
    BooleanFunction,
    anf_to_function,
    anf_to_hypergraph,
    function_from_solutions,
    mobius_transform,
    rew_from_function,
)
from .entanglement import (
    EntanglementResult,
    ProductAnsatz,
    geometric_measure_bruteforce,
    geometric_measure_m1,
    geometric_measure_m2,
    overlap_m1,
    overlap_m2,
)
from .grover import GroverTrace, diffusion, run_grover
from .hypergraph import (
    Hypergraph,
    grover_m1_hypergraph,
    grover_m2_hypergraph,
    hypergraph_state,
    parse,
    serialize,
)
from .state import (
    SolutionSet,
    StateVector,
    apply_ckz,
    apply_oracle,
    apply_pauli_x,
    inner_product,
    permute_qubits,
    uniform_superposition,
)

__version__ = "0.1.0"
