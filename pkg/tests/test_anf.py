import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperstate.anf import (
    ANF,
    BooleanFunction,
    anf_from_monomials,
    anf_to_function,
    anf_to_hypergraph,
    function_from_rew,
    function_from_solutions,
    hypergraph_to_anf,
    mobius_transform,
    rew_from_function,
)
from hyperstate.errors import InvalidArgumentError
from hyperstate.hypergraph import hypergraph_state
from hyperstate.state import SolutionSet, StateVector, apply_oracle, mask_from_qubits, uniform_superposition

from oracles import explicit_rew, naive_mobius_coeffs


@st.composite
def functions(draw, max_n=10):
    n = draw(st.integers(1, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    table = np.random.default_rng(seed).integers(0, 2, size=2**n)
    return BooleanFunction(n, table)


def test_function_from_solutions():
    np.testing.assert_array_equal(function_from_solutions(SolutionSet(2, (3,))).table, [0, 0, 0, 1])
    f = function_from_solutions(SolutionSet(3, (1, 7)))
    assert f.support() == (1, 7)
    assert function_from_solutions(SolutionSet(2, (0, 1, 2, 3))).weight() == 4


def test_boolean_function_validation():
    with pytest.raises(InvalidArgumentError):
        BooleanFunction(2, [0, 1, 0])
    with pytest.raises(InvalidArgumentError):
        BooleanFunction(1, [0, 2])


def test_mobius_of_and_is_full_monomial():
    for n in range(1, 9):
        f = function_from_solutions(SolutionSet(n, (2**n - 1,)))
        assert mobius_transform(f).monomials == (2**n - 1,)


def test_mobius_of_zero_is_empty():
    assert mobius_transform(BooleanFunction(4, np.zeros(16))).monomials == ()


def test_mobius_two_solution_example():
    # frozen from the naive subset-sum oracle: {x3, x2 x3, x1 x3}
    a = mobius_transform(function_from_solutions(SolutionSet(3, (1, 7))))
    assert a.monomials == (1, 3, 5)
    expected = {mask_from_qubits(3, [2]), mask_from_qubits(3, [0, 2]), mask_from_qubits(3, [1, 2])}
    assert set(a.monomials) == expected


def test_inverse_transform_constants():
    assert anf_to_function(ANF(3, ())).weight() == 0
    assert anf_to_function(ANF(3, (0,))).weight() == 8


def test_anf_to_hypergraph_examples():
    h = anf_to_hypergraph(ANF(4, (15,)))
    assert h.edges == (15,) and h.global_phase == 1

    a = mobius_transform(function_from_solutions(SolutionSet(2, (0, 3))))
    assert a.monomials == (0, 1, 2)
    h = anf_to_hypergraph(a)
    assert h.vertex_sets() == [[0], [1]]
    assert h.global_phase == -1

    h = anf_to_hypergraph(ANF(2, ()))
    assert h.edges == () and h.global_phase == 1


def test_anf_validation_and_membership():
    with pytest.raises(InvalidArgumentError):
        ANF(2, (1, 1))
    with pytest.raises(InvalidArgumentError):
        ANF(2, (4,))
    a = ANF(3, (5, 0, 3))
    assert a.monomials == (0, 3, 5)
    assert 5 in a and 1 not in a
    assert anf_from_monomials(3, [1, 2, 1]).monomials == (2,)


def test_rew_from_function_examples():
    psi0 = uniform_superposition(3)
    assert rew_from_function(BooleanFunction(3, np.zeros(8))).allclose(psi0)
    f = function_from_solutions(SolutionSet(2, (3,)))
    np.testing.assert_allclose(rew_from_function(f).amps, [0.5, 0.5, 0.5, -0.5])


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 10), st.data())
def test_rew_matches_oracle(n, data):
    sols = SolutionSet(n, tuple(data.draw(st.lists(st.integers(0, 2**n - 1), min_size=1, max_size=8))))
    a = rew_from_function(function_from_solutions(sols))
    b = apply_oracle(uniform_superposition(n), sols)
    assert a.allclose(b, atol=1e-15)
    assert a.allclose(explicit_rew(n, set(sols.solutions)), atol=1e-15)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_mobius_involution_exhaustive(n):
    for bits in itertools.product((0, 1), repeat=2**n):
        f = BooleanFunction(n, np.array(bits))
        a = mobius_transform(f)
        assert anf_to_function(a) == f
        assert mobius_transform(anf_to_function(a)) == a


@settings(max_examples=200, deadline=None)
@given(functions(max_n=12))
def test_mobius_involution_random(f):
    assert anf_to_function(mobius_transform(f)) == f


@pytest.mark.parametrize("n", range(1, 9))
def test_butterfly_matches_naive(n, rng):
    for _ in range(3 if n < 8 else 1):
        table = rng.integers(0, 2, size=2**n)
        a = mobius_transform(BooleanFunction(n, table))
        assert a.monomials == tuple(np.flatnonzero(naive_mobius_coeffs(table)))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_parity_of_minus_signs_matches_full_monomial(n):
    full = 2**n - 1
    for bits in itertools.product((0, 1), repeat=2**n):
        f = BooleanFunction(n, np.array(bits))
        minuses = int(np.sum(rew_from_function(f).amps.real < 0))
        assert (minuses % 2 == 0) == (full not in mobius_transform(f))


@settings(max_examples=100, deadline=None)
@given(functions(max_n=10))
def test_rew_hypergraph_bijection(f):
    h = anf_to_hypergraph(mobius_transform(f))
    err = np.max(np.abs(hypergraph_state(h).amps - rew_from_function(f).amps))
    assert err < 1e-12
    assert hypergraph_to_anf(h) == mobius_transform(f)


def test_function_from_rew_round_trip(rng):
    f = BooleanFunction(5, rng.integers(0, 2, size=32))
    assert function_from_rew(rew_from_function(f)) == f
    with pytest.raises(InvalidArgumentError):
        function_from_rew(StateVector(1, [1, 0]))
