import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperstate.entanglement import (
    canonical_angles,
    fit_decay_rate,
    geometric_measure_bruteforce,
    geometric_measure_m1,
    geometric_measure_m2,
    m1_critical_polynomial,
    overlap_m1,
    overlap_m2,
    product_overlaps,
)
from hyperstate.errors import InvalidArgumentError, UnsupportedSizeError
from hyperstate.optimize import compass_search
from hyperstate.state import (
    StateVector,
    apply_oracle,
    canonical_m1_solutions,
    canonical_m2_solutions,
    inner_product,
    qubit_state,
    uniform_superposition,
)

from oracles import explicit_product, explicit_rew

angle = st.floats(0, np.pi)
phase = st.floats(0, 2 * np.pi)


def m1_state(n):
    return explicit_rew(n, {2**n - 1})


def m2_state(n, d):
    return explicit_rew(n, set(canonical_m2_solutions(n, d).solutions))


# ------------------------------------------------------------------ overlaps


def test_overlap_m1_basis_examples():
    assert overlap_m1(2, 0.0, 1.234) == pytest.approx(0.25, abs=1e-15)
    assert overlap_m1(2, np.pi, 0.0) == pytest.approx(0.25, abs=1e-15)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 6), angle, phase)
def test_overlap_m1_matches_explicit_vectors(n, a, b):
    phi = explicit_product([(a, b)] * n)
    expected = abs(inner_product(m1_state(n), phi)) ** 2
    assert overlap_m1(n, a, b) == pytest.approx(expected, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 6), st.data(), angle, phase, angle, phase)
def test_overlap_m2_matches_explicit_vectors(n, data, a, b, g, dl):
    d = data.draw(st.integers(1, n))
    phi = explicit_product([(a, b)] * d + [(g, dl)] * (n - d))
    expected = abs(inner_product(m2_state(n, d), phi)) ** 2
    assert overlap_m2(n, d, a, b, g, dl) == pytest.approx(expected, abs=1e-12)


def test_overlap_m2_full_distance_ignores_second_block(rng):
    for n in range(2, 8):
        a, b = rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi)
        v1 = overlap_m2(n, n, a, b, *rng.uniform(0, 3, size=2))
        v2 = overlap_m2(n, n, a, b, *rng.uniform(0, 3, size=2))
        assert v1 == v2


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 6), st.data(), angle, phase)
def test_overlap_m2_block_merge(n, data, a, b):
    d = data.draw(st.integers(1, n))
    phi = explicit_product([(a, b)] * n)
    expected = abs(inner_product(m2_state(n, d), phi)) ** 2
    assert overlap_m2(n, d, a, b, a, b) == pytest.approx(expected, abs=1e-12)


def test_overlap_m2_rejects_bad_distance():
    with pytest.raises(InvalidArgumentError):
        overlap_m2(3, 4, 0, 0, 0, 0)


def test_product_overlaps_matches_inner_product(rng):
    for n in range(1, 6):
        psi = StateVector(n, rng.normal(size=2**n) + 1j * rng.normal(size=2**n))
        psi = StateVector(n, psi.amps / np.sqrt(psi.norm_sq()))
        angles = rng.uniform(0, 2 * np.pi, size=(4, 2 * n))
        got = product_overlaps(psi, angles)
        for row, value in zip(angles, got):
            phi = explicit_product(list(zip(row[0::2], row[1::2])))
            assert value == pytest.approx(abs(inner_product(psi, phi)) ** 2, abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(st.floats(-20, 20), st.floats(-20, 20))
def test_canonical_angles_preserve_state_up_to_phase(a, b):
    ca, cb = canonical_angles(a, b)
    assert 0 <= ca <= np.pi and 0 <= cb < 2 * np.pi
    fidelity = abs(np.vdot(qubit_state(a, b), qubit_state(float(ca), float(cb)))) ** 2
    assert fidelity == pytest.approx(1.0, abs=1e-9)


# ------------------------------------------------------------------ one solution


def test_m1_n2_is_half():
    # n=2 single-solution state is LU-equivalent to a Bell pair
    assert geometric_measure_m1(2).value == pytest.approx(0.5, abs=1e-12)
    assert geometric_measure_bruteforce(m1_state(2)).value == pytest.approx(0.5, abs=1e-9)


def test_m1_n3_between_zero_and_half():
    e3 = geometric_measure_m1(3).value
    assert 0 < e3 < geometric_measure_m1(2).value


def test_m1_positive_up_to_12():
    for n in range(2, 13):
        assert geometric_measure_m1(n).value > 1e-6


def test_m1_rejects_small_n():
    with pytest.raises(InvalidArgumentError):
        geometric_measure_m1(1)


@pytest.mark.parametrize("n", range(2, 17))
def test_m1_matches_polynomial_roots(n):
    """Independent route: stationary points from the polynomial in tan(alpha/2)."""
    roots = np.roots(m1_critical_polynomial(n))
    ts = [r.real for r in roots if abs(r.imag) < 1e-9 and r.real >= 0]

    def overlap_t(t):
        return ((1 + t) ** n - 2 * t**n) ** 2 / (2 * (1 + t * t)) ** n

    best = max([overlap_t(t) for t in ts] + [overlap_t(0.0), 1.0 / 2**n])  # t -> inf limit
    res = geometric_measure_m1(n)
    assert res.max_overlap_sq == pytest.approx(best, abs=1e-12)
    assert res.converged and res.residual < 1e-13


def test_m1_result_consistent_with_optimal_state():
    for n in range(2, 9):
        res = geometric_measure_m1(n)
        phi = res.optimal.state()
        assert abs(inner_product(m1_state(n), phi)) ** 2 == pytest.approx(res.max_overlap_sq, abs=1e-12)
        assert res.value == 1.0 - res.max_overlap_sq


@pytest.mark.parametrize("n", range(2, 7))
def test_beta_zero_is_optimal(n):
    """A 2000 x 2000 scan over (alpha, beta), polished locally, never beats beta = 0."""
    alphas = np.linspace(0, np.pi, 2000)
    betas = np.linspace(0, 2 * np.pi, 2000, endpoint=False)
    grid = overlap_m1(n, alphas[:, None], betas[None, :])
    i, j = np.unravel_index(np.argmax(grid), grid.shape)

    def objective(x):
        return overlap_m1(n, x[:, 0], x[:, 1])

    polished = compass_search(objective, np.array([[alphas[i], betas[j]]]), step0=np.pi / 2000)
    restricted = geometric_measure_m1(n).max_overlap_sq
    assert polished.f[0] == pytest.approx(restricted, abs=1e-8)
    assert grid.max() <= restricted + 1e-12


# ------------------------------------------------------------------ two solutions


@pytest.mark.parametrize("d", [1, 2])
def test_m2_n2_separable(d):
    assert geometric_measure_m2(2, d).value == pytest.approx(0.0, abs=1e-9)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_m2_n3_collapses_to_half(d):
    assert geometric_measure_m2(3, d).value == pytest.approx(0.5, abs=1e-6)


def test_m2_n5_ordering():
    vals = [geometric_measure_m2(5, d).value for d in range(1, 5)]
    assert vals == sorted(vals) and len(set(vals)) == 4


@pytest.mark.parametrize("n, d", [(1, 1), (3, 0), (3, 4)])
def test_m2_rejects_bad_arguments(n, d):
    with pytest.raises(InvalidArgumentError):
        geometric_measure_m2(n, d)


def test_m2_result_consistent_with_optimal_state():
    for n, d in [(4, 2), (5, 3), (6, 6), (6, 1)]:
        res = geometric_measure_m2(n, d)
        assert res.optimal.n == n
        phi = res.optimal.state()
        assert abs(inner_product(m2_state(n, d), phi)) ** 2 == pytest.approx(res.max_overlap_sq, abs=1e-12)
        assert res.starts_used == 64 and res.converged
        for block in res.optimal.blocks:
            assert 0 <= block.alpha <= np.pi and 0 <= block.beta < 2 * np.pi


def test_m2_d_equals_n_uses_single_block():
    res = geometric_measure_m2(5, 5)
    assert len(res.optimal.blocks) == 1 and res.optimal.blocks[0].size == 5


def test_d1_reduction_small():
    for n in range(3, 7):
        assert geometric_measure_m2(n, 1).value == pytest.approx(geometric_measure_m1(n - 1).value, abs=1e-8)


def test_determinism_same_seed():
    a = geometric_measure_m2(6, 3, seed=42)
    b = geometric_measure_m2(6, 3, seed=42)
    assert a == b and a.to_dict() == b.to_dict()
    c = geometric_measure_bruteforce(m2_state(3, 2), seed=7)
    d = geometric_measure_bruteforce(m2_state(3, 2), seed=7)
    assert c.to_dict() == d.to_dict()


# ------------------------------------------------------------------ brute force


def test_bruteforce_product_states_are_unentangled(rng):
    for n in range(1, 5):
        pairs = [tuple(rng.uniform(0, np.pi, size=2)) for _ in range(n)]
        res = geometric_measure_bruteforce(explicit_product(pairs))
        assert res.value == pytest.approx(0.0, abs=1e-12)
    for idx in (0, 5, 7):
        assert geometric_measure_bruteforce(StateVector.basis(3, idx)).value == pytest.approx(0.0, abs=1e-12)


def test_bruteforce_size_limit():
    with pytest.raises(UnsupportedSizeError):
        geometric_measure_bruteforce(uniform_superposition(8))


def test_bruteforce_bell_and_ghz():
    bell = StateVector(2, np.array([1, 0, 0, 1]) / np.sqrt(2))
    assert geometric_measure_bruteforce(bell).value == pytest.approx(0.5, abs=1e-9)
    ghz = StateVector(3, np.array([1, 0, 0, 0, 0, 0, 0, 1]) / np.sqrt(2))
    assert geometric_measure_bruteforce(ghz).value == pytest.approx(0.5, abs=1e-9)


def test_restricted_never_exceeds_bruteforce():
    for n in range(2, 5):
        brute = geometric_measure_bruteforce(m1_state(n))
        assert geometric_measure_m1(n).max_overlap_sq <= brute.max_overlap_sq + 1e-9
        for d in range(1, n + 1):
            brute = geometric_measure_bruteforce(m2_state(n, d))
            assert geometric_measure_m2(n, d).max_overlap_sq <= brute.max_overlap_sq + 1e-9


def test_range_invariant(rng):
    for n in range(1, 5):
        v = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
        res = geometric_measure_bruteforce(StateVector(n, v / np.linalg.norm(v)))
        assert 0 <= res.value < 1 and 0 < res.max_overlap_sq <= 1
        assert res.value == 1.0 - res.max_overlap_sq


def test_fit_decay_rate():
    ns = np.arange(2, 10)
    rate, amp = fit_decay_rate(ns, 3.0 * np.exp(-0.7 * ns))
    assert rate == pytest.approx(0.7) and amp == pytest.approx(3.0)
