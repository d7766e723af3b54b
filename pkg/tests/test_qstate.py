import numpy as np
import pytest

from bellq import (
    Bipartition,
    BipartitionError,
    DomainError,
    NotUnitaryError,
    ShapeError,
    SizeLimitError,
    StateVector,
    ZeroStateError,
    apply_local_unitary,
    concurrence_pure,
    from_terms,
    generalized_concurrence,
    partial_trace,
    purity,
    random_product_state,
    random_state,
    state_from_json,
    state_to_json,
    von_neumann_entropy,
)
from oracles import brute_partial_trace, random_unitary

ROOT2 = np.sqrt(2.0)


def bell_state():
    return from_terms(2, [("00", 1), ("11", 1)])


def test_from_terms_normalizes():
    st = bell_state()
    assert np.allclose(st.amplitudes, [1 / ROOT2, 0, 0, 1 / ROOT2])


def test_from_terms_identity_case():
    st = from_terms(1, [("0", 1)])
    assert np.allclose(st.amplitudes, [1, 0])


def test_from_terms_duplicates_sum():
    st = from_terms(1, [("0", 0.5), ("0", 0.5), ("1", 1.0)])
    assert np.allclose(st.amplitudes, [1 / ROOT2, 1 / ROOT2])


def test_from_terms_degenerate_inputs():
    with pytest.raises(ZeroStateError):
        from_terms(2, [])
    with pytest.raises(ZeroStateError):
        from_terms(1, [("0", 1), ("0", -1)])
    with pytest.raises(ShapeError):
        from_terms(2, [("000", 1)])


def test_state_vector_validation():
    with pytest.raises(DomainError):
        StateVector(1, np.array([1.0, 1.0]))
    with pytest.raises(ShapeError):
        StateVector(2, np.array([1.0, 0.0]))
    with pytest.raises(SizeLimitError):
        StateVector(13, np.zeros(2**13))


def test_bit_order_convention():
    # "01" means qubit 1 = |0>, qubit 2 = |1>, basis index 1
    st = from_terms(2, [("01", 1)])
    assert st.amplitudes[1] == 1.0


def test_partial_trace_bell_pair():
    rho = partial_trace(bell_state(), {2})
    assert np.allclose(rho.entries, np.diag([0.5, 0.5]))


def test_partial_trace_product_state():
    rho = partial_trace(from_terms(2, [("01", 1)]), {2})
    assert np.allclose(rho.entries, np.diag([0.0, 1.0]))


def test_partial_trace_ghz4_middle_cut():
    st = from_terms(4, [("0000", 1), ("1111", 1)])
    rho = partial_trace(st, {3, 4})
    expected = brute_partial_trace(st, [3, 4])
    assert np.allclose(rho.entries, expected, atol=1e-12)
    assert np.allclose(rho.entries, np.diag([0.5, 0, 0, 0.5]))


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_partial_trace_matches_brute_force(n):
    st = random_state(n, seed=100 + n)
    for keep in ([1], [n], [1, n], list(range(2, n + 1))[: max(1, n // 2)]):
        keep = sorted(set(keep))
        if len(keep) == n:
            continue
        rho = partial_trace(st, keep)
        assert np.allclose(rho.entries, brute_partial_trace(st, keep), atol=1e-12)


def test_partial_trace_rejects_empty_and_full():
    with pytest.raises(BipartitionError):
        partial_trace(bell_state(), set())
    with pytest.raises(BipartitionError):
        partial_trace(bell_state(), {1, 2})


def test_entropy_flat_spectrum():
    rho = partial_trace(bell_state(), {1})
    assert von_neumann_entropy(rho) == pytest.approx(np.log(2), abs=1e-12)


def test_entropy_pure_projector():
    rho = partial_trace(from_terms(2, [("01", 1)]), {1})
    assert von_neumann_entropy(rho) == pytest.approx(0.0, abs=1e-12)


def test_entropy_symmetry_random_states():
    for seed in range(5):
        st = random_state(5, seed)
        sa = von_neumann_entropy(partial_trace(st, {1, 3}))
        sb = von_neumann_entropy(partial_trace(st, {2, 4, 5}))
        assert sa == pytest.approx(sb, abs=1e-9)


def test_purity_symmetry_random_states():
    for seed in range(5):
        st = random_state(4, seed)
        pa = purity(partial_trace(st, {2}))
        pb = purity(partial_trace(st, {1, 3, 4}))
        assert pa == pytest.approx(pb, abs=1e-10)


def test_concurrence_bell_and_product():
    assert concurrence_pure(bell_state(), Bipartition(2, frozenset({2}))) == pytest.approx(1.0)
    st = from_terms(2, [("00", 1)])
    assert concurrence_pure(st, Bipartition(2, frozenset({2}))) == pytest.approx(0.0, abs=1e-12)


def test_concurrence_lambda_relation():
    # C = 2 l+ l- for lambda-weighted two-term states
    lam_p, lam_m = np.sqrt(3) / 2, 0.5
    st = from_terms(2, [("11", lam_p), ("00", lam_m)])
    c = concurrence_pure(st, Bipartition(2, frozenset({2})))
    assert c == pytest.approx(2 * lam_p * lam_m, abs=1e-12)
    assert lam_p**2 == pytest.approx((1 + np.sqrt(1 - c * c)) / 2, abs=1e-10)


def test_generalized_concurrence_reduces_to_pure():
    for seed in range(4):
        st = random_state(3, seed)
        split = Bipartition(3, frozenset({3}))
        assert generalized_concurrence(st, split, 1) == pytest.approx(
            concurrence_pure(st, split), abs=1e-12
        )


def test_generalized_concurrence_delta_mismatch():
    st = random_state(3, 0)
    with pytest.raises(BipartitionError):
        generalized_concurrence(st, Bipartition(3, frozenset({2, 3})), 1)


def test_product_state_concurrence_zero():
    for seed in range(5):
        st = random_product_state(4, seed)
        for a in ({1}, {3}, {2, 4}):
            # sqrt amplifies 1e-16 purity noise to ~1e-8
            assert concurrence_pure(st, Bipartition(4, frozenset(a))) == pytest.approx(0.0, abs=1e-7)


def test_apply_local_unitary_gates():
    one = from_terms(1, [("0", 1)])
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    h = np.array([[1, 1], [1, -1]]) / ROOT2
    assert np.allclose(apply_local_unitary(one, 1, np.eye(2)).amplitudes, one.amplitudes)
    assert np.allclose(apply_local_unitary(one, 1, x).amplitudes, [0, 1])
    assert np.allclose(apply_local_unitary(one, 1, h).amplitudes, [1 / ROOT2, 1 / ROOT2])


def test_apply_local_unitary_rejects_non_unitary():
    with pytest.raises(NotUnitaryError):
        apply_local_unitary(bell_state(), 1, np.array([[1, 1], [0, 1]], dtype=complex))


def test_local_unitary_invariance_of_measures():
    rng = np.random.default_rng(11)
    st = random_state(4, 42)
    split = Bipartition(4, frozenset({2, 3}))
    c0 = concurrence_pure(st, split)
    s0 = von_neumann_entropy(partial_trace(st, split.subsystem_a))
    for qubit in range(1, 5):
        rotated = apply_local_unitary(st, qubit, random_unitary(rng))
        assert concurrence_pure(rotated, split) == pytest.approx(c0, abs=1e-10)
        s1 = von_neumann_entropy(partial_trace(rotated, split.subsystem_a))
        assert s1 == pytest.approx(s0, abs=1e-10)


def test_random_state_determinism_and_norm():
    a = random_state(3, 7)
    b = random_state(3, 7)
    assert np.array_equal(a.amplitudes, b.amplitudes)
    assert np.linalg.norm(a.amplitudes) == pytest.approx(1.0, abs=1e-12)


def test_state_json_round_trip():
    st = random_state(3, 5)
    again = state_from_json(state_to_json(st))
    assert np.allclose(st.amplitudes, again.amplitudes, atol=0)


def test_state_json_terms_form():
    st = state_from_json({"n": 2, "terms": [{"bits": "00", "re": 1.0}, {"bits": "11", "re": 1.0}]})
    assert np.allclose(st.amplitudes, bell_state().amplitudes)
