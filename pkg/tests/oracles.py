"""Independent dense-matrix oracles used only by the tests.

Everything here materializes full 2^n x 2^n operators or does explicit
index summations, so the production code paths (sparse per-qubit action,
tensor contraction) are checked against a different computation.
"""
import numpy as np

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def kron_chain(mats):
    out = np.array([[1.0 + 0.0j]])
    for m in mats:
        out = np.kron(out, m)
    return out


def pauli_matrix(labels):
    return kron_chain([PAULI[ch] for ch in labels])


def dense_pauli_expectation(state, labels):
    psi = state.amplitudes
    return float(np.real(np.vdot(psi, pauli_matrix(labels) @ psi)))


def brute_partial_trace(state, keep):
    """O(4^n) explicit index summation over the traced-out bits."""
    n = state.n
    keep = sorted(keep)
    traced = [q for q in range(1, n + 1) if q not in keep]
    dk = 2 ** len(keep)
    rho = np.zeros((dk, dk), dtype=complex)

    def bit(index, qubit):
        return (index >> (n - qubit)) & 1

    def project(index):
        out = 0
        for q in keep:
            out = (out << 1) | bit(index, q)
        return out

    for i in range(2**n):
        for j in range(2**n):
            if all(bit(i, q) == bit(j, q) for q in traced):
                rho[project(i), project(j)] += state.amplitudes[i] * np.conj(state.amplitudes[j])
    return rho


def vec_dot_sigma(v):
    return v[0] * PAULI["X"] + v[1] * PAULI["Y"] + v[2] * PAULI["Z"]


def dense_restricted_operator(settings):
    """(b.s) x A2 x ... x (An + An') + primed chain x (An - An')."""
    n = settings.n
    mids = [vec_dot_sigma(settings.a[i]) for i in range(n - 2)]
    midps = [vec_dot_sigma(settings.a_prime[i]) for i in range(n - 2)]
    an, anp = vec_dot_sigma(settings.a[-1]), vec_dot_sigma(settings.a_prime[-1])
    first = kron_chain([vec_dot_sigma(settings.b)] + mids + [an + anp])
    second = kron_chain([vec_dot_sigma(settings.b_prime)] + midps + [an - anp])
    return first + second


def dense_restricted_expectation(state, settings):
    psi = state.amplitudes
    return float(np.real(np.vdot(psi, dense_restricted_operator(settings) @ psi)))


def dense_full_operator(tree):
    """Recursive build: B_k = B_{k-1} x (A+A')/2 + B'_{k-1} x (A-A')/2."""
    if tree.b is not None:
        return 2.0 * vec_dot_sigma(tree.b)
    left = dense_full_operator(tree.unprimed)
    right = dense_full_operator(tree.primed)
    a, ap = vec_dot_sigma(tree.a), vec_dot_sigma(tree.a_prime)
    return np.kron(left, 0.5 * (a + ap)) + np.kron(right, 0.5 * (a - ap))


def dense_full_expectation(state, tree):
    psi = state.amplitudes
    return float(np.real(np.vdot(psi, dense_full_operator(tree) @ psi)))


def random_unitary(rng):
    """Haar-distributed 2x2 unitary via QR with phase fixing."""
    m = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    q, r = np.linalg.qr(m)
    return q @ np.diag(np.diag(r) / np.abs(np.diag(r)))
