"""Pure n-qubit states, reduced density matrices, and entanglement measures.

Bit convention: qubit 1 is the most significant bit of the basis index, so
the ket string "011" puts qubit 1 in |0> and qubits 2, 3 in |1>.  Qubit
indices are 1-based everywhere in the public API.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BipartitionError,
    DomainError,
    NotPositiveError,
    NotUnitaryError,
    ShapeError,
    SizeLimitError,
    ZeroStateError,
)

MAX_QUBITS = 12          # dense-vector feasibility cap
NORM_TOL = 1e-12
HERMITICITY_TOL = 1e-10
EIGENVALUE_CLAMP = 1e-10  # eigenvalues in [-1e-10, 0) are numerical noise


@dataclass
class StateVector:
    """Unit-norm pure state of ``n`` qubits (2**n complex amplitudes)."""

    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.n < 1:
            raise ShapeError("qubit count must be >= 1")
        if self.n > MAX_QUBITS:
            raise SizeLimitError(f"n={self.n} exceeds the {MAX_QUBITS}-qubit cap")
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (2**self.n,):
            raise ShapeError(f"expected 2**{self.n} amplitudes, got shape {amps.shape}")
        if abs(np.linalg.norm(amps) - 1.0) > NORM_TOL:
            raise DomainError("state vector is not normalized")
        self.amplitudes = amps

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per qubit (qubit 1 first)."""
        return self.amplitudes.reshape((2,) * self.n)


@dataclass(frozen=True)
class Bipartition:
    """Split of qubits {1..n} into a nonempty proper subset A and its complement."""

    n: int
    subsystem_a: frozenset
    subsystem_b: frozenset = frozenset()

    def __post_init__(self):
        a = frozenset(self.subsystem_a)
        full = frozenset(range(1, self.n + 1))
        if not a or not a < full:
            raise BipartitionError(
                f"subsystem A must be a nonempty proper subset of 1..{self.n}, got {sorted(a)}"
            )
        object.__setattr__(self, "subsystem_a", a)
        object.__setattr__(self, "subsystem_b", full - a)


@dataclass
class DensityMatrix:
    """Hermitian, unit-trace matrix on an ordered subset of qubits."""

    qubits: tuple
    entries: np.ndarray

    def __post_init__(self):
        rho = np.asarray(self.entries, dtype=complex)
        dim = 2 ** len(self.qubits)
        if rho.shape != (dim, dim):
            raise ShapeError(f"expected {dim}x{dim} matrix for qubits {self.qubits}")
        if np.max(np.abs(rho - rho.conj().T)) > HERMITICITY_TOL:
            raise DomainError("density matrix is not Hermitian")
        if abs(np.trace(rho).real - 1.0) > HERMITICITY_TOL or abs(np.trace(rho).imag) > HERMITICITY_TOL:
            raise DomainError("density matrix trace differs from 1")
        self.entries = rho


def from_terms(n: int, terms: Sequence[tuple]) -> StateVector:
    """Assemble and normalize a state from (bitstring, coefficient) terms.

    Duplicate bitstrings sum.  Raises ZeroStateError when the terms cancel
    or are empty, ShapeError on a bitstring length mismatch.
    """
    if n < 1:
        raise ShapeError("qubit count must be >= 1")
    if not terms:
        raise ZeroStateError("no terms supplied")
    amps = np.zeros(2**n, dtype=complex)
    for bits, coeff in terms:
        if len(bits) != n or any(ch not in "01" for ch in bits):
            raise ShapeError(f"bitstring {bits!r} does not match n={n}")
        amps[int(bits, 2)] += coeff
    norm = np.linalg.norm(amps)
    if norm < 1e-12:
        raise ZeroStateError("terms sum to the zero vector")
    return StateVector(n, amps / norm)


def partial_trace(state: StateVector, keep: Iterable[int]) -> DensityMatrix:
    """Reduced density matrix on the kept qubits (original relative order)."""
    kept = sorted(set(keep))
    Bipartition(state.n, frozenset(kept))  # validates nonempty proper subset
    axes = [q - 1 for q in kept]
    rest = [ax for ax in range(state.n) if ax not in axes]
    mat = state.tensor().transpose(axes + rest).reshape(2 ** len(axes), -1)
    return DensityMatrix(tuple(kept), mat @ mat.conj().T)


def spectrum(rho: DensityMatrix) -> np.ndarray:
    """Eigenvalues of rho, descending, with noise-level negatives clamped to 0."""
    lam = np.linalg.eigvalsh(rho.entries)
    if lam[0] < -EIGENVALUE_CLAMP:
        raise NotPositiveError(f"eigenvalue {lam[0]} below -{EIGENVALUE_CLAMP}")
    return np.clip(lam[::-1], 0.0, None)


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """S = -sum(lam * ln lam) in nats, with 0 ln 0 := 0."""
    lam = spectrum(rho)
    lam = lam[lam > 0.0]
    return float(max(0.0, -np.sum(lam * np.log(lam))))


def purity(rho: DensityMatrix) -> float:
    return float(np.trace(rho.entries @ rho.entries).real)


def concurrence_pure(state: StateVector, split: Bipartition) -> float:
    """C = sqrt(2 (1 - Tr rho_A^2)) for the pure state under the split."""
    if split.n != state.n:
        raise BipartitionError("bipartition qubit count differs from the state")
    rho = partial_trace(state, split.subsystem_a)
    return float(np.sqrt(max(0.0, 2.0 * (1.0 - purity(rho)))))


def generalized_concurrence(state: StateVector, split: Bipartition, delta: int) -> float:
    """C(delta) = sqrt(2 (1 - 2**(delta-1) Tr rho_A^2)); equals concurrence_pure at delta=1."""
    if delta not in (1, 2):
        raise DomainError("delta must be 1 or 2")
    if len(split.subsystem_a) != delta:
        raise BipartitionError(f"|A| = {len(split.subsystem_a)} does not match delta = {delta}")
    if split.n != state.n:
        raise BipartitionError("bipartition qubit count differs from the state")
    rho = partial_trace(state, split.subsystem_a)
    val = 2.0 * (1.0 - 2.0 ** (delta - 1) * purity(rho))
    if val < -1e-9:
        raise DomainError(f"generalized concurrence undefined here (radicand {val})")
    return float(np.sqrt(max(0.0, val)))


def apply_local_unitary(state: StateVector, qubit: int, u: np.ndarray) -> StateVector:
    """Apply a 2x2 unitary to one qubit; the norm is preserved."""
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2):
        raise ShapeError("local unitary must be 2x2")
    if np.max(np.abs(u.conj().T @ u - np.eye(2))) > 1e-10:
        raise NotUnitaryError("matrix fails u†u = 1 within 1e-10")
    if not 1 <= qubit <= state.n:
        raise ShapeError(f"qubit {qubit} outside 1..{state.n}")
    psi = np.tensordot(u, state.tensor(), axes=([1], [qubit - 1]))
    psi = np.moveaxis(psi, 0, qubit - 1).reshape(-1)
    return StateVector(state.n, psi / np.linalg.norm(psi))


def random_state(n: int, seed: int) -> StateVector:
    """Haar-like pure state: normalized complex-Gaussian amplitudes."""
    rng = np.random.default_rng(seed)
    amps = rng.standard_normal(2**n) + 1j * rng.standard_normal(2**n)
    return StateVector(n, amps / np.linalg.norm(amps))


def random_product_state(n: int, seed: int) -> StateVector:
    """Tensor product of independent random single-qubit states."""
    rng = np.random.default_rng(seed)
    amps = np.ones(1, dtype=complex)
    for _ in range(n):
        q = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        amps = np.kron(amps, q / np.linalg.norm(q))
    return StateVector(n, amps / np.linalg.norm(amps))


def state_to_json(state: StateVector) -> dict:
    return {
        "n": state.n,
        "amplitudes": [{"re": a.real, "im": a.imag} for a in state.amplitudes],
    }


def state_from_json(obj: dict) -> StateVector:
    """Parse the state file schema (terms form or amplitude-list form)."""
    n = int(obj["n"])
    if "terms" in obj:
        terms = [(t["bits"], complex(t.get("re", 0.0), t.get("im", 0.0))) for t in obj["terms"]]
        return from_terms(n, terms)
    raw = obj["amplitudes"]
    if len(raw) != 2**n:
        raise ShapeError(f"expected 2**{n} amplitudes, got {len(raw)}")
    amps = np.array([complex(a.get("re", 0.0), a.get("im", 0.0)) for a in raw])
    return StateVector(n, amps)
