"""Pauli-string expectations, the correlation tensor, and its spectral bound.

The correlation tensor collects <sigma_{i1} x ... x sigma_{in}> over all
non-identity Pauli strings, reshaped to a 3^(n-1) x 3 real matrix: the row
index encodes (i1..i_{n-1}) in base 3 with x=0, y=1, z=2 and i1 as the most
significant digit; the column index is the last qubit's label.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ShapeError, SizeLimitError
from .qstate import StateVector

MAX_TENSOR_QUBITS = 10  # 3^(n-1) * n * 2^n cost guard

PAULI_LABELS = "IXYZ"
AXIS_LABELS = "XYZ"


def _apply_pauli(phi: np.ndarray, axis: int, label: str) -> np.ndarray:
    """Apply one Pauli along one tensor axis without materializing matrices."""
    lo = phi.take(0, axis)
    hi = phi.take(1, axis)
    if label == "X":
        return np.stack([hi, lo], axis=axis)
    if label == "Y":
        return np.stack([-1j * hi, 1j * lo], axis=axis)
    if label == "Z":
        return np.stack([lo, -hi], axis=axis)
    raise ShapeError(f"unknown Pauli label {label!r}")


def pauli_expectation(state: StateVector, labels: str) -> float:
    """<psi| sigma_{labels[0]} x ... x sigma_{labels[n-1]} |psi>, a real number."""
    if len(labels) != state.n:
        raise ShapeError(f"Pauli string length {len(labels)} != n = {state.n}")
    if any(ch not in PAULI_LABELS for ch in labels):
        raise ShapeError(f"labels must be over {PAULI_LABELS}, got {labels!r}")
    phi = state.tensor()
    for axis, label in enumerate(labels):
        if label != "I":
            phi = _apply_pauli(phi, axis, label)
    val = np.vdot(state.tensor(), phi)
    if abs(val.imag) > 1e-10:
        raise DomainError(f"expectation has imaginary residue {val.imag}")
    return float(val.real)


@dataclass
class CorrelationTensor:
    """All non-identity Pauli-string expectations of an n-qubit state."""

    n: int
    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=float)
        if entries.shape != (3 ** (self.n - 1), 3):
            raise ShapeError(f"expected shape {(3 ** (self.n - 1), 3)}, got {entries.shape}")
        if np.max(np.abs(entries)) > 1.0 + 1e-9:
            raise DomainError("correlation entries must lie in [-1, 1]")
        self.entries = entries

    def as_tensor(self) -> np.ndarray:
        """Entries reshaped to one base-3 axis per qubit."""
        return self.entries.reshape((3,) * self.n)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "rows": 3 ** (self.n - 1),
            "entries": [list(map(float, row)) for row in self.entries],
        }


def _all_expectations(state: StateVector) -> np.ndarray:
    """Expectations of every non-identity Pauli string, shape (3,)*n.

    Recurses over qubits so each partially transformed state is reused by
    its 3^(n-k) descendants.
    """
    psi = state.tensor()
    out = np.empty((3,) * state.n)

    def rec(phi, k, idx):
        if k == state.n:
            out[idx] = np.vdot(psi, phi).real
            return
        for d, label in enumerate(AXIS_LABELS):
            rec(_apply_pauli(phi, k, label), k + 1, idx + (d,))

    rec(psi, 0, ())
    return out


def correlation_tensor(state: StateVector) -> CorrelationTensor:
    if state.n > MAX_TENSOR_QUBITS:
        raise SizeLimitError(
            f"n = {state.n} exceeds the {MAX_TENSOR_QUBITS}-qubit tensor cap"
        )
    entries = _all_expectations(state).reshape(3 ** (state.n - 1), 3)
    return CorrelationTensor(state.n, entries)


def gram_spectrum(r: CorrelationTensor) -> np.ndarray:
    """Eigenvalues of the 3x3 Gram matrix R†R, descending, clamped to >= 0."""
    gram = r.entries.T @ r.entries
    lam = np.linalg.eigvalsh(gram)[::-1]
    return np.clip(lam, 0.0, None)


def lemma_bound(state: StateVector) -> float:
    """Upper bound 2 sqrt(u1^2 + u2^2) on the restricted Bell expectation.

    u1^2, u2^2 are the two largest Gram eigenvalues; for n = 2 the bound is
    the exact maximum violation (Horodecki criterion).
    """
    if state.n < 2:
        raise ShapeError("lemma bound needs at least 2 qubits")
    lam = gram_spectrum(correlation_tensor(state))
    return float(2.0 * np.sqrt(lam[0] + lam[1]))
