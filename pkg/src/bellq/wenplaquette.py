"""Plaquette model on small tori: states, entropies, and the entropy fit.

Sites are numbered in snake order starting at 1 (even rows left-to-right,
odd rows right-to-left) and map to bit positions by the identity (site k is
bit k, most significant first).  On the 2x2 torus this numbers one plaquette
cyclically 1-2-3-4, which is the labeling under which the four hardcoded
states are simultaneous eigenstates with a common eigenvalue.  Every
plaquette applies the four-body term sigma_x sigma_y sigma_x sigma_y
clockwise from its lower-left corner: (i, i+x, i+x+y, i+y).
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateFitError, DomainError, ShapeError, SizeLimitError
from .pauli import lemma_bound
from .qstate import (
    Bipartition,
    StateVector,
    from_terms,
    generalized_concurrence,
    partial_trace,
    spectrum,
    von_neumann_entropy,
)

MAX_TORUS_SITES = 12

_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

# bipartition case -> (kept sites of the 6-qubit geometry, boundary bonds)
_DELTA_CASES = {1: ((6,), 4), 2: ((5, 6), 6)}


@dataclass
class TorusLattice:
    """Periodic lx x ly lattice with one plaquette per site."""

    lx: int
    ly: int
    plaquettes: list = field(init=False)

    def __post_init__(self):
        if self.lx < 1 or self.ly < 1:
            raise ShapeError("torus sides must be positive")
        plaqs = []
        for r in range(self.ly):
            for c in range(self.lx):
                plaqs.append((
                    self.site(r, c),
                    self.site(r, c + 1),
                    self.site(r + 1, c + 1),
                    self.site(r + 1, c),
                ))
        self.plaquettes = plaqs

    @property
    def sites(self) -> int:
        return self.lx * self.ly

    def site(self, row: int, col: int) -> int:
        r = row % self.ly
        c = col % self.lx
        if r % 2 == 1:
            c = self.lx - 1 - c
        return r * self.lx + c + 1


def plaquette_operator(lat: TorusLattice, plaq: tuple) -> np.ndarray:
    """Dense four-body X-Y-X-Y term; repeated sites compose their factors."""
    per_site = {s: np.eye(2, dtype=complex) for s in range(1, lat.sites + 1)}
    for site, label in zip(plaq, "XYXY"):
        per_site[site] = _PAULI[label] @ per_site[site]
    op = np.array([[1.0 + 0.0j]])
    for s in range(1, lat.sites + 1):
        op = np.kron(op, per_site[s])
    return op


def hamiltonian(lat: TorusLattice) -> np.ndarray:
    """Sum of all plaquette terms as a dense Hermitian matrix."""
    if lat.sites > MAX_TORUS_SITES:
        raise SizeLimitError(f"torus has {lat.sites} sites, cap is {MAX_TORUS_SITES}")
    dim = 2**lat.sites
    h = np.zeros((dim, dim), dtype=complex)
    for plaq in lat.plaquettes:
        h += plaquette_operator(lat, plaq)
    return h


def ground_states_4() -> list:
    """The four degenerate ground states of the 2x2 torus."""
    root = 1.0 / np.sqrt(2.0)
    specs = [
        [("0000", root), ("1111", root)],
        [("1010", root), ("0101", root)],
        [("0011", root), ("1100", -root)],
        [("1001", root), ("0110", -root)],
    ]
    return [from_terms(4, terms) for terms in specs]


def ground_state_6(lambda_plus: float) -> StateVector:
    """Six-site state (l+/sqrt2)(-|111000> + |001110>) + (l-/sqrt2)(|100011> + |010101>)."""
    if not 0.0 <= lambda_plus <= 1.0:
        raise DomainError("lambda_plus must lie in [0, 1]")
    lm = np.sqrt(max(0.0, 1.0 - lambda_plus**2))
    terms = []
    if lambda_plus > 0.0:
        terms += [("111000", -lambda_plus), ("001110", lambda_plus)]
    if lm > 0.0:
        terms += [("100011", lm), ("010101", lm)]
    return from_terms(6, terms)


@dataclass
class EntropyPoint:
    delta: int
    boundary_length: int
    entropy: float


def entropy_points(state: StateVector) -> list:
    """Entropies of the two fixed six-site bipartitions with boundary lengths."""
    if state.n != 6:
        raise ShapeError("entropy points are defined for the 6-site geometry")
    points = []
    for delta, (kept, boundary) in sorted(_DELTA_CASES.items()):
        s = von_neumann_entropy(partial_trace(state, kept))
        points.append(EntropyPoint(delta, boundary, s))
    return points


def inverse_mapping(delta: int, entropy: float) -> float:
    """Bell-violation bound 2 sqrt(13 - 2^(delta+2) exp(-S)) from the entropy."""
    if delta not in (1, 2):
        raise DomainError("delta must be 1 or 2")
    radicand = 13.0 - 2.0 ** (delta + 2) * np.exp(-entropy)
    if radicand < 0.0:
        raise DomainError(f"negative radicand {radicand}")
    return float(2.0 * np.sqrt(radicand))


def stee_fit(points: list) -> tuple:
    """Exact two-point solve of S(L) = a*L - S_tee; returns (a, S_tee)."""
    if len(points) != 2:
        raise DegenerateFitError("exactly two entropy points are required")
    p1, p2 = points
    if p1.boundary_length == p2.boundary_length:
        raise DegenerateFitError("entropy points share a boundary length")
    coeff = (p2.entropy - p1.entropy) / (p2.boundary_length - p1.boundary_length)
    s_tee = coeff * p1.boundary_length - p1.entropy
    return float(coeff), float(s_tee)


def _reduced_spectrum_flat(state: StateVector, kept: tuple, tol: float = 1e-12) -> bool:
    lam = spectrum(partial_trace(state, kept))
    support = lam[lam > tol]
    return bool(support.size and np.max(support) - np.min(support) <= tol)


def report(lambda_plus: float) -> dict:
    """Full six-site pipeline: entropies, fit, bound, and inverse mapping.

    The inverse mapping presumes a flat reduced spectrum (Tr rho^2 = e^-S);
    a warning is emitted when that does not hold.
    """
    state = ground_state_6(lambda_plus)
    points = entropy_points(state)
    coeff, s_tee = stee_fit(points)
    inverse = []
    for point in points:
        kept = _DELTA_CASES[point.delta][0]
        if not _reduced_spectrum_flat(state, kept):
            warnings.warn(
                f"reduced spectrum for delta={point.delta} is not flat; "
                "the inverse mapping is only exact for flat spectra",
                stacklevel=2,
            )
        inverse.append({"delta": point.delta, "value": inverse_mapping(point.delta, point.entropy)})
    concurrences = [
        {
            "delta": delta,
            "value": generalized_concurrence(
                state, Bipartition(6, frozenset(_DELTA_CASES[delta][0])), delta
            ),
        }
        for delta in sorted(_DELTA_CASES)
    ]
    return {
        "lambda_plus": float(lambda_plus),
        "entropies": [
            {"delta": p.delta, "L": p.boundary_length, "S": p.entropy} for p in points
        ],
        "s_tee": s_tee,
        "area_coeff": coeff,
        "lemma_bound": lemma_bound(state),
        "inverse_mapping": inverse,
        "concurrences": concurrences,
    }
