"""Closed-form violation prediction for two-product-term superpositions.

The family covers states |u> x (l+ e^{i p+} |v>|1> + l- e^{i p-} |vbar>|0>)
with |u>, |v| computational-basis strings, |vbar> the bitwise complement of
|v>, and subsystem A the last qubit.  The closed form predicts the maximum
violation as 2 f_alpha(C) with C the single-qubit concurrence, alongside an
explicit Gram-spectrum prediction.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bell import MaximizeResult, OptimizerConfig, maximize
from .errors import DomainError, ShapeError
from .pauli import correlation_tensor, gram_spectrum, lemma_bound
from .qstate import Bipartition, StateVector, concurrence_pure, from_terms


@dataclass
class FamilySpec:
    """Parameters of one two-product-term superposition."""

    n: int
    alpha: int
    u_bits: str
    v_bits: str
    lambda_plus: float
    phase_plus: complex = 1.0 + 0.0j
    phase_minus: complex = 1.0 + 0.0j

    def __post_init__(self):
        if not 2 <= self.alpha <= self.n:
            raise ShapeError(f"alpha = {self.alpha} outside 2..n = {self.n}")
        if len(self.u_bits) != self.n - self.alpha:
            raise ShapeError("spectator string length must be n - alpha")
        if len(self.v_bits) != self.alpha - 1:
            raise ShapeError("v string length must be alpha - 1")
        if any(ch not in "01" for ch in self.u_bits + self.v_bits):
            raise ShapeError("bitstrings must be over {0,1}")
        if not 0.0 <= self.lambda_plus <= 1.0:
            raise DomainError("lambda_plus must lie in [0, 1]")
        for ph in (self.phase_plus, self.phase_minus):
            if abs(abs(complex(ph)) - 1.0) > 1e-12:
                raise DomainError("phases must be unit modulus")

    @property
    def lambda_minus(self) -> float:
        return float(np.sqrt(max(0.0, 1.0 - self.lambda_plus**2)))


@dataclass
class TheoremReport:
    spec: FamilySpec
    concurrence: float
    predicted_gamma: float
    gamma_hat: float
    spectral_bound: float
    branch: str
    spectrum_ok: bool
    gamma_ok: bool
    converged: bool
    passed: bool

    def to_json(self) -> dict:
        return {
            "n": self.spec.n,
            "alpha": self.spec.alpha,
            "u_bits": self.spec.u_bits,
            "v_bits": self.spec.v_bits,
            "lambda_plus": self.spec.lambda_plus,
            "concurrence": self.concurrence,
            "predicted_gamma": self.predicted_gamma,
            "gamma_hat": self.gamma_hat,
            "spectral_bound": self.spectral_bound,
            "branch": self.branch,
            "spectrum_ok": self.spectrum_ok,
            "gamma_ok": self.gamma_ok,
            "converged": self.converged,
            "pass": self.passed,
        }


def _complement(bits: str) -> str:
    return "".join("1" if ch == "0" else "0" for ch in bits)


def family_state(spec: FamilySpec) -> StateVector:
    """Normalized n-qubit state (u-block, v-block, split qubit last)."""
    lp = spec.lambda_plus * complex(spec.phase_plus)
    lm = spec.lambda_minus * complex(spec.phase_minus)
    terms = []
    if abs(lp) > 0.0:
        terms.append((spec.u_bits + spec.v_bits + "1", lp))
    if abs(lm) > 0.0:
        terms.append((spec.u_bits + _complement(spec.v_bits) + "0", lm))
    return from_terms(spec.n, terms)


def _f_branch(c: float, alpha: int):
    if not 0.0 <= c <= 1.0:
        raise DomainError(f"concurrence {c} outside [0, 1]")
    if alpha < 2:
        raise DomainError("alpha must be >= 2")
    c2 = c * c
    if alpha % 2 == 0:
        if c2 <= 2.0 ** (2 - alpha):
            return float(np.sqrt(1.0 + 2.0 ** (alpha - 2) * c2)), "even-quadratic"
        return float(2.0 ** ((alpha - 1) / 2.0) * c), "even-linear"
    if c2 <= 1.0 / (1.0 + 2.0 ** (alpha - 2)):
        return float(np.sqrt(1.0 + (2.0 ** (alpha - 2) - 1.0) * c2)), "odd-quadratic"
    return float(2.0 ** ((alpha - 1) / 2.0) * c), "odd-linear"


def f_alpha(c: float, alpha: int) -> float:
    """Closed-form factor; gamma_predicted = 2 f_alpha(C)."""
    return _f_branch(c, alpha)[0]


def predicted_spectrum(c: float, alpha: int) -> np.ndarray:
    """Predicted Gram eigenvalue triple for the family, unsorted."""
    if not 0.0 <= c <= 1.0:
        raise DomainError(f"concurrence {c} outside [0, 1]")
    if alpha < 2:
        raise DomainError("alpha must be >= 2")
    pair = 2.0 ** (alpha - 2) * c * c
    third = 1.0 if alpha % 2 == 0 else 1.0 - c * c
    return np.array([pair, pair, third])


def verify(spec: FamilySpec, cfg: Optional[OptimizerConfig] = None) -> TheoremReport:
    """Full verification pipeline for one family member.

    Passing requires the optimizer value to match the closed form within
    cfg.theorem_tol and the Gram spectrum to match the predicted multiset
    within 1e-9.
    """
    cfg = cfg or OptimizerConfig()
    state = family_state(spec)
    c = concurrence_pure(state, Bipartition(spec.n, frozenset({spec.n})))
    c = min(1.0, c)
    fa, branch = _f_branch(c, spec.alpha)
    predicted = 2.0 * fa
    result: MaximizeResult = maximize(state, cfg)
    bound = lemma_bound(state)
    eigs = np.sort(gram_spectrum(correlation_tensor(state)))[::-1]
    pred = np.sort(predicted_spectrum(c, spec.alpha))[::-1]
    spectrum_ok = bool(np.max(np.abs(eigs - pred)) <= 1e-9)
    gamma_ok = bool(abs(result.gamma_hat - predicted) <= cfg.theorem_tol)
    return TheoremReport(
        spec=spec,
        concurrence=c,
        predicted_gamma=predicted,
        gamma_hat=result.gamma_hat,
        spectral_bound=bound,
        branch=branch,
        spectrum_ok=spectrum_ok,
        gamma_ok=gamma_ok,
        converged=result.converged,
        passed=gamma_ok and spectrum_ok and result.converged,
    )


def default_sweep() -> list:
    """Built-in sweep over alpha in {2..5} used by the CLI."""
    specs = []
    for alpha in (2, 3, 4, 5):
        for extra in (0, 1):
            n = alpha + extra
            u_candidates = [""] if extra == 0 else ["0" * extra, "1" + "0" * (extra - 1)]
            for u_bits in u_candidates:
                for lam in (0.3, 1.0 / np.sqrt(2.0), 0.9):
                    specs.append(
                        FamilySpec(n=n, alpha=alpha, u_bits=u_bits,
                                   v_bits="1" * (alpha - 1), lambda_plus=float(lam))
                    )
    return specs


def spec_from_json(obj: dict) -> FamilySpec:
    def phase(key):
        raw = obj.get(key)
        if raw is None:
            return 1.0 + 0.0j
        return complex(raw.get("re", 0.0), raw.get("im", 0.0))

    return FamilySpec(
        n=int(obj["n"]),
        alpha=int(obj["alpha"]),
        u_bits=obj.get("u_bits", ""),
        v_bits=obj["v_bits"],
        lambda_plus=float(obj["lambda_plus"]),
        phase_plus=phase("phase_plus"),
        phase_minus=phase("phase_minus"),
    )
