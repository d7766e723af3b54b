"""Bell operator construction, expectation evaluation, and maximization.

The restricted operator pairs one measurement chain per branch:

    (b.sigma) x A2 x ... x A_{n-1} x (An + An')
  + (b'.sigma) x A2' x ... x A_{n-1}' x (An - An')

NORMALIZATION: the recursive definition carries (1/2)(An +- An') on the last
qubit and a leaf normalized as (1/2)B1 = b.sigma, so the two factors of 2 and
1/2 cancel and the expansion above has no residual 1/2.

Expectations are evaluated by contracting the correlation tensor, never by
materializing the 2^n x 2^n operator.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DomainError, NotApplicableError, ShapeError, SizeLimitError
from .pauli import CorrelationTensor, correlation_tensor, gram_spectrum
from .qstate import StateVector

UNIT_TOL = 1e-9
_X = np.array([1.0, 0.0, 0.0])
_Y = np.array([0.0, 1.0, 0.0])
_Z = np.array([0.0, 0.0, 1.0])

MAX_FULL_QUBITS = 5  # settings tree grows exponentially with n


def _unit(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape != (3,):
        raise ShapeError("expected a 3-vector")
    if abs(np.linalg.norm(v) - 1.0) > UNIT_TOL:
        raise DomainError(f"vector {v} is not unit length")
    return v


@dataclass
class BellSettings:
    """The 2n unit vectors of the restricted operator.

    ``a[i]`` and ``a_prime[i]`` hold the settings for qubit i+2, so the rows
    run over qubits 2..n and the last row is the split qubit.
    """

    n: int
    b: np.ndarray
    b_prime: np.ndarray
    a: np.ndarray
    a_prime: np.ndarray

    def __post_init__(self):
        if self.n < 2:
            raise ShapeError("Bell settings need at least 2 qubits")
        self.b = _unit(self.b)
        self.b_prime = _unit(self.b_prime)
        a = np.asarray(self.a, dtype=float)
        ap = np.asarray(self.a_prime, dtype=float)
        if a.shape != (self.n - 1, 3) or ap.shape != (self.n - 1, 3):
            raise ShapeError(f"expected {(self.n - 1, 3)} setting arrays")
        if np.max(np.abs(np.linalg.norm(a, axis=1) - 1.0)) > UNIT_TOL:
            raise DomainError("unprimed settings must be unit vectors")
        if np.max(np.abs(np.linalg.norm(ap, axis=1) - 1.0)) > UNIT_TOL:
            raise DomainError("primed settings must be unit vectors")
        self.a = a
        self.a_prime = ap

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "b": list(map(float, self.b)),
            "b_prime": list(map(float, self.b_prime)),
            "a": [list(map(float, row)) for row in self.a],
            "a_prime": [list(map(float, row)) for row in self.a_prime],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "BellSettings":
        return cls(int(obj["n"]), obj["b"], obj["b_prime"], obj["a"], obj["a_prime"])


@dataclass
class OptimizerConfig:
    starts: int = 32
    seed: int = 0
    tol: float = 1e-10
    max_iters: int = 500
    theorem_tol: float = 1e-4


@dataclass
class MaximizeResult:
    gamma_hat: float
    settings: BellSettings
    converged: bool


def tsirelson_bound(n: int) -> float:
    """Quantum ceiling 2^((n+1)/2) on the recursive Bell operator expectation."""
    if n < 1:
        raise ShapeError("n must be >= 1")
    return float(2.0 ** ((n + 1) / 2.0))


# --- contraction helpers -------------------------------------------------

def _env(rt: np.ndarray, vecs, skip: Optional[int]) -> np.ndarray:
    """Contract every axis except ``skip`` with its vector.

    Returns a scalar when skip is None, else the length-3 environment of
    the skipped axis.
    """
    n = rt.ndim
    operands = [rt, list(range(n))]
    for ax, v in enumerate(vecs):
        if ax == skip:
            continue
        operands.extend([v, [ax]])
    if skip is not None:
        operands.append([skip])
    return np.einsum(*operands)


def _restricted_value(rt, b, bp, mids, midps, an, anp) -> float:
    v1 = _env(rt, [b] + mids + [an + anp], None)
    v2 = _env(rt, [bp] + midps + [an - anp], None)
    return float(v1 + v2)


def _split_settings(s: BellSettings):
    mids = [s.a[i] for i in range(s.n - 2)]
    midps = [s.a_prime[i] for i in range(s.n - 2)]
    return s.b, s.b_prime, mids, midps, s.a[-1], s.a_prime[-1]


def _join_settings(n, b, bp, mids, midps, an, anp) -> BellSettings:
    return BellSettings(n, b, bp, np.array(mids + [an]), np.array(midps + [anp]))


def expectation_restricted(state: StateVector, s: BellSettings) -> float:
    """Tr(rho B~_n) via correlation-tensor contraction."""
    if s.n != state.n:
        raise ShapeError(f"settings for n = {s.n}, state has n = {state.n}")
    rt = correlation_tensor(state).as_tensor()
    return _restricted_value(rt, *_split_settings(s))


# --- full recursive operator ---------------------------------------------

@dataclass
class FullBellSettings:
    """Settings tree for the fully recursive operator.

    A leaf (depth 1) holds the single first-qubit vector ``b``.  An internal
    node at depth k holds (a, a_prime) for qubit k plus independent subtrees
    for the unprimed and primed child operators.
    """

    b: Optional[np.ndarray] = None
    a: Optional[np.ndarray] = None
    a_prime: Optional[np.ndarray] = None
    unprimed: Optional["FullBellSettings"] = None
    primed: Optional["FullBellSettings"] = None

    def __post_init__(self):
        if self.b is not None:
            self.b = _unit(self.b)
            if self.a is not None or self.unprimed is not None:
                raise ShapeError("a leaf carries only b")
        else:
            if self.unprimed is None or self.primed is None:
                raise ShapeError("an internal node needs both subtrees")
            self.a = _unit(self.a)
            self.a_prime = _unit(self.a_prime)
            if self.unprimed.depth != self.primed.depth:
                raise ShapeError("subtree depths differ")

    @property
    def depth(self) -> int:
        return 1 if self.b is not None else self.unprimed.depth + 1


def full_leaf(b) -> FullBellSettings:
    return FullBellSettings(b=np.asarray(b, dtype=float))


def full_node(a, a_prime, unprimed, primed) -> FullBellSettings:
    return FullBellSettings(a=np.asarray(a, dtype=float), a_prime=np.asarray(a_prime, dtype=float),
                            unprimed=unprimed, primed=primed)


def _full_coefficients(tree: FullBellSettings) -> np.ndarray:
    """Pauli-string coefficient tensor of the recursive operator, shape (3,)*k."""
    if tree.b is not None:
        return 2.0 * tree.b
    cu = _full_coefficients(tree.unprimed)
    cp = _full_coefficients(tree.primed)
    half_sum = 0.5 * (tree.a + tree.a_prime)
    half_diff = 0.5 * (tree.a - tree.a_prime)
    return np.multiply.outer(cu, half_sum) + np.multiply.outer(cp, half_diff)


def expectation_full(state: StateVector, tree: FullBellSettings) -> float:
    """Expectation of the fully recursive operator by recursive contraction."""
    if tree.depth != state.n:
        raise ShapeError(f"settings tree depth {tree.depth} != n = {state.n}")
    if state.n > MAX_FULL_QUBITS:
        raise SizeLimitError(f"full recursion capped at n = {MAX_FULL_QUBITS}")
    rt = correlation_tensor(state).as_tensor()
    return float(np.sum(_full_coefficients(tree) * rt))


def full_from_restricted(s: BellSettings) -> FullBellSettings:
    """Embed restricted settings in a collapsed tree (primed = unprimed at
    intermediate levels), so expectation_full reproduces expectation_restricted."""

    def chain(vs):
        if len(vs) == 1:
            return full_leaf(vs[0])
        sub = chain(vs[:-1])
        return full_node(vs[-1], vs[-1], sub, sub)

    b, bp, mids, midps, an, anp = _split_settings(s)
    return full_node(an, anp, chain([b] + mids), chain([bp] + midps))


# --- analytic warm start and optimizer ------------------------------------

def _rank_one_factors(w: np.ndarray) -> list:
    """Unit 3-vectors f_1..f_m with <f_1 x ... x f_m, w> maximal for a
    (near-)product tensor, via sequential leading-SVD peeling.

    The final contraction value is non-negative by construction; exact when
    w is proportional to a product vector.
    """
    factors = []
    cur = np.asarray(w, dtype=float)
    for _ in range(cur.ndim - 1):
        mat = cur.reshape(3, -1)
        u_mat, sing, vt = np.linalg.svd(mat, full_matrices=False)
        if sing[0] < 1e-14:
            return [_Z.copy() for _ in range(w.ndim)]
        factors.append(u_mat[:, 0])
        cur = (sing[0] * vt[0]).reshape(cur.shape[1:])
    norm = np.linalg.norm(cur)
    factors.append(cur / norm if norm > 1e-14 else _Z.copy())
    return factors


def optimal_settings_from_spectrum(r: CorrelationTensor) -> BellSettings:
    """Candidate maximizer settings from a diagonal Gram matrix.

    Uses the two analytic (c, c', theta) choices for the degenerate-pair and
    z-dominant diagonal structures; raises NotApplicableError when R†R is
    not diagonal within 1e-8.
    """
    mat = r.entries
    gram = mat.T @ mat
    if np.max(np.abs(gram - np.diag(np.diag(gram)))) > 1e-8:
        raise NotApplicableError("Gram matrix is not diagonal")
    d = np.diag(gram)
    degenerate_xy = abs(d[0] - d[1]) <= 1e-8
    if degenerate_xy and d[0] >= d[2] - 1e-12:
        c = (_X + _Y) / np.sqrt(2.0)
        cp = (_X - _Y) / np.sqrt(2.0)
        u1 = u2 = np.sqrt(max(d[0], 0.0))
    elif np.argmax(d) == 2:
        c = _Z.copy()
        u1 = np.sqrt(d[2])
        if degenerate_xy:
            cp = (_X + _Y) / np.sqrt(2.0)
            u2 = np.sqrt(max(d[0], 0.0))
        else:
            k = int(np.argmax(d[:2]))
            cp = _X.copy() if k == 0 else _Y.copy()
            u2 = np.sqrt(d[k])
    else:
        order = np.argsort(d)[::-1]
        axes = [_X, _Y, _Z]
        c, cp = axes[order[0]].copy(), axes[order[1]].copy()
        u1, u2 = np.sqrt(d[order[0]]), np.sqrt(d[order[1]])
    denom = np.hypot(u1, u2)
    if denom < 1e-15:
        cos_t, sin_t = 1.0, 0.0
    else:
        cos_t, sin_t = u1 / denom, u2 / denom
    an = cos_t * c + sin_t * cp
    anp = cos_t * c - sin_t * cp
    m = r.n - 1
    w = (mat @ (an + anp)).reshape((3,) * m)
    wp = (mat @ (an - anp)).reshape((3,) * m)
    unprimed = _rank_one_factors(w)
    primed = _rank_one_factors(wp)
    return _join_settings(r.n, unprimed[0], primed[0], unprimed[1:], primed[1:], an, anp)


def _svd_start(rt: np.ndarray):
    """Start built from the top-two Gram eigenvectors; exact optimum at n = 2."""
    n = rt.ndim
    mat = rt.reshape(3 ** (n - 1), 3)
    lam, vec = np.linalg.eigh(mat.T @ mat)
    s1, s2 = np.sqrt(max(lam[2], 0.0)), np.sqrt(max(lam[1], 0.0))
    c, cp = vec[:, 2], vec[:, 1]
    denom = np.hypot(s1, s2)
    cos_t, sin_t = (1.0, 0.0) if denom < 1e-15 else (s1 / denom, s2 / denom)
    an = cos_t * c + sin_t * cp
    anp = cos_t * c - sin_t * cp
    w = (mat @ (an + anp)).reshape((3,) * (n - 1))
    wp = (mat @ (an - anp)).reshape((3,) * (n - 1))
    unprimed = _rank_one_factors(w)
    primed = _rank_one_factors(wp)
    return unprimed[0], primed[0], unprimed[1:], primed[1:], an, anp


def _chsh_start(n: int):
    mids = [_X.copy() for _ in range(n - 2)]
    return (_X.copy(), _Z.copy(), mids, [m.copy() for m in mids],
            (_X + _Z) / np.sqrt(2.0), (_X - _Z) / np.sqrt(2.0))


def _random_vecs(n: int, rng):
    def rv():
        v = rng.standard_normal(3)
        return v / np.linalg.norm(v)

    return (rv(), rv(), [rv() for _ in range(n - 2)], [rv() for _ in range(n - 2)], rv(), rv())


def _ascend(rt: np.ndarray, vecs, max_iters: int, tol: float):
    """Alternating exact linear maximization over the 2n unit vectors.

    The objective is linear in each vector separately, so setting it to its
    normalized environment is the exact coordinate optimum; the value is
    monotonically non-decreasing.
    """
    n = rt.ndim
    b, bp, mids, midps, an, anp = vecs
    chain = [np.array(b)] + [np.array(m) for m in mids] + [None]
    chainp = [np.array(bp)] + [np.array(m) for m in midps] + [None]
    an, anp = np.array(an), np.array(anp)
    prev = -np.inf
    val = _restricted_value(rt, chain[0], chainp[0], chain[1:-1], chainp[1:-1], an, anp)
    converged = False
    for _ in range(max_iters):
        chain[-1] = an + anp
        for j in range(n - 1):
            env = _env(rt, chain, j)
            nv = np.linalg.norm(env)
            if nv > 1e-14:
                chain[j] = env / nv
        chainp[-1] = an - anp
        for j in range(n - 1):
            env = _env(rt, chainp, j)
            nv = np.linalg.norm(env)
            if nv > 1e-14:
                chainp[j] = env / nv
        g = _env(rt, chain, n - 1)
        gp = _env(rt, chainp, n - 1)
        u, v = g + gp, g - gp
        if np.linalg.norm(u) > 1e-14:
            an = u / np.linalg.norm(u)
        if np.linalg.norm(v) > 1e-14:
            anp = v / np.linalg.norm(v)
        val = float(np.dot(g, an + anp) + np.dot(gp, an - anp))
        if val - prev < tol:
            converged = True
            break
        prev = val
    return val, (chain[0], chainp[0], chain[1:-1], chainp[1:-1], an, anp), converged


def maximize(state: StateVector, cfg: Optional[OptimizerConfig] = None) -> MaximizeResult:
    """Multi-start ascent over the restricted settings; deterministic per seed.

    The best value never exceeds lemma_bound(state); warm starts include the
    analytic spectral settings (when the Gram matrix is diagonal), the
    Gram-eigenvector start, and a canonical CHSH-like start.
    """
    if state.n < 2:
        raise ShapeError("maximization needs at least 2 qubits")
    cfg = cfg or OptimizerConfig()
    if cfg.starts < 1:
        raise DomainError("starts must be >= 1")
    r = correlation_tensor(state)
    rt = r.as_tensor()
    starts = []
    try:
        starts.append(_split_settings(optimal_settings_from_spectrum(r)))
    except NotApplicableError:
        pass
    starts.append(_svd_start(rt))
    starts.append(_chsh_start(state.n))
    rng = np.random.default_rng(cfg.seed)
    while len(starts) < max(cfg.starts, len(starts)):
        starts.append(_random_vecs(state.n, rng))
    best_val, best_vecs, best_conv = -np.inf, None, False
    for vecs in starts[: max(cfg.starts, 3)]:
        val, out, conv = _ascend(rt, vecs, cfg.max_iters, cfg.tol)
        if val > best_val:
            best_val, best_vecs, best_conv = val, out, conv
    b, bp, mids, midps, an, anp = best_vecs
    settings = _join_settings(state.n, b, bp, list(mids), list(midps), an, anp)
    return MaximizeResult(float(best_val), settings, best_conv)
