"""Maximally correlated states in arbitrary dimension.

Construction from the coefficient matrix a_ij, the associated single-system
state rho' = sum_ij a_ij |i><j|, ensemble parametrization via isometries on
the eigendecomposition of rho', the reduced entanglement-of-formation
optimization inf sum_k p_k H(x_k), and the additivity desk-check.

For maximally correlated inputs the optimized value is the entanglement of
formation, which by additivity equals the entanglement cost.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import _kernel
from .qstate import BipartiteState, DensityMatrix, ValidationError, shannon_diag

RANK_TOL = 1e-12
WEIGHT_DROP_TOL = 1e-14
ISOMETRY_TOL = 1e-10


@dataclass(frozen=True)
class MaxCorrSpec:
    """Coefficient matrix a_ij of rho_mc = sum_ij a_ij |ii><jj|."""

    dim: int
    a_matrix: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a_matrix, dtype=complex)
        if a.shape != (self.dim, self.dim):
            raise ValidationError(f"a-matrix shape {a.shape} != ({self.dim}, {self.dim})")
        # same structural constraints as a density matrix
        DensityMatrix(dim=self.dim, matrix=a)
        object.__setattr__(self, "a_matrix", a)

    @classmethod
    def from_json_dict(cls, doc: dict) -> "MaxCorrSpec":
        a = np.asarray(doc["a_re"], dtype=float) + 1j * np.asarray(doc["a_im"], dtype=float)
        return cls(dim=int(doc["dim"]), a_matrix=a)

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dim,
            "a_re": self.a_matrix.real.tolist(),
            "a_im": self.a_matrix.imag.tolist(),
        }


@dataclass(frozen=True)
class OptimizerConfig:
    members: int | None = None  # ensemble size K; default rank(rho')^2
    restarts: int = 32
    seed: int = 0
    tol: float = 1e-10
    max_sweeps: int = 500


@dataclass(frozen=True)
class Decomposition:
    """Weighted pure-state ensemble {p_k, x_k} of a single-system state."""

    weights: np.ndarray  # (K,)
    vectors: np.ndarray  # (K, d), unit-norm rows

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        x = np.asarray(self.vectors, dtype=complex)
        if w.ndim != 1 or x.ndim != 2 or x.shape[0] != w.size:
            raise ValidationError("weights/vectors shape mismatch")
        if abs(w.sum() - 1.0) > 1e-9:
            raise ValidationError("decomposition weights do not sum to 1")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "vectors", x)

    def reconstruction(self) -> np.ndarray:
        """sum_k p_k x_k x_k^dagger."""
        return (self.vectors.T * self.weights) @ self.vectors.conj()

    def average_entropy(self) -> float:
        return float(sum(p * shannon_diag(x) for p, x in zip(self.weights, self.vectors)))

    def to_json_dict(self) -> dict:
        return {
            "weights": self.weights.tolist(),
            "vectors_re": self.vectors.real.tolist(),
            "vectors_im": self.vectors.imag.tolist(),
        }


@dataclass(frozen=True)
class EofResult:
    value: float
    best_decomposition: Decomposition
    restarts_used: int
    converged: bool

    def to_json_dict(self) -> dict:
        return {
            "value": self.value,
            "converged": self.converged,
            "restarts_used": self.restarts_used,
            "decomposition": self.best_decomposition.to_json_dict(),
        }


def build_maxcorr(spec: MaxCorrSpec) -> BipartiteState:
    """rho_mc = sum_ij a_ij |ii><jj| in d (x) d."""
    d = spec.dim
    m = np.zeros((d * d, d * d), dtype=complex)
    support = [i * d + i for i in range(d)]
    m[np.ix_(support, support)] = spec.a_matrix
    return BipartiteState.from_array(m, d, d)


def single_system_state(spec: MaxCorrSpec) -> DensityMatrix:
    """rho' = sum_ij a_ij |i><j| on a single system."""
    return DensityMatrix(dim=spec.dim, matrix=spec.a_matrix)


def _eigen_rows(rho_prime: DensityMatrix) -> np.ndarray:
    """Rows sqrt(lambda_i) e_i^T over the eigenvalues above the rank cutoff."""
    lam, vecs = np.linalg.eigh(rho_prime.matrix)
    keep = lam > RANK_TOL
    return np.sqrt(lam[keep])[:, None] * vecs[:, keep].T


def _members_from_rows(v: np.ndarray) -> Decomposition:
    """Rows sqrt(p_k) x_k -> gauge-fixed ensemble; near-zero weights dropped."""
    p = (np.abs(v) ** 2).sum(axis=1)
    keep = p >= WEIGHT_DROP_TOL
    p, rows = p[keep], v[keep]
    x = rows / np.sqrt(p)[:, None]
    # gauge: make the largest-magnitude component of each vector real positive
    idx = np.argmax(np.abs(x), axis=1)
    lead = x[np.arange(x.shape[0]), idx]
    x = x * np.conj(lead / np.abs(lead))[:, None]
    return Decomposition(weights=p / p.sum(), vectors=x)


def decomposition_from_isometry(rho_prime: DensityMatrix, mixer: np.ndarray) -> Decomposition:
    """Ensemble sqrt(p_k) x_k = sum_i mixer_ki sqrt(lambda_i) e_i.

    The mixer is a K x r matrix with orthonormal columns, r = rank(rho');
    every ensemble realizing rho' arises this way.
    """
    w = _eigen_rows(rho_prime)
    r = w.shape[0]
    mixer = np.asarray(mixer, dtype=complex)
    if mixer.ndim != 2 or mixer.shape[1] != r or mixer.shape[0] < r:
        raise ValidationError(f"mixer must be K x {r} with K >= {r}, got {mixer.shape}")
    gram = mixer.conj().T @ mixer
    if np.abs(gram - np.eye(r)).max() > ISOMETRY_TOL:
        raise ValidationError("mixer columns are not orthonormal within 1e-10")
    return _members_from_rows(mixer @ w)


def _worker_count() -> int:
    raw = os.environ.get("ENTRATES_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    if n == 0:
        return os.cpu_count() or 1
    return max(1, n)


def _restart_starts(w: np.ndarray, members: int, restarts: int, seed: int):
    """Initial row matrices: eigen-ensemble first, then seeded Haar-like mixers.

    The per-restart seed stream is prefix-stable, so raising the restart
    count only appends starts.
    """
    r, d = w.shape
    children = np.random.SeedSequence(seed).spawn(restarts)
    starts = [np.vstack([w, np.zeros((members - r, d), dtype=complex)])]
    for child in children[1:]:
        rng = np.random.default_rng(child)
        g = rng.standard_normal((members, r)) + 1j * rng.standard_normal((members, r))
        q, _ = np.linalg.qr(g)
        starts.append(np.ascontiguousarray(q[:, :r] @ w))
    return starts


def reduced_eof(
    spec: MaxCorrSpec,
    config: OptimizerConfig = OptimizerConfig(),
    warm_starts: tuple = (),
) -> EofResult:
    """inf sum_k p_k H(x_k) over decompositions of rho' (upper bound).

    Multi-start coordinate descent over two-row rotations; deterministic for
    a fixed seed, and independent of restart completion order (the minimum
    over restarts is taken, ties broken by restart index).
    """
    if config.restarts < 1:
        raise ValidationError("restarts must be >= 1")
    w = _eigen_rows(single_system_state(spec))
    r = w.shape[0]
    members = config.members if config.members is not None else r * r
    if members < r:
        raise ValidationError(f"members = {members} below rank {r}")

    starts = list(warm_starts) + _restart_starts(w, members, config.restarts, config.seed)
    runs = [None] * len(starts)

    def run(i):
        v = np.ascontiguousarray(np.array(starts[i], dtype=complex))
        value, sweeps, converged = _kernel.optimize_rows(v, config.max_sweeps, config.tol)
        runs[i] = (value, i, v, converged)

    threads = _worker_count()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(run, range(len(starts))))
    else:
        for i in range(len(starts)):
            run(i)

    value, _, v_best, converged = min(runs, key=lambda t: (t[0], t[1]))
    decomp = _members_from_rows(v_best)
    return EofResult(
        value=decomp.average_entropy(),
        best_decomposition=decomp,
        restarts_used=config.restarts,
        converged=bool(converged),
    )


@dataclass(frozen=True)
class AdditivityReport:
    e1: float
    e2: float
    gap: float  # e2 - 2 e1

    def to_json_dict(self) -> dict:
        return {"e1": self.e1, "e2": self.e2, "gap": self.gap}


def additivity_check(
    spec: MaxCorrSpec, config: OptimizerConfig = OptimizerConfig()
) -> AdditivityReport:
    """Compare E_f of the doubled state against twice the single-copy value.

    The doubled optimization is warm-started from the tensor square of the
    best single-copy ensemble (which evaluates to exactly 2 e1), so the gap
    can only sit below the optimizer slack.
    """
    if spec.dim * spec.dim > 16:
        raise ValidationError("additivity desk-check is limited to dim^2 <= 16")
    res1 = reduced_eof(spec, config)
    v1 = np.sqrt(res1.best_decomposition.weights)[:, None] * res1.best_decomposition.vectors
    doubled = MaxCorrSpec(
        dim=spec.dim * spec.dim, a_matrix=np.kron(spec.a_matrix, spec.a_matrix)
    )
    k2 = v1.shape[0] * v1.shape[0]
    config2 = replace(config, members=max(k2, 1), restarts=max(2, config.restarts // 8))
    res2 = reduced_eof(doubled, config2, warm_starts=(np.kron(v1, v1),))
    return AdditivityReport(e1=res1.value, e2=res2.value, gap=res2.value - 2.0 * res1.value)
