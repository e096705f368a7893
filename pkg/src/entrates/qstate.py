"""Dense complex-matrix core for small quantum states.

Construction and validation of density matrices, tensor products, partial
trace / partial transpose over the second subsystem, Hermitian spectra and
the entropy functions everything else is built on.  All logarithms are
base 2 (ebits).  The composite index convention is A-major throughout:
index = i_A * dim_b + i_B.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-10
NORM_TOL = 1e-10

LOG2 = np.log(2.0)


class ValidationError(ValueError):
    """Input violates a structural invariant (Hermiticity, trace, PSD, norm)."""


def _as_complex_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise ValidationError(f"expected a 2-d matrix, got shape {a.shape}")
    return a


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, PSD operator with dimension metadata."""

    dim: int
    matrix: np.ndarray

    def __post_init__(self):
        m = _as_complex_matrix(self.matrix)
        if m.shape != (self.dim, self.dim):
            raise ValidationError(f"matrix shape {m.shape} != ({self.dim}, {self.dim})")
        if np.abs(m - m.conj().T).max() > HERMITIAN_TOL:
            raise ValidationError("matrix is not Hermitian within 1e-10")
        if abs(np.trace(m).real - 1.0) > TRACE_TOL or abs(np.trace(m).imag) > TRACE_TOL:
            raise ValidationError("trace differs from 1 beyond 1e-10")
        if np.linalg.eigvalsh(m).min() < -PSD_TOL:
            raise ValidationError("matrix is not PSD within 1e-10")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_array(cls, m) -> "DensityMatrix":
        m = _as_complex_matrix(m)
        return cls(dim=m.shape[0], matrix=m)

    @classmethod
    def from_json_dict(cls, doc: dict) -> "DensityMatrix":
        dim = int(doc["dim"])
        m = np.asarray(doc["re"], dtype=float) + 1j * np.asarray(doc["im"], dtype=float)
        return cls(dim=dim, matrix=m)

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dim,
            "re": self.matrix.real.tolist(),
            "im": self.matrix.imag.tolist(),
        }


@dataclass(frozen=True)
class BipartiteState:
    """Density matrix on H_A (x) H_B with A-major composite indexing."""

    dim_a: int
    dim_b: int
    state: DensityMatrix

    def __post_init__(self):
        if self.state.dim != self.dim_a * self.dim_b:
            raise ValidationError(
                f"state dim {self.state.dim} != {self.dim_a} * {self.dim_b}"
            )

    @classmethod
    def from_array(cls, m, dim_a: int, dim_b: int) -> "BipartiteState":
        return cls(dim_a=dim_a, dim_b=dim_b, state=DensityMatrix.from_array(m))


def load_density_matrix(path) -> DensityMatrix:
    """Read {"dim": d, "re": [[...]], "im": [[...]]} and validate."""
    with open(path) as fh:
        return DensityMatrix.from_json_dict(json.load(fh))


def save_density_matrix(rho: DensityMatrix, path) -> None:
    with open(path, "w") as fh:
        json.dump(rho.to_json_dict(), fh)


def tensor(a, b) -> np.ndarray:
    """Kronecker product with the A-major index convention."""
    return np.kron(_as_complex_matrix(a), _as_complex_matrix(b))


def partial_trace_b(s: BipartiteState) -> DensityMatrix:
    """Reduce to system A: rho_A = tr_B(rho_AB)."""
    m = s.state.matrix.reshape(s.dim_a, s.dim_b, s.dim_a, s.dim_b)
    return DensityMatrix.from_array(np.einsum("ikjk->ij", m))


def partial_transpose_b(s: BipartiteState) -> np.ndarray:
    """Transpose the B indices; Hermitian, trace-preserving, involutive."""
    m = s.state.matrix.reshape(s.dim_a, s.dim_b, s.dim_a, s.dim_b)
    return m.transpose(0, 3, 2, 1).reshape(s.state.dim, s.state.dim)


def hermitian_eigenvalues(m) -> np.ndarray:
    """Real spectrum of a Hermitian matrix, descending."""
    m = _as_complex_matrix(m)
    if np.abs(m - m.conj().T).max() > HERMITIAN_TOL:
        raise ValidationError("matrix is not Hermitian within 1e-10")
    return np.linalg.eigvalsh(m)[::-1]


def binary_entropy(x: float) -> float:
    """h(x) = -x log2 x - (1-x) log2 (1-x), with 0 log 0 = 0.

    Symmetric under x <-> 1-x by construction: the argument is folded onto
    [1/2, 1], where 1 - t is exact in floating point.
    """
    if x < -1e-12 or x > 1 + 1e-12:
        raise ValidationError(f"binary_entropy argument {x} outside [0, 1]")
    x = min(max(x, 0.0), 1.0)
    t = max(x, 1.0 - x)
    return _eta(t) + _eta(1.0 - t)


def _eta(t: float) -> float:
    # -t log2 t with the 0 log 0 = 0 convention
    if t <= 0.0:
        return 0.0
    return -t * np.log2(t)


def entropy_of_spectrum(eigs) -> float:
    """Shannon entropy (bits) of a probability-like spectrum.

    Eigenvalues in [-1e-10, 0) are clipped to 0; anything more negative is
    rejected upstream by density-matrix validation.
    """
    lam = np.clip(np.asarray(eigs, dtype=float), 0.0, 1.0)
    lam = lam[lam > 0.0]
    return float(-(lam * np.log2(lam)).sum()) if lam.size else 0.0


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """S(rho) = -tr(rho log2 rho) in bits."""
    return entropy_of_spectrum(np.linalg.eigvalsh(rho.matrix))


def shannon_diag(x) -> float:
    """Shannon entropy of the squared amplitudes of a unit-norm vector."""
    v = np.asarray(x, dtype=complex).ravel()
    probs = np.abs(v) ** 2
    if abs(probs.sum() - 1.0) > NORM_TOL:
        raise ValidationError("vector is not unit-norm within 1e-10")
    return entropy_of_spectrum(probs)
