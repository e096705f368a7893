"""Closed-form entanglement measures for the state families under study.

Two-Bell-state mixtures, two-qubit maximally correlated states, the Wootters
entanglement of formation for arbitrary two-qubit states, and the
PPT-distillable entanglement S(rho_A) - S(rho_AB) for maximally correlated
states.  All values are in ebits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .qstate import (
    BipartiteState,
    DensityMatrix,
    ValidationError,
    binary_entropy,
    entropy_of_spectrum,
    partial_trace_b,
    von_neumann_entropy,
)

MAXCORR_TOL = 1e-10
CLAMP_TOL = 1e-10


@dataclass(frozen=True)
class BellMixtureParam:
    """Mixing weight p of |phi-> in (1-p)|phi+><phi+| + p|phi-><phi-|."""

    p: float

    def __post_init__(self):
        if not 0.5 <= self.p <= 1.0:
            raise ValidationError(f"Bell mixture weight {self.p} outside [1/2, 1]")


@dataclass(frozen=True)
class MaxCorr2x2Param:
    """(1-q)|phi><phi| + q|psi><psi| with phi = a|00> + b|11|, psi = b*|00> - a*|11>."""

    q: float
    amp_a: complex

    def __post_init__(self):
        if not 0.5 <= self.q <= 1.0:
            raise ValidationError(f"mixing weight {self.q} outside [1/2, 1]")
        mod = abs(self.amp_a)
        if not 0.0 < mod < 1.0:
            raise ValidationError(f"|a| = {mod} outside (0, 1)")

    @property
    def a2(self) -> float:
        return abs(self.amp_a) ** 2


@dataclass
class MeasureReport:
    """Computed measures of one state, with provenance flags.

    d is the LOCC distillable entanglement when known, f_cost the
    entanglement cost, d_gamma the PPT-distillable entanglement,
    cycle_ratio the singlet round-trip rate D/F (undefined at the 0/0
    separable boundary).
    """

    d: float | None
    f_cost: float | None
    d_gamma: float | None
    cycle_ratio: float | None
    flags: list = field(default_factory=list)

    def __post_init__(self):
        if self.d is not None and self.d_gamma is not None:
            if self.d > self.d_gamma + 1e-9:
                raise ValidationError("D exceeds D_Gamma")
        if self.d is not None and self.f_cost is not None:
            if self.d > self.f_cost + 1e-9:
                raise ValidationError("D exceeds F (cost below distillable)")

    def to_json_dict(self) -> dict:
        return {
            "D": self.d,
            "F": self.f_cost,
            "D_gamma": self.d_gamma,
            "cycle_ratio": self.cycle_ratio,
            "flags": list(self.flags),
        }


def _clamp0(x: float) -> float:
    if -CLAMP_TOL <= x < 0.0:
        return 0.0
    return x


def bell_mixture_state(param: BellMixtureParam) -> BipartiteState:
    """(1-p)|phi+><phi+| + p|phi-><phi-| as a 2x2 bipartite state."""
    p = param.p
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = m[3, 3] = 0.5
    m[0, 3] = m[3, 0] = 0.5 - p
    return BipartiteState.from_array(m, 2, 2)


def d_bell_mixture(param: BellMixtureParam) -> float:
    """Distillable entanglement 1 - h(p); equals D_Gamma for these states."""
    return _clamp0(1.0 - binary_entropy(param.p))


def f_bell_mixture(param: BellMixtureParam) -> float:
    """Entanglement cost h(1/2 + sqrt(p(1-p)))."""
    p = param.p
    return _clamp0(binary_entropy(0.5 + math.sqrt(p * (1.0 - p))))


_SY_SY = np.fliplr(np.diag([-1.0, 1.0, 1.0, -1.0])).astype(complex)  # sigma_y (x) sigma_y


def concurrence_2x2(s: BipartiteState) -> float:
    """Wootters concurrence of a two-qubit state."""
    if (s.dim_a, s.dim_b) != (2, 2):
        raise ValidationError("concurrence requires a 2x2 bipartite state")
    rho = s.state.matrix
    rho_tilde = _SY_SY @ rho.conj() @ _SY_SY
    # eigenvalues of rho * rho_tilde are real and non-negative
    ev = np.linalg.eigvals(rho @ rho_tilde).real
    lam = np.sqrt(np.clip(np.sort(ev)[::-1], 0.0, None))
    return max(0.0, lam[0] - lam[1] - lam[2] - lam[3])


def eof_from_concurrence(c: float) -> float:
    return binary_entropy(0.5 * (1.0 + math.sqrt(max(0.0, 1.0 - c * c))))


def wootters_eof_2x2(s: BipartiteState) -> tuple[float, float]:
    """Entanglement of formation of a two-qubit state; returns (eof, concurrence)."""
    c = concurrence_2x2(s)
    return eof_from_concurrence(c), c


def maxcorr_2x2_state(param: MaxCorr2x2Param) -> BipartiteState:
    """(1-q)|phi><phi| + q|psi><psi| as a 2x2 maximally correlated state."""
    q, a = param.q, complex(param.amp_a)
    b2 = 1.0 - abs(a) ** 2
    b = math.sqrt(b2)  # global phase of b is immaterial; take it real
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = (1.0 - q) * abs(a) ** 2 + q * b2
    m[3, 3] = (1.0 - q) * b2 + q * abs(a) ** 2
    m[0, 3] = (1.0 - 2.0 * q) * a * b
    m[3, 0] = np.conj(m[0, 3])
    return BipartiteState.from_array(m, 2, 2)


def f_maxcorr_2x2(param: MaxCorr2x2Param) -> float:
    """Entanglement cost h(1/2 + 1/2 sqrt(1 - 4(2q-1)^2 |a|^2 |b|^2)).

    Equals the entanglement of formation by additivity on the maximally
    correlated class.
    """
    a2 = param.a2
    disc = 1.0 - 4.0 * (2.0 * param.q - 1.0) ** 2 * a2 * (1.0 - a2)
    return _clamp0(binary_entropy(0.5 + 0.5 * math.sqrt(max(0.0, disc))))


def maxcorr_amatrix(s: BipartiteState) -> np.ndarray:
    """Extract a_ij from a maximally correlated state; reject other states."""
    if s.dim_a != s.dim_b:
        raise ValidationError("maximally correlated states live in d (x) d")
    d = s.dim_a
    m = s.state.matrix
    support = [i * d + i for i in range(d)]
    a = m[np.ix_(support, support)]
    outside = float(np.trace(m).real - np.trace(a).real)
    off_support = np.abs(m).sum() - np.abs(a).sum()
    if outside > MAXCORR_TOL or off_support > MAXCORR_TOL * d * d:
        raise ValidationError("state support is not within span{|ii>}")
    return a


def d_gamma_maxcorr(s: BipartiteState) -> float:
    """PPT-distillable entanglement S(rho_A) - S(rho_AB) of a maximally correlated state."""
    maxcorr_amatrix(s)  # validates support
    s_a = von_neumann_entropy(partial_trace_b(s))
    s_ab = von_neumann_entropy(s.state)
    val = s_a - s_ab
    if val < -CLAMP_TOL:
        raise ValidationError(f"negative PPT-distillable entanglement {val}")
    return _clamp0(val)


def d_gamma_from_amatrix(a: np.ndarray) -> float:
    """Same quantity straight from the coefficient matrix a_ij."""
    diag = np.clip(np.diag(a).real, 0.0, None)
    val = entropy_of_spectrum(diag) - entropy_of_spectrum(np.linalg.eigvalsh(a))
    if val < -CLAMP_TOL:
        raise ValidationError(f"negative PPT-distillable entanglement {val}")
    return _clamp0(val)


def sec8_state(p: float) -> BipartiteState:
    """p|00><00| + (1-p)|phi+><phi+|, the separable-limit family."""
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"weight {p} outside [0, 1]")
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = p + (1.0 - p) / 2.0
    m[3, 3] = (1.0 - p) / 2.0
    m[0, 3] = m[3, 0] = (1.0 - p) / 2.0
    return BipartiteState.from_array(m, 2, 2)
