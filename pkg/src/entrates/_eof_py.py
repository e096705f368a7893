"""Pure-numpy ensemble-entropy optimizer (fallback kernel).

Minimizes sum_k p_k H(x_k) over ensembles {p_k, x_k} of a fixed single-system
state by Givens-style coordinate descent: the ensemble is held as the row
matrix V with rows sqrt(p_k) x_k, and each step applies the best two-row
unitary rotation (angle theta, relative phase phi) found by a coarse grid
plus pattern-search refinement.  Rotations preserve V^dagger V exactly, so
the decomposition constraint never drifts.

The compiled twin in _eof_cy.pyx implements the identical procedure; either
one is picked at import time by _kernel.py.
"""

from __future__ import annotations

import numpy as np

_COARSE_THETA = np.linspace(0.0, np.pi / 2.0, 9)
_COARSE_PHI = np.arange(8) * (np.pi / 4.0)
_PATTERN_LEVELS = 60
_STEP_FLOOR = 1e-8
_APPLY_EPS = 1e-15
# 3x3 stencil around the current best point, center excluded
_OFFSETS = np.array(
    [(i, j) for i in (-1.0, 0.0, 1.0) for j in (-1.0, 0.0, 1.0) if (i, j) != (0.0, 0.0)]
)


def _eta_sum(x: np.ndarray) -> np.ndarray:
    """Sum of -t log2 t along the last axis, 0 log 0 = 0."""
    out = np.zeros_like(x)
    mask = x > 0.0
    out[mask] = x[mask] * np.log2(x[mask])
    return -out.sum(axis=-1)


def ensemble_entropy(v: np.ndarray) -> float:
    """sum_k p_k H(x_k) for V with rows sqrt(p_k) x_k."""
    probs = np.abs(v) ** 2
    return float(_eta_sum(probs.ravel()) - _eta_sum(probs.sum(axis=1)))


def _pair_objective(theta, phi, a, b, rz, iz):
    """Two-row objective on a batch of (theta, phi) candidates."""
    theta = np.atleast_1d(theta)
    phi = np.atleast_1d(phi)
    c, s = np.cos(theta), np.sin(theta)
    t = np.outer(np.cos(phi), rz) + np.outer(np.sin(phi), iz)
    cc = (c * c)[:, None]
    ss = (s * s)[:, None]
    cs2 = (2.0 * c * s)[:, None]
    rk = cc * a + ss * b + cs2 * t
    rl = ss * a + cc * b - cs2 * t
    np.clip(rk, 0.0, None, out=rk)
    np.clip(rl, 0.0, None, out=rl)
    return (
        _eta_sum(rk)
        + _eta_sum(rl)
        - _eta_sum(rk.sum(axis=1, keepdims=True))
        - _eta_sum(rl.sum(axis=1, keepdims=True))
    )


def _best_rotation(v, k, l):
    """Best (theta, phi) for rows k, l; returns (theta, phi, g_best, g_identity)."""
    a = np.abs(v[k]) ** 2
    b = np.abs(v[l]) ** 2
    z = v[k] * np.conj(v[l])
    rz, iz = z.real, z.imag

    g0 = float(_pair_objective(0.0, 0.0, a, b, rz, iz)[0])

    th, ph = np.meshgrid(_COARSE_THETA, _COARSE_PHI, indexing="ij")
    g = _pair_objective(th.ravel(), ph.ravel(), a, b, rz, iz)
    i = int(np.argmin(g))
    best_t, best_p, best_g = th.ravel()[i], ph.ravel()[i], float(g[i])

    dt = float(_COARSE_THETA[1] - _COARSE_THETA[0])
    dp = float(_COARSE_PHI[1] - _COARSE_PHI[0])
    for _ in range(_PATTERN_LEVELS):
        cand_t = best_t + _OFFSETS[:, 0] * dt
        cand_p = best_p + _OFFSETS[:, 1] * dp
        g = _pair_objective(cand_t, cand_p, a, b, rz, iz)
        i = int(np.argmin(g))
        if g[i] < best_g:
            best_t, best_p, best_g = float(cand_t[i]), float(cand_p[i]), float(g[i])
        else:  # no strict improvement among the 8 neighbours: shrink
            dt *= 0.5
            dp *= 0.5
            if dt < _STEP_FLOOR and dp < _STEP_FLOOR:
                break
    return best_t, best_p, best_g, g0


def optimize_rows(v: np.ndarray, max_sweeps: int, tol: float):
    """Sweep all row pairs until one full sweep improves by less than tol.

    Mutates v in place; returns (value, sweeps_used, converged).
    """
    n_rows = v.shape[0]
    sweeps = 0
    converged = n_rows < 2
    for _ in range(max_sweeps):
        sweeps += 1
        improved = 0.0
        for k in range(n_rows - 1):
            for l in range(k + 1, n_rows):
                theta, phi, g_best, g0 = _best_rotation(v, k, l)
                if g0 - g_best > _APPLY_EPS:
                    c, s = np.cos(theta), np.sin(theta)
                    e = np.exp(1j * phi)
                    row_k = c * v[k] + s * e * v[l]
                    row_l = -s * np.conj(e) * v[k] + c * v[l]
                    v[k], v[l] = row_k, row_l
                    improved += g0 - g_best
        if improved < tol:
            converged = True
            break
    return ensemble_entropy(v), sweeps, converged
