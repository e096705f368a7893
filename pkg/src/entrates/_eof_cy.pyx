# Compiled ensemble-entropy optimizer; mirrors _eof_py.py step for step.
# See that module's docstring for the algorithm.

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin, log2, M_PI

cnp.import_array()

cdef int N_COARSE_T = 9
cdef int N_COARSE_P = 8
cdef int PATTERN_LEVELS = 60
cdef double STEP_FLOOR = 1e-8
cdef double APPLY_EPS = 1e-15


cdef inline double _eta(double t) nogil:
    if t <= 0.0:
        return 0.0
    return -t * log2(t)


cdef double _pair_g(double theta, double phi, double[::1] a, double[::1] b,
                    double[::1] rz, double[::1] iz, int d) nogil:
    cdef double c = cos(theta)
    cdef double s = sin(theta)
    cdef double cp = cos(phi)
    cdef double sp = sin(phi)
    cdef double cc = c * c
    cdef double ss = s * s
    cdef double cs2 = 2.0 * c * s
    cdef double g = 0.0, pk = 0.0, pl = 0.0
    cdef double t, rk, rl
    cdef int i
    for i in range(d):
        t = cp * rz[i] + sp * iz[i]
        rk = cc * a[i] + ss * b[i] + cs2 * t
        rl = ss * a[i] + cc * b[i] - cs2 * t
        if rk < 0.0:
            rk = 0.0
        if rl < 0.0:
            rl = 0.0
        g += _eta(rk) + _eta(rl)
        pk += rk
        pl += rl
    return g - _eta(pk) - _eta(pl)


def ensemble_entropy(cnp.ndarray[cnp.complex128_t, ndim=2] v):
    """sum_k p_k H(x_k) for V with rows sqrt(p_k) x_k."""
    cdef int K = v.shape[0]
    cdef int d = v.shape[1]
    cdef double total = 0.0, p, q
    cdef int k, i
    for k in range(K):
        p = 0.0
        for i in range(d):
            q = v[k, i].real * v[k, i].real + v[k, i].imag * v[k, i].imag
            total += _eta(q)
            p += q
        total -= _eta(p)
    return total


def optimize_rows(cnp.ndarray[cnp.complex128_t, ndim=2] v, int max_sweeps, double tol):
    """Sweep all row pairs until one full sweep improves by less than tol.

    Mutates v in place; returns (value, sweeps_used, converged).
    """
    cdef int K = v.shape[0]
    cdef int d = v.shape[1]
    cdef int sweeps = 0
    cdef bint converged = K < 2
    cdef int k, l, i, it, j, jt, jp, ibest, sw
    cdef double improved, g0, g, best_g, best_t, best_p, dt, dp
    cdef double c, s, cp, sp, theta, phi
    cdef double complex u, w, e, zc
    cdef double[::1] a = np.empty(d)
    cdef double[::1] b = np.empty(d)
    cdef double[::1] rz = np.empty(d)
    cdef double[::1] iz = np.empty(d)
    cdef double complex[:, ::1] vv = np.ascontiguousarray(v)
    cdef double coarse_dt = (M_PI / 2.0) / (N_COARSE_T - 1)
    cdef double coarse_dp = M_PI / 4.0

    for sw in range(max_sweeps):
        sweeps += 1
        improved = 0.0
        for k in range(K - 1):
            for l in range(k + 1, K):
                for i in range(d):
                    u = vv[k, i]
                    w = vv[l, i]
                    a[i] = u.real * u.real + u.imag * u.imag
                    b[i] = w.real * w.real + w.imag * w.imag
                    zc = u * w.conjugate()
                    rz[i] = zc.real
                    iz[i] = zc.imag
                g0 = _pair_g(0.0, 0.0, a, b, rz, iz, d)
                # coarse grid
                best_g = g0
                best_t = 0.0
                best_p = 0.0
                for jt in range(N_COARSE_T):
                    theta = jt * coarse_dt
                    for jp in range(N_COARSE_P):
                        phi = jp * coarse_dp
                        g = _pair_g(theta, phi, a, b, rz, iz, d)
                        if g < best_g:
                            best_g = g
                            best_t = theta
                            best_p = phi
                # pattern-search refinement
                dt = coarse_dt
                dp = coarse_dp
                for it in range(PATTERN_LEVELS):
                    ibest = 4
                    for j in range(9):
                        if j == 4:
                            continue
                        theta = best_t + ((j // 3) - 1) * dt
                        phi = best_p + ((j % 3) - 1) * dp
                        g = _pair_g(theta, phi, a, b, rz, iz, d)
                        if g < best_g:
                            best_g = g
                            ibest = j
                    if ibest == 4:
                        dt *= 0.5
                        dp *= 0.5
                        if dt < STEP_FLOOR and dp < STEP_FLOOR:
                            break
                    else:
                        best_t += ((ibest // 3) - 1) * dt
                        best_p += ((ibest % 3) - 1) * dp
                if g0 - best_g > APPLY_EPS:
                    c = cos(best_t)
                    s = sin(best_t)
                    cp = cos(best_p)
                    sp = sin(best_p)
                    e = cp + 1j * sp
                    for i in range(d):
                        u = vv[k, i]
                        w = vv[l, i]
                        vv[k, i] = c * u + s * e * w
                        vv[l, i] = -s * e.conjugate() * u + c * w
                    improved += g0 - best_g
        if improved < tol:
            converged = True
            break
    v[:, :] = np.asarray(vv)
    return ensemble_entropy(v), sweeps, converged
