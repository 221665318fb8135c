# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled twin of the direction-search kernel in ``_kernels.py``."""

import numpy as np

cimport cython
from libc.math cimport cos, sin, M_PI

BACKEND_NAME = "cython"


def direction_min_batch(double[::1] f00, double[::1] f01,
                        double[::1] f10, double[::1] f11,
                        double[::1] psi1, double[::1] psi2,
                        double[::1] fpp, int n_angles):
    """See ``_kernels.direction_min_batch``; identical contract."""
    cdef Py_ssize_t n = f00.shape[0]
    cdef Py_ssize_t i, p, q
    out_val_np = np.empty(n)
    out_xi_np = np.empty(n)
    out_eta_np = np.empty(n)
    cdef double[::1] out_val = out_val_np
    cdef double[::1] out_xi = out_xi_np
    cdef double[::1] out_eta = out_eta_np

    cos_np = np.cos(np.arange(n_angles) * (np.pi / n_angles))
    sin_np = np.sin(np.arange(n_angles) * (np.pi / n_angles))
    cdef double[::1] cs = cos_np
    cdef double[::1] sn = sin_np

    cdef double a, b, c, d, J, nf2, p1, p2, fz
    cdef double cp, sp, xf0, xf1, xi0, xi1
    cdef double A, B, val, best
    cdef Py_ssize_t best_p, best_q

    for i in range(n):
        a = f00[i]; b = f01[i]; c = f10[i]; d = f11[i]
        J = a * d - b * c
        nf2 = a * a + b * b + c * c + d * d
        p1 = psi1[i]; p2 = psi2[i]; fz = fpp[i]
        best = 1e308
        best_p = 0; best_q = 0
        for p in range(n_angles):
            cp = cs[p]; sp = sn[p]
            # xf = xi^T F, xi = (F^-1 xi)^T * J
            xf0 = cp * a + sp * c
            xf1 = cp * b + sp * d
            xi0 = cp * d - sp * b
            xi1 = -cp * c + sp * a
            for q in range(n_angles):
                A = xf0 * cs[q] + xf1 * sn[q]
                B = (xi0 * cs[q] + xi1 * sn[q]) / J
                val = (p2 / (J * J) * (A - 0.5 * nf2 * B) ** 2
                       + p1 / J * (1.0 - 2.0 * A * B + nf2 * B * B)
                       + fz * J * J * B * B)
                if val < best:
                    best = val
                    best_p = p
                    best_q = q
        out_val[i] = best
        out_xi[i] = best_p * (M_PI / n_angles)
        out_eta[i] = best_q * (M_PI / n_angles)
    return out_val_np, out_xi_np, out_eta_np
