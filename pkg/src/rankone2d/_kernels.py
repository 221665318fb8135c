"""Pure-numpy implementation of the direction-search kernel.

For a batch of 2x2 matrices with precomputed distortion jets (psi1, psi2)
and volumetric curvature (fpp), minimize the rank-one second derivative

    psi2/J^2 * (A - 0.5*|F|^2*B)^2
    + psi1/J * (1 - 2*A*B + |F|^2*B^2)
    + fpp * J^2 * B^2

over unit directions xi = (cos p, sin p), eta = (cos q, sin q) on uniform
angle grids, where A = xi^T F eta, B = <F^-1 xi, eta> and J = det F > 0.
This is the fallback backend; a compiled twin lives in ``_speedups.pyx``.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"


def direction_min_batch(f00, f01, f10, f11, psi1, psi2, fpp, n_angles):
    """Minimize over the angle grid for every sample.

    All matrix/jet arguments are 1-D float arrays of equal length.  Returns
    (min_values, xi_angles, eta_angles) as float arrays.
    """
    f00 = np.asarray(f00, dtype=float)
    n = f00.shape[0]
    angles = np.arange(n_angles) * (np.pi / n_angles)
    cp, sp = np.cos(angles), np.sin(angles)

    out_val = np.empty(n)
    out_xi = np.empty(n)
    out_eta = np.empty(n)
    for i in range(n):
        a, b, c, d = f00[i], f01[i], f10[i], f11[i]
        J = a * d - b * c
        nf2 = a * a + b * b + c * c + d * d
        # rows: xi angle, cols: eta angle
        A = np.outer(cp, a * cp + b * sp) + np.outer(sp, c * cp + d * sp)
        B = (np.outer(cp, d * cp - c * sp) + np.outer(sp, -b * cp + a * sp)) / J
        val = (
            psi2[i] / J**2 * (A - 0.5 * nf2 * B) ** 2
            + psi1[i] / J * (1.0 - 2.0 * A * B + nf2 * B * B)
            + fpp[i] * J**2 * B * B
        )
        k = int(np.argmin(val))
        out_val[i] = val.ravel()[k]
        out_xi[i] = angles[k // n_angles]
        out_eta[i] = angles[k % n_angles]
    return out_val, out_xi, out_eta
