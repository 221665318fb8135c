"""Independent brute-force verification on matrices.

Everything here works directly with 2x2 deformation gradients: a closed-form
SVD, second directional derivatives along rank-one lines (both by finite
differences of the energy and by the closed-form expression through the
distortion function), the acoustic tensor, and a sampled search for
violating (F, xi, eta) triples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .energy import SingularPair, SplitEnergy
from .errors import LeftGLplus, NonPositiveDeterminant
from .kernels import direction_min_batch

_PSI_EPS = 1e-8  # |t - 1| below which the distortion chain rule degenerates


def rotation(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s], [s, c]])


def svd2(F: np.ndarray) -> Tuple[SingularPair, float, float]:
    """Closed-form SVD of a 2x2 matrix with positive determinant.

    Returns (singular pair with lambda1 >= lambda2 > 0, theta_left,
    theta_right) such that F = R(theta_left) @ diag(lambda1, lambda2)
    @ R(theta_right).
    """
    F = np.asarray(F, dtype=float)
    a, b, c, d = F[0, 0], F[0, 1], F[1, 0], F[1, 1]
    det = a * d - b * c
    if det <= 0.0:
        raise NonPositiveDeterminant(f"det F = {det:.6g} <= 0")
    e_, f_ = 0.5 * (a + d), 0.5 * (a - d)
    g_, h_ = 0.5 * (c + b), 0.5 * (c - b)
    q = math.hypot(e_, h_)
    r = math.hypot(f_, g_)
    lambda1, lambda2 = q + r, q - r
    a1 = math.atan2(g_, f_)
    a2 = math.atan2(h_, e_)
    theta_left = 0.5 * (a2 + a1)
    theta_right = 0.5 * (a2 - a1)
    return SingularPair(lambda1, lambda2), theta_left, theta_right


def _psi_jets(e: SplitEnergy, t: float) -> Tuple[float, float]:
    """First and second derivative of the distortion representation at K(t).

    The isochoric part h(t) equals psi(K) with K = (t + 1/t)/2; the chain
    rule is inverted through K'(t) and K''(t).  At t = 1 the quadratic-form
    coefficient of psi'' vanishes identically, so the degenerate limit
    psi' = h''(1), psi'' = 0 is exact there.
    """
    hj = e.h_jet(t)
    if abs(t - 1.0) <= _PSI_EPS:
        return hj.d2, 0.0
    k1 = 0.5 * (1.0 - 1.0 / t**2)
    k2 = 1.0 / t**3
    psi1 = hj.d1 / k1
    psi2 = (hj.d2 - psi1 * k2) / k1**2
    return psi1, psi2


def second_derivative_terms(e: SplitEnergy, F: np.ndarray) -> Tuple[float, float, float]:
    """(psi1, psi2, f'') evaluated at the state of F, for the kernel."""
    F = np.asarray(F, dtype=float)
    pair, _, _ = svd2(F)
    psi1, psi2 = _psi_jets(e, pair.lambda1 / pair.lambda2)
    fpp = e.f_jet(pair.lambda1 * pair.lambda2).d2
    return psi1, psi2, fpp


def analytic_second_derivative(e: SplitEnergy, F: np.ndarray,
                               xi: np.ndarray, eta: np.ndarray) -> float:
    """Closed-form second derivative of W along the rank-one line xi (x) eta."""
    F = np.asarray(F, dtype=float)
    xi = np.asarray(xi, dtype=float)
    eta = np.asarray(eta, dtype=float)
    psi1, psi2, fpp = second_derivative_terms(e, F)
    J = float(np.linalg.det(F))
    nf2 = float(np.sum(F * F))
    A = float(xi @ F @ eta)
    Finv = np.array([[F[1, 1], -F[0, 1]], [-F[1, 0], F[0, 0]]]) / J
    B = float((Finv @ xi) @ eta)
    n2 = float(xi @ xi) * float(eta @ eta)
    return (
        psi2 / J**2 * (A - 0.5 * nf2 * B) ** 2
        + psi1 / J * (n2 - 2.0 * A * B + nf2 * B * B)
        + fpp * J**2 * B * B
    )


def fd_second_derivative(e: SplitEnergy, F: np.ndarray, xi: np.ndarray,
                         eta: np.ndarray, step: Optional[float] = None) -> float:
    """5-point central second difference of s -> W(F + s * xi (x) eta)."""
    from .energy import eval_W_matrix

    F = np.asarray(F, dtype=float)
    D = np.outer(np.asarray(xi, dtype=float), np.asarray(eta, dtype=float))
    if step is None:
        step = float(np.linalg.norm(F)) * 1e-3
    samples = []
    for k in (-2, -1, 0, 1, 2):
        Fk = F + k * step * D
        if np.linalg.det(Fk) <= 0.0:
            raise LeftGLplus(f"F + {k}*step*(xi(x)eta) left GL+(2); shrink step")
        samples.append(eval_W_matrix(e, Fk))
    w_m2, w_m1, w_0, w_p1, w_p2 = samples
    return (-w_m2 + 16.0 * w_m1 - 30.0 * w_0 + 16.0 * w_p1 - w_p2) / (12.0 * step**2)


@dataclass
class AcousticTensor:
    """Symmetric 2x2 matrix whose quadratic form in xi is the rank-one
    second derivative at fixed eta."""

    Q: np.ndarray
    F: np.ndarray
    eta: np.ndarray

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.Q)[0])


def acoustic_tensor(e: SplitEnergy, F: np.ndarray, eta: np.ndarray,
                    step: Optional[float] = None) -> AcousticTensor:
    """Contract the full FD Hessian of W with eta in both slots."""
    from .energy import eval_W_matrix

    F = np.asarray(F, dtype=float)
    eta = np.asarray(eta, dtype=float)
    if step is None:
        step = float(np.linalg.norm(F)) * 3e-4

    def w(M: np.ndarray) -> float:
        if np.linalg.det(M) <= 0.0:
            raise LeftGLplus("Hessian stencil left GL+(2); shrink step")
        return eval_W_matrix(e, M)

    idx = [(0, 0), (0, 1), (1, 0), (1, 1)]
    H = np.empty((4, 4))
    w0 = w(F)
    for m, (i, j) in enumerate(idx):
        Em = np.zeros((2, 2))
        Em[i, j] = 1.0
        for n, (k, l) in enumerate(idx):
            if n < m:
                H[m, n] = H[n, m]
                continue
            En = np.zeros((2, 2))
            En[k, l] = 1.0
            if m == n:
                H[m, n] = (w(F + step * Em) - 2.0 * w0 + w(F - step * Em)) / step**2
            else:
                H[m, n] = (
                    w(F + step * (Em + En)) - w(F + step * (Em - En))
                    - w(F - step * (Em - En)) + w(F - step * (Em + En))
                ) / (4.0 * step**2)

    Q = np.empty((2, 2))
    for i in range(2):
        for k in range(2):
            Q[i, k] = sum(
                H[idx.index((i, j)), idx.index((k, l))] * eta[j] * eta[l]
                for j in range(2) for l in range(2)
            )
    Q = 0.5 * (Q + Q.T)
    return AcousticTensor(Q=Q, F=F, eta=eta)


# ---------------------------------------------------------------------------
# sampled search for violations


@dataclass
class BruteForceResult:
    """Most negative rank-one second derivative found by sampling."""

    violation: bool
    value: float
    F: np.ndarray
    xi: np.ndarray
    eta: np.ndarray

    @property
    def summary(self) -> str:
        return "Violation" if self.violation else "NoViolationFound"


def _kernel_batch(e: SplitEnergy, lam1, lam2, alpha, beta, n_angles):
    """Assemble per-sample matrices and jets, run the direction kernel."""
    n = lam1.size
    ca, sa = np.cos(alpha), np.sin(alpha)
    cb, sb = np.cos(beta), np.sin(beta)
    # R(alpha) @ diag(l1, l2) @ R(beta)
    f00 = ca * lam1 * cb - sa * lam2 * sb
    f01 = -ca * lam1 * sb - sa * lam2 * cb
    f10 = sa * lam1 * cb + ca * lam2 * sb
    f11 = -sa * lam1 * sb + ca * lam2 * cb

    t = lam1 / lam2
    z = lam1 * lam2
    psi1 = np.empty(n)
    psi2 = np.empty(n)
    for i in range(n):
        psi1[i], psi2[i] = _psi_jets(e, float(t[i]))
    fpp = e.f_jet_array(z).d2
    return (f00, f01, f10, f11), direction_min_batch(
        f00, f01, f10, f11, psi1, psi2, np.ascontiguousarray(fpp), n_angles
    )


def brute_force_check(
    e: SplitEnergy,
    n_lambda: int = 20,
    lambda_range: Tuple[float, float] = (1e-2, 1e2),
    n_rotation_pairs: int = 8,
    n_angles: int = 24,
    n_refine: int = 1000,
    seed: int = 0,
    tol: float = 1e-8,
) -> BruteForceResult:
    """Grid search over sampled F and rank-one directions, then seeded
    random refinement around the worst point.  Deterministic given the seed.
    """
    lg = np.log10(lambda_range)
    lam = np.logspace(lg[0], lg[1], n_lambda)
    l1, l2 = map(np.ravel, np.meshgrid(lam, lam, indexing="ij"))
    rot = np.arange(n_rotation_pairs) * (0.5 * np.pi / n_rotation_pairs)
    alpha = np.repeat(rot, l1.size)
    beta = np.repeat(rot[(3 * np.arange(n_rotation_pairs)) % n_rotation_pairs],
                     l1.size)
    lam1 = np.tile(l1, n_rotation_pairs)
    lam2 = np.tile(l2, n_rotation_pairs)

    mats, (vals, xis, etas) = _kernel_batch(e, lam1, lam2, alpha, beta, n_angles)
    k = int(np.argmin(vals))
    best = _pack(mats, vals, xis, etas, k)

    if n_refine > 0:
        rng = np.random.RandomState(seed)
        s1 = np.exp(np.log(lam1[k]) + 0.2 * rng.randn(n_refine))
        s2 = np.exp(np.log(lam2[k]) + 0.2 * rng.randn(n_refine))
        sa = alpha[k] + 0.2 * rng.randn(n_refine)
        sb = beta[k] + 0.2 * rng.randn(n_refine)
        mats_r, (vals_r, xis_r, etas_r) = _kernel_batch(
            e, s1, s2, sa, sb, 2 * n_angles)
        j = int(np.argmin(vals_r))
        if vals_r[j] < best.value:
            best = _pack(mats_r, vals_r, xis_r, etas_r, j)

    return BruteForceResult(
        violation=best.value < -tol, value=best.value,
        F=best.F, xi=best.xi, eta=best.eta,
    )


def _pack(mats, vals, xis, etas, k) -> BruteForceResult:
    f00, f01, f10, f11 = mats
    F = np.array([[f00[k], f01[k]], [f10[k], f11[k]]])
    xi = np.array([math.cos(xis[k]), math.sin(xis[k])])
    eta = np.array([math.cos(etas[k]), math.sin(etas[k])])
    return BruteForceResult(False, float(vals[k]), F, xi, eta)
