"""Compare the compiled and pure-numpy direction-search kernels.

Run as a script:  python3 benchmarks/bench_kernels.py [n_samples] [n_angles]
"""

import sys
import time

import numpy as np

from rankone2d import catalog
from rankone2d.kernels import available_backends
from rankone2d.oracle import second_derivative_terms


def build_batch(n_samples: int):
    rng = np.random.RandomState(42)
    e = catalog("example1")
    lam1 = np.exp(rng.uniform(-2, 2, n_samples))
    lam2 = np.exp(rng.uniform(-2, 2, n_samples))
    alpha = rng.uniform(0, np.pi, n_samples)
    ca, sa = np.cos(alpha), np.sin(alpha)
    f00, f01 = ca * lam1, -sa * lam2
    f10, f11 = sa * lam1, ca * lam2
    psi1 = np.empty(n_samples)
    psi2 = np.empty(n_samples)
    fpp = np.empty(n_samples)
    for i in range(n_samples):
        F = np.array([[f00[i], f01[i]], [f10[i], f11[i]]])
        psi1[i], psi2[i], fpp[i] = second_derivative_terms(e, F)
    return f00, f01, f10, f11, psi1, psi2, fpp


def main() -> None:
    n_samples = int(sys.argv[1]) if len(sys.argv) > 1 else 2000
    n_angles = int(sys.argv[2]) if len(sys.argv) > 2 else 48
    batch = build_batch(n_samples)

    results = {}
    for name, kernel in available_backends().items():
        t0 = time.perf_counter()
        vals, _, _ = kernel(*batch, n_angles)
        elapsed = time.perf_counter() - t0
        results[name] = (elapsed, vals)
        rate = n_samples * n_angles * n_angles / elapsed
        print(f"{name:>8}: {elapsed * 1e3:8.1f} ms "
              f"({rate / 1e6:6.1f} M direction evals/s)")

    if len(results) == 2:
        (n1, (t1, v1)), (n2, (t2, v2)) = results.items()
        worst = float(np.max(np.abs(v1 - v2)))
        print(f"max |{n1} - {n2}| = {worst:.3e}, "
              f"speedup {max(t1, t2) / min(t1, t2):.1f}x")


if __name__ == "__main__":
    main()
