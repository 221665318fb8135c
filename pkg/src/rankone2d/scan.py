"""Domain scans: classify ellipticity cell by cell over (lambda1, lambda2).

Each grid point is a diagonal deformation gradient diag(lambda1, lambda2);
isotropy makes rotations redundant, and the symmetry (lambda1, lambda2) ->
(lambda2, lambda1) is enforced exactly by computing only the upper triangle
and mirroring.  Output goes to CSV (deterministic bytes) or a simple SVG
heat map.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, TextIO, Tuple

import numpy as np

from .energy import SplitEnergy
from .kernels import direction_min_batch
from .oracle import _psi_jets

DEFAULT_TOL = 1e-8


@dataclass
class EllipticityMap:
    """Scan result: per-cell minimal rank-one second derivative and verdict.

    ``verdicts`` holds "Elliptic", "NonElliptic" or "Boundary" strings in
    the same (n_lambda1, n_lambda2) layout as ``margins``.
    """

    lambda1: np.ndarray
    lambda2: np.ndarray
    margins: np.ndarray
    verdicts: np.ndarray
    tol: float

    @property
    def any_nonelliptic(self) -> bool:
        return bool((self.verdicts == "NonElliptic").any())

    def worst(self) -> Tuple[float, float, float]:
        k = int(np.argmin(self.margins))
        i, j = divmod(k, self.lambda2.size)
        return float(self.lambda1[i]), float(self.lambda2[j]), float(self.margins[i, j])


def scan_domain(
    e: SplitEnergy,
    lambda_range: Tuple[float, float] = (10**-2.5, 10**2.5),
    n_points: int = 256,
    n_angles: int = 48,
    tol: float = DEFAULT_TOL,
    spacing: str = "log",
) -> EllipticityMap:
    """Scan a square grid of principal stretches.

    ``spacing`` is "log" (default, matching the wide-range preset) or
    "linear" for a plot range like 0..15; cells whose evaluation produces
    NaN are marked "Boundary" with a NaN margin rather than aborting.
    """
    if spacing == "log":
        lg = np.log10(lambda_range)
        lam = np.logspace(lg[0], lg[1], n_points)
    elif spacing == "linear":
        lam = np.linspace(lambda_range[0], lambda_range[1], n_points)
        if lam[0] <= 0.0:
            raise ValueError("linear scan range must stay positive")
    else:
        raise ValueError(f"unknown spacing {spacing!r}")

    # only cells with lambda1 >= lambda2; the rest is the exact mirror
    ii, jj = np.triu_indices(n_points)
    lam1 = lam[jj]  # columns are the larger stretch along the upper triangle
    lam2 = lam[ii]
    keep = lam1 >= lam2
    lam1, lam2, ii, jj = lam1[keep], lam2[keep], ii[keep], jj[keep]

    t = lam1 / lam2
    psi1 = np.empty(t.size)
    psi2 = np.empty(t.size)
    for k in range(t.size):
        psi1[k], psi2[k] = _psi_jets(e, float(t[k]))
    fpp = e.f_jet_array(lam1 * lam2).d2
    zeros = np.zeros(t.size)
    vals, _, _ = direction_min_batch(
        lam1, zeros, zeros, lam2, psi1, psi2, np.ascontiguousarray(fpp), n_angles
    )

    margins = np.empty((n_points, n_points))
    margins[jj, ii] = vals
    margins[ii, jj] = vals  # exact symmetry by construction

    verdicts = np.where(
        margins < -tol, "NonElliptic", np.where(margins > tol, "Elliptic", "Boundary")
    )
    verdicts = np.where(np.isnan(margins), "Boundary", verdicts)
    return EllipticityMap(lambda1=lam, lambda2=lam, margins=margins,
                          verdicts=verdicts.astype(object), tol=tol)


def emit_csv(emap: EllipticityMap, stream: TextIO) -> None:
    """Write one row per cell; numeric fields use 9 significant digits."""
    stream.write("lambda1,lambda2,verdict,min_margin\n")
    for i, l1 in enumerate(emap.lambda1):
        for j, l2 in enumerate(emap.lambda2):
            stream.write(
                f"{l1:.9g},{l2:.9g},{emap.verdicts[i, j]},{emap.margins[i, j]:.9g}\n"
            )


_COLORS = {"Elliptic": "#3a7ca5", "NonElliptic": "#d1495b", "Boundary": "#edae49"}


def emit_svg(emap: EllipticityMap, stream: TextIO,
             cell: int = 12, margin: int = 40) -> None:
    """Render the verdict grid as an SVG 1.1 heat map in log coordinates."""
    n = emap.lambda1.size
    side = n * cell
    width = side + 2 * margin
    height = side + 2 * margin
    stream.write(
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n'
    )
    stream.write(f'<rect width="{width}" height="{height}" fill="white"/>\n')
    for i in range(n):
        for j in range(n):
            x = margin + i * cell
            y = margin + (n - 1 - j) * cell
            color = _COLORS[emap.verdicts[i, j]]
            stream.write(
                f'<rect x="{x}" y="{y}" width="{cell}" height="{cell}" '
                f'fill="{color}"/>\n'
            )
    # diagonal lambda1 = lambda2 guide, bottom-left to top-right
    stream.write(
        f'<line x1="{margin}" y1="{margin + side}" x2="{margin + side}" '
        f'y2="{margin}" stroke="black" stroke-dasharray="4,4"/>\n'
    )
    lo = f"{emap.lambda1[0]:.3g}"
    hi = f"{emap.lambda1[-1]:.3g}"
    stream.write(
        f'<text x="{margin + side // 2}" y="{height - 8}" '
        'text-anchor="middle" font-size="14">lambda1</text>\n'
    )
    stream.write(
        f'<text x="12" y="{margin + side // 2}" font-size="14" '
        f'transform="rotate(-90 12 {margin + side // 2})" '
        'text-anchor="middle">lambda2</text>\n'
    )
    stream.write(
        f'<text x="{margin}" y="{height - 24}" font-size="10" '
        f'text-anchor="middle">{lo}</text>\n'
    )
    stream.write(
        f'<text x="{margin + side}" y="{height - 24}" font-size="10" '
        f'text-anchor="middle">{hi}</text>\n'
    )
    stream.write("</svg>\n")
