"""Independent reference computations used by the tests.

Each oracle avoids the package's own machinery: ranks by exact Fraction
elimination, interval spectra by finite differences, torus spectra by
Fourier enumeration, product spectra by brute-force pair sums.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np
import scipy.linalg


def rational_rank(A) -> int:
    """Rank over Q by Gauss-Jordan elimination on Fractions."""
    rows = [[Fraction(int(x)) for x in row] for row in np.asarray(A)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pr = rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] / pr[col]
                rows[r] = [a - f * b for a, b in zip(rows[r], pr)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def interval_fd(L: float, p: int, count: int, nodes: int = 10_000) -> np.ndarray:
    """Second-order finite differences: Neumann (p = 0) or Dirichlet (p = 1)."""
    h = L / (nodes - 1)
    if p == 0:
        # cell-centred grid makes the Neumann condition exact at second order
        m = nodes
        d = np.full(m, 2.0)
        d[0] = d[-1] = 1.0
        h = L / m
    else:
        m = nodes - 2
        d = np.full(m, 2.0)
    e = -np.ones(m - 1)
    w = scipy.linalg.eigh_tridiagonal(d / h**2, e / h**2, select="i", select_range=(0, count - 1), eigvals_only=True)
    return w


def torus_laplacian_levels(n: int, side: float, count: int, p: int = 0) -> list[float]:
    """Sorted eigenvalues (with multiplicity) of the p-form Laplacian on the flat T^n of given side.

    Each Fourier mode exp(2 pi i k.x / side) carries C(n, p) constant-coefficient p-forms.
    """
    radius = 1
    while True:
        ks = itertools.product(range(-radius, radius + 1), repeat=n)
        vals = sorted((2 * math.pi / side) ** 2 * sum(k * k for k in kk) for kk in ks)
        vals = [v for v in vals for _ in range(math.comb(n, p))]
        if len(vals) >= count and vals[count - 1] < (2 * math.pi / side) ** 2 * (radius + 1) ** 2:
            return vals[:count]
        radius += 1


def product_enumeration(left: list[list[float]], right: list[list[float]], p: int) -> list[float]:
    """All sums a + b with a in left[q], b in right[p - q] (values listed with multiplicity)."""
    out = []
    for q in range(p + 1):
        if q >= len(left) or p - q >= len(right):
            continue
        out += [a + b for a in left[q] for b in right[p - q]]
    return sorted(out)


def interval_modes(L: float, count: int = 50) -> list[list[float]]:
    """Degree 0 and 1 absolute spectra of [0, L] listed with multiplicity."""
    zero = [0.0] + [(k * math.pi / L) ** 2 for k in range(1, count)]
    one = [(k * math.pi / L) ** 2 for k in range(1, count + 1)]
    return [zero, one]
