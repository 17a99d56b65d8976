"""Closed-form p-form spectra of intervals, round spheres and their products.

Sphere spectra come from representation theory: coexact p-forms on S^m with
eigenvalue (k+p)(k+m-p-1), k >= 1, span the SO(m+1) irreducible module of
highest weight (k, 1, ..., 1) with p ones (both signs of the last entry when
m+1 = 2(p+1)); their multiplicity is the Weyl dimension of that module. Exact
p-forms repeat the coexact (p-1)-form values. These values are not trusted on
their own: the test-suite cross-checks them against discrete solves.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple

HARMONIC, EXACT, COEXACT, MIXED = "harmonic", "exact", "coexact", "mixed"
MERGE_RTOL = 1e-12


class Level(NamedTuple):
    value: float
    multiplicity: int
    cls: str


def so_irrep_dimension(N: int, weight: tuple[int, ...]) -> int:
    """Weyl dimension of the SO(N) irreducible module with the given highest weight."""
    r = N // 2
    lam = list(weight) + [0] * (r - len(weight))
    if len(lam) > r:
        raise ValueError(f"weight {weight} too long for SO({N})")
    if N % 2:
        rho = [Fraction(2 * (r - i) - 1, 2) for i in range(r)]
    else:
        rho = [Fraction(r - i - 1) for i in range(r)]
    a = [Fraction(l) + p for l, p in zip(lam, rho)]
    num = den = Fraction(1)
    for i in range(r):
        for j in range(i + 1, r):
            num *= a[i] ** 2 - a[j] ** 2
            den *= rho[i] ** 2 - rho[j] ** 2
        if N % 2:
            num *= a[i]
            den *= rho[i]
    dim = num / den
    if dim.denominator != 1 or dim <= 0:
        raise ArithmeticError(f"non-integral Weyl dimension {dim} for SO({N}) weight {weight}")
    return int(dim)


def sphere_coexact_multiplicity(m: int, p: int, k: int) -> int:
    """Multiplicity of the k-th coexact p-form eigenvalue on S^m (0 <= p <= m-1)."""
    N = m + 1
    # the Hodge star maps coexact p-forms onto coexact (m-1-p)-forms
    p = min(p, m - 1 - p)
    weight = (k,) + (1,) * p
    dim = so_irrep_dimension(N, weight)
    if N % 2 == 0 and len(weight) == N // 2:
        dim *= 2  # weights (..., +1) and (..., -1) (or +-k when p = 0)
    return dim


def _merge(levels: list[Level]) -> list[Level]:
    """Sort and merge equal values of the same class."""
    levels = sorted(levels, key=lambda t: (t.value, t.cls))
    out: list[Level] = []
    for lv in levels:
        if out and out[-1].cls == lv.cls and abs(lv.value - out[-1].value) <= MERGE_RTOL * max(abs(lv.value), 1.0):
            prev = out[-1]
            out[-1] = Level(prev.value, prev.multiplicity + lv.multiplicity, prev.cls)
        else:
            out.append(lv)
    return out


@dataclass(frozen=True)
class AnalyticSpectrum:
    """Lazy ascending enumeration of (eigenvalue, multiplicity, class)."""

    kind: str
    params: tuple

    def up_to(self, cutoff: float) -> list[Level]:
        """All levels with eigenvalue <= cutoff (complete)."""
        if self.kind == "interval":
            return _interval_levels(*self.params, cutoff)
        if self.kind == "sphere":
            return _sphere_levels(*self.params, cutoff)
        if self.kind == "product":
            return _product_levels(*self.params, cutoff)
        raise ValueError(f"unknown spectrum kind {self.kind!r}")

    def first(self, count: int) -> list[Level]:
        """The ``count`` smallest distinct levels."""
        if count <= 0:
            return []
        cutoff = 1.0
        while True:
            # up_to is complete below the cutoff, so its first `count` levels are final
            levels = self.up_to(cutoff)
            if len(levels) >= count:
                return levels[:count]
            cutoff *= 2.0

    def values(self, count: int) -> list[float]:
        """The ``count`` smallest eigenvalues repeated by multiplicity."""
        out: list[float] = []
        for lv in self.first(count):
            out += [lv.value] * lv.multiplicity
            if len(out) >= count:
                break
        return out[:count]

    def first_positive(self) -> float:
        for lv in self.first(64):
            if lv.value > 0:
                return lv.value
        raise ArithmeticError("no positive eigenvalue among the first 64 levels")

    def harmonic_count(self) -> int:
        return sum(lv.multiplicity for lv in self.up_to(0.0) if lv.cls == HARMONIC)


def _interval_levels(L: float, p: int, bc: str, cutoff: float) -> list[Level]:
    out = []
    if p == 0:
        out.append(Level(0.0, 1, HARMONIC))
    kmax = int(math.floor(math.sqrt(max(cutoff, 0.0)) * L / math.pi))
    cls = COEXACT if p == 0 else EXACT
    for k in range(1, kmax + 1):
        v = (k * math.pi / L) ** 2
        if v <= cutoff:
            out.append(Level(v, 1, cls))
    return out


def _sphere_levels(m: int, p: int, cutoff: float) -> list[Level]:
    out = []
    if p in (0, m):
        out.append(Level(0.0, 1, HARMONIC))
    if p < m:
        out += _coexact_levels(m, p, COEXACT, cutoff)
    if p >= 1:
        out += _coexact_levels(m, p - 1, EXACT, cutoff)
    return _merge(out)


def _coexact_levels(m: int, q: int, cls: str, cutoff: float) -> list[Level]:
    out = []
    k = 1
    while True:
        v = float((k + q) * (k + m - q - 1))
        if v > cutoff:
            return out
        out.append(Level(v, sphere_coexact_multiplicity(m, q, k), cls))
        k += 1


def _product_levels(A: "SpectrumFamily", B: "SpectrumFamily", p: int, cutoff: float) -> list[Level]:
    out = []
    for q in range(p + 1):
        if q > A.dimension or p - q > B.dimension:
            continue
        left = A(q).up_to(cutoff)
        right = B(p - q).up_to(cutoff)
        for a in left:
            for b in right:
                v = a.value + b.value
                if v <= cutoff:
                    cls = HARMONIC if v == 0 else MIXED
                    out.append(Level(v, a.multiplicity * b.multiplicity, cls))
    return _merge(out)


@dataclass(frozen=True)
class SpectrumFamily:
    """Spectra of one manifold in every degree 0..dimension."""

    dimension: int
    degree_spectrum: Callable[[int], AnalyticSpectrum]

    def __call__(self, q: int) -> AnalyticSpectrum:
        return self.degree_spectrum(q)


def interval_family(L: float, bc: str = "absolute") -> SpectrumFamily:
    return SpectrumFamily(1, lambda q: interval_descriptor(L, q, bc))


def sphere_family(m: int) -> SpectrumFamily:
    return SpectrumFamily(m, lambda q: sphere_descriptor(m, q))


def interval_descriptor(L: float, p: int, bc: str = "absolute") -> AnalyticSpectrum:
    if L <= 0:
        raise ValueError("interval length must be positive")
    if p not in (0, 1):
        raise ValueError("interval forms have degree 0 or 1")
    if bc != "absolute":
        raise ValueError("only absolute boundary conditions are implemented")
    return AnalyticSpectrum("interval", (float(L), p, bc))


def sphere_descriptor(m: int, p: int) -> AnalyticSpectrum:
    if m < 1:
        raise ValueError("sphere dimension must be >= 1")
    if not 0 <= p <= m:
        raise ValueError(f"p must be in 0..{m}")
    return AnalyticSpectrum("sphere", (m, p))


def sphere_spectrum(m: int, p: int, count: int) -> list[Level]:
    """First ``count`` levels of the p-form Laplacian on the round unit S^m."""
    return sphere_descriptor(m, p).first(count)


def interval_spectrum(L: float, p: int, count: int, bc: str = "absolute") -> list[Level]:
    """Absolute conditions: Neumann for functions, Dirichlet coefficient for 1-forms."""
    return interval_descriptor(L, p, bc).first(count)


def product_descriptor(A: SpectrumFamily, B: SpectrumFamily, p: int) -> AnalyticSpectrum:
    if not 0 <= p <= A.dimension + B.dimension:
        raise ValueError("degree exceeds the product dimension")
    return AnalyticSpectrum("product", (A, B, p))


def product_spectrum(A: SpectrumFamily, B: SpectrumFamily, p: int, count: int) -> list[Level]:
    """Kunneth: sums of factor eigenvalues over degree splittings q + (p - q)."""
    return product_descriptor(A, B, p).first(count)


def cylinder_spectrum(L: float, m: int, p: int) -> AnalyticSpectrum:
    """p-forms on [0, L] x S^m with absolute boundary conditions."""
    return product_descriptor(interval_family(L), sphere_family(m), p)


def first_positive_sphere(m: int, q: int) -> float:
    return sphere_descriptor(m, q).first_positive()


def cylinder_lower_bound(n: int, p: int) -> float:
    """min over 1 <= q <= n-2 of the first positive q-form eigenvalue of S^{n-1}."""
    if n < 4:
        raise ValueError("the cylinder bound needs n >= 4")
    if not 2 <= p <= n - 2:
        raise ValueError(f"p must be in 2..{n - 2}")
    return min(first_positive_sphere(n - 1, q) for q in range(1, n - 1))


def sphere_volume(m: int) -> float:
    """Volume of the round unit S^m."""
    return 2.0 * math.pi ** ((m + 1) / 2) / math.gamma((m + 1) / 2)


def theorem_curve(n: int, p: int, L_list, fixed_part_volume: float) -> list[dict]:
    """Rows (L, mu_{1,p}([0,L] x S^{n-1}), V = V_fixed + L vol(S^{n-1}), V^{2/n} mu)."""
    L_list = [float(L) for L in L_list]
    if any(L <= 0 for L in L_list) or any(b <= a for a, b in zip(L_list, L_list[1:])):
        raise ValueError("L_list must be ascending and positive")
    if fixed_part_volume <= 0:
        raise ValueError("fixed_part_volume must be positive")
    rows = []
    for L in L_list:
        mu = cylinder_spectrum(L, n - 1, p).first_positive()
        V = fixed_part_volume + L * sphere_volume(n - 1)
        rows.append({"L": L, "mu": mu, "V": V, "product": V ** (2.0 / n) * mu})
    return rows
