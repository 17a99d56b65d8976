"""Piecewise-constant Riemannian metrics on simplicial complexes.

A metric is one symmetric positive-definite Gram matrix per top simplex, taken
in the edge basis v_i - v_0 (i = 1..n) of the sorted vertex tuple. Conformal
factors are per-vertex fields, averaged over the vertices of each top simplex.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .complex import SimplicialComplex, minimal_image

INNER_RADIUS = 1.0
OUTER_RADIUS = 2.0


class MetricError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class MetricField:
    complex: SimplicialComplex
    gram: np.ndarray  # (num_top, n, n)

    def __post_init__(self):
        n = self.complex.n
        if self.gram.shape != (self.complex.count(n), n, n):
            raise MetricError(f"gram array has shape {self.gram.shape}")

    @property
    def n(self) -> int:
        return self.complex.n

    def simplex_volumes(self) -> np.ndarray:
        det = np.linalg.det(self.gram)
        if np.any(det <= 0):
            bad = int(np.argmin(det))
            raise MetricError(f"degenerate top simplex {bad}: det(Gram) = {det[bad]:.3e}")
        return np.sqrt(det) / math.factorial(self.n)

    def scaled(self, c: float) -> "MetricField":
        return MetricField(self.complex, self.gram * c)

    def is_positive_definite(self) -> bool:
        return bool(np.all(np.linalg.eigvalsh(self.gram) > 0))

    def to_json(self) -> dict:
        rows, cols = np.tril_indices(self.n)
        return {
            "dimension": self.n,
            "num_simplices": len(self.gram),
            "gram_lower": self.gram[:, rows, cols].tolist(),
        }

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json()))

    @classmethod
    def from_json(cls, K: SimplicialComplex, doc: dict) -> "MetricField":
        n = K.n
        lower = np.asarray(doc["gram_lower"], dtype=float)
        rows, cols = np.tril_indices(n)
        gram = np.zeros((len(lower), n, n))
        gram[:, rows, cols] = lower
        gram[:, cols, rows] = lower
        return cls(K, gram)


def flat_metric(K: SimplicialComplex) -> MetricField:
    """Euclidean metric from chart coordinates (tori) or the embedding (spheres)."""
    n = K.n
    if K.chart is not None:
        edges = K.edge_vectors()
    elif K.vertices is not None:
        pts = K.vertices[K.simplices[n]]
        edges = pts[:, 1:, :] - pts[:, :1, :]
    else:
        raise MetricError("complex has neither a flat chart nor an embedding")
    gram = np.einsum("sik,sjk->sij", edges, edges)
    g = MetricField(K, gram)
    g.simplex_volumes()  # raises on degenerate simplices
    return g


def volume(K: SimplicialComplex, g: MetricField) -> float:
    if g.complex is not K and g.complex.simplices is not K.simplices:
        raise MetricError("metric belongs to a different complex")
    return float(np.sum(g.simplex_volumes()))


def normalize_volume(K: SimplicialComplex, g: MetricField) -> tuple[MetricField, float]:
    """Rescale to unit volume; returns the metric and the scale V^(-2/n)."""
    V = volume(K, g)
    scale = V ** (-2.0 / K.n)
    return g.scaled(scale), scale


def apply_conformal(base: MetricField, factor) -> MetricField:
    """Multiply each top simplex's Gram matrix by the mean of the factor over its vertices.

    ``factor`` is a per-vertex array or a positive scalar (constant field).
    """
    K = base.complex
    if np.isscalar(factor):
        if factor <= 0:
            raise MetricError("conformal factor must be positive")
        return base.scaled(float(factor))
    factor = np.asarray(factor, dtype=float)
    if factor.shape != (K.num_vertices,):
        raise MetricError(f"factor field has shape {factor.shape}, expected ({K.num_vertices},)")
    if np.any(~(factor > 0)):
        raise MetricError("conformal factor must be positive at every vertex")
    per_simplex = factor[K.simplices[K.n]].mean(axis=1)
    return MetricField(K, base.gram * per_simplex[:, None, None])


def quasi_isometry_ratio(g1: MetricField, g2: MetricField) -> float:
    """Smallest alpha >= 1 with alpha^-2 g2 <= g1 <= alpha^2 g2 on every simplex."""
    if g1.gram.shape != g2.gram.shape:
        raise MetricError("metrics live on different complexes")
    if np.array_equal(g1.gram, g2.gram):
        return 1.0
    chol = np.linalg.cholesky(g2.gram)
    inv = np.linalg.inv(chol)
    C = inv @ g1.gram @ np.swapaxes(inv, 1, 2)
    ev = np.linalg.eigvalsh(0.5 * (C + np.swapaxes(C, 1, 2)))
    alpha2 = max(float(ev[:, -1].max()), float((1.0 / ev[:, 0]).max()), 1.0)
    return math.sqrt(alpha2)


@dataclass(frozen=True)
class RadialProfile:
    """Cigar parameters: length L and centre x_0 in flat-chart coordinates.

    The conformal factor is f_L on the unit ball (a round cap of radius
    ``exp(-L)`` glued to a cylinder of length L), the interpolant h on the
    annulus 1 <= r <= 2 and 1 outside.
    """

    L: float
    center: tuple[float, ...] = field(default=())

    def __post_init__(self):
        if not self.L >= 0:
            raise MetricError("cigar length L must be nonnegative")

    def check_embeds(self, K: SimplicialComplex) -> None:
        if K.periods is None:
            raise MetricError("cigar profile needs a flat torus chart")
        if len(self.center) != K.n:
            raise MetricError(f"centre has {len(self.center)} coordinates, complex is {K.n}-dimensional")
        if 2 * OUTER_RADIUS >= float(np.min(K.periods)):
            raise MetricError(
                f"ball of radius {OUTER_RADIUS} does not embed in a torus with periods {K.periods.tolist()}"
            )


def smoothstep5(s):
    return s * s * s * (10.0 + s * (-15.0 + 6.0 * s))


def interpolant(r):
    """1/r^2 on [1, 4/3], 1 on [5/3, 2], quintic smoothstep blend in between."""
    r = np.asarray(r, dtype=float)
    s = np.clip((r - 4.0 / 3.0) * 3.0, 0.0, 1.0)
    sig = smoothstep5(s)
    return (1.0 - sig) / (r * r) + sig


def eval_profile(P: RadialProfile, r):
    """Radial conformal factor of the cigar metric at Euclidean distance r from the centre."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise MetricError("radius must be nonnegative")
    L = P.L
    cap = math.exp(-L)
    e2L = math.exp(2.0 * L)
    with np.errstate(divide="ignore"):
        out = np.where(
            r <= cap,
            4.0 * e2L / (1.0 + e2L * r * r) ** 2,
            np.where(
                r <= INNER_RADIUS,
                1.0 / np.where(r > 0, r * r, 1.0),
                np.where(r <= OUTER_RADIUS, interpolant(np.maximum(r, INNER_RADIUS)), 1.0),
            ),
        )
    return out if out.ndim else float(out)


def chart_distance(K: SimplicialComplex, center) -> np.ndarray:
    diff = K.chart - np.asarray(center, dtype=float)
    if K.periods is not None:
        diff = minimal_image(diff, K.periods)
    return np.linalg.norm(diff, axis=1)


def cigar_factor_field(K: SimplicialComplex, P: RadialProfile) -> np.ndarray:
    P.check_embeds(K)
    return eval_profile(P, chart_distance(K, P.center))


def grading_map(s, L: float, radius: float = INNER_RADIUS):
    """Exponential radial remap of [0, radius] onto itself.

    rho(s) = radius * (exp(L (s/radius - 1)) - exp(-L)) / (1 - exp(-L)). In the
    cylinder region log(rho) is affine in s, so the deformed radial spacing
    (d rho / rho) is uniform; near the centre the spacing is ~ L exp(-L),
    the size of the cap.
    """
    s = np.asarray(s, dtype=float)
    if L <= 0:
        return s.copy()
    t = s / radius
    return radius * (np.exp(L * (t - 1.0)) - math.exp(-L)) / (1.0 - math.exp(-L))


def graded_torus(K: SimplicialComplex, P: RadialProfile, radius: float = INNER_RADIUS) -> SimplicialComplex:
    """Move vertices within ``radius`` of the centre radially by ``grading_map``.

    The result triangulates the same flat torus; simplex orientations are
    checked so that no element is inverted.
    """
    P.check_embeds(K)
    center = np.asarray(P.center, dtype=float)
    diff = minimal_image(K.chart - center, K.periods)
    dist = np.linalg.norm(diff, axis=1)
    inside = (dist < radius) & (dist > 0)
    new = K.chart.copy()
    ratio = grading_map(dist[inside], P.L, radius) / dist[inside]
    new[inside] = center + diff[inside] * ratio[:, None]
    graded = K.with_chart(new)
    before = np.sign(np.linalg.det(K.edge_vectors()))
    after = np.sign(np.linalg.det(graded.edge_vectors()))
    if np.any(before != after):
        raise MetricError(
            f"radial grading inverts {int(np.sum(before != after))} simplices; "
            "refine the mesh or lower L"
        )
    return graded
