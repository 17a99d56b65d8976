"""Oriented simplicial complexes, torus/sphere generators, coboundaries and Betti numbers.

Simplices are stored per degree as lexicographically sorted tables of strictly
increasing vertex tuples. The orientation of a simplex is the one of its sorted
vertex tuple, so every coboundary matrix has entries in {-1, 0, 1}.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np
import scipy.linalg
import scipy.sparse as sp

# rank() switches from exact elimination to pivoted QR above this many nonzeros
EXACT_RANK_NNZ_LIMIT = 4_000_000
NUMERIC_RANK_RTOL = 1e-10


@dataclass(frozen=True)
class SparseOperator:
    """Assembled sparse matrix plus a symmetry flag."""

    matrix: sp.csr_matrix
    symmetric: bool = False

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    @property
    def nrows(self) -> int:
        return self.matrix.shape[0]

    @property
    def ncols(self) -> int:
        return self.matrix.shape[1]

    def entries(self) -> list[tuple[int, int, float]]:
        coo = self.matrix.tocoo()
        order = np.lexsort((coo.col, coo.row))
        return [(int(coo.row[i]), int(coo.col[i]), float(coo.data[i])) for i in order]

    def toarray(self) -> np.ndarray:
        return self.matrix.toarray()

    @property
    def T(self) -> sp.csr_matrix:
        return self.matrix.T.tocsr()

    def __matmul__(self, other):
        if isinstance(other, SparseOperator):
            other = other.matrix
        return self.matrix @ other


def _csr(rows, cols, vals, shape) -> sp.csr_matrix:
    mat = sp.coo_matrix((vals, (rows, cols)), shape=shape).tocsr()
    mat.sum_duplicates()
    mat.sort_indices()
    return mat


@dataclass(frozen=True, eq=False)
class SimplicialComplex:
    """Closed (or bounded) simplicial n-complex with optional geometry.

    ``simplices[q]`` is an int64 array of shape (count, q+1). ``vertices`` holds
    embedding coordinates (spheres), ``chart`` flat-chart coordinates and
    ``periods`` the torus identification lengths.
    """

    dimension: int
    simplices: tuple[np.ndarray, ...]
    vertices: np.ndarray | None = None
    chart: np.ndarray | None = None
    periods: np.ndarray | None = None
    # shared between complexes with identical combinatorics (see with_chart)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if not 1 <= self.dimension <= 4:
            raise ValueError(f"dimension must be in 1..4, got {self.dimension}")
        if len(self.simplices) != self.dimension + 1:
            raise ValueError("need one simplex table per degree 0..n")
        for q, table in enumerate(self.simplices):
            if table.ndim != 2 or table.shape[1] != q + 1:
                raise ValueError(f"degree-{q} table has shape {table.shape}")
            if q and np.any(np.diff(table, axis=1) <= 0):
                raise ValueError(f"degree-{q} simplices must be strictly increasing tuples")

    @property
    def n(self) -> int:
        return self.dimension

    def count(self, q: int) -> int:
        return len(self.simplices[q])

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(len(t) for t in self.simplices)

    @property
    def num_vertices(self) -> int:
        return len(self.simplices[0])

    def euler_characteristic(self) -> int:
        return sum((-1) ** q * c for q, c in enumerate(self.counts))

    def with_chart(self, chart: np.ndarray) -> "SimplicialComplex":
        """Same combinatorics (and cached topology), new flat-chart coordinates."""
        return SimplicialComplex(
            self.dimension, self.simplices, self.vertices,
            np.asarray(chart, dtype=float), self.periods, self._cache,
        )

    def index_of(self, q: int, tuples: np.ndarray) -> np.ndarray:
        """Row indices of the given sorted q-tuples in the q-table (-1 if absent)."""
        keys = _encode(np.asarray(tuples, dtype=np.int64).reshape(-1, q + 1), self.num_vertices)
        table_keys = self._keys(q)
        pos = np.searchsorted(table_keys, keys)
        pos = np.minimum(pos, len(table_keys) - 1)
        found = table_keys[pos] == keys
        return np.where(found, pos, -1).reshape(np.shape(tuples)[:-1])

    def _keys(self, q: int) -> np.ndarray:
        cache = self._cache.setdefault("keys", {})
        if q not in cache:
            keys = _encode(self.simplices[q], self.num_vertices)
            if np.any(np.diff(keys) <= 0):
                raise ValueError(f"degree-{q} table is not lexicographically sorted and unique")
            cache[q] = keys
        return cache[q]

    def top_faces(self, p: int) -> np.ndarray:
        """(num_top, C(n+1, p+1)) indices of the p-faces of every top simplex.

        Local faces are enumerated in ``itertools.combinations`` order of the
        sorted top tuple, so each face keeps its sorted-tuple orientation.
        """
        cache = self._cache.setdefault("top_faces", {})
        if p not in cache:
            top = self.simplices[self.n]
            combos = list(itertools.combinations(range(self.n + 1), p + 1))
            faces = top[:, combos]
            idx = self.index_of(p, faces)
            if np.any(idx < 0):
                raise ValueError(f"missing {p}-faces of top simplices")
            cache[p] = idx
        return cache[p]

    @cached_property
    def top_orientation(self) -> np.ndarray:
        """+1/-1 per top simplex: sign relating its sorted tuple to the global orientation.

        Zeros mark simplices whose geometry could not orient them.
        """
        top = self.simplices[self.n]
        if self.vertices is not None and self.vertices.shape[1] == self.n + 1:
            det = np.linalg.det(self.vertices[top])
        elif self.chart is not None:
            edges = self.edge_vectors()
            det = np.linalg.det(edges)
        else:
            return np.zeros(len(top), dtype=np.int64)
        return np.sign(det).astype(np.int64)

    def edge_vectors(self) -> np.ndarray:
        """Chart edge vectors v_i - v_0 (i=1..n) per top simplex, minimal image on tori."""
        if self.chart is None:
            raise ValueError("complex has no flat chart")
        top = self.simplices[self.n]
        pts = self.chart[top]
        diff = pts[:, 1:, :] - pts[:, :1, :]
        if self.periods is not None:
            diff = minimal_image(diff, self.periods)
        return diff

    def to_json(self) -> dict:
        return {
            "dimension": self.n,
            "vertices": None if self.vertices is None else self.vertices.tolist(),
            "flat_chart": None if self.periods is None else {
                "coordinates": self.chart.tolist(),
                "periods": self.periods.tolist(),
            },
            "simplices": [t.tolist() for t in self.simplices],
        }

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json()))

    @classmethod
    def from_json(cls, doc: dict) -> "SimplicialComplex":
        n = int(doc["dimension"])
        tables = tuple(
            np.asarray(t, dtype=np.int64).reshape(-1, q + 1)
            for q, t in enumerate(doc["simplices"])
        )
        vertices = None if doc.get("vertices") is None else np.asarray(doc["vertices"], float)
        chart = periods = None
        if doc.get("flat_chart") is not None:
            chart = np.asarray(doc["flat_chart"]["coordinates"], float)
            periods = np.asarray(doc["flat_chart"]["periods"], float)
        return cls(n, tables, vertices, chart, periods)

    @classmethod
    def load(cls, path: str | Path) -> "SimplicialComplex":
        return cls.from_json(json.loads(Path(path).read_text()))


def minimal_image(diff: np.ndarray, periods: np.ndarray) -> np.ndarray:
    return diff - periods * np.round(diff / periods)


def _encode(tuples: np.ndarray, base: int) -> np.ndarray:
    width = tuples.shape[-1]
    if width and base ** width >= 2**63:
        raise OverflowError("too many vertices to encode simplex keys in int64")
    keys = np.zeros(tuples.shape[:-1], dtype=np.int64)
    for j in range(width):
        keys = keys * base + tuples[..., j]
    return keys


def from_top_simplices(
    top: np.ndarray,
    num_vertices: int,
    *,
    vertices: np.ndarray | None = None,
    chart: np.ndarray | None = None,
    periods: np.ndarray | None = None,
) -> SimplicialComplex:
    """Close a list of top simplices under taking faces."""
    top = np.sort(np.asarray(top, dtype=np.int64), axis=1)
    n = top.shape[1] - 1
    tables = []
    for q in range(n + 1):
        if q == 0:
            tables.append(np.arange(num_vertices, dtype=np.int64).reshape(-1, 1))
            continue
        combos = list(itertools.combinations(range(n + 1), q + 1))
        faces = top[:, combos].reshape(-1, q + 1)
        tables.append(np.unique(faces, axis=0))
    if len(np.unique(tables[0])) != num_vertices or len(np.unique(top.ravel())) != num_vertices:
        raise ValueError("every vertex must belong to some top simplex")
    if len(tables[n]) != len(top):
        raise ValueError("duplicate top simplices")
    return SimplicialComplex(n, tuple(tables), vertices, chart, periods)


def build_torus(n: int, cells_per_axis: int, side_length: float) -> SimplicialComplex:
    """Kuhn (Freudenthal) triangulation of the flat n-torus.

    ``side_length`` is the edge length of one grid cell, so the torus has period
    ``cells_per_axis * side_length`` along every axis. Each cube is split into
    n! simplices along monotone lattice paths.

    Cost (number of simplices per degree) is ``c^n`` times
    n=2: (1, 3, 2); n=3: (1, 7, 12, 6); n=4: (1, 15, 50, 60, 24).
    """
    if not 1 <= n <= 4:
        raise ValueError("n must be in 1..4")
    if cells_per_axis < 3:
        raise ValueError("cells_per_axis must be >= 3 (periodic identification degenerates)")
    if side_length <= 0:
        raise ValueError("side_length must be positive")
    c = cells_per_axis
    grid = np.array(list(itertools.product(range(c), repeat=n)), dtype=np.int64)

    def vid(idx):
        idx = np.mod(idx, c)
        out = np.zeros(idx.shape[:-1], dtype=np.int64)
        for j in range(n):
            out = out * c + idx[..., j]
        return out

    tops = []
    eye = np.eye(n, dtype=np.int64)
    for perm in itertools.permutations(range(n)):
        path = [np.zeros(n, dtype=np.int64)]
        for axis in perm:
            path.append(path[-1] + eye[axis])
        corners = grid[:, None, :] + np.array(path)[None, :, :]
        tops.append(vid(corners))
    top = np.concatenate(tops, axis=0)
    chart = grid.astype(float) * side_length
    periods = np.full(n, c * side_length)
    return from_top_simplices(top, c**n, chart=chart, periods=periods)


def build_interval(segments: int, length: float = 1.0) -> SimplicialComplex:
    """Path graph on ``segments + 1`` vertices along [0, length] (not periodic)."""
    top = np.stack([np.arange(segments), np.arange(1, segments + 1)], axis=1)
    chart = np.linspace(0.0, length, segments + 1).reshape(-1, 1)
    return from_top_simplices(top, segments + 1, chart=chart)


def build_sphere(m: int, refinement_level: int) -> SimplicialComplex:
    """Boundary of the (m+1)-cross-polytope, edge-midpoint subdivided, on the unit m-sphere.

    Vertices are projected radially after every subdivision level. Tetrahedra
    are split into 4 corner tets plus an inner octahedron cut along its
    shortest diagonal.
    """
    if not 1 <= m <= 3:
        raise ValueError("m must be in 1..3")
    if refinement_level < 0:
        raise ValueError("refinement_level must be >= 0")
    dim = m + 1
    verts = np.concatenate([np.eye(dim), -np.eye(dim)])
    tops = [
        [i if s > 0 else i + dim for i, s in enumerate(signs)]
        for signs in itertools.product((1, -1), repeat=dim)
    ]
    verts = list(map(np.asarray, verts))
    for _ in range(refinement_level):
        tops, verts = _subdivide(tops, verts, m)
        verts = [v / np.linalg.norm(v) for v in verts]
    verts = np.array(verts)
    return from_top_simplices(np.array(tops), len(verts), vertices=verts)


def _subdivide(tops, verts, m):
    verts = list(verts)
    mid: dict[tuple[int, int], int] = {}

    def midpoint(a, b):
        key = (min(a, b), max(a, b))
        if key not in mid:
            mid[key] = len(verts)
            verts.append(0.5 * (verts[a] + verts[b]))
        return mid[key]

    out = []
    for simplex in tops:
        s = sorted(simplex)
        if m == 1:
            a, b = s
            ab = midpoint(a, b)
            out += [[a, ab], [ab, b]]
        elif m == 2:
            a, b, c = s
            ab, ac, bc = midpoint(a, b), midpoint(a, c), midpoint(b, c)
            out += [[a, ab, ac], [b, ab, bc], [c, ac, bc], [ab, ac, bc]]
        else:
            a, b, c, d = s
            mm = {(x, y): midpoint(x, y) for x, y in itertools.combinations(s, 2)}
            out += [
                [a, mm[a, b], mm[a, c], mm[a, d]],
                [b, mm[a, b], mm[b, c], mm[b, d]],
                [c, mm[a, c], mm[b, c], mm[c, d]],
                [d, mm[a, d], mm[b, d], mm[c, d]],
            ]
            # diagonals of the inner octahedron: pairs of opposite edge midpoints
            pairings = [((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))]

            def diag_len(pair):
                (i, j), (k, l) = pair
                return np.linalg.norm(verts[mm[i, j]] - verts[mm[k, l]])

            (i, j), (k, l) = min(pairings, key=diag_len)

            def e(x, y):
                return mm[min(x, y), max(x, y)]

            ring = [e(i, k), e(i, l), e(j, l), e(j, k)]
            for r in range(4):
                out.append([e(i, j), e(k, l), ring[r], ring[(r + 1) % 4]])
    return out, verts


def coboundary(K: SimplicialComplex, q: int) -> SparseOperator:
    """Integer coboundary D_q: q-cochains -> (q+1)-cochains.

    D_q[tau, sigma] = (-1)^j when sigma is tau with its j-th vertex removed.
    """
    if not 0 <= q < K.n:
        raise ValueError(f"q must be in 0..{K.n - 1}")
    cache = K._cache.setdefault("coboundary", {})
    if q not in cache:
        upper = K.simplices[q + 1]
        rows, cols, vals = [], [], []
        for j in range(q + 2):
            faces = np.delete(upper, j, axis=1)
            idx = K.index_of(q, faces)
            if np.any(idx < 0):
                raise ValueError(f"missing faces in degree {q}")
            rows.append(np.arange(len(upper)))
            cols.append(idx)
            vals.append(np.full(len(upper), (-1) ** j, dtype=np.int64))
        mat = _csr(
            np.concatenate(rows), np.concatenate(cols), np.concatenate(vals),
            (len(upper), K.count(q)),
        )
        cache[q] = SparseOperator(mat, symmetric=False)
    return cache[q]


def exact_rank(D: sp.spmatrix) -> int:
    """Rank over the rationals by fraction-free sparse column reduction.

    Columns are reduced against earlier pivots keyed by their largest row index
    (the standard persistence reduction), with integer entries kept primitive.
    """
    csc = sp.csc_matrix(D)
    csc.sort_indices()
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    indptr, indices, data = csc.indptr, csc.indices, csc.data
    for j in range(csc.shape[1]):
        lo, hi = indptr[j], indptr[j + 1]
        if lo == hi:
            continue
        col = {int(i): int(round(v)) for i, v in zip(indices[lo:hi], data[lo:hi]) if v != 0}
        while col:
            low = max(col)
            other = pivots.get(low)
            if other is None:
                pivots[low] = col
                rank += 1
                break
            a, b = other[low], col[low]
            # col <- a*col - b*other eliminates the entry at `low`
            new = {i: a * v for i, v in col.items()}
            for i, v in other.items():
                w = new.get(i, 0) - b * v
                if w:
                    new[i] = w
                else:
                    new.pop(i, None)
            g = 0
            for v in new.values():
                g = math.gcd(g, v)
                if g == 1:
                    break
            col = {i: v // g for i, v in new.items()} if g > 1 else new
    return rank


def numeric_rank(D: sp.spmatrix | np.ndarray, rtol: float = NUMERIC_RANK_RTOL) -> int:
    """Rank from column-pivoted QR: |R_ii| > rtol * |R_00|."""
    A = D.toarray() if sp.issparse(D) else np.asarray(D)
    if A.size == 0:
        return 0
    R = scipy.linalg.qr(A.astype(float), mode="r", pivoting=True)[0]
    diag = np.abs(np.diag(R))
    if diag.size == 0 or diag[0] == 0:
        return 0
    return int(np.sum(diag > rtol * diag[0]))


def rank(D: sp.spmatrix, method: str = "auto") -> int:
    if method == "auto":
        method = "exact" if D.nnz <= EXACT_RANK_NNZ_LIMIT else "numeric"
    if method == "exact":
        return exact_rank(D)
    if method == "numeric":
        return numeric_rank(D)
    raise ValueError(f"unknown rank method {method!r}")


def coboundary_rank(K: SimplicialComplex, q: int, method: str = "auto") -> int:
    """Rank of D_q (0 for q outside 0..n-1), cached per complex and method."""
    if q < 0 or q >= K.n:
        return 0
    cache = K._cache.setdefault("rank", {})
    key = (q, method)
    if key not in cache:
        cache[key] = rank(coboundary(K, q).matrix, method)
    return cache[key]


def betti(K: SimplicialComplex, method: str = "auto") -> list[int]:
    """b_q = dim ker D_q - rank D_{q-1}."""
    return [
        K.count(q) - coboundary_rank(K, q, method) - coboundary_rank(K, q - 1, method)
        for q in range(K.n + 1)
    ]


def kernel_dimension(K: SimplicialComplex, q: int, method: str = "auto") -> int:
    """dim ker D_q (closed q-cochains); all q-cochains when q = n."""
    return K.count(q) - coboundary_rank(K, q, method)


def is_closed_manifold(K: SimplicialComplex) -> bool:
    """Every (n-1)-simplex has two n-cofaces with opposite induced orientations."""
    D = coboundary(K, K.n - 1).matrix.tocsc()
    cofaces = np.diff(D.indptr)
    if np.any(cofaces != 2):
        return False
    orient = K.top_orientation
    if np.any(orient == 0):
        return False
    signed = sp.diags(orient) @ D
    return bool(np.all(np.asarray(signed.sum(axis=0)).ravel() == 0))
