"""Whitney-form mass matrices and exact-form stiffness operators.

For a top simplex with barycentric coordinates l_0..l_n the Whitney form of a
p-face s = (s_0..s_p) is

    w_s = p! sum_j (-1)^j l_{s_j} dl_{s_0} ^ .. (omit s_j) .. ^ dl_{s_p}.

With a constant metric the element mass matrix is exact:

    int <w_s, w_t> = p!^2 vol sum_{j,k} (-1)^{j+k} c(s_j, t_k) det B[s\\s_j, t\\t_k]

where B = <dl_a, dl_b> and c(a, b) = (1 + [a == b]) / ((n+1)(n+2)) is the
integral of l_a l_b divided by the volume.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.sparse as sp

from .complex import SimplicialComplex, SparseOperator, _csr, coboundary
from .metric import MetricField

CHUNK = 16384


class AssemblyError(RuntimeError):
    pass


@dataclass(frozen=True)
class FormSpace:
    complex: SimplicialComplex
    degree: int

    def __post_init__(self):
        if not 0 <= self.degree <= self.complex.n:
            raise ValueError(f"degree must be in 0..{self.complex.n}")

    @property
    def dimension(self) -> int:
        return self.complex.count(self.degree)


@lru_cache(maxsize=None)
def _whitney_weights(n: int, p: int) -> tuple[np.ndarray, list[tuple[int, ...]]]:
    """Constant tensor W[a, b, I, J] with M_local = vol * sum_IJ W[a,b,I,J] det B[I,J]."""
    faces = list(itertools.combinations(range(n + 1), p + 1))
    subsets = list(itertools.combinations(range(n + 1), p))
    where = {s: i for i, s in enumerate(subsets)}
    W = np.zeros((len(faces), len(faces), len(subsets), len(subsets)))
    norm = math.factorial(p) ** 2 / ((n + 1) * (n + 2))
    for a, s in enumerate(faces):
        for b, t in enumerate(faces):
            for j, sj in enumerate(s):
                I = where[s[:j] + s[j + 1:]]
                for k, tk in enumerate(t):
                    J = where[t[:k] + t[k + 1:]]
                    W[a, b, I, J] += (-1) ** (j + k) * norm * (2.0 if sj == tk else 1.0)
    return W, subsets


def barycentric_gradient_gram(gram: np.ndarray) -> np.ndarray:
    """<dl_a, dl_b> for a, b = 0..n given edge-basis Gram matrices (batched)."""
    n = gram.shape[-1]
    inv = np.linalg.inv(gram)
    P = np.vstack([-np.ones((1, n)), np.eye(n)])
    return P @ inv @ P.T


def _minors(B: np.ndarray, subsets: list[tuple[int, ...]]) -> np.ndarray:
    p = len(subsets[0])
    if p == 0:
        return np.ones((B.shape[0], 1, 1))
    idx = np.array(subsets)
    sub = B[:, idx[:, None, :, None], idx[None, :, None, :]]  # (S, nI, nJ, p, p)
    if p == 1:
        return sub[..., 0, 0]
    if p == 2:
        return sub[..., 0, 0] * sub[..., 1, 1] - sub[..., 0, 1] * sub[..., 1, 0]
    return np.linalg.det(sub)


def element_mass(gram: np.ndarray, p: int) -> np.ndarray:
    """(S, C(n+1,p+1), C(n+1,p+1)) element mass matrices for constant metrics."""
    n = gram.shape[-1]
    W, subsets = _whitney_weights(n, p)
    vol = np.sqrt(np.linalg.det(gram)) / math.factorial(n)
    B = barycentric_gradient_gram(gram)
    local = np.einsum("abIJ,sIJ->sab", W, _minors(B, subsets), optimize=True)
    local *= vol[:, None, None]
    return 0.5 * (local + np.swapaxes(local, 1, 2))


def whitney_mass(K: SimplicialComplex, g: MetricField, p: int) -> SparseOperator:
    """Galerkin mass matrix M_p of the Whitney p-forms."""
    n = K.n
    if not 0 <= p <= n:
        raise ValueError(f"p must be in 0..{n}")
    if g.gram.shape[0] != K.count(n):
        raise AssemblyError("metric does not match the complex")
    faces = K.top_faces(p)
    m = faces.shape[1]
    rows = np.repeat(faces, m, axis=1).ravel()
    cols = np.tile(faces, (1, m)).ravel()
    vals = np.concatenate([
        element_mass(g.gram[i:i + CHUNK], p).reshape(-1)
        for i in range(0, len(faces), CHUNK)
    ])
    mat = _csr(rows, cols, vals, (K.count(p), K.count(p)))
    # exact symmetry (duplicates are merged in a fixed order, so this is deterministic)
    mat = (0.5 * (mat + mat.T)).tocsr()
    mat.sort_indices()
    return SparseOperator(mat, symmetric=True)


def stiffness(K: SimplicialComplex, g: MetricField, p: int, mass_next: SparseOperator | None = None) -> SparseOperator:
    """K_p = D_p^T M_{p+1} D_p; its kernel is the closed p-cochains."""
    if not 0 <= p < K.n:
        raise ValueError(f"p must be in 0..{K.n - 1}")
    D = coboundary(K, p).matrix.astype(float)
    M = (mass_next or whitney_mass(K, g, p + 1)).matrix
    mat = (D.T @ M @ D).tocsr()
    mat = (0.5 * (mat + mat.T)).tocsr()
    mat.sum_duplicates()
    mat.sort_indices()
    return SparseOperator(mat, symmetric=True)


def check_spd(M: SparseOperator, K: SimplicialComplex | None = None, p: int | None = None) -> None:
    """Raise AssemblyError if M is not positive definite (dense Cholesky, small matrices)."""
    A = M.toarray()
    try:
        np.linalg.cholesky(A)
    except np.linalg.LinAlgError:
        w, v = np.linalg.eigh(A)
        worst = int(np.argmax(np.abs(v[:, 0])))
        where = f" near degree-{p} simplex {worst}" if p is not None else f" near row {worst}"
        raise AssemblyError(f"mass matrix is not SPD (min eigenvalue {w[0]:.3e}){where}") from None


def mass_matrix_market(M: SparseOperator, path) -> None:
    """Write a matrix in Matrix Market coordinate format."""
    import scipy.io

    scipy.io.mmwrite(str(path), sp.coo_matrix(M.matrix), symmetry="symmetric" if M.symmetric else "general")
