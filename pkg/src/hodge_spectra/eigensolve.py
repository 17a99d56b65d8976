"""Exact-form spectra and full p-form spectra of the Whitney Hodge Laplacian.

The exact p-form eigenvalues are the positive eigenvalues of the pencil
(K_{p-1}, M_{p-1}) on (p-1)-cochains. The full p-spectrum is assembled as
the b_p harmonic zeros plus the merge of the exact p-list and the exact
(p+1)-list (coexact p-forms are d* of exact (p+1)-forms).

Small pencils are solved densely. Large ones go through a Hodge Laplacian
on (p-1)-forms whose kernel is only the b_{p-1} harmonic fields, so the
closed-cochain kernel of K_{p-1} never has to be resolved: the exact mixed
form with a sparse LU factorization (shift-invert Lanczos) up to three
dimensions, and a penalized form with block LOBPCG and an auxiliary-space
preconditioner on 4D tori, where LU fill is prohibitive.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
import math
import time
import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .assembly import stiffness, whitney_mass
from .complex import SimplicialComplex, betti, coboundary, coboundary_rank, kernel_dimension, minimal_image
from .metric import MetricField, flat_metric

DENSE_LIMIT = 2000
SHIFT = -1.0
KERNEL_RTOL = 1e-8
CLUSTER_RTOL = 1e-6
SOLVER_TOL = 1e-9
MAX_ITER = 10_000
# penalized operator K_q + t M D diag(M_{q-1})^-1 D^T M. t = 1 matches the
# componentwise Laplacian the preconditioner models but lets spurious exact
# values fall below the wanted coexact ones; t = 2 keeps them above
PENALTY = 2.0
SMOOTHING_SWEEPS = 2
LOBPCG_CHUNK = 40

HARMONIC, EXACT, COEXACT = "harmonic", "exact", "coexact"


class SpectrumError(RuntimeError):
    pass


class KernelMismatch(SpectrumError):
    pass


class ConvergenceError(SpectrumError):
    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = residuals


@dataclass(frozen=True)
class SpectrumRecord:
    eigenvalue: float
    cls: str
    multiplicity: int


@dataclass
class SpectrumTable:
    degree: int
    records: list[SpectrumRecord]
    metadata: dict = field(default_factory=dict)

    def values(self, cls: str | None = None, positive_only: bool = False) -> np.ndarray:
        out = []
        for r in self.records:
            if cls is not None and r.cls != cls:
                continue
            if positive_only and r.cls == HARMONIC:
                continue
            out += [r.eigenvalue] * r.multiplicity
        return np.array(out)

    def positive(self) -> np.ndarray:
        """lambda_{1,p} <= lambda_{2,p} <= ... (with multiplicity)."""
        return np.sort(self.values(positive_only=True), kind="stable")

    def eigenvalue(self, k: int) -> float:
        pos = self.positive()
        if not 1 <= k <= len(pos):
            raise SpectrumError(f"table for p={self.degree} holds {len(pos)} positive values, asked for k={k}")
        return float(pos[k - 1])

    @property
    def harmonic_count(self) -> int:
        return sum(r.multiplicity for r in self.records if r.cls == HARMONIC)

    def rows(self) -> list[tuple[int, int, float, str, int]]:
        """(p, k, lambda, class, multiplicity) with k the 1-based index of the first copy."""
        out, k = [], 0
        for r in self.records:
            if r.cls == HARMONIC:
                out.append((self.degree, 0, 0.0, r.cls, r.multiplicity))
                continue
            out.append((self.degree, k + 1, r.eigenvalue, r.cls, r.multiplicity))
            k += r.multiplicity
        return out

    def to_csv(self, header: bool = True) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if header:
            w.writerow(["p", "k", "lambda", "class", "multiplicity"])
        for p, k, lam, cls, mult in self.rows():
            w.writerow([p, k, repr(float(lam)), cls, mult])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps({
            "p": self.degree,
            "records": [
                {"lambda": r.eigenvalue, "class": r.cls, "multiplicity": r.multiplicity}
                for r in self.records
            ],
            "metadata": self.metadata,
        }, sort_keys=True)


def cluster(values, rtol: float = CLUSTER_RTOL) -> list[tuple[float, int]]:
    """Group sorted values whose relative gap is below rtol: (mean, count) pairs."""
    values = np.sort(np.asarray(values, dtype=float))
    out: list[list[float]] = []
    for v in values:
        if out and abs(v - out[-1][-1]) <= rtol * max(abs(v), abs(out[-1][-1])):
            out[-1].append(v)
        else:
            out.append([v])
    return [(float(np.mean(c)), len(c)) for c in out]


@dataclass
class _Pencil:
    K: sp.csr_matrix  # K_{q}
    M: sp.csr_matrix  # M_{q}
    M_lower: sp.csr_matrix | None  # M_{q-1}
    D_lower: sp.csr_matrix | None  # D_{q-1}


def _pencil(K: SimplicialComplex, g: MetricField, q: int, masses: dict | None = None) -> _Pencil:
    masses = {} if masses is None else masses

    def mass(p):
        if p not in masses:
            masses[p] = whitney_mass(K, g, p)
        return masses[p]

    Kq = stiffness(K, g, q, mass(q + 1)).matrix
    Mq = mass(q).matrix
    if q == 0:
        return _Pencil(Kq, Mq, None, None)
    return _Pencil(Kq, Mq, mass(q - 1).matrix, coboundary(K, q - 1).matrix.astype(float))


def rayleigh_scale(A: sp.spmatrix, B: sp.spmatrix) -> float:
    """max_i A_ii / B_ii, a Rayleigh-quotient lower estimate of lambda_max."""
    a, b = A.diagonal(), B.diagonal()
    return float(np.max(a / b)) if len(a) else 1.0


def exact_form_spectrum(
    K: SimplicialComplex,
    g: MetricField,
    p: int,
    count: int,
    *,
    method: str = "auto",
    seed: int = 0,
    masses: dict | None = None,
    info: dict | None = None,
    initial: np.ndarray | None = None,
) -> np.ndarray:
    """Smallest ``count`` eigenvalues of Delta_p on exact p-forms (with multiplicity).

    ``method`` is "dense", "sparse" (LU shift-invert), "iterative" (LOBPCG,
    flat tori only) or "auto". ``initial`` optionally seeds the iterative
    block, e.g. with ``info["basis"]`` from a solve on a nearby metric.
    """
    if not 1 <= p <= K.n:
        raise ValueError(f"exact forms need p in 1..{K.n}")
    if count < 1:
        raise ValueError("count must be >= 1")
    q = p - 1
    pencil = _pencil(K, g, q, masses)
    dim = pencil.M.shape[0]
    closed = kernel_dimension(K, q)
    if count + closed > dim:
        raise SpectrumError(f"only {dim - closed} exact {p}-form eigenvalues exist, asked for {count}")
    if method == "auto":
        method = choose_method(K, q, dim)
    info = {} if info is None else info
    t0 = time.perf_counter()
    if method == "dense":
        vals = _dense_exact(K, pencil, q, info)
    elif method == "sparse":
        vals = _sparse_exact(K, pencil, q, count, seed, info)
    elif method == "iterative":
        vals = _iterative_exact(K, g, pencil, q, count, seed, info, initial)
    else:
        raise ValueError(f"unknown method {method!r}")
    info["seconds"] = time.perf_counter() - t0
    info["method"] = method
    if len(vals) < count:
        raise SpectrumError(f"solver returned {len(vals)} exact values, needed {count}")
    return np.asarray(vals[:count])


def choose_method(K: SimplicialComplex, q: int, dim: int) -> str:
    """Dense below DENSE_LIMIT; LU up to 3D and for functions; LOBPCG on larger 4D tori."""
    if dim <= DENSE_LIMIT:
        return "dense"
    if K.n <= 3 or q == 0 or K.periods is None:
        return "sparse"
    return "iterative"


def _dense_exact(K, pencil: _Pencil, q: int, info: dict) -> np.ndarray:
    w = scipy.linalg.eigh(pencil.K.toarray(), pencil.M.toarray(), eigvals_only=True)
    threshold = KERNEL_RTOL * max(float(w[-1]), 1e-300)
    zeros = int(np.sum(w < threshold))
    expected = kernel_dimension(K, q)
    info.update(kernel_count=zeros, kernel_expected=expected, kernel_threshold=threshold)
    if zeros != expected:
        raise KernelMismatch(
            f"dense solve found {zeros} kernel eigenvalues of (K_{q}, M_{q}), rank oracle says {expected}"
        )
    return w[zeros:]


def _mixed_matrix(pencil: _Pencil, shift: float) -> sp.csc_matrix:
    """[[-M_{q-1}, D^T M_q], [M_q D, K_q - shift M_q]]."""
    A = (pencil.K - shift * pencil.M).tocsr()
    if pencil.D_lower is None:
        return A.tocsc()
    MD = (pencil.M @ pencil.D_lower).tocsr()
    return sp.bmat([[-pencil.M_lower, MD.T], [MD, A]], format="csc")


def _sparse_exact(K, pencil: _Pencil, q: int, count: int, seed: int, info: dict) -> np.ndarray:
    """Coexact part of the mixed Hodge Laplacian on q-forms, by shift-invert Lanczos."""
    n_low = 0 if pencil.D_lower is None else pencil.D_lower.shape[1]
    dim = pencil.M.shape[0]
    harmonic = kernel_dimension(K, q) - coboundary_rank(K, q - 1)
    lu = spla.splu(_mixed_matrix(pencil, SHIFT), permc_spec="COLAMD")

    def solve(x):
        rhs = np.zeros(n_low + dim)
        rhs[n_low:] = x
        return lu.solve(rhs)[n_low:]

    OPinv = spla.LinearOperator((dim, dim), matvec=solve, dtype=float)
    scale = rayleigh_scale(pencil.K, pencil.M)
    threshold = KERNEL_RTOL * scale
    rng = np.random.default_rng(seed)
    v0 = rng.standard_normal(dim)
    # exact (q)-form modes interleave with the wanted ones, so ask for a margin
    k = min(harmonic + 2 * count + 8, dim - 2)
    iterations = 0
    while True:
        try:
            w, V = spla.eigsh(
                pencil.K if pencil.D_lower is None else _HodgeOperator(pencil),
                k=k, M=pencil.M, sigma=SHIFT, which="LM", OPinv=OPinv,
                v0=v0, tol=SOLVER_TOL, maxiter=MAX_ITER,
            )
        except spla.ArpackNoConvergence as exc:
            raise ConvergenceError(f"ARPACK did not converge for q={q}", exc.eigenvalues) from None
        iterations += 1
        order = np.argsort(w)
        w, V = w[order], V[:, order]
        residuals = _residuals(pencil, w, V)
        if np.max(residuals) > 1e-6:
            raise ConvergenceError(f"eigenpair residuals too large for q={q}", residuals)
        zeros = int(np.sum(w < threshold))
        if zeros < harmonic or (zeros > harmonic):
            raise KernelMismatch(
                f"shift-invert found {zeros} harmonic {q}-fields, rank oracle says {harmonic}"
            )
        coexact = _coexact_values(pencil, w[zeros:], V[:, zeros:], complete=(k >= dim - 2))
        if len(coexact) >= count or k >= dim - 2:
            break
        k = min(2 * k, dim - 2)
    info.update(
        kernel_count=zeros, kernel_expected=harmonic, kernel_threshold=threshold,
        requested=k, restarts=iterations, max_residual=float(np.max(residuals)),
    )
    return np.asarray(coexact)


class _HodgeOperator(spla.LinearOperator):
    """K_q + M_q D M_{q-1}^{-1} D^T M_q applied matrix-free (only used for matvecs)."""

    def __init__(self, pencil: _Pencil):
        super().__init__(float, pencil.K.shape)
        self.p = pencil
        self._mlu = spla.splu(pencil.M_lower.tocsc())

    def _matvec(self, x):
        x = np.ravel(x)
        MD = self.p.M @ (self.p.D_lower @ self._mlu.solve(self.p.D_lower.T @ (self.p.M @ x)))
        return self.p.K @ x + MD


class _PenalizedOperator(spla.LinearOperator):
    """K_q + t M_q D N^-1 D^T M_q with N = diag(M_{q-1}).

    Coexact eigenpairs of (K_q, M_q) satisfy D^T M_q v = 0 and are unchanged;
    exact forms are lifted to positive (spurious) values with no K_q energy;
    the kernel is exactly the harmonic fields.
    """

    def __init__(self, pencil: _Pencil, penalty: float = PENALTY):
        super().__init__(float, pencil.K.shape)
        self.K = pencil.K
        self.MD = (pencil.M @ pencil.D_lower).tocsr()
        self.MDt = self.MD.T.tocsr()
        self.weight = penalty / pencil.M_lower.diagonal()

    def _matmat(self, X):
        Y = self.MDt @ X
        Y = Y * (self.weight[:, None] if Y.ndim == 2 else self.weight)
        return self.K @ X + self.MD @ Y

    def _matvec(self, x):
        return self._matmat(np.ravel(x))

    def diagonal(self) -> np.ndarray:
        return self.K.diagonal() + np.asarray(self.MD.multiply(self.MD) @ self.weight).ravel()


class _AuxiliaryPreconditioner(spla.LinearOperator):
    """Approximate inverse of A + sigma M for Whitney q-forms on a flat torus.

    Symmetric two-level scheme: damped Jacobi sweeps on the Whitney space and
    an exact correction in the space of continuous piecewise-linear q-form
    fields (one scalar field per coordinate q-vector), interpolated onto
    Whitney degrees of freedom by integrating over each q-simplex. The
    auxiliary operator is the scalar P1 Laplacian plus mass with the
    per-simplex conformal weights of q-forms.
    """

    def __init__(self, K: SimplicialComplex, g: MetricField, q: int, A: _PenalizedOperator, M, sigma: float = 1.0,
                 sweeps: int = SMOOTHING_SWEEPS, seed: int = 0):
        super().__init__(float, A.shape)
        n = K.n
        self.A, self.M, self.sigma, self.sweeps = A, M, sigma, sweeps
        self.diag = A.diagonal() + sigma * M.diagonal()
        faces = K.simplices[q]
        edges = minimal_image(K.chart[faces[:, 1:]] - K.chart[faces[:, :1]], K.periods)
        self.components = list(itertools.combinations(range(n), q))
        nv = K.num_vertices
        rows, cols, vals = [], [], []
        for ci, I in enumerate(self.components):
            # integral of dx_I over the simplex, shared equally by its q+1 vertex values
            coef = np.linalg.det(edges[:, :, list(I)]) / math.factorial(q) / (q + 1)
            for a in range(q + 1):
                rows.append(np.arange(len(faces)))
                cols.append(ci * nv + faces[:, a])
                vals.append(coef)
        self.Pi = sp.csr_matrix(
            (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
            shape=(len(faces), len(self.components) * nv),
        )
        self.PiT = self.Pi.T.tocsr()
        flat = flat_metric(K)
        s = (np.linalg.det(g.gram) / np.linalg.det(flat.gram)) ** (1.0 / n)
        # P1 stiffness scales like s^(n/2-1), P1 mass like s^(n/2); match the q-form weights
        w_stiff = s ** ((n / 2 - q - 1) / (n / 2 - 1))
        w_mass = s ** ((n / 2 - q) / (n / 2))
        L0 = stiffness(K, MetricField(K, flat.gram * w_stiff[:, None, None]), 0).matrix
        L0 = L0 + sigma * whitney_mass(K, MetricField(K, flat.gram * w_mass[:, None, None]), 0).matrix
        self.nv = nv
        self.aux = spla.splu(sp.csc_matrix(L0))
        rng = np.random.default_rng(seed)
        y = rng.standard_normal(A.shape[0])
        rho = 1.0
        for _ in range(30):
            y = self._shifted(y) / self.diag
            rho = float(np.linalg.norm(y))
            y /= rho
        self.omega = 1.0 / rho

    def _shifted(self, X):
        return self.A @ X + self.sigma * (self.M @ X)

    def _aux_solve(self, R):
        k = len(self.components)
        R = R.reshape(k, self.nv, -1)
        out = np.concatenate([self.aux.solve(np.ascontiguousarray(R[i])) for i in range(k)])
        return out.reshape(k * self.nv, -1)

    def _matmat(self, R):
        D = self.diag[:, None]
        X = self.omega * R / D
        for _ in range(self.sweeps - 1):
            X = X + self.omega * (R - self._shifted(X)) / D
        X = X + self.Pi @ self._aux_solve(self.PiT @ (R - self._shifted(X)))
        for _ in range(self.sweeps):
            X = X + self.omega * (R - self._shifted(X)) / D
        return X

    def _matvec(self, r):
        return self._matmat(np.ravel(r)[:, None]).ravel()


def _iterative_exact(K, g, pencil: _Pencil, q: int, count: int, seed: int, info: dict, initial) -> np.ndarray:
    """Coexact part of the penalized Hodge operator on q-forms by preconditioned block LOBPCG."""
    if K.periods is None or pencil.D_lower is None:
        raise SpectrumError("the iterative solver needs a flat torus chart and q >= 1")
    dim = pencil.M.shape[0]
    harmonic = kernel_dimension(K, q) - coboundary_rank(K, q - 1)
    A = _PenalizedOperator(pencil)
    P = _AuxiliaryPreconditioner(K, g, q, A, pencil.M, seed=seed)
    rng = np.random.default_rng(seed)
    block = min(harmonic + max(2 * count, 16) + 8, dim // 4)
    X = rng.standard_normal((dim, block))
    if initial is not None:
        m = min(initial.shape[1], block)
        X[:, :m] = initial[:, :m]
    scale = rayleigh_scale(pencil.K, pencil.M)
    threshold = KERNEL_RTOL * scale
    iterations = 0
    while True:
        with warnings.catch_warnings():
            # convergence is judged below with our own residual measure
            warnings.simplefilter("ignore")
            w, V = spla.lobpcg(A, X, B=pencil.M, M=P, largest=False, tol=1e-300, maxiter=LOBPCG_CHUNK)
        iterations += LOBPCG_CHUNK
        order = np.argsort(w)
        w, V = w[order], V[:, order]
        residuals = _penalized_residuals(A, pencil.M, w, V)
        zeros = int(np.sum(w < threshold))
        # only a converged prefix of Ritz pairs is used; the cluster straddling
        # its end (or the block edge) is dropped
        m = int(np.argmin(residuals < SOLVER_TOL)) if np.any(residuals >= SOLVER_TOL) else len(w)
        kept = _complete_clusters(w[: m + 1], zeros) if m < len(w) else _complete_clusters(w, zeros)
        if m >= zeros and kept:
            if zeros != harmonic:
                raise KernelMismatch(f"LOBPCG found {zeros} harmonic {q}-fields, rank oracle says {harmonic}")
            coexact = _coexact_values(pencil, w[kept], V[:, kept], complete=True)
            if len(coexact) >= count:
                break
            if m == len(w):
                if block >= dim // 4:
                    raise SpectrumError(f"LOBPCG block reached {block} without {count} coexact values")
                grow = min(block, dim // 4 - block)
                X = np.hstack([V, rng.standard_normal((dim, grow))])
                block += grow
                continue
        if iterations >= MAX_ITER:
            raise ConvergenceError(f"LOBPCG did not converge for q={q} in {iterations} iterations", residuals)
        X = V
    info.update(
        kernel_count=zeros, kernel_expected=harmonic, kernel_threshold=threshold, block=block,
        iterations=iterations, max_residual=float(np.max(residuals[: kept[-1] + 1])), basis=V,
    )
    return np.asarray(coexact)


def _complete_clusters(w, start: int) -> list[int]:
    """Indices from ``start`` up to (excluding) the last cluster, which may be cut by the block edge."""
    idx = list(range(start, len(w)))
    while idx and abs(w[idx[-1]] - w[-1]) <= CLUSTER_RTOL * max(abs(w[-1]), 1e-300):
        idx.pop()
    return idx


def _penalized_residuals(A, M, w, V) -> np.ndarray:
    MV = M @ V
    R = A @ V - MV * w
    return np.linalg.norm(R, axis=0) / ((np.abs(w) + abs(SHIFT)) * np.linalg.norm(MV, axis=0))


def _residuals(pencil: _Pencil, w, V) -> np.ndarray:
    A = _HodgeOperator(pencil) if pencil.D_lower is not None else pencil.K
    out = []
    for i in range(len(w)):
        v = V[:, i]
        Mv = pencil.M @ v
        r = A @ v - w[i] * Mv
        out.append(np.linalg.norm(r) / ((abs(w[i]) + abs(SHIFT)) * np.linalg.norm(Mv)))
    return np.array(out)


def _coexact_values(pencil: _Pencil, w, V, complete: bool) -> list[float]:
    """Split positive eigenvalue clusters into exact and coexact parts.

    For an M-orthonormal basis u_i of a cluster with eigenvalue lam, the number
    of coexact (closed-complement) modes is sum_i u_i^T K_q u_i / lam.
    The last cluster may be cut off by the Krylov window and is dropped unless
    the whole space was computed.
    """
    groups: list[list[int]] = []
    for i, v in enumerate(w):
        if groups and abs(v - w[groups[-1][-1]]) <= CLUSTER_RTOL * max(v, w[groups[-1][-1]]):
            groups[-1].append(i)
        else:
            groups.append([i])
    if groups and not complete:
        groups = groups[:-1]
    out: list[float] = []
    for idx in groups:
        U = V[:, idx]
        gram = U.T @ (pencil.M @ U)
        energy = U.T @ (pencil.K @ U)
        lam = float(np.mean(w[idx]))
        frac = float(np.trace(np.linalg.solve(gram, energy))) / lam
        n_coexact = int(round(frac))
        if abs(frac - n_coexact) > 1e-3:
            raise SpectrumError(f"cluster at {lam:.6g} splits into a non-integer coexact count {frac:.4f}")
        out += [float(w[i]) for i in idx[:n_coexact]]
    return out


def full_spectrum(
    K: SimplicialComplex,
    g: MetricField,
    p: int,
    count: int,
    *,
    method: str = "auto",
    seed: int = 0,
    masses: dict | None = None,
) -> SpectrumTable:
    """b_p harmonic zeros followed by the merged exact (degree p) and coexact (degree p+1 exact) lists."""
    if not 0 <= p <= K.n:
        raise ValueError(f"p must be in 0..{K.n}")
    masses = {} if masses is None else masses
    meta: dict = {"tolerance": SOLVER_TOL, "cluster_rtol": CLUSTER_RTOL, "seed": seed}
    entries: list[tuple[float, str]] = []
    if p >= 1:
        info: dict = {}
        exact = exact_form_spectrum(K, g, p, _available(K, p, count), method=method, seed=seed, masses=masses, info=info)
        entries += [(v, EXACT) for v in exact]
        meta["exact"] = info
    if p < K.n:
        info = {}
        coexact = exact_form_spectrum(K, g, p + 1, _available(K, p + 1, count), method=method, seed=seed, masses=masses, info=info)
        entries += [(v, COEXACT) for v in coexact]
        meta["coexact"] = info
    entries.sort(key=lambda e: (e[0], e[1] != EXACT))
    entries = entries[:count]
    b = betti(K)[p]
    records = [SpectrumRecord(0.0, HARMONIC, b)] if b else []
    for cls in (EXACT, COEXACT):
        for value, mult in cluster([v for v, c in entries if c == cls]):
            records.append(SpectrumRecord(value, cls, mult))
    records.sort(key=lambda r: (r.cls != HARMONIC, r.eigenvalue, r.cls != EXACT))
    return SpectrumTable(p, records, meta)


def _available(K: SimplicialComplex, p: int, count: int) -> int:
    """Number of exact p-form eigenvalues that exist, capped at count."""
    return min(count, K.count(p - 1) - kernel_dimension(K, p - 1))


def gap(table_a: SpectrumTable, k: int, table_b: SpectrumTable, l: int) -> float:
    """lambda_{k, p_a} - lambda_{l, p_b}."""
    return table_a.eigenvalue(k) - table_b.eigenvalue(l)


def hodge_spectrum_dense(K: SimplicialComplex, g: MetricField, p: int) -> np.ndarray:
    """All eigenvalues of the full Whitney Hodge Laplacian on p-forms (dense mixed form).

    Eliminating the (p-1)-form variable of the mixed problem gives the pencil
    (K_p + M_p D M_{p-1}^{-1} D^T M_p, M_p). Independent of the exact-form
    decomposition used by full_spectrum.
    """
    Mp = whitney_mass(K, g, p).toarray()
    A = stiffness(K, g, p).toarray() if p < K.n else np.zeros_like(Mp)
    if p > 0:
        Ml = whitney_mass(K, g, p - 1).toarray()
        MD = Mp @ coboundary(K, p - 1).toarray().astype(float)
        A = A + MD @ np.linalg.solve(Ml, MD.T)
    A = 0.5 * (A + A.T)
    return scipy.linalg.eigh(A, Mp, eigvals_only=True)
