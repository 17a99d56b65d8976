"""Experiment drivers: identity suite, cigar growth, negative control, gap closing.

Every experiment takes an ExperimentConfig (loaded from JSON; all pass/fail
thresholds live there) and returns an ExperimentResult with report rows,
named checks and an overall status. CSV output is deterministic for a fixed
config and seed; wall times go to the JSON summary only.
"""
from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .analytic import cylinder_spectrum, sphere_spectrum, theorem_curve
from .complex import build_sphere, build_torus, betti, coboundary
from .eigensolve import exact_form_spectrum, full_spectrum, hodge_spectrum_dense
from .metric import (
    INNER_RADIUS,
    RadialProfile,
    apply_conformal,
    cigar_factor_field,
    flat_metric,
    graded_torus,
    volume,
)

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"
EXIT_CODES = {PASS: 0, FAIL: 1, INCONCLUSIVE: 2}
EXPERIMENTS = ("identity", "cigar", "negative_control", "gap_closing", "convergence", "sphere_guard")


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    """Parameters of one experiment run.

    ``side_length`` is the total side of the flat torus (the cell size is
    side_length / cells_per_axis). ``center`` defaults to the centre of the
    grid cube nearest the middle of the torus.
    """

    name: str
    n: int = 4
    cells_per_axis: int = 6
    side_length: float = 5.0
    grading: bool = True
    center: list[float] | None = None
    L_schedule: list[float] = field(default_factory=lambda: [0.5, 1.0, 2.0, 3.0])
    degrees: list[int] = field(default_factory=lambda: [2])
    eigen_count: int = 1
    N: int = 3
    seed: int = 0
    method: str = "auto"
    thresholds: dict = field(default_factory=dict)
    output: str | None = None

    def __post_init__(self):
        if self.name not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment {self.name!r}; choose from {', '.join(EXPERIMENTS)}")
        if not 1 <= self.n <= 4:
            raise ConfigError("n must be in 1..4")
        sched = [float(L) for L in self.L_schedule]
        if any(L < 0 for L in sched) or any(b <= a for a, b in zip(sched, sched[1:])):
            raise ConfigError("L_schedule must be ascending and nonnegative")
        self.L_schedule = sched
        if any(not 0 <= p <= self.n for p in self.degrees):
            raise ConfigError(f"degrees must lie in 0..{self.n}")
        if self.eigen_count < 1 or self.N < 0:
            raise ConfigError("eigen_count must be >= 1 and N >= 0")

    def threshold(self, key: str) -> float:
        if key not in self.thresholds:
            raise ConfigError(f"config {self.name!r} lacks threshold {key!r}")
        return self.thresholds[key]

    def cigar_center(self) -> tuple[float, ...]:
        if self.center is not None:
            if len(self.center) != self.n:
                raise ConfigError(f"center needs {self.n} coordinates")
            return tuple(float(x) for x in self.center)
        h = self.side_length / self.cells_per_axis
        return ((self.cells_per_axis // 2 + 0.5) * h,) * self.n

    @classmethod
    def from_dict(cls, doc: dict) -> "ExperimentConfig":
        known = set(cls.__dataclass_fields__)
        unknown = set(doc) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**doc)

    @classmethod
    def load(cls, path: str | Path) -> "ExperimentConfig":
        return cls.from_dict(json.loads(Path(path).read_text()))

    def to_dict(self) -> dict:
        return asdict(self)


def default_config(name: str, **overrides) -> ExperimentConfig:
    """The shipped configuration for an experiment, with optional overrides."""
    text = resources.files("hodge_spectra").joinpath("configs", f"{name}.json").read_text()
    doc = json.loads(text)
    doc.update(overrides)
    return ExperimentConfig.from_dict(doc)


@dataclass
class ReportRow:
    experiment: str
    n: int
    p: int
    L: float
    volume: float
    lambda_exact: float
    lambda_full: float
    product: float
    seconds: float

    def __post_init__(self):
        for key in ("L", "volume", "lambda_exact", "lambda_full", "product", "seconds"):
            v = getattr(self, key)
            if not (math.isfinite(v) and v >= 0):
                raise ValueError(f"report field {key} = {v} is not finite and nonnegative")


@dataclass
class Check:
    name: str
    passed: bool
    measured: float
    tolerance: float
    detail: str = ""


@dataclass
class ExperimentResult:
    name: str
    rows: list[ReportRow] = field(default_factory=list)
    checks: list[Check] = field(default_factory=list)
    status: str = PASS
    summary: dict = field(default_factory=dict)

    def finalize(self) -> "ExperimentResult":
        if self.status != INCONCLUSIVE:
            self.status = PASS if all(c.passed for c in self.checks) else FAIL
        return self

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_csv(self) -> str:
        """Rows without wall time, so reruns are byte-identical."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["experiment", "n", "p", "L", "volume", "lambda_exact", "lambda_full", "product"])
        for r in self.rows:
            w.writerow([r.experiment, r.n, r.p, repr(r.L), repr(r.volume), repr(r.lambda_exact),
                        repr(r.lambda_full), repr(r.product)])
        return buf.getvalue()

    def checks_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["check", "passed", "measured", "tolerance", "detail"])
        for c in self.checks:
            w.writerow([c.name, int(c.passed), repr(float(c.measured)), repr(float(c.tolerance)), c.detail])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps({
            "experiment": self.name,
            "status": self.status,
            "rows": [asdict(r) for r in self.rows],
            "checks": [asdict(c) for c in self.checks],
            "summary": self.summary,
        }, indent=2, sort_keys=True, default=_jsonable)

    def write(self, out_dir: str | Path) -> None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{self.name}.csv").write_text(self.to_csv())
        (out / f"{self.name}_checks.csv").write_text(self.checks_csv())
        (out / f"{self.name}.json").write_text(self.to_json())

    def lines(self) -> list[str]:
        out = [f"[{c.name}] {'PASS' if c.passed else 'FAIL'} measured={c.measured:.6g} tol={c.tolerance:.3g} {c.detail}".rstrip()
               for c in self.checks]
        out.append(f"{self.name}: {self.status.upper()}")
        return out


def _jsonable(x):
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    raise TypeError(type(x))


def _rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b)


def _levels(values, rtol: float) -> list[tuple[float, int]]:
    """Group sorted values into (mean, count) levels at relative tolerance rtol."""
    groups: list[list[float]] = []
    for v in np.sort(values):
        if groups and v - groups[-1][0] <= rtol * groups[-1][0]:
            groups[-1].append(float(v))
        else:
            groups.append([float(v)])
    return [(float(np.mean(gr)), len(gr)) for gr in groups]


# ----------------------------------------------------------------------------
# identity suite


def run_identity_suite(cfg: ExperimentConfig) -> ExperimentResult:
    """Union identity, lambda_{k,1} <= lambda_{k,0}, Betti/kernel, duality, scale law, surface equality."""
    res = ExperimentResult(cfg.name)
    th = cfg.thresholds
    k_max = int(th.get("k_max", 10))
    rng = np.random.default_rng(cfg.seed)

    def conformal(K):
        return apply_conformal(flat_metric(K), rng.uniform(0.5, 2.0, K.num_vertices))

    small = {
        "T2": build_torus(2, 4, 0.25),
        "S2": build_sphere(2, 1),
        "T3": build_torus(3, 3, 1.0 / 3.0),
    }
    if th.get("include_t4", False):
        small["T4"] = build_torus(4, 3, 1.0 / 3.0)
    worst_union = 0.0
    for name, K in small.items():
        g = conformal(K)
        b = betti(K)
        for p in range(K.n + 1):
            t0 = time.perf_counter()
            dense = np.sort(hodge_spectrum_dense(K, g, p))
            zeros = int(np.sum(dense < cfg.threshold("kernel_rtol") * dense[-1]))
            table = full_spectrum(K, g, p, len(dense) - b[p])
            got = table.positive()
            ref = dense[b[p]:]
            dev = float(np.max(np.abs(got - ref) / ref)) if len(ref) else 0.0
            worst_union = max(worst_union, dev)
            res.checks.append(Check(f"betti_kernel_{name}_p{p}", zeros == b[p] == table.harmonic_count,
                                    abs(zeros - b[p]), 0, f"kernel {zeros}, b_p {b[p]}"))
            res.summary.setdefault("union_seconds", 0.0)
            res.summary["union_seconds"] += time.perf_counter() - t0
    res.checks.append(Check("union_vs_dense_hodge", worst_union <= cfg.threshold("union_rtol"), worst_union,
                            cfg.threshold("union_rtol"), "max relative deviation over all meshes and degrees"))
    for q in range(small["T3"].n - 1):
        prod = coboundary(small["T3"], q + 1).matrix @ coboundary(small["T3"], q).matrix
        res.checks.append(Check(f"dd_zero_T3_q{q}", prod.count_nonzero() == 0, prod.count_nonzero(), 0))

    # lambda_{k,1} <= lambda_{k,0}
    meshes = {
        "T2": build_torus(2, 8, 1 / 8),
        "S2": build_sphere(2, 2),
        "T3": build_torus(3, 4, 0.25),
    }
    for name, K in meshes.items():
        g = conformal(K)
        l0 = full_spectrum(K, g, 0, k_max).positive()
        l1 = full_spectrum(K, g, 1, k_max).positive()
        excess = float(np.max(l1[:k_max] - l0[:k_max]))
        res.checks.append(Check(f"lambda_k1_le_lambda_k0_{name}", excess <= 0.0, excess, 0.0, f"k <= {k_max}"))

    # conformal scale law
    K = build_torus(3, 4, 0.25)
    g = conformal(K)
    for c in cfg.threshold("scale_factors"):
        for p in (1, 2, 3):
            base = exact_form_spectrum(K, g, p, 4, seed=cfg.seed)
            scaled = exact_form_spectrum(K, apply_conformal(g, c), p, 4, seed=cfg.seed)
            dev = float(np.max(np.abs(scaled * c - base) / base))
            res.checks.append(Check(f"scale_law_c{c:g}_p{p}", dev <= cfg.threshold("scale_rtol"), dev,
                                    cfg.threshold("scale_rtol")))

    # Hodge duality on flat T^3
    c3 = int(th.get("t3_cells", 8))
    K = build_torus(3, c3, 1.0 / c3)
    g = flat_metric(K)
    l1 = full_spectrum(K, g, 1, 1, seed=cfg.seed).eigenvalue(1)
    l2 = full_spectrum(K, g, 2, 1, seed=cfg.seed).eigenvalue(1)
    dev = _rel(l1, l2)
    res.checks.append(Check("duality_T3_p1_p2", dev <= cfg.threshold("duality_rtol"), dev,
                            cfg.threshold("duality_rtol"), f"lambda_11={l1:.6g} lambda_12={l2:.6g}"))

    # surface equality on flat unit T^2: Delta_0 and Delta_2 agree value by value;
    # Delta_1 = exact (function) list merged with coexact (2-form) list, so its
    # distinct levels agree while multiplicities add
    c2 = int(th.get("t2_cells", 32))
    K = build_torus(2, c2, 1.0 / c2)
    g = flat_metric(K)
    k = int(th.get("surface_k", 6))
    tol = cfg.threshold("surface_rtol")
    lists = [full_spectrum(K, g, p, 2 * k + 8, seed=cfg.seed).positive() for p in range(3)]
    dev02 = float(np.max(np.abs(lists[2][:k] - lists[0][:k]) / lists[0][:k]))
    top = lists[0][k - 1] * (1 + tol)
    lev0 = _levels(lists[0][lists[0] <= top], tol)
    lev1 = _levels(lists[1][lists[1] <= top], tol)
    if len(lev0) == len(lev1):
        dev01 = max(_rel(a[0], b[0]) for a, b in zip(lev1, lev0))
        doubled = all(m1 == 2 * m0 for (_, m1), (_, m0) in zip(lev1, lev0))
    else:
        dev01, doubled = float("inf"), False
    res.checks.append(Check("surface_equality_T2_p0_p2", dev02 <= tol, dev02, tol, f"k <= {k}"))
    res.checks.append(Check("surface_equality_T2_p0_p1", dev01 <= tol and doubled, dev01, tol,
                            f"levels up to lambda_{k},0; Delta_1 multiplicities doubled: {doubled}"))
    lists = [lists[0][:k]]
    fourier = 4 * math.pi**2 * np.array([1, 1, 1, 1, 2, 2, 2, 2, 4, 4][:k])
    dev = float(np.max(np.abs(lists[0] - fourier) / fourier))
    res.checks.append(Check("surface_fourier_T2", dev <= cfg.threshold("surface_rtol"), dev, cfg.threshold("surface_rtol")))
    return res.finalize()


# ----------------------------------------------------------------------------
# convergence and sphere guard


def run_convergence(cfg: ExperimentConfig) -> ExperimentResult:
    """S^2 functions at refinement 3 and the flat unit T^2 at 64 x 64."""
    res = ExperimentResult(cfg.name)
    S = build_sphere(2, int(cfg.thresholds.get("sphere_level", 3)))
    t = full_spectrum(S, flat_metric(S), 0, 3, seed=cfg.seed)
    first = [r for r in t.records if r.cls != "harmonic"][0]
    dev = _rel(first.eigenvalue, 2.0)
    tol = cfg.threshold("sphere_rtol")
    res.checks.append(Check("S2_lambda_10", dev <= tol and first.multiplicity == 3, dev, tol,
                            f"value {first.eigenvalue:.6g} multiplicity {first.multiplicity}"))
    c = int(cfg.thresholds.get("torus_cells", 64))
    K = build_torus(2, c, 1.0 / c)
    t = full_spectrum(K, flat_metric(K), 0, 4, seed=cfg.seed)
    first = [r for r in t.records if r.cls != "harmonic"][0]
    dev = _rel(first.eigenvalue, 4 * math.pi**2)
    tol = cfg.threshold("torus_rtol")
    res.checks.append(Check("T2_lambda_10", dev <= tol and first.multiplicity == 4, dev, tol,
                            f"value {first.eigenvalue:.6g} multiplicity {first.multiplicity}"))
    return res.finalize()


def run_sphere_guard(cfg: ExperimentConfig) -> ExperimentResult:
    """Closed-form sphere spectra against discrete solves.

    Each configured case is [m, p, level, count, rtol]: the first ``count``
    positive values (with multiplicity) at subdivision ``level``.
    """
    res = ExperimentResult(cfg.name)
    for m, p, level, count, tol in cfg.threshold("cases"):
        S = build_sphere(m, level)
        expected = np.array([lv.value for lv in sphere_spectrum(m, p, 8) for _ in range(lv.multiplicity)
                             if lv.value > 0][:count])
        got = full_spectrum(S, flat_metric(S), p, count, seed=cfg.seed).positive()[:count]
        dev = float(np.max(np.abs(got - expected) / expected))
        res.checks.append(Check(f"sphere_S{m}_p{p}_level{level}_first{count}", dev <= tol, dev, tol))
    return res.finalize()


# ----------------------------------------------------------------------------
# cigar pipeline


@dataclass
class CigarSolve:
    """Spectral data of one cigar metric g_L."""

    L: float
    volume: float
    exact: dict[int, np.ndarray]  # degree -> lambda'_{k,p}, k = 1..count
    seconds: float


def cigar_metric(cfg: ExperimentConfig, L: float):
    """(complex, metric) for the cigar of length L on the configured flat torus."""
    K = build_torus(cfg.n, cfg.cells_per_axis, cfg.side_length / cfg.cells_per_axis)
    P = RadialProfile(L, cfg.cigar_center())
    if cfg.grading:
        K = graded_torus(K, P, radius=INNER_RADIUS)
    g = apply_conformal(flat_metric(K), cigar_factor_field(K, P))
    return K, g


def solve_cigar(cfg: ExperimentConfig, degrees: set[int], counts: dict[int, int] | None = None) -> list[CigarSolve]:
    """lambda'_{k,p} for every L of the schedule; iterative solves are warm-started along the schedule."""
    counts = counts or {}
    warm: dict[int, np.ndarray] = {}
    out = []
    for L in cfg.L_schedule:
        t0 = time.perf_counter()
        K, g = cigar_metric(cfg, L)
        masses: dict = {}
        exact = {}
        for p in sorted(degrees):
            info: dict = {}
            exact[p] = exact_form_spectrum(K, g, p, counts.get(p, cfg.eigen_count), method=cfg.method, seed=cfg.seed,
                                           masses=masses, info=info, initial=warm.get(p))
            if "basis" in info:
                warm[p] = info["basis"]
        out.append(CigarSolve(L, volume(K, g), exact, time.perf_counter() - t0))
    return out


def _loglog_slope(x, y) -> float:
    return float(np.polyfit(np.log(x), np.log(y), 1)[0])


def _growth_rows(cfg: ExperimentConfig, solves: list[CigarSolve], p: int) -> list[ReportRow]:
    rows = []
    for s in solves:
        lam_exact = float(s.exact[p][0]) if p >= 1 else float("nan")
        candidates = [float(s.exact[d][0]) for d in (p, p + 1) if d in s.exact and 1 <= d <= cfg.n]
        lam = min(candidates)
        rows.append(ReportRow(cfg.name, cfg.n, p, s.L, s.volume, lam_exact, lam, lam * s.volume ** (2.0 / cfg.n),
                              s.seconds))
    return rows


def run_cigar_growth(cfg: ExperimentConfig, solves: list[CigarSolve] | None = None) -> ExperimentResult:
    """lambda_{1,p}(g_L) V(g_L)^{2/n} along the L schedule (n = 4, p = 2)."""
    res = ExperimentResult(cfg.name)
    p = cfg.degrees[0]
    if solves is None:
        solves = solve_cigar(cfg, {p, p + 1})
    rows = _growth_rows(cfg, solves, p)
    res.rows = rows
    prods = [r.product for r in rows]
    increasing = all(b > a for a, b in zip(prods, prods[1:]))
    res.checks.append(Check("product_strictly_increasing", increasing,
                            min(b / a for a, b in zip(prods, prods[1:])) if len(prods) > 1 else 1.0, 1.0,
                            "min consecutive ratio"))
    positive_L = [(r.L, r.product) for r in rows if r.L > 0]
    slope = _loglog_slope([a for a, _ in positive_L], [b for _, b in positive_L]) if len(positive_L) > 1 else float("nan")
    lo, hi = cfg.threshold("slope_min"), cfg.threshold("slope_max")
    res.checks.append(Check("loglog_slope", lo <= slope <= hi, slope, hi, f"expected in [{lo}, {hi}], theory {2 / cfg.n}"))
    flat_volume = cfg.side_length**cfg.n
    ball = math.pi ** (cfg.n / 2) / math.gamma(cfg.n / 2 + 1) * INNER_RADIUS**cfg.n
    if cfg.n >= 4 and 2 <= p <= cfg.n - 2 and all(L > 0 for L in cfg.L_schedule):
        curve = theorem_curve(cfg.n, p, cfg.L_schedule, flat_volume - ball)
        res.summary["analytic_curve"] = curve
        res.summary["analytic_slope"] = _loglog_slope([c["L"] for c in curve], [c["product"] for c in curve])
        mu = [c["mu"] for c in curve]
        res.checks.append(Check("analytic_mu_constant", all(m == mu[0] for m in mu), mu[0], 0.0, "cylinder mu_{1,p}"))
    res.summary.update(slope=slope, theory_slope=2.0 / cfg.n, seconds=sum(s.seconds for s in solves),
                       cells_per_axis=cfg.cells_per_axis, center=list(cfg.cigar_center()))
    return res.finalize()


def run_negative_control(cfg: ExperimentConfig, solves: list[CigarSolve] | None = None) -> ExperimentResult:
    """Same pipeline on T^3 for p in cfg.degrees: the normalized product must stay bounded."""
    res = ExperimentResult(cfg.name)
    if solves is None:
        need = {d for p in cfg.degrees for d in (p, p + 1) if 1 <= d <= cfg.n}
        solves = solve_cigar(cfg, need)
    ceiling = cfg.threshold("ceiling_ratio")
    for p in cfg.degrees:
        rows = _growth_rows(cfg, solves, p)
        res.rows += rows
        base = rows[0].product
        worst = max(r.product for r in rows) / base
        res.checks.append(Check(f"bounded_p{p}", worst < ceiling, worst, ceiling,
                                f"max product / product at L={rows[0].L:g}"))
    if cfg.n == 3 and 2 in cfg.degrees:
        mus = [cylinder_spectrum(L, 2, 2).first_positive() for L in cfg.L_schedule if L > 0]
        res.summary["analytic_mu_cylinder_S2"] = mus
        decays = all(b <= a for a, b in zip(mus, mus[1:])) and mus[-1] < mus[0]
        res.checks.append(Check("analytic_mu_decays", decays, mus[-1], mus[0], "mu_{1,2}([0,L] x S^2) nonincreasing, last < first"))
    res.summary["seconds"] = sum(s.seconds for s in solves)
    return res.finalize()


def run_gap_closing(cfg: ExperimentConfig, solves: list[CigarSolve] | None = None) -> ExperimentResult:
    """Find the smallest L with lambda'_{1,2} > lambda_{N,0}; then the first N gaps Gap^{0,1}_{k,k} vanish."""
    res = ExperimentResult(cfg.name)
    N = cfg.N
    if N == 0:
        res.checks.append(Check("vacuous", True, 0.0, 0.0, "N = 0"))
        return res.finalize()
    if solves is None:
        solves = solve_cigar(cfg, {1, 2, 3}, counts={1: N, 2: N, 3: 1})
    tol = cfg.threshold("gap_atol")
    best_ratio, witness = 0.0, None
    for s in solves:
        lam0 = s.exact[1]  # positive function spectrum = exact 1-form spectrum
        if len(lam0) < N or 2 not in s.exact:
            raise ConfigError("gap closing needs lambda'_{k,1} for k <= N and lambda'_{1,2}")
        ratio = float(s.exact[2][0] / lam0[N - 1])
        best_ratio = max(best_ratio, ratio)
        res.rows.append(ReportRow(cfg.name, cfg.n, 2, s.L, s.volume, float(s.exact[2][0]),
                                  float(min(s.exact[2][0], s.exact.get(3, [np.inf])[0])),
                                  float(s.exact[2][0] * s.volume ** (2.0 / cfg.n)), s.seconds))
        if ratio > 1.0 and witness is None:
            witness = s
    res.summary["best_ratio"] = best_ratio
    if witness is None:
        res.status = INCONCLUSIVE
        res.checks.append(Check("witness_found", False, best_ratio, 1.0, "schedule exhausted: inconclusive"))
        res.summary["witness_L"] = None
        return res
    lam0 = witness.exact[1][:N]
    # Delta_1 positive spectrum: merge of exact (= functions) and coexact (= exact 2-forms) lists
    merged = np.sort(np.concatenate([witness.exact[1], witness.exact[2]]), kind="stable")[:N]
    gaps = lam0 - merged
    res.summary.update(witness_L=witness.L, gaps=gaps.tolist(), ratio=float(witness.exact[2][0] / lam0[N - 1]))
    for k, gk in enumerate(gaps, start=1):
        res.checks.append(Check(f"gap01_k{k}", abs(gk) <= tol, abs(float(gk)), tol, f"witness L={witness.L:g}"))
    res.checks.append(Check("exact_2_above_lambda_N0", witness.exact[2][0] > lam0[N - 1],
                            float(witness.exact[2][0] - lam0[N - 1]), 0.0, "lambda'_{1,2} - lambda_{N,0}"))
    if 3 in witness.exact:
        lam12 = min(witness.exact[2][0], witness.exact[3][0])
        res.checks.append(Check("gap20_1N_positive", lam12 > lam0[N - 1], float(lam12 - lam0[N - 1]), 0.0,
                                "lambda_{1,2} - lambda_{N,0}"))
    return res.finalize()


RUNNERS = {
    "identity": run_identity_suite,
    "convergence": run_convergence,
    "sphere_guard": run_sphere_guard,
    "cigar": run_cigar_growth,
    "negative_control": run_negative_control,
    "gap_closing": run_gap_closing,
}


def run(cfg: ExperimentConfig) -> ExperimentResult:
    return RUNNERS[cfg.name](cfg)
