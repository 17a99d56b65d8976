from __future__ import annotations

import json
import math

import numpy as np
import pytest

from hodge_spectra.analytic import sphere_volume
from hodge_spectra.complex import build_torus
from hodge_spectra.eigensolve import exact_form_spectrum
from hodge_spectra.experiments import (
    EXPERIMENTS,
    FAIL,
    INCONCLUSIVE,
    PASS,
    CigarSolve,
    ConfigError,
    ExperimentConfig,
    ExperimentResult,
    ReportRow,
    cigar_metric,
    default_config,
    run_cigar_growth,
    run_convergence,
    run_gap_closing,
    run_negative_control,
)
from hodge_spectra.metric import INNER_RADIUS, chart_distance, flat_metric


def test_shipped_configs_load():
    for name in EXPERIMENTS:
        cfg = default_config(name)
        assert cfg.name == name
        assert cfg.thresholds, name


def test_thresholds_come_from_config():
    cfg = default_config("cigar")
    assert cfg.threshold("slope_min") == 0.2 and cfg.threshold("slope_max") == 0.8
    with pytest.raises(ConfigError):
        cfg.threshold("missing")


@pytest.mark.parametrize(
    "doc",
    [
        {"name": "nope"},
        {"name": "cigar", "L_schedule": [1.0, 0.5]},
        {"name": "cigar", "L_schedule": [-1.0, 0.5]},
        {"name": "cigar", "degrees": [5]},
        {"name": "cigar", "n": 5},
        {"name": "cigar", "bogus": 1},
        {"name": "cigar", "eigen_count": 0},
    ],
)
def test_config_validation(doc):
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict(doc)


def test_config_json_round_trip(tmp_path):
    cfg = default_config("negative_control")
    path = tmp_path / "c.json"
    path.write_text(json.dumps(cfg.to_dict()))
    assert ExperimentConfig.load(path) == cfg


def test_default_center_is_a_cube_centre():
    cfg = default_config("cigar")
    h = 5.0 / 6
    assert cfg.cigar_center() == pytest.approx((3.5 * h,) * 4)
    cfg = ExperimentConfig("cigar", cells_per_axis=5)
    assert cfg.cigar_center() == pytest.approx((2.5,) * 4)
    with pytest.raises(ConfigError):
        ExperimentConfig("cigar", center=[1.0, 2.0]).cigar_center()


def test_report_row_rejects_bad_values():
    ReportRow("x", 4, 2, 0.5, 1.0, 1.0, 1.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        ReportRow("x", 4, 2, 0.5, -1.0, 1.0, 1.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        ReportRow("x", 4, 2, 0.5, 1.0, float("nan"), 1.0, 1.0, 0.0)


def fake_solves(values, L=(0.5, 1.0, 2.0, 3.0), volume=625.0):
    return [CigarSolve(l, volume + 20 * l, {p: np.asarray(v) for p, v in vals.items()}, 0.0)
            for l, vals in zip(L, values)]


def test_cigar_growth_logic_pass_and_fail():
    cfg = default_config("cigar")
    # product ~ L^0.5 exactly: lambda = c L^0.5 / V^0.5
    vols = [625.0 + 20 * L for L in cfg.L_schedule]
    lam = [L**0.5 / v**0.5 for L, v in zip(cfg.L_schedule, vols)]
    good = fake_solves([{2: [x], 3: [2 * x]} for x in lam])
    res = run_cigar_growth(cfg, good)
    assert res.status == PASS
    assert res.summary["slope"] == pytest.approx(0.5)
    assert [r.lambda_full for r in res.rows] == pytest.approx(lam)
    flat = fake_solves([{2: [x], 3: [2.0]} for x in (1.5, 1.45, 1.4, 1.35)])
    res = run_cigar_growth(cfg, flat)
    assert res.status == FAIL
    assert {c.name for c in res.checks if not c.passed} >= {"product_strictly_increasing"}


def test_cigar_growth_merges_coexact_list():
    cfg = default_config("cigar")
    res = run_cigar_growth(cfg, fake_solves([{2: [2.0], 3: [1.0]}] * 4))
    assert all(r.lambda_exact == 2.0 and r.lambda_full == 1.0 for r in res.rows)


def test_analytic_companion_mu_is_three():
    res = run_cigar_growth(default_config("cigar"), fake_solves([{2: [1.0], 3: [1.0]}] * 4))
    curve = res.summary["analytic_curve"]
    assert [c["mu"] for c in curve] == [3.0] * 4
    ball = math.pi**2 / 2 * INNER_RADIUS**4
    assert curve[0]["V"] == pytest.approx(625 - ball + 0.5 * sphere_volume(3))


def test_gap_closing_witness():
    cfg = default_config("gap_closing")
    solves = fake_solves([
        {1: [1.0, 1.1, 1.2], 2: [0.9], 3: [2.0]},
        {1: [1.0, 1.1, 1.2], 2: [1.5], 3: [2.0]},
        {1: [1.0, 1.1, 1.2], 2: [1.8], 3: [2.0]},
        {1: [1.0, 1.1, 1.2], 2: [1.9], 3: [2.0]},
    ])
    res = run_gap_closing(cfg, solves)
    assert res.status == PASS and res.exit_code == 0
    assert res.summary["witness_L"] == 1.0
    assert res.summary["gaps"] == [0.0, 0.0, 0.0]


def test_gap_closing_exhausted_is_inconclusive():
    cfg = default_config("gap_closing")
    solves = fake_solves([{1: [1.0, 1.1, 1.2], 2: [0.5 + 0.1 * i], 3: [2.0]} for i in range(4)])
    res = run_gap_closing(cfg, solves)
    assert res.status == INCONCLUSIVE and res.exit_code == 2
    assert res.summary["best_ratio"] == pytest.approx(0.8 / 1.2)


def test_gap_closing_needs_exact_two_above_lambda_n0():
    # lambda'_{1,2} below lambda_{3,0} is not a witness
    cfg = default_config("gap_closing", L_schedule=[1.0])
    solves = fake_solves([{1: [1.0, 1.1, 1.3], 2: [1.25], 3: [2.0]}], L=(1.0,))
    res = run_gap_closing(cfg, solves)
    assert res.status == INCONCLUSIVE


def test_gap_closing_vacuous():
    res = run_gap_closing(default_config("gap_closing", N=0))
    assert res.status == PASS


def test_result_serialization(tmp_path):
    res = ExperimentResult("cigar", rows=[ReportRow("cigar", 4, 2, 0.5, 1.0, 1.0, 1.0, 1.0, 3.25)])
    res.finalize()
    res.write(tmp_path)
    assert (tmp_path / "cigar.csv").read_text().splitlines()[0] == \
        "experiment,n,p,L,volume,lambda_exact,lambda_full,product"
    assert "3.25" not in (tmp_path / "cigar.csv").read_text()
    doc = json.loads((tmp_path / "cigar.json").read_text())
    assert doc["status"] == PASS and doc["rows"][0]["seconds"] == 3.25


def small_control(**kw):
    doc = dict(name="negative_control", n=3, cells_per_axis=6, side_length=5.0, L_schedule=[0.5, 1.0],
               degrees=[1, 2], thresholds={"ceiling_ratio": 1.5})
    doc.update(kw)
    return ExperimentConfig.from_dict(doc)


def test_negative_control_csv_is_reproducible():
    a = run_negative_control(small_control())
    b = run_negative_control(small_control())
    assert a.to_csv() == b.to_csv()
    assert len(a.rows) == 4
    assert a.rows[0].lambda_full <= a.rows[0].lambda_exact or a.rows[0].p == 1


def test_l_zero_run_is_well_posed():
    cfg = small_control(L_schedule=[0.0])
    K, g = cigar_metric(cfg, 0.0)
    base = flat_metric(K)
    r = chart_distance(K, cfg.cigar_center())
    outside = np.all(r[K.simplices[3]] > 2.0, axis=1)
    assert np.array_equal(g.gram[outside], base.gram[outside])
    for p in (1, 2, 3):
        lam = exact_form_spectrum(K, g, p, 2)
        assert np.all(np.isfinite(lam)) and np.all(lam > 0)


def test_graded_torus_matches_ungraded_outside_ball():
    cfg = small_control()
    K, _ = cigar_metric(cfg, 2.0)
    flat = build_torus(3, 6, 5 / 6)
    r = chart_distance(flat, cfg.cigar_center())
    assert np.array_equal(K.chart[r >= INNER_RADIUS], flat.chart[r >= INNER_RADIUS])


def test_convergence_experiment_passes():
    assert run_convergence(default_config("convergence")).status == PASS
