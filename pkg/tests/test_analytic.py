from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hodge_spectra.analytic import (
    HARMONIC,
    cylinder_lower_bound,
    cylinder_spectrum,
    interval_family,
    interval_spectrum,
    product_spectrum,
    so_irrep_dimension,
    sphere_coexact_multiplicity,
    sphere_family,
    sphere_spectrum,
    sphere_volume,
    theorem_curve,
)
from oracles import interval_fd, interval_modes, product_enumeration


def s2_modes(count=50):
    """Hand-listed spectra of the round S^2 in degrees 0, 1, 2 (with multiplicity)."""
    f = [0.0] + [k * (k + 1.0) for k in range(1, count) for _ in range(2 * k + 1)]
    one = sorted([k * (k + 1.0) for k in range(1, count) for _ in range(2 * (2 * k + 1))])
    return [f, one, list(f)]


def s3_modes(count=50):
    """Hand-listed spectra of the round S^3 in degrees 0..3 (with multiplicity)."""
    f = [0.0] + [k * (k + 2.0) for k in range(1, count) for _ in range((k + 1) ** 2)]
    coexact1 = [(k + 1.0) ** 2 for k in range(1, count) for _ in range(2 * k * (k + 2))]
    exact1 = f[1:]
    one = sorted(exact1 + coexact1)
    return [f, one, list(one), list(f)]


def expand(levels):
    return [lv.value for lv in levels for _ in range(lv.multiplicity)]


def test_sphere_s2_functions():
    lv = sphere_spectrum(2, 0, 3)
    assert [(x.value, x.multiplicity) for x in lv] == [(0.0, 1), (2.0, 3), (6.0, 5)]
    assert lv[0].cls == HARMONIC


def test_sphere_s3_one_forms():
    lv = sphere_spectrum(3, 1, 2)
    assert (lv[0].value, lv[0].cls, lv[0].multiplicity) == (3.0, "exact", 4)
    assert (lv[1].value, lv[1].cls, lv[1].multiplicity) == (4.0, "coexact", 6)


@pytest.mark.parametrize("m,p", [(2, 0), (2, 1), (2, 2), (3, 0), (3, 1), (3, 2), (3, 3)])
def test_sphere_matches_hand_lists(m, p):
    ref = (s2_modes if m == 2 else s3_modes)(30)[p][:60]
    got = expand(sphere_spectrum(m, p, 40))[:60]
    assert got == pytest.approx(ref, abs=0)


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_sphere_middle_degrees_have_no_zero(m):
    for p in range(1, m):
        assert all(lv.value > 0 for lv in sphere_spectrum(m, p, 10))


def test_circle_multiplicity():
    lv = sphere_spectrum(1, 0, 3)
    assert [(x.value, x.multiplicity) for x in lv] == [(0.0, 1), (1.0, 2), (4.0, 2)]


def test_weyl_dimensions():
    assert so_irrep_dimension(3, (1,)) == 3
    assert so_irrep_dimension(4, (1, 1)) == 3
    assert so_irrep_dimension(5, (1,)) == 5
    assert so_irrep_dimension(6, (1, 1)) == 15
    # harmonic polynomials of degree k in N variables
    for N in range(3, 8):
        for k in range(6):
            expected = math.comb(k + N - 1, N - 1) - (math.comb(k + N - 3, N - 1) if k >= 2 else 0)
            assert sphere_coexact_multiplicity(N - 1, 0, k) == expected


def test_hodge_dual_multiplicity_symmetry():
    for m in range(2, 7):
        for p in range(m):
            for k in range(1, 5):
                assert sphere_coexact_multiplicity(m, p, k) == sphere_coexact_multiplicity(m, m - 1 - p, k)


def test_interval_values():
    assert expand(interval_spectrum(math.pi, 0, 4)) == pytest.approx([0, 1, 4, 9], abs=1e-12)
    assert expand(interval_spectrum(math.pi, 1, 3)) == pytest.approx([1, 4, 9], abs=1e-12)


@pytest.mark.parametrize("p", [0, 1])
def test_interval_against_finite_differences(p):
    ref = interval_fd(math.pi, p, 4 - p)
    got = expand(interval_spectrum(math.pi, p, 4 - p))
    assert np.allclose(got, ref, rtol=1e-5, atol=1e-7)


def test_interval_scaling():
    a = expand(interval_spectrum(1.3, 0, 6))
    b = expand(interval_spectrum(2.6, 0, 6))
    assert np.allclose(np.array(b), np.array(a) / 4, rtol=1e-14)


def test_interval_bad_args():
    with pytest.raises(ValueError):
        interval_spectrum(-1, 0, 1)
    with pytest.raises(ValueError):
        interval_spectrum(1, 2, 1)
    with pytest.raises(ValueError):
        interval_spectrum(1, 0, 1, bc="relative")


@pytest.mark.parametrize("L", [1.0, 3.7, 10.0])
def test_cylinder_s3_product_against_enumeration(L):
    for p in range(5):
        ref = product_enumeration(interval_modes(L), s3_modes(), p)
        got = expand(cylinder_spectrum(L, 3, p).first(30))
        n = min(len(got), 40)
        assert np.allclose(got[:n], ref[:n], rtol=1e-12, atol=1e-12)


def test_cylinder_mu12_s3_is_three():
    for j in range(11):
        assert cylinder_spectrum(2.0**j, 3, 2).first_positive() == 3.0
    assert cylinder_spectrum(5.0, 3, 2).harmonic_count() == 0


@pytest.mark.parametrize("L", [2.5, 4.0, 9.0])
def test_cylinder_mu12_s2(L):
    mu = cylinder_spectrum(L, 2, 2).first_positive()
    assert math.isclose(mu, (math.pi / L) ** 2, rel_tol=1e-14)
    ref = [v for v in product_enumeration(interval_modes(L), s2_modes(), 2) if v > 0]
    assert math.isclose(mu, ref[0], rel_tol=1e-14)


def test_negative_control_decays():
    mus = [cylinder_spectrum(2.0**j, 2, 2).first_positive() for j in range(2, 11)]
    assert all(b < a for a, b in zip(mus, mus[1:]))
    assert mus[-1] < 1e-4


def test_product_commutes():
    A = interval_family(2.0)
    B = sphere_family(2)
    for p in range(4):
        x = product_spectrum(A, B, p, 12)
        y = product_spectrum(B, A, p, 12)
        assert [(a.value, a.multiplicity) for a in x] == [(b.value, b.multiplicity) for b in y]


def test_cylinder_lower_bound():
    assert cylinder_lower_bound(4, 2) == 3.0
    for n in (4, 5, 6):
        for p in range(2, n - 1):
            bound = cylinder_lower_bound(n, p)
            for j in range(11):
                assert cylinder_spectrum(2.0**j, n - 1, p).first_positive() >= bound
    with pytest.raises(ValueError):
        cylinder_lower_bound(4, 1)
    with pytest.raises(ValueError):
        cylinder_lower_bound(3, 1)


def test_theorem_curve():
    rows = theorem_curve(4, 2, [1, 2, 4, 8, 16, 64, 256], 10.0)
    assert all(r["mu"] == 3.0 for r in rows)
    slopes = [(b["V"] - a["V"]) / (b["L"] - a["L"]) for a, b in zip(rows, rows[1:])]
    assert np.allclose(slopes, 2 * math.pi**2, rtol=1e-12)
    assert math.isclose(sphere_volume(3), 2 * math.pi**2)
    prods = [r["product"] for r in rows]
    assert all(b > a for a, b in zip(prods, prods[1:]))
    ratio = rows[-1]["product"] / theorem_curve(4, 2, [64], 10.0)[0]["product"]
    assert 1.9 < ratio <= 2.0
    with pytest.raises(ValueError):
        theorem_curve(4, 2, [2, 1], 1.0)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.3, 50.0), st.integers(0, 4))
def test_product_enumeration_is_ascending_and_positive(L, p):
    lv = cylinder_spectrum(L, 3, p).first(15)
    vals = [x.value for x in lv]
    assert vals == sorted(vals)
    assert all(x.multiplicity > 0 for x in lv)
    assert sum(x.multiplicity for x in lv if x.cls == HARMONIC) == (1 if p in (0, 3) else 0)
