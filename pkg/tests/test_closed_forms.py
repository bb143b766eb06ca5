"""Closed forms, series with tails, and Bessel zero brackets."""

import math

import pytest

from polya_verify.closed_forms import (
    AngleOutOfRange,
    SeriesValue,
    bessel_first_zero,
    bessel_zero_bracket,
    equilateral_exact,
    equilateral_fields,
    rect_F,
    rect_center_torsion,
    rect_lambda1,
    rect_torsion,
    sector_torsion,
)
from polya_verify.geometry import Rectangle, Sector

# classical first zeros of the Bessel functions J_nu
BESSEL_ZEROS = {
    0.0: 2.404825557695773,
    1.0: 3.8317059702075123,
    2.0: 5.1356223018406826,
    3.0: 6.380161895923984,
    4.0: 7.588342434503804,
}


def test_equilateral_exact_values():
    vals = equilateral_exact()
    assert vals["T"] == pytest.approx(math.sqrt(3.0) / 320.0, rel=1e-15)
    assert vals["lambda1"] == pytest.approx(16.0 * math.pi**2 / 3.0, rel=1e-15)
    assert vals["F"] == pytest.approx(math.pi**2 / 15.0, rel=1e-15)
    area = math.sqrt(3.0) / 4.0
    assert vals["F"] == pytest.approx(vals["lambda1"] * vals["T"] / area, rel=1e-12)


def test_equilateral_torsion_function_at_centroid_and_sides():
    h = math.sqrt(3.0) / 2.0
    centroid = equilateral_fields(0.5, h / 3.0)
    assert centroid["u"] == pytest.approx(1.0 / 36.0, rel=1e-12)
    for x, y in ((0.25, 0.0), (0.75, 0.0), (0.5, h), (0.25, math.sqrt(3.0) * 0.25)):
        boundary = equilateral_fields(x, y)
        assert boundary["u"] == pytest.approx(0.0, abs=1e-14)
        assert boundary["phi"] == pytest.approx(0.0, abs=1e-12)


def test_equilateral_eigenfunction_sign_inside():
    h = math.sqrt(3.0) / 2.0
    assert abs(equilateral_fields(0.5, h / 3.0)["phi"]) > 1.0


@pytest.mark.parametrize("nu,zero", sorted(BESSEL_ZEROS.items()))
def test_bessel_first_zeros_match_classical_values(nu, zero):
    assert bessel_first_zero(nu) == pytest.approx(zero, abs=1e-10)


def test_bessel_zero_bracket_contains_the_zero():
    lo, hi = bessel_zero_bracket(2.5, tol=1e-12)
    assert hi - lo <= 1e-12
    assert lo <= 5.763459196894550 <= hi  # first zero of J_{5/2}


def test_bessel_zero_is_increasing_in_the_order():
    zeros = [bessel_first_zero(nu) for nu in (1.0, 2.0, 4.0, 8.0, 16.0)]
    assert all(a < b for a, b in zip(zeros, zeros[1:]))


def test_rect_lambda1_closed_form_and_scaling():
    assert rect_lambda1(Rectangle(0.5, 0.5)) == pytest.approx(2.0 * math.pi**2, rel=1e-15)
    assert rect_lambda1(Rectangle(1.0, 1.0)) == pytest.approx(math.pi**2 / 2.0, rel=1e-15)
    base = rect_lambda1(Rectangle(0.7, 0.3))
    assert rect_lambda1(Rectangle(1.4, 0.6)) == pytest.approx(base / 4.0, rel=1e-12)


def test_rect_torsion_unit_square_frozen_value():
    tor = rect_torsion(Rectangle(0.5, 0.5), n_terms=256)
    assert isinstance(tor, SeriesValue)
    assert tor.tail_bound >= 0.0
    assert tor.terms_used >= 1
    assert tor.value == pytest.approx(0.03514425368530938, abs=5e-9)
    # a short truncation still lands within its own advertised tail
    short = rect_torsion(Rectangle(0.5, 0.5), n_terms=64)
    assert abs(short.value - 0.03514425368530938) <= short.tail_bound + 1e-12


def test_rect_torsion_scales_like_the_fourth_power():
    small = rect_torsion(Rectangle(0.5, 0.5), n_terms=64).value
    big = rect_torsion(Rectangle(1.0, 1.0), n_terms=64).value
    assert big == pytest.approx(16.0 * small, rel=1e-12)


def test_rect_torsion_tail_shrinks_with_more_terms():
    coarse = rect_torsion(Rectangle(1.0, 1.0), n_terms=8)
    fine = rect_torsion(Rectangle(1.0, 1.0), n_terms=256)
    assert fine.tail_bound < coarse.tail_bound
    assert abs(fine.value - coarse.value) <= coarse.tail_bound + fine.tail_bound


def test_rect_F_square_value_and_scale_invariance():
    f = rect_F(Rectangle(1.0, 1.0), n_terms=64)
    assert f.value == pytest.approx(0.6937195061973225, abs=1e-9)
    f_scaled = rect_F(Rectangle(0.5, 0.5), n_terms=64)
    assert f_scaled.value == pytest.approx(f.value, rel=1e-12)


def test_rect_F_strip_limit_direction():
    f2 = rect_F(Rectangle(2.0, 1.0), n_terms=128).value
    f8 = rect_F(Rectangle(8.0, 1.0), n_terms=256).value
    limit = math.pi**2 / 12.0
    assert f2 < f8 < limit


def test_rect_center_torsion_values():
    s = math.sqrt(2.0) / 2.0
    center = rect_center_torsion(Rectangle(s, s), n_terms=256)
    assert center.value == pytest.approx(0.14734270464132874, abs=1e-8)
    unit = rect_center_torsion(Rectangle(0.5, 0.5), n_terms=256)
    assert unit.value == pytest.approx(0.0736713523206644, abs=1e-8)
    # center of the square is where the torsion function peaks
    tor = rect_torsion(Rectangle(0.5, 0.5), n_terms=64)
    assert center.value == pytest.approx(2.0 * unit.value, rel=1e-10)
    assert unit.value > tor.value  # peak exceeds the mean (T / area here)


def test_sector_torsion_scaling_and_positivity():
    base = sector_torsion(Sector(math.pi / 3.0, 1.0), n_terms=64)
    scaled = sector_torsion(Sector(math.pi / 3.0, 2.0), n_terms=64)
    assert base.value > 0.0
    assert scaled.value == pytest.approx(16.0 * base.value, rel=1e-10)
    assert base.tail_bound < 1e-8


def test_sector_torsion_grows_with_angle():
    narrow = sector_torsion(Sector(math.pi / 6.0, 1.0), n_terms=64).value
    wide = sector_torsion(Sector(1.4, 1.0), n_terms=64).value
    assert narrow < wide
    # the series formula needs tan(angle), so the right angle is rejected
    with pytest.raises(AngleOutOfRange):
        sector_torsion(Sector(math.pi / 2.0, 1.0), n_terms=64)


def test_series_value_is_a_frozen_record():
    tor = rect_torsion(Rectangle(1.0, 1.0), n_terms=16)
    with pytest.raises(AttributeError):
        tor.value = 0.0
