"""Shapes, charts, classification, and exact region predicates."""

import math
from fractions import Fraction

import pytest

from polya_verify.geometry import (
    DegenerateTriangle,
    REGION_IDS,
    Rectangle,
    Sector,
    Triangle,
    TriangleClass,
    UnknownRegion,
    chart_swap,
    classify,
    derive,
    in_region,
    triangle_from_sides,
)

EQ_B = math.sqrt(3.0) / 2.0


def test_triangle_rejects_nonpositive_height():
    with pytest.raises(DegenerateTriangle):
        Triangle(0.3, 0.0)
    with pytest.raises(DegenerateTriangle):
        Triangle(0.3, -1.0)


def test_rectangle_and_sector_validation():
    with pytest.raises(ValueError):
        Rectangle(0.0, 1.0)
    with pytest.raises(ValueError):
        Sector(0.0, 1.0)
    with pytest.raises(ValueError):
        Sector(math.pi, 1.0)
    with pytest.raises(ValueError):
        Sector(1.0, -2.0)


def test_equilateral_derived_quantities():
    data = derive(Triangle(0.5, EQ_B))
    assert data.M == pytest.approx(1.0, rel=1e-12)
    assert data.N == pytest.approx(1.0, rel=1e-12)
    assert data.area == pytest.approx(math.sqrt(3.0) / 4.0, rel=1e-12)
    assert data.P == pytest.approx(3.0, rel=1e-12)
    assert data.d == pytest.approx(1.0, rel=1e-12)
    assert data.h_base == pytest.approx(EQ_B, rel=1e-12)
    assert data.R == pytest.approx(math.sqrt(3.0) / 6.0, rel=1e-12)
    for angle in (data.alpha, data.beta, data.gamma):
        assert angle == pytest.approx(math.pi / 3.0, rel=1e-12)


def test_right_triangle_diameter_and_height():
    data = derive(Triangle(0.0, 1.0))
    assert data.d == pytest.approx(math.sqrt(2.0), rel=1e-12)
    # altitude onto the hypotenuse
    assert data.h_base == pytest.approx(1.0 / math.sqrt(2.0), rel=1e-12)
    assert data.alpha == pytest.approx(math.pi / 2.0, rel=1e-12)


@pytest.mark.parametrize(
    "a,b,expected",
    [
        (0.5, EQ_B, TriangleClass.Equilateral),
        (0.0, 1.0, TriangleClass.Right),
        (0.3, 0.9, TriangleClass.Acute),
        (0.1, 0.2, TriangleClass.Obtuse),
        (0.5, 1.0, TriangleClass.IsoscelesAcute),
        (0.5, 0.3, TriangleClass.IsoscelesObtuse),
        (0.5, 1e-8, TriangleClass.Degenerate),
    ],
)
def test_classification(a, b, expected):
    assert classify(Triangle(a, b)) is expected


def test_class_values_are_their_names():
    for member in TriangleClass:
        assert member.value == member.name


def test_triangle_from_sides_normalizes_base():
    tri = triangle_from_sides(2.0, 2.0, 2.0)
    assert tri.a == pytest.approx(0.5, rel=1e-12)
    assert tri.b == pytest.approx(EQ_B, rel=1e-12)
    tri345 = triangle_from_sides(5.0, 3.0, 4.0)
    data = derive(tri345)
    sides = sorted((1.0, data.M, data.N))
    assert sides == pytest.approx([0.6, 0.8, 1.0], rel=1e-12)


def test_triangle_from_sides_rejects_triangle_inequality_violation():
    with pytest.raises(DegenerateTriangle):
        triangle_from_sides(1.0, 0.4, 0.5)


def test_chart_swap_preserves_shape_up_to_scaling():
    tri = Triangle(0.3, 0.4)
    data = derive(tri)
    swapped = chart_swap(tri)
    sdata = derive(swapped)
    original = sorted((1.0, data.M, data.N))
    image = sorted((1.0, sdata.M, sdata.N))
    scale = original[0]
    assert [s * scale for s in image] == pytest.approx(original, rel=1e-9)
    # longest side became the relative longest against the new unit base
    assert max(sdata.M, sdata.N) >= 1.0 - 1e-12


def test_chart_swap_maps_longest_base_chart_to_shortest_base_chart():
    tri = Triangle(0.35, 0.7)  # base is the longest side here
    swapped = chart_swap(tri)
    assert in_region((swapped.a, swapped.b), "T_prime_acute") or swapped.b >= 0.7
    round_trip = chart_swap(swapped)
    rdata = derive(round_trip)
    tdata = derive(tri)
    assert sorted((1.0, rdata.M, rdata.N)) == pytest.approx(
        sorted((1.0, tdata.M, tdata.N)), rel=1e-9
    )


def test_region_membership_is_exact_on_rationals():
    assert in_region((Fraction(1, 2), Fraction(1, 2)), "T")
    assert in_region((Fraction(1, 2), Fraction(9, 10)), "T_prime_acute")
    assert not in_region((Fraction(3, 5), Fraction(1, 2)), "T")
    # boundary of the unit circle constraint, exactly on it
    assert in_region((Fraction(5, 13), Fraction(12, 13)), "T_prime_acute")
    # a hair inside the circle falls out of the acute chart
    assert not in_region((Fraction(5, 13), Fraction(12, 13) - Fraction(1, 1000)), "T_prime_acute")
    assert in_region((Fraction(1, 10), Fraction(3, 10)), "T_obtuse")
    assert not in_region((Fraction(1, 10), Fraction(1, 2)), "T_obtuse")


def test_region_aliases_and_unknown_region():
    assert in_region((0.5, 0.9), "T'_acute") == in_region((0.5, 0.9), "T_prime_acute")
    with pytest.raises(UnknownRegion):
        in_region((0.1, 0.1), "T_second")


def test_region_ids_all_resolve():
    for rid in REGION_IDS:
        in_region((Fraction(1, 4), Fraction(1, 4)), rid)


def test_obtuse_cases_cover_the_obtuse_chart():
    n = 120
    uncovered = []
    for i in range(n + 1):
        a = Fraction(i, 2 * n)  # sweeps [0, 1/2]
        for j in range(1, n + 1):
            b = Fraction(j, 2 * n)  # sweeps (0, 1/2]
            if not in_region((a, b), "T_obtuse"):
                continue
            if not (
                in_region((a, b), "obtuse-case-1")
                or in_region((a, b), "obtuse-case-2")
                or in_region((a, b), "obtuse-case-3")
            ):
                uncovered.append((a, b))
    assert uncovered == []


def test_acute_cases_cover_the_acute_chart_window():
    n = 80
    for i in range(n + 1):
        a = Fraction(i, 2 * n)
        for j in range(n + 1):
            b = 1 + Fraction(j * 9, n)  # sweeps [1, 10]
            if not in_region((a, b), "T_prime_acute"):
                continue
            assert in_region((a, b), "acute-case-1") or in_region(
                (a, b), "acute-case-2"
            )


def test_obtuse_chart_is_the_right_angle_circle():
    # (a - 1/2)^2 + b^2 <= 1/4 is exactly b^2 <= a - a^2
    for i in range(0, 21):
        a = Fraction(i, 40)
        for j in range(1, 21):
            b = Fraction(j, 40)
            inside = in_region((a, b), "T_obtuse")
            assert inside == (b * b <= a - a * a)


def test_triangles_in_obtuse_chart_classify_as_obtuse_or_right():
    for a, b in ((0.1, 0.25), (0.3, 0.4), (0.45, 0.2)):
        if in_region((a, b), "T_obtuse"):
            cls = classify(Triangle(a, b))
            assert cls in (
                TriangleClass.Obtuse,
                TriangleClass.Right,
                TriangleClass.IsoscelesObtuse,
            )
