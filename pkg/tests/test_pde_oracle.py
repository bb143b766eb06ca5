"""Finite element oracle: convergence, invariances, and failure modes."""

import math

import pytest

from polya_verify.closed_forms import (
    bessel_first_zero,
    equilateral_exact,
    rect_torsion,
    sector_torsion,
)
from polya_verify.geometry import Rectangle, Sector, Triangle
from polya_verify.pde_oracle import (
    MAX_LEVEL,
    LevelTooHigh,
    NonContracting,
    SpectralResult,
    mesh_domain,
    refine,
    richardson,
    solve_lambda1,
    solve_torsion,
    spectral,
)

EQ_B = math.sqrt(3.0) / 2.0


def test_equilateral_convergence_at_level_six():
    truth = equilateral_exact()
    res = spectral(Triangle(0.5, EQ_B), max_level=6)
    assert isinstance(res, SpectralResult)
    assert res.lambda1 == pytest.approx(truth["lambda1"], rel=1e-3)
    assert res.T == pytest.approx(truth["T"], rel=1e-3)
    assert res.F == pytest.approx(truth["F"], rel=1e-3)
    assert res.torsion_max == pytest.approx(1.0 / 36.0, rel=5e-3)
    assert res.area == pytest.approx(math.sqrt(3.0) / 4.0, rel=1e-12)


def test_square_convergence_at_level_six():
    res = spectral(Rectangle(0.5, 0.5), max_level=6)
    assert res.lambda1 == pytest.approx(2.0 * math.pi**2, rel=1e-3)
    truth = rect_torsion(Rectangle(0.5, 0.5), n_terms=128)
    assert res.T == pytest.approx(truth.value, rel=1e-3)


def test_sector_convergence_with_boundary_projection():
    sec = Sector(math.pi / 3.0, 1.0)
    res = spectral(sec, max_level=6)
    lam_truth = bessel_first_zero(3.0) ** 2
    tor_truth = sector_torsion(sec, n_terms=128)
    assert res.lambda1 == pytest.approx(lam_truth, rel=5e-3)
    assert res.T == pytest.approx(tor_truth.value, rel=5e-3)
    assert res.area == pytest.approx(math.pi / 6.0, rel=1e-12)


def test_conforming_bounds_bracket_the_truth_per_level():
    truth = equilateral_exact()
    res = spectral(Triangle(0.5, EQ_B), max_level=6)
    lam_levels = res.per_level["lambda1"]
    tor_levels = res.per_level["T"]
    # conforming elements: eigenvalues from above, torsion energy from below
    assert all(lam >= truth["lambda1"] for lam in lam_levels)
    assert all(tor <= truth["T"] for tor in tor_levels)
    assert all(a >= b for a, b in zip(lam_levels, lam_levels[1:]))
    assert all(a <= b for a, b in zip(tor_levels, tor_levels[1:]))


def test_error_gauges_bound_the_true_error_at_the_equilateral():
    truth = equilateral_exact()
    res = spectral(Triangle(0.5, EQ_B), max_level=6)
    assert abs(res.lambda1 - truth["lambda1"]) <= 10.0 * res.error_gauge["lambda1"]
    assert res.error_gauge["lambda1"] > 0.0
    assert res.error_gauge["T"] > 0.0
    assert res.error_gauge["F"] >= 0.0


def test_dilation_invariance_of_the_functional():
    small = spectral(Rectangle(0.5, 0.5), max_level=5)
    big = spectral(Rectangle(1.0, 1.0), max_level=5)
    assert big.F == pytest.approx(small.F, rel=1e-10)
    assert big.lambda1 == pytest.approx(small.lambda1 / 4.0, rel=1e-10)
    assert big.T == pytest.approx(16.0 * small.T, rel=1e-10)


def test_levels_and_h_sequence_shape():
    res = spectral(Triangle(0.3, 0.5), max_level=5)
    assert res.levels == (3, 4, 5)
    assert len(res.h_sequence) == 3
    assert res.h_sequence[0] > res.h_sequence[1] > res.h_sequence[2]
    assert res.h_sequence[1] == pytest.approx(res.h_sequence[0] / 2.0, rel=1e-12)


def test_mesh_refinement_quadruples_elements():
    mesh = mesh_domain(Triangle(0.4, 0.6), level=3)
    fine, parents = refine(mesh)
    assert fine.elements.shape[0] == 4 * mesh.elements.shape[0]
    assert fine.level == mesh.level + 1
    # one parent pair per new midpoint vertex
    assert parents.shape == (fine.vertices.shape[0] - mesh.vertices.shape[0], 2)


def test_single_level_solvers_run_standalone():
    mesh = mesh_domain(Rectangle(0.5, 0.5), level=4)
    lam = solve_lambda1(mesh)
    tor = solve_torsion(mesh)
    assert lam == pytest.approx(2.0 * math.pi**2, rel=2e-2)
    assert tor["T"] == pytest.approx(0.035144, rel=2e-2)
    assert tor["torsion_max"] <= 0.0736713  # conforming nodal max from below


def test_richardson_extrapolation_recovers_quadratic_limits():
    limit = 3.7
    values = [limit + 0.9 * 4.0 ** (-k) for k in range(4)]
    out = richardson(values)
    assert out["estimate"] == pytest.approx(limit, abs=1e-12)
    assert out["observed_order"] == pytest.approx(2.0, abs=1e-9)
    assert out["error_gauge"] >= 0.0


def test_richardson_rejects_noncontracting_sequences():
    with pytest.raises(NonContracting):
        richardson([1.0, 1.1, 1.4])
    with pytest.raises(ValueError):
        richardson([1.0, 2.0])


def test_level_limits_are_enforced():
    with pytest.raises(LevelTooHigh):
        spectral(Triangle(0.5, 0.5), max_level=MAX_LEVEL + 1)
    with pytest.raises(ValueError):
        spectral(Triangle(0.5, 0.5), max_level=1)


def test_thin_triangle_still_solves():
    res = spectral(Triangle(0.5, 0.05), max_level=7)
    assert res.F > math.pi**2 / 24.0
    assert res.F < 0.55
