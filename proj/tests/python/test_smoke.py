"""Smoke tests of the python bindings: the analytic layer end to end and one
small grid round trip. The heavy numerics live in the C++ suites."""

import math

import numpy as np
import pytest

import ghartree as gh


def test_scaling_index_worked_cases():
    assert gh.scaling_index(gh.EquationParams(3, 3.0, 1.0)) == pytest.approx(0.5, abs=1e-14)
    assert gh.scaling_index(gh.EquationParams(3, 5.0, 1.0)) == pytest.approx(1.0, abs=1e-14)
    assert gh.scaling_index(gh.EquationParams(3, 7.0, 1.0)) == pytest.approx(7.0 / 6.0, abs=1e-14)
    assert gh.scaling_index(gh.EquationParams(4, 3.0, 2.0)) == pytest.approx(1.0, abs=1e-14)


def test_classify_and_pair():
    rep = gh.classify(gh.EquationParams(3, 3.0, 1.0))
    assert rep.criticality == "intercritical"
    assert rep.k == pytest.approx(1.0)
    pair = gh.canonical_pair(gh.EquationParams(3, 3.0, 1.0))
    assert pair.q == pytest.approx(6.0)
    assert pair.r == pytest.approx(18.0 / 7.0)
    with pytest.raises(ValueError):
        gh.scaling_index(gh.EquationParams(3, 1.0, 1.0))


def test_threshold_function():
    assert gh.f_threshold(1.0, 1.0) == 0.0
    assert gh.f_threshold(4.0, 1.0) == pytest.approx(-1.5)
    assert gh.f_threshold(0.25, 1.0) == pytest.approx(1.5)


def test_gaussian_observables_and_criterion():
    params = gh.EquationParams(3, 3.0, 1.0)
    g = gh.gaussian_observables(1.0, 1.0, params)
    assert g.mass == pytest.approx(math.pi ** 1.5, rel=1e-12)
    beta_b = 3 ** (9 / 8) / (2 ** 1.25 * math.pi ** 0.25)
    above = gh.gaussian_observables(beta_b * 1.01, 1.0, params)
    below = gh.gaussian_observables(beta_b * 0.99, 1.0, params)
    crit_above = gh.blowup_criterion(
        gh.CriterionInput(above.mass, above.energy, above.variance0, 0.0, params))
    crit_below = gh.blowup_criterion(
        gh.CriterionInput(below.mass, below.energy, below.variance0, 0.0, params))
    assert crit_above.holds and not crit_below.holds
    assert crit_above.state.omega == pytest.approx(0.75)


def test_threshold_solve_supercritical():
    params = gh.EquationParams(3, 7.0, 1.0)
    assert gh.threshold_solve(gh.ThresholdKind.NEGATIVE_ENERGY, params) == pytest.approx(
        1.3946799, rel=1e-6)
    assert gh.threshold_solve(gh.ThresholdKind.CRITERION_BLOWUP, params) == pytest.approx(
        1.17278, rel=1e-4)


def test_critical_constants_and_profile():
    sc = gh.critical_constants(3, 1.0)
    assert sc.grad_Q_sq_critical == pytest.approx(3 ** 1.5 * math.pi ** 1.75 / 2 ** 2.5,
                                                  rel=1e-12)
    q = gh.explicit_critical_Q(4)
    assert q.amplitude == pytest.approx(2.0 / math.sqrt(math.pi), rel=1e-12)
    assert q(0.0) == pytest.approx(q.amplitude)


def test_grid_field_round_trip_and_observables():
    gh.set_fft_threads(1)
    params = gh.EquationParams(3, 3.0, 1.0)
    grid = gh.Grid(3, 32, 10.0)
    field = gh.gaussian_field(grid, 1.0, 1.0)
    assert field.shape == (32, 32, 32)
    obs = gh.observe(grid, field, params)
    assert obs.mass == pytest.approx(math.pi ** 1.5, rel=1e-6)
    assert obs.grad_norm_sq == pytest.approx(1.5 * math.pi ** 1.5, rel=1e-6)
    assert obs.energy == pytest.approx(
        math.pi ** 1.5 / 4 * (3 - 16 * math.pi / 3 ** 3.5), rel=1e-4)


def test_riesz_convolve_matches_radial_form():
    gh.set_fft_threads(1)
    grid = gh.Grid(3, 32, 10.0)
    x = np.linspace(-10.0, 10.0, 32, endpoint=False)
    xx, yy, zz = np.meshgrid(x, x, x, indexing="ij", sparse=True)
    r2 = xx**2 + yy**2 + zz**2
    density = np.exp(-r2).astype(complex)
    v = gh.riesz_convolve(grid, density, 1.0)
    r = math.sqrt(x[16 + 4] ** 2)  # a point at |x| = 2.5 on the axis
    exact = math.pi ** 1.5 * math.erf(r) / r
    assert v[16 + 4, 16, 16] == pytest.approx(exact, rel=1e-3)


def test_small_evolution_disperses():
    gh.set_fft_threads(1)
    params = gh.EquationParams(3, 3.0, 1.0)
    grid = gh.Grid(3, 24, 10.0)
    rec = gh.evolve_gaussian(params, grid, beta=0.4, gamma=1.0, dt0=0.02, t_end=0.5)
    assert rec.status == "reached-t-end"
    assert rec.final_grad_norm < rec.initial_grad_norm
    assert rec.samples[0].mass == pytest.approx(rec.samples[-1].mass, rel=1e-10)
