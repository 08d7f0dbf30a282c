import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.integrate import quad

from hb_lab.disk import (
    BoundarySamples,
    CoeffSeries,
    NotLogIntegrable,
    binomial_series,
    cauchy_product,
    disk_point,
    evaluate,
    fourier_coefficients,
    make_grid,
    outer_from_log_modulus,
    project_minus,
    project_plus,
    series_exp,
    series_log,
    series_reciprocal,
    shift_star,
    synthesize,
)

coeff = st.floats(-2, 2, allow_nan=False)
alphas = st.floats(0.05, 3.0)


def test_midpoint_nodes():
    g = make_grid(8)
    assert np.allclose(g.nodes, np.pi / 8 * np.arange(1, 16, 2))
    assert make_grid(4096).spacing == pytest.approx(2 * np.pi / 4096, rel=1e-15)
    with pytest.raises(ValueError):
        make_grid(5)


def test_project_plus_examples():
    g = make_grid(64)
    t = g.nodes
    got = project_plus(BoundarySamples(g, np.exp(1j * t)), 4).coeffs
    assert np.allclose(got, [0, 1, 0, 0], atol=1e-14)
    assert np.allclose(project_plus(BoundarySamples(g, np.exp(-1j * t)), 4).coeffs, 0, atol=1e-14)
    got = project_plus(BoundarySamples(g, 2 - 2 * np.cos(t)), 4).coeffs
    assert np.allclose(got, [2, -1, 0, 0], atol=1e-14)


def test_project_plus_rejects_degree_above_half_grid():
    g = make_grid(16)
    with pytest.raises(ValueError):
        project_plus(BoundarySamples(g, np.ones(16)), 9)


def test_project_minus_examples():
    g = make_grid(64)
    t = g.nodes
    em = np.exp(-1j * t)
    assert np.allclose(project_minus(BoundarySamples(g, em)).values, em, atol=1e-14)
    assert np.allclose(project_minus(BoundarySamples(g, np.exp(1j * t))).values, 0, atol=1e-14)
    assert np.allclose(project_minus(BoundarySamples(g, np.ones(64))).values, 0, atol=1e-14)


def test_outer_examples():
    g = make_grid(1024)
    assert outer_from_log_modulus(BoundarySamples(g, np.ones(1024)), 0.3 + 0.2j) == pytest.approx(1)
    assert outer_from_log_modulus(BoundarySamples(g, np.full(1024, 2.5)), 0) == pytest.approx(2.5)


def test_outer_of_distance_to_one_at_origin():
    # Oracle: the mean of log|1 - e^{it}| by adaptive quadrature.
    mean = quad(lambda t: math.log(abs(1 - np.exp(1j * t))), 0, 2 * np.pi, points=[np.pi], limit=200)[0]
    assert abs(mean) < 1e-8
    g = make_grid(2 ** 16)
    val = outer_from_log_modulus(BoundarySamples(g, np.abs(1 - g.points)), 0)
    assert abs(val - math.exp(mean / (2 * np.pi))) < 1e-3


def test_outer_rejects_nonpositive():
    g = make_grid(16)
    vals = np.ones(16)
    vals[3] = 0
    with pytest.raises(ValueError):
        outer_from_log_modulus(BoundarySamples(g, vals), 0)
    vals[3] = -1
    with pytest.raises(ValueError):
        outer_from_log_modulus(BoundarySamples(g, vals), 0)
    vals[3] = np.inf
    with pytest.raises(NotLogIntegrable):
        outer_from_log_modulus(BoundarySamples(g, vals), 0)


def test_binomial_examples():
    assert np.allclose(binomial_series(0.5, 4).coeffs, [1, -0.5, -0.125, -0.0625])
    assert np.allclose(binomial_series(1.0, 3).coeffs, [1, -1, 0])


def test_evaluate_examples():
    assert evaluate(CoeffSeries([1, -1, 0]), 0.5) == pytest.approx(0.5)
    assert evaluate(binomial_series(0.5, 100), 0) == pytest.approx(1)
    for r in (0.1, 0.5, 0.9):
        assert evaluate(binomial_series(1.0, 100), r) == pytest.approx(1 - r)


def test_evaluate_derivative():
    s = binomial_series(2.0, 10)
    assert evaluate(s, 0.3, derivative=1) == pytest.approx(-2 * 0.7)
    assert evaluate(s, 0.3, derivative=2) == pytest.approx(2)


def test_shift_star_examples():
    assert np.allclose(shift_star(CoeffSeries([1, 2, 3])).coeffs[:2], [2, 3])
    assert np.allclose(shift_star(binomial_series(1, 8)).coeffs, np.r_[-1, np.zeros(6)][: len(shift_star(binomial_series(1, 8)))])
    assert evaluate(shift_star(binomial_series(0.7, 50)), 0) == pytest.approx(-0.7)


def test_disk_point_rejects_boundary():
    with pytest.raises(ValueError):
        disk_point(1.0)
    assert disk_point(0.5j) == 0.5j


@given(st.lists(coeff, min_size=1, max_size=32), st.lists(coeff, min_size=1, max_size=32))
def test_polynomial_recovery(re, im):
    n = min(len(re), len(im))
    c = np.array(re[:n]) + 1j * np.array(im[:n])
    g = make_grid(128)
    got = project_plus(synthesize(CoeffSeries(c), g), 32).coeffs
    assert np.allclose(got[:n], c, atol=1e-12)
    assert np.allclose(got[n:], 0, atol=1e-12)


@given(st.lists(coeff, min_size=8, max_size=8))
def test_projection_idempotent(vals):
    g = make_grid(64)
    rng = np.random.default_rng(len(vals))
    w = BoundarySamples(g, rng.normal(size=64) + np.interp(np.arange(64), np.arange(8) * 9, vals))
    once = project_plus(w, 32)
    twice = project_plus(synthesize(once, g), 32)
    assert np.allclose(once.coeffs, twice.coeffs, atol=1e-13)


@given(st.floats(0.2, 3.0), st.floats(0.6, 3.0), st.floats(0, 0.9), st.floats(0, 2 * np.pi))
def test_outer_multiplicative_and_positive_at_origin(c1, c2, r, theta):
    g = make_grid(512)
    t = g.nodes
    w1 = BoundarySamples(g, c1 + np.cos(t) ** 2)
    w2 = BoundarySamples(g, c2 + 0.5 * np.sin(3 * t))
    z = r * np.exp(1j * theta) * 0.9
    prod = outer_from_log_modulus(w1 * w2, z)
    assert prod == pytest.approx(outer_from_log_modulus(w1, z) * outer_from_log_modulus(w2, z), rel=1e-10)
    at0 = outer_from_log_modulus(w1, 0)
    assert abs(np.imag(at0)) < 1e-12 and np.real(at0) > 0


@given(alphas, alphas)
def test_binomial_product(a, b):
    M = 256
    prod = cauchy_product(binomial_series(a, M), binomial_series(b, M), M).coeffs
    assert np.allclose(prod[: M // 2], binomial_series(a + b, M).coeffs[: M // 2], atol=1e-10)


@given(st.lists(coeff, min_size=1, max_size=6))
def test_series_exp_log_round_trip(vals):
    c = np.array(vals) * 0.2
    c[0] = 0
    e = series_exp(CoeffSeries(c), 32)
    assert np.allclose(series_log(e, 32).coeffs[: len(c)], c, atol=1e-12)
    inv = series_reciprocal(e, 32)
    assert np.allclose(cauchy_product(e, inv, 32).coeffs, np.r_[1, np.zeros(31)], atol=1e-12)


def test_fourier_coefficients_of_cosine():
    g = make_grid(64)
    got = fourier_coefficients(BoundarySamples(g, np.cos(g.nodes)), [-1, 0, 1, 2])
    assert np.allclose(got, [0.5, 0, 0.5, 0], atol=1e-14)


def test_coeff_series_rejects_nonfinite():
    with pytest.raises(ValueError):
        CoeffSeries([1, np.nan])
