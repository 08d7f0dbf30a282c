import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.integrate import quad

from hb_lab.disk import BoundarySamples, CoeffSeries, binomial_series, evaluate, make_grid
from hb_lab.pairs import (
    blaschke_series,
    blaschke_value,
    corona_bound,
    expansion_exponents,
    mate_of_outer,
    pair_alpha,
    pair_from_phi,
    pair_to_dict,
    radial_limit_at_one,
    sandwich_check,
    tilde_pair,
    wynn_epsilon,
)

ALPHAS = (0.25, 0.5, 1.0, 1.5, 2.0, 2.5)


def _disk(rng, count, radius=0.95):
    return radius * np.sqrt(rng.uniform(size=count)) * np.exp(2j * np.pi * rng.uniform(size=count))


@pytest.mark.parametrize("alpha", ALPHAS)
def test_pair_invariants(pair_cache, alpha):
    p = pair_cache(alpha)
    assert p.pyth_residual() <= 1e-8
    assert p.corona_min() >= corona_bound(alpha) - 1e-9
    assert p.quotient_residual() <= 1e-10
    assert p.a_series.coeffs[0].real > 0 and abs(p.a_series.coeffs[0].imag) < 1e-14
    r = np.linspace(0.1, 0.9, 9)
    assert np.max(np.abs(np.imag(p.b(r)))) <= 1e-8


def test_golden_ratio_value(pair_cache):
    # Oracle: b_1(0) from the mean of log|b_1| by adaptive quadrature.
    def log_b(t):
        s = 4 * math.sin(t / 2) ** 2
        return -0.5 * math.log1p(1 / s)
    mean = quad(log_b, 0, math.pi, limit=400)[0] / math.pi
    assert math.exp(mean) == pytest.approx(((3 + math.sqrt(5)) / 2) ** -0.5, abs=1e-9)
    assert abs(pair_cache(1.0).b(0) - math.exp(mean)) <= 1e-6


def test_corona_bound_value():
    assert corona_bound(1.0) == pytest.approx(5 ** -0.5)


def test_pair_alpha_rejects_nonpositive():
    with pytest.raises(ValueError):
        pair_alpha(-1.0, make_grid(64))
    with pytest.raises(ValueError):
        pair_alpha(0.0, make_grid(64))


def test_constant_quotient():
    g = make_grid(512)
    p = pair_from_phi(BoundarySamples(g, np.ones(512)), CoeffSeries([1.0]), g)
    for z in (0, 0.3, -0.5j):
        assert p.a(z) == pytest.approx(2 ** -0.5)
        assert p.b(z) == pytest.approx(2 ** -0.5)


def test_zero_quotient_rejected():
    g = make_grid(64)
    with pytest.raises(ValueError):
        pair_from_phi(BoundarySamples(g, np.zeros(64)), CoeffSeries([0.0]), g)


def test_generic_quotient_matches_alpha_pair(grid4096, pair_cache):
    rng = np.random.default_rng(3)
    z = _disk(rng, 20)
    ref = pair_cache(1.0)
    p = pair_from_phi(BoundarySamples(grid4096, np.abs(1 - grid4096.points) ** -1.0),
                      lambda M: binomial_series(-1.0, M).coeffs, grid4096)
    assert np.max(np.abs(p.a(z) - ref.a(z))) <= 1e-8
    assert np.max(np.abs(p.b(z) - ref.b(z))) <= 1e-8


@pytest.mark.parametrize("alpha", (0.5, 1.5, 2.5))
def test_generic_quotient_outer_route(grid4096, pair_cache, alpha):
    rng = np.random.default_rng(4)
    z = _disk(rng, 20)
    ref = pair_cache(alpha)
    p = pair_from_phi(BoundarySamples(grid4096, np.abs(1 - grid4096.points) ** -alpha),
                      lambda M: binomial_series(-alpha, M).coeffs, grid4096, route="b")
    assert np.max(np.abs(p.b(z) - ref.b(z))) <= 1e-6


def test_mate_of_constant():
    g = make_grid(256)
    p = mate_of_outer(BoundarySamples(g, np.full(256, 2 ** -0.5)), g)
    assert p.b(0.4) == pytest.approx(2 ** -0.5)
    assert p.pyth_residual() < 1e-14


def test_tilde_pair_is_corona(grid4096):
    p = tilde_pair(1.0, grid4096)
    assert p.pyth_residual() <= 1e-8
    r = np.linspace(0, 0.999, 40)[:, None] * np.exp(1j * np.linspace(0, 2 * np.pi, 48))[None, :]
    assert np.min(np.abs(p.a(r.ravel())) + np.abs(p.b(r.ravel()))) > 0.5


@pytest.mark.parametrize("alpha", (0.5, 1.0, 2.5))
def test_b_alpha_tends_to_one(pair_cache, alpha):
    lim = radial_limit_at_one(pair_cache(alpha))
    assert abs(lim.value - 1) <= 1e-3


def test_radial_limit_of_vanishing_factor():
    h = CoeffSeries([1.0, 0.5, -0.25])
    for alpha in (0.3, 1.0, 1.7):
        f = CoeffSeries(np.convolve(binomial_series(alpha, 2 ** 16).coeffs, h.coeffs)[: 2 ** 16])
        lim = radial_limit_at_one(f, 0, exponents=expansion_exponents(alpha, 0))
        assert abs(lim.value) <= 1e-4


def test_radial_derivative_of_constant():
    for k in (1, 2):
        assert abs(radial_limit_at_one(CoeffSeries([3.0]), k).value) <= 1e-12


def test_wynn_accelerates_geometric_tail():
    seq = [1 - 0.5 ** j for j in range(1, 10)]
    est = wynn_epsilon(seq)
    assert abs(est[-1] - 1) < 1e-12


def test_sandwich_at_random_points(pair_cache):
    rng = np.random.default_rng(5)
    for alpha in (0.5, 2.0):
        p = pair_cache(alpha)
        assert all(sandwich_check(p, z).ok for z in _disk(rng, 10, 0.99))


def test_sandwich_needs_alpha_pair():
    g = make_grid(64)
    p = mate_of_outer(BoundarySamples(g, np.full(64, 0.5)), g)
    with pytest.raises(ValueError):
        sandwich_check(p, 0.1)


@given(st.complex_numbers(max_magnitude=0.9), st.floats(0, 2 * np.pi))
def test_blaschke_factor_unimodular_on_circle(c, t):
    u = blaschke_value([c], np.exp(1j * t))
    assert abs(abs(u) - 1) < 1e-12
    assert abs(blaschke_value([c], c)) < 1e-12


def test_blaschke_series_matches_values():
    zeros = [0.5, -0.2j]
    s = blaschke_series(zeros, 200)
    for z in (0.1, 0.3 + 0.4j):
        assert evaluate(s, z) == pytest.approx(blaschke_value(zeros, z), abs=1e-13)


def test_with_blaschke_factor(pair_cache):
    p = pair_cache(1.0).with_blaschke_factor([0.5])
    assert p.pyth_residual() <= 1e-8
    assert p.quotient_residual() <= 1e-10
    z = 0.3 - 0.2j
    assert p.b(z) == pytest.approx(pair_cache(1.0).b(z) * blaschke_value([0.5], z))
    with pytest.raises(ValueError):
        pair_cache(1.0).with_blaschke_factor([1.0])


def test_pair_document_fields(pair_cache):
    doc = pair_to_dict(pair_cache(1.0))
    assert list(doc) == ["alpha", "n_points", "M", "a_coeffs", "b_coeffs", "diagnostics"]
    assert doc["diagnostics"]["corona_min"] >= 0.4472
