import numpy as np
import pytest
from hypothesis import given, strategies as st

from hb_lab.disk import binomial_series
from hb_lab.fspec import FSpecError, degree, parse_fspec, power_of_one_minus_z


@pytest.mark.parametrize("text,coeffs", [
    ("1", [1]), ("0", [0]), ("z", [0, 1]), ("z^2", [0, 0, 1]), ("2z", [0, 2]),
    ("1+2z-z^3", [1, 2, 0, -1]), ("z(1-z)", [0, 1, -1]), ("(1-z)**2", [1, -2, 1]),
    ("-z + 3", [3, -1]), ("2*z*z", [0, 0, 2]), ("1.5e-1", [0.15]),
])
def test_polynomials(text, coeffs):
    spec = parse_fspec(text)
    assert spec.is_polynomial
    assert np.allclose(spec(6)[: len(coeffs)], coeffs) and np.allclose(spec(6)[len(coeffs):], 0)


def test_fractional_powers():
    assert np.allclose(parse_fspec("(1-z)^0.1")(32), binomial_series(0.1, 32).coeffs)
    assert np.allclose(parse_fspec("(1-z)^-0.5")(32), binomial_series(-0.5, 32).coeffs)
    got = parse_fspec("z(1-z)^0.2")(16)
    assert got[0] == 0 and np.allclose(got[1:], binomial_series(0.2, 15).coeffs)
    scaled = parse_fspec("(2-z)^0.5")(16)
    assert np.allclose(scaled, np.sqrt(2) * binomial_series(0.5, 16).coeffs * 0.5 ** np.arange(16))
    assert not parse_fspec("(1-z)^1.5").is_polynomial


def test_degree():
    assert degree(parse_fspec("1+2z-z^3")) == 3
    assert degree(parse_fspec("(1-z)^0.3")) is None


def test_power_helper():
    assert np.allclose(power_of_one_minus_z(0.7)(10), binomial_series(0.7, 10).coeffs)


@pytest.mark.parametrize("text", ["", "1+", "(1-z", "z^z", "x", "(1-2z)^0.5", "z^0.5", "(1+z+z^2)^0.5", "1)"])
def test_rejects(text):
    with pytest.raises(FSpecError):
        parse_fspec(text)


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=5))
def test_polynomial_round_trip(coeffs):
    text = " + ".join(f"({c})*z^{k}" for k, c in enumerate(coeffs))
    assert np.allclose(parse_fspec(text)(8)[: len(coeffs)], coeffs)


@given(st.floats(-2, 2), st.floats(-2, 2))
def test_power_product_rule(a, b):
    lhs = parse_fspec(f"(1-z)^{a!r} (1-z)^{b!r}")(64)
    assert np.allclose(lhs, binomial_series(a + b, 64).coeffs, atol=1e-9)
