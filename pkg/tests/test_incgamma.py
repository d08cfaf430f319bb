"""Upper incomplete gamma: closed forms, the shift recurrence, mpmath oracle."""

import math

import mpmath as mp
import numpy as np
import pytest

from addtwist import upper_incomplete_gamma, upper_incomplete_gamma_array
from addtwist import _kernels_numpy as knp

try:
    from addtwist import _kernels_numba as knb
except ImportError:  # pragma: no cover
    knb = None

mp.mp.dps = 40


def test_closed_form_s1():
    for x in (0.5, 1.0, 5.0):
        assert upper_incomplete_gamma(1.0, x) == pytest.approx(
            math.exp(-x), rel=1e-14
        )


def test_limit_at_zero():
    # Gamma(3, x) -> Gamma(3) = 2 as x -> 0+
    assert abs(upper_incomplete_gamma(3.0, 1e-8) - 2.0) < 1e-6


def test_integer_s_closed_form():
    # Gamma(n, x) = (n-1)! e^-x sum_{j<n} x^j/j!
    expected = 24 * math.exp(-10) * (1 + 10 + 50 + 1000 / 6 + 10000 / 24)
    assert upper_incomplete_gamma(5.0, 10.0) == pytest.approx(expected, rel=1e-13)


def test_domain_errors():
    with pytest.raises(ValueError):
        upper_incomplete_gamma(0.0, 1.0)
    with pytest.raises(ValueError):
        upper_incomplete_gamma(-1.0, 1.0)
    with pytest.raises(ValueError):
        upper_incomplete_gamma(1.0, 0.0)
    with pytest.raises(ValueError):
        upper_incomplete_gamma_array(1.0, [1.0, -2.0])


def test_shift_recurrence_on_log_grid():
    # Gamma(s+1, x) = s Gamma(s, x) + x^s e^-x, relative residual <= 1e-12
    for s in (0.5, 1.0, 2.5, 5.0, 7.5, 11.0):
        for x in np.geomspace(1e-3, 60.0, 25):
            lhs = upper_incomplete_gamma(s + 1, float(x))
            rhs = s * upper_incomplete_gamma(s, float(x)) + x**s * math.exp(-x)
            assert abs(lhs - rhs) <= 1e-12 * abs(lhs)


def test_against_mpmath_reference():
    # target relative accuracy 1e-13 on the evaluator's working ranges
    for s in (0.25, 0.5, 1.0, 2.0, 3.5, 6.0, 7.5, 11.0, 12.0):
        for x in np.geomspace(1e-8, 300.0, 40):
            got = upper_incomplete_gamma(float(s), float(x))
            ref = float(mp.gammainc(mp.mpf(s), mp.mpf(float(x)), mp.inf))
            assert abs(got - ref) <= 1e-13 * abs(ref), (s, x)


def test_s_zero_kernel_is_e1():
    # internal s = 0 branch (exponential integral), used by completed twists
    for x in np.geomspace(1e-6, 50.0, 30):
        got = knp.gamma_upper(0.0, float(x))
        ref = float(mp.e1(mp.mpf(float(x))))
        assert abs(got - ref) <= 1e-13 * abs(ref)


def test_array_matches_scalar():
    xs = np.geomspace(1e-4, 80.0, 101)
    arr = upper_incomplete_gamma_array(6.0, xs)
    for i, x in enumerate(xs):
        assert arr[i] == upper_incomplete_gamma(6.0, float(x))


@pytest.mark.skipif(knb is None, reason="numba backend unavailable")
def test_backends_agree():
    xs = np.geomspace(1e-6, 200.0, 200)
    for s in (0.0, 0.5, 1.0, 3.0, 6.0, 11.5):
        a = knp.gamma_upper_array(s, xs)
        b = knb.gamma_upper_array(s, xs)
        assert np.max(np.abs(a - b) / np.abs(a)) < 1e-13


@pytest.mark.skipif(knb is None, reason="numba backend unavailable")
def test_lambda_series_backends_agree():
    rng = np.random.default_rng(7)
    m = 3000
    u = (2 * np.pi / 101.0) * np.arange(1.0, m + 1.0)
    coeffs = rng.standard_normal(m) * np.arange(1.0, m + 1.0) ** 5.5
    ph1 = np.exp(2j * np.pi * rng.random(m))
    ph2 = np.exp(2j * np.pi * rng.random(m))
    a = knp.lambda_series(coeffs, ph1, ph2, u, 6.0, 12.0, 1.0)
    b = knb.lambda_series(coeffs, ph1, ph2, u, 6.0, 12.0, 1.0)
    assert abs(a - b) <= 1e-12 * abs(a)
