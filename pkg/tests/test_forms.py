"""Forms: exact coefficients, bounds, point evaluation, Fricke eigenvalue."""

import math
from math import gcd

import numpy as np
import pytest

import addtwist as at
from addtwist import PrecisionError
from addtwist.forms import hecke_ratio


# -- independent oracle: naive schoolbook eta-product ------------------------

def naive_tau(n_max):
    """tau(1..n_max) by naive polynomial powering (no Kronecker packing)."""
    length = n_max

    def mul(a, b):
        out = [0] * length
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                if i + j >= length:
                    break
                if bj:
                    out[i + j] += ai * bj
        return out

    euler = [0] * length
    euler[0] = 1
    for m in range(1, length):
        factor = [0] * length
        factor[0] = 1
        if m < length:
            factor[m] = -1
        euler = mul(euler, factor)
    power = euler
    for _ in range(23):
        power = mul(power, euler)
    return power[:n_max]


def test_tau_against_naive_expansion():
    form = at.delta_coefficients(50)
    expected = naive_tau(50)
    for n in range(1, 51):
        assert form.coefficient(n) == expected[n - 1]


def test_tau_small_values():
    form = at.delta_coefficients(10)
    assert form.coefficient(1) == 1
    assert form.coefficient(2) == -24
    assert form.coefficient(3) == 252
    assert form.coefficient(6) == form.coefficient(2) * form.coefficient(3)


def test_tau_multiplicativity_exact(delta):
    for m in range(2, 46):
        for n in range(2, 46):
            if gcd(m, n) == 1:
                assert delta.coefficient(m * n) == delta.coefficient(
                    m
                ) * delta.coefficient(n)


def test_deligne_ratio(delta, e11):
    assert at.forms.deligne_ratio(delta, 2000) <= 1.0
    assert at.forms.deligne_ratio(e11, 2000) <= 1.0


def test_hecke_mean_square_ratio_bounded(delta, e11):
    # sum_{n<=X} a(n)^2 / X^k stays below one constant across the X grid
    for form, cap in ((delta, 0.05), (e11, 1.0)):
        ratios = [hecke_ratio(form, x) for x in (10, 100, 1000, 10000)]
        assert max(ratios) < cap


def test_table_extension(delta):
    small = at.delta_coefficients(5)
    assert small.n_available == 5
    assert small.coefficient(20) == delta.coefficient(20)
    assert small.n_available >= 20


# -- elliptic curve newform ---------------------------------------------------

def brute_affine_count(curve, p):
    cnt = 0
    for x in range(p):
        for y in range(p):
            lhs = y * y + curve.a1 * x * y + curve.a3 * y
            rhs = x**3 + curve.a2 * x * x + curve.a4 * x + curve.a6
            if (lhs - rhs) % p == 0:
                cnt += 1
    return cnt


def test_curve_ap_against_brute_force(e11):
    for p in (2, 3, 5, 7, 13, 17):
        expected = p + 1 - (brute_affine_count(at.CURVE_11A, p) + 1)
        assert e11.coefficient(p) == expected


def test_curve_small_values(e11):
    assert e11.coefficient(2) == -2
    assert e11.coefficient(4) == e11.coefficient(2) ** 2 - 2
    assert e11.coefficient(11) == 1
    assert e11.coefficient(121) == 1


def test_curve_eta_product_oracle(e11):
    # the level-11 weight-2 form is also q prod (1-q^n)^2 (1-q^11n)^2
    length = 40

    def mul(a, b):
        out = [0] * length
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if i + j >= length:
                        break
                    if bj:
                        out[i + j] += ai * bj
        return out

    f1 = [0] * length
    f1[0] = 1
    for m in range(1, length):
        factor = [0] * length
        factor[0] = 1
        factor[m] = -1
        f1 = mul(f1, factor)
    f11 = [0] * length
    f11[0] = 1
    for m in range(1, length):
        if 11 * m >= length:
            break
        factor = [0] * length
        factor[0] = 1
        factor[11 * m] = -1
        f11 = mul(f11, factor)
    prod = mul(mul(f1, f1), mul(f11, f11))
    for n in range(1, length + 1):
        if n - 1 < length:
            assert e11.coefficient(n) == prod[n - 1]


def test_curve_multiplicativity(e11):
    for m in range(2, 40):
        for n in range(2, 40):
            if gcd(m, n) == 1:
                assert e11.coefficient(m * n) == e11.coefficient(m) * e11.coefficient(n)


def test_model_validation():
    with pytest.raises(ValueError, match="discriminant 0"):
        at.EllipticCurveModel(0, 0, 0, 0, 0, 11, {11: 1})
    with pytest.raises(ValueError, match="missing bad-prime"):
        at.EllipticCurveModel(0, -1, 1, -10, -20, 11, {})
    with pytest.raises(ValueError, match="must be in"):
        at.EllipticCurveModel(0, -1, 1, -10, -20, 11, {11: 2})


def test_conductor_mismatch_rejected():
    # same curve but declared at a conductor missing the prime 11
    bad = at.EllipticCurveModel(0, -1, 1, -10, -20, 7, {7: 1})
    with pytest.raises(ValueError, match="model/conductor mismatch"):
        at.newform_from_curve(bad, 10)


# -- point evaluation ---------------------------------------------------------

def test_evaluate_form_real_on_imaginary_axis(delta):
    for y in (0.5, 1.0, 2.0):
        val = at.evaluate_form(delta, complex(0.0, y), 1e-12)
        assert abs(val.imag) < 1e-12


def test_evaluate_form_periodicity(delta):
    z = complex(0.3, 0.8)
    a = at.evaluate_form(delta, z, 1e-12)
    b = at.evaluate_form(delta, z + 1, 1e-12)
    assert abs(a - b) <= 2e-12


def test_evaluate_form_direct_oracle(delta):
    z = complex(0.0, 1.0)
    direct = sum(
        delta.coefficient(n) * math.exp(-2 * math.pi * n) for n in range(1, 51)
    )
    assert abs(at.evaluate_form(delta, z, 1e-12) - direct) < 1e-12


def test_evaluate_form_precision_ceiling(delta):
    with pytest.raises(PrecisionError):
        at.evaluate_form(delta, complex(0.0, 1e-7), 1e-12, max_terms=100_000)


# -- Fricke eigenvalue --------------------------------------------------------

def test_fricke_level_one(delta):
    assert at.fricke_eigenvalue(delta) == 1


def test_fricke_level_eleven(e11):
    omega = at.fricke_eigenvalue(e11)
    assert omega == -1
    assert omega * omega == 1


def test_coefficient_csv_export(tmp_path, delta):
    path = tmp_path / "coeffs.csv"
    with open(path, "w", newline="") as fh:
        delta.export_coefficients_csv(fh, 5)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "n,a"
    assert lines[1] == "1,1"
    assert lines[2] == "2,-24"
