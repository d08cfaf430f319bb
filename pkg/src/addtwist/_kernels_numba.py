"""numba-compiled scalar-loop implementations of the hot numeric kernels.

Default backend (see `addtwist.backend`). Same algorithms as
`_kernels_numpy`: power series / Lentz continued fraction for the upper
incomplete gamma, E1 log series at s = 0, and tight loops with Neumaier
compensated summation for the twisted double series.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

BACKEND = "numba"

_EPS = 1e-15
_FPMIN = 1e-300
_MAX_ITER = 500
_EULER = 0.57721566490153286060651209008240243


@njit(cache=True)
def gamma_upper(s: float, x: float) -> float:
    """Gamma(s, x) for s >= 0, x > 0."""
    if x <= 0.0:
        return math.nan
    if s == 0.0 and x < 1.5:
        # E1 log series
        total = -_EULER - math.log(x) + x
        term = x
        for n in range(2, _MAX_ITER):
            term *= -x * (n - 1) / (n * n)
            total += term
            if abs(term) < abs(total) * _EPS:
                break
        return total
    if s > 0.0 and x < s + 1.0:
        # regularized lower series, then complement
        ap = s
        term = 1.0 / s
        total = term
        for _ in range(_MAX_ITER):
            ap += 1.0
            term *= x / ap
            total += term
            if abs(term) < abs(total) * _EPS:
                break
        p = total * math.exp(-x + s * math.log(x) - math.lgamma(s))
        return math.gamma(s) * (1.0 - p)
    # Lentz continued fraction (x >= s + 1, also covers s = 0 with x >= 1.5)
    b = x + 1.0 - s
    c = 1.0 / _FPMIN
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER + 1):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = b + an / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return math.exp(-x + s * math.log(x)) * h


@njit(cache=True)
def gamma_upper_array(s: float, x: np.ndarray) -> np.ndarray:
    out = np.empty_like(x)
    for i in range(x.shape[0]):
        out[i] = gamma_upper(s, x[i])
    return out


@njit(cache=True)
def lambda_series(
    coeffs: np.ndarray,
    ph1: np.ndarray,
    ph2: np.ndarray,
    u: np.ndarray,
    s: float,
    k: float,
    sign2: float,
) -> complex:
    """Accumulate the completed-twist double series with Neumaier compensation.

    sum_n coeffs[n] * (ph1[n] * u^-s * Gamma(s,u) + sign2 * ph2[n] * u^(s-k) * Gamma(k-s,u))
    """
    tot_re = 0.0
    comp_re = 0.0
    tot_im = 0.0
    comp_im = 0.0
    for i in range(u.shape[0]):
        ui = u[i]
        w1 = ui ** (-s) * gamma_upper(s, ui)
        w2 = sign2 * ui ** (s - k) * gamma_upper(k - s, ui)
        a = coeffs[i]
        t_re = a * (ph1[i].real * w1 + ph2[i].real * w2)
        t_im = a * (ph1[i].imag * w1 + ph2[i].imag * w2)
        # Neumaier compensated addition
        new = tot_re + t_re
        if abs(tot_re) >= abs(t_re):
            comp_re += (tot_re - new) + t_re
        else:
            comp_re += (t_re - new) + tot_re
        tot_re = new
        new = tot_im + t_im
        if abs(tot_im) >= abs(t_im):
            comp_im += (tot_im - new) + t_im
        else:
            comp_im += (t_im - new) + tot_im
        tot_im = new
    return complex(tot_re + comp_re, tot_im + comp_im)


@njit(cache=True)
def curve_ap_batch(
    primes: np.ndarray, a1: int, a2: int, a3: int, a4: int, a6: int
) -> np.ndarray:
    """Trace of Frobenius a_p by point counting; see the numpy twin for the formula."""
    out = np.empty(len(primes), dtype=np.int64)
    for i in range(len(primes)):
        p = primes[i]
        if p == 2:
            affine = 0
            for x in range(2):
                for y in range(2):
                    lhs = y * y + a1 * x * y + a3 * y
                    rhs = x * x * x + a2 * x * x + a4 * x + a6
                    if (lhs - rhs) % 2 == 0:
                        affine += 1
            out[i] = 2 - affine
            continue
        qr = np.full(p, -1, dtype=np.int64)
        qr[0] = 0
        for t in range(1, p):
            qr[(t * t) % p] = 1
        ssum = 0
        for x in range(p):
            x2 = (x * x) % p
            x3 = (x2 * x) % p
            d = ((a1 * x + a3) ** 2 + 4 * (x3 + a2 * x2 + a4 * x + a6)) % p
            ssum += qr[d]
        out[i] = -ssum
    return out
