"""Additive twists L(f x e(r), s) and multiplicative central values.

The fast path unfolds the Mellin integral of f along the vertical line at
r = M(oo), splitting at height 1/C where C is the normalized lower-left
entry of the unfolding matrix M. With u_n = 2 pi n / C and r* = -D/C the
second cusp of M, the completed twist

    Lambda_C(f x e(r), s) = (C / 2 pi)^s Gamma(s) L(f x e(r), s)

equals the symmetric, entire-in-s double series

    sum_n a_f(n) [ e(n r) u_n^(-s) Gamma(s, u_n)
                   + eps i^k e(n r*) u_n^(s-k) Gamma(k-s, u_n) ],

with eps = 1 for a det-1 unfolding and eps = omega_f (Fricke eigenvalue)
for the det-N coset. Both series are truncated with a provable tail bound
from |a(n)| <= d(n) n^((k-1)/2) <= 2 n^(k/2).

A slow direct partial sum of the defining Dirichlet series is kept as an
independent oracle in the absolute-convergence half-plane.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .backend import kernels
from .characters import DirichletCharacter, gauss_sum
from .cusps import FRICKE, GAMMA0, CuspPoint, UnfoldingMatrix, build_unfolding_matrix
from .errors import PrecisionError
from .forms import CuspForm, fricke_eigenvalue

_TWO_PI = 2.0 * math.pi
_MAX_SERIES_TERMS = 4_000_000


@dataclass(frozen=True)
class EvalResult:
    """One additive-twist evaluation with its truncation certificate."""

    value: complex
    s: float
    r: CuspPoint
    n_max_used: int
    tail_bound: float


def _phase_table(r: CuspPoint, n_max: int) -> np.ndarray:
    """e(n r) for n = 1..n_max from exact residues n*a mod c."""
    a, c = r.numerator, r.denominator
    if c == 1:
        return np.ones(n_max, dtype=np.complex128)
    roots = np.exp(2j * np.pi * np.arange(c) / c)
    idx = (np.arange(1, n_max + 1, dtype=np.int64) * (a % c)) % c
    return roots[idx]


def _series_cutoff(k: int, s: float, big_c: float, eps_lambda: float) -> int:
    """Smallest M with a provable Lambda-series tail below eps_lambda.

    Once u_n > 2 max(s, k-s, 2), each tail term is at most
    (4 C / pi) n^(k/2 - 1) e^(-2 pi n / C), and the tail is dominated by a
    geometric series with ratio rho(M) = ((M+2)/(M+1))^(k/2-1) e^(-2 pi / C).
    """
    decay = _TWO_PI / big_c
    power = k / 2 - 1
    floor_m = max(8, int(big_c * max(s, k - s, 2.0) / math.pi) + 1)
    log_pref = math.log(4.0 * big_c / math.pi)
    log_target = math.log(eps_lambda)

    def tail_log(m: int) -> float:
        rho = power * math.log1p(1.0 / (m + 1)) - decay
        if rho >= -1e-12:
            return math.inf
        t = log_pref + power * math.log(m + 1) - decay * (m + 1)
        return t - math.log(-math.expm1(rho))

    m = floor_m
    while tail_log(m) > log_target:
        m *= 2
        if m > _MAX_SERIES_TERMS:
            raise PrecisionError(
                f"series cutoff beyond {_MAX_SERIES_TERMS} terms "
                f"(C={big_c:.3g}, s={s}, eps={eps_lambda:.3g})"
            )
    lo, hi = max(floor_m, m // 2), m
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if tail_log(mid) <= log_target:
            hi = mid
        else:
            lo = mid
    if tail_log(lo) <= log_target:
        hi = lo
    return hi


def _tail_value(k: int, big_c: float, m: int) -> float:
    """The tail bound actually achieved at cutoff M (Lambda units)."""
    decay = _TWO_PI / big_c
    power = k / 2 - 1
    rho = power * math.log1p(1.0 / (m + 1)) - decay
    t = math.log(4.0 * big_c / math.pi) + power * math.log(m + 1) - decay * (m + 1)
    return math.exp(t - math.log(-math.expm1(rho)))


def _epsilon_factor(form: CuspForm, matrix: UnfoldingMatrix) -> float:
    if matrix.coset == GAMMA0:
        return 1.0
    if form.fricke_eigenvalue is None:
        raise ValueError(
            "Fricke-coset evaluation needs the Fricke eigenvalue; "
            "call fricke_eigenvalue(form) first"
        )
    return float(form.fricke_eigenvalue)


def _lambda_via_matrix(
    form: CuspForm, matrix: UnfoldingMatrix, s: float, eps_lambda: float
) -> tuple[complex, int, float]:
    """(Lambda value, terms used, achieved tail bound), all in Lambda units."""
    k = form.weight
    big_c = matrix.normalized_c
    sign2 = _epsilon_factor(form, matrix) * (-1.0) ** (k // 2)
    m = _series_cutoff(k, s, big_c, eps_lambda)
    coeffs = form.coefficients_float(m)
    ph1 = _phase_table(matrix.image_of_infinity, m)
    ph2 = _phase_table(matrix.second_cusp, m)
    u = (_TWO_PI / big_c) * np.arange(1.0, m + 1.0)
    value = kernels.lambda_series(coeffs, ph1, ph2, u, float(s), float(k), sign2)
    return value, m, _tail_value(k, big_c, m)


def completed_additive_twist(
    form: CuspForm,
    r: CuspPoint,
    s: float,
    eps: float = 1e-9,
    coset: str | None = None,
) -> EvalResult:
    """Lambda_C(f x e(r), s), entire in s (s >= 0 supported; eps is absolute)."""
    if s < 0:
        raise ValueError("completed twists are evaluated at s >= 0 here")
    matrix = build_unfolding_matrix(r, form.level, coset)
    value, m, tail = _lambda_via_matrix(form, matrix, s, eps)
    return EvalResult(value, float(s), r, m, tail)


def additive_twist(
    form: CuspForm,
    r: CuspPoint,
    s: float,
    eps: float = 1e-9,
    coset: str | None = None,
) -> EvalResult:
    """L(f x e(r), s) with |error| <= eps, via the unfolded double series.

    Requires 0 < s < k for the incomplete-gamma kernels; for s >= k the
    Dirichlet series converges absolutely and the direct partial sum is
    used instead (with the crude divisor-bound tail driving the cutoff).
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    if r.is_infinity:
        raise ValueError("additive twists are evaluated at finite cusps")
    k = form.weight
    s = float(s)
    if s >= k:
        return _direct_to_eps(form, r, s, eps)
    if s <= 0:
        raise ValueError("additive_twist needs s > 0")
    matrix = build_unfolding_matrix(r, form.level, coset)
    big_c = matrix.normalized_c
    scale = (big_c / _TWO_PI) ** s * math.gamma(s)
    lam, m, tail = _lambda_via_matrix(form, matrix, s, eps * scale)
    return EvalResult(lam / scale, s, r, m, tail / scale)


# ---------------------------------------------------------------------------
# direct partial sums (the oracle route)

def _direct_margin(k: int) -> float:
    return (k + 1) / 2 + 0.25


def direct_tail_bound(k: int, s: float, n_terms: int) -> float:
    """Crude bound on |sum_{n>M} a(n) e(nr) n^-s| from |a(n)| <= d(n) n^((k-1)/2).

    With sigma = s - (k-1)/2 > 1 and D(t) <= t (1 + ln t), Abel summation
    gives sigma M^(1-sigma) [ (1 + ln M)/(sigma-1) + 1/(sigma-1)^2 ].
    """
    sigma = s - (k - 1) / 2
    if sigma <= 1:
        raise ValueError("tail bound needs s > (k+1)/2")
    m = float(n_terms)
    return (
        sigma
        * m ** (1 - sigma)
        * ((1 + math.log(m)) / (sigma - 1) + 1 / (sigma - 1) ** 2)
    )


def additive_twist_direct(form: CuspForm, r, s: float, n_terms: int) -> complex:
    """Partial sum of the defining series; valid for s > (k+1)/2 + 0.25.

    `r` may be a CuspPoint, Fraction or int (exact residue phases) or a
    float (phases from the fractional part). The crude truncation error is
    available from `direct_tail_bound(k, s, n_terms)`.
    """
    k = form.weight
    s = float(s)
    if s <= _direct_margin(k):
        raise ValueError(
            f"direct summation needs s > (k+1)/2 + 0.25 = {_direct_margin(k)}; "
            "use additive_twist for interior points"
        )
    if n_terms < 1:
        raise ValueError("n_terms must be >= 1")
    coeffs = form.coefficients_float(n_terms)
    n = np.arange(1, n_terms + 1)
    if isinstance(r, CuspPoint):
        if r.is_infinity:
            raise ValueError("additive twists are evaluated at finite points")
        phases = _phase_table(r, n_terms)
    elif isinstance(r, (Fraction, int)):
        phases = _phase_table(CuspPoint.from_fraction(Fraction(r)), n_terms)
    else:
        frac = float(r) % 1.0
        phases = np.exp(2j * np.pi * ((n * frac) % 1.0))
    return complex(np.sum(coeffs * phases * n ** (-s)))


def _direct_to_eps(form: CuspForm, r: CuspPoint, s: float, eps: float) -> EvalResult:
    m = 64
    while direct_tail_bound(form.weight, s, m) > eps:
        m *= 2
        if m > _MAX_SERIES_TERMS:
            raise PrecisionError(
                f"direct route needs more than {_MAX_SERIES_TERMS} terms at s={s}"
            )
    value = additive_twist_direct(form, r, s, m)
    return EvalResult(value, s, r, m, direct_tail_bound(form.weight, s, m))


# ---------------------------------------------------------------------------
# multiplicative twists at the central point (finite Fourier inversion)

def multiplicative_twist_central(
    form: CuspForm,
    chi: DirichletCharacter,
    s: float | None = None,
    eps: float = 1e-9,
    evaluator: "TwistEvaluator | None" = None,
) -> complex:
    """L(f x chi, s) for primitive chi mod c, from the additive-twist family

        L(f x chi, s) = (1 / tau(conj chi)) sum_{a mod c, (a,c)=1}
                        conj(chi(a)) L(f x e(a/c), s).

    Defaults to the central point s = k/2.
    """
    from .characters import conductor_and_primitive_part

    if s is None:
        s = form.weight / 2
    cond, _ = conductor_and_primitive_part(chi)
    if cond != chi.modulus:
        raise ValueError("multiplicative twists need a primitive character")
    c = chi.modulus
    if evaluator is None:
        evaluator = TwistEvaluator(form, eps)
    if c == 1:
        return evaluator.additive(CuspPoint(0, 1), s)
    tau_bar = gauss_sum(chi.conjugate())
    total = 0j
    for a in range(1, c):
        va = chi.value(a)
        if va == 0:
            continue
        total += va.conjugate() * evaluator.additive(CuspPoint(a, c), s)
    return total / tau_bar


class TwistEvaluator:
    """Caching front end for one form: additive twists keyed by (a mod c, c, s).

    Shifting r by an integer leaves every exact-residue phase unchanged, so
    the cache key uses the representative with numerator in [0, c). For a
    level N > 1 form the Fricke eigenvalue is computed up front.
    """

    def __init__(self, form: CuspForm, eps: float = 1e-9):
        if not eps > 0:
            raise ValueError("eps must be positive")
        self.form = form
        self.eps = eps
        self._cache: dict[tuple[int, int, float], complex] = {}
        self._mult_cache: dict[tuple[int, tuple[int, ...]], complex] = {}
        if form.level > 1 and form.fricke_eigenvalue is None:
            fricke_eigenvalue(form)

    def additive(self, r: CuspPoint, s: float) -> complex:
        rc = r.shifted_mod1()
        key = (rc.numerator, rc.denominator, float(s))
        if key not in self._cache:
            self._cache[key] = additive_twist(self.form, rc, s, self.eps).value
        return self._cache[key]

    def central(self, r: CuspPoint) -> complex:
        return self.additive(r, self.form.weight / 2)

    def multiplicative_central(self, chi: DirichletCharacter) -> complex:
        key = (chi.modulus, chi.exponents)
        if key not in self._mult_cache:
            self._mult_cache[key] = multiplicative_twist_central(
                self.form, chi, None, self.eps, evaluator=self
            )
        return self._mult_cache[key]


# ---------------------------------------------------------------------------
# CSV export of evaluations

def eval_csv_row(result: EvalResult) -> list:
    """Row (a, c, s, Re L, Im L, n_max, tail_bound) for the evaluation export."""
    return [
        result.r.numerator,
        result.r.denominator,
        repr(result.s),
        repr(result.value.real),
        repr(result.value.imag),
        result.n_max_used,
        repr(result.tail_bound),
    ]
