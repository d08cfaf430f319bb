"""Cusp forms with exact integer Fourier coefficients.

Two coefficient sources are shipped: the discriminant form of weight 12 and
level 1 (eta-product expansion, exact big-integer arithmetic), and weight-2
newforms attached to elliptic curves over Q (point counting at good primes,
declared Euler factors at bad primes, Hecke recurrences everywhere else).

Coefficients are kept as exact Python integers; the binary64 view used by
the numeric evaluators is a derived cache, so multiplicativity and the
divisor-bound checks can be tested exactly.
"""

from __future__ import annotations

import cmath
import csv
import math
from dataclasses import dataclass, field

import gmpy2
import numpy as np

from .arith import divisor_count, factorize, primes_up_to, smallest_prime_factor_table
from .backend import kernels
from .errors import PrecisionError

_FRICKE_ROUND_TOL = 1e-6
_FRICKE_FLOOR = 1e-10


# ---------------------------------------------------------------------------
# exact truncated polynomial arithmetic (Kronecker substitution)

def _split_signs(coeffs: list[int]) -> tuple[list[int], list[int]]:
    pos = [c if c > 0 else 0 for c in coeffs]
    neg = [-c if c < 0 else 0 for c in coeffs]
    return pos, neg


def _pack(coeffs: list[int], slot_bytes: int) -> gmpy2.mpz:
    buf = bytearray(slot_bytes * len(coeffs))
    for i, c in enumerate(coeffs):
        if c:
            buf[i * slot_bytes : i * slot_bytes + slot_bytes] = c.to_bytes(
                slot_bytes, "little"
            )
    return gmpy2.mpz(int.from_bytes(buf, "little"))


def _unpack(value: int, slot_bytes: int, length: int) -> list[int]:
    # the product may carry up to 2*length - 1 slots; only the first `length` matter
    needed = max(value.bit_length() // 8 + 1, slot_bytes * length)
    data = value.to_bytes(needed, "little")
    return [
        int.from_bytes(data[i * slot_bytes : (i + 1) * slot_bytes], "little")
        for i in range(length)
    ]


def _poly_mul_trunc(a: list[int], b: list[int], length: int) -> list[int]:
    """Exact product of integer polynomials, truncated to `length` coefficients.

    Kronecker substitution: split each factor into positive/negative parts,
    pack into big integers with non-interfering slots, multiply with gmpy2.
    """
    max_a = max((abs(c) for c in a), default=0)
    max_b = max((abs(c) for c in b), default=0)
    if max_a == 0 or max_b == 0:
        return [0] * length
    # slot bound: sum of two convolutions of nonnegative parts
    bound = 2 * max_a * max_b * min(len(a), len(b))
    slot_bytes = bound.bit_length() // 8 + 2
    ap, an = _split_signs(a[:length])
    bp, bn = _split_signs(b[:length])
    pa, na = _pack(ap, slot_bytes), _pack(an, slot_bytes)
    pb, nb = _pack(bp, slot_bytes), _pack(bn, slot_bytes)
    pos = int(pa * pb + na * nb)
    neg = int(pa * nb + na * pb)
    cp = _unpack(pos, slot_bytes, length)
    cn = _unpack(neg, slot_bytes, length)
    return [x - y for x, y in zip(cp, cn)]


def _euler_product_coefficients(length: int) -> list[int]:
    """prod_{m>=1} (1 - q^m) to `length` coefficients (pentagonal number series)."""
    out = [0] * length
    out[0] = 1
    j = 1
    while True:
        g1 = j * (3 * j - 1) // 2
        g2 = j * (3 * j + 1) // 2
        if g1 >= length and g2 >= length:
            break
        sign = -1 if j % 2 else 1
        if g1 < length:
            out[g1] += sign
        if g2 < length:
            out[g2] += sign
        j += 1
    return out


def _delta_table(n_max: int) -> list[int]:
    """tau(1..n_max): 24th power of the Euler product by binary powering."""
    length = n_max
    e1 = _euler_product_coefficients(length)
    e2 = _poly_mul_trunc(e1, e1, length)
    e4 = _poly_mul_trunc(e2, e2, length)
    e8 = _poly_mul_trunc(e4, e4, length)
    e16 = _poly_mul_trunc(e8, e8, length)
    e24 = _poly_mul_trunc(e16, e8, length)
    # Delta = q * E(q)^24, so tau(n) is the (n-1)-st coefficient of E^24
    return e24[:n_max]


# ---------------------------------------------------------------------------
# cusp forms

class CuspForm:
    """A newform-normalized cusp form backed by an exact coefficient table.

    The table extends on demand through `ensure_coefficients`; extension is
    not thread-safe and should be done up front before sharing the form
    across parallel workers. All evaluation helpers are pure reads.
    """

    def __init__(
        self,
        weight: int,
        level: int,
        label: str,
        coefficient_source,
        fricke_eigenvalue: int | None = None,
        initial_terms: int = 64,
    ):
        if weight < 2 or weight % 2:
            raise ValueError("weight must be an even integer >= 2")
        if level < 1:
            raise ValueError("level must be >= 1")
        self.weight = weight
        self.level = level
        self.label = label
        self._source = coefficient_source
        self._fricke = None
        if fricke_eigenvalue is not None:
            self.fricke_eigenvalue = fricke_eigenvalue
        self._coeffs: list[int] = coefficient_source(initial_terms)
        if self._coeffs[0] != 1:
            raise ValueError("newform normalization requires a(1) = 1")
        self._float_cache = self._to_float(self._coeffs)

    @staticmethod
    def _to_float(coeffs: list[int]) -> np.ndarray:
        try:
            return np.array(coeffs, dtype=np.float64)
        except OverflowError as exc:
            raise PrecisionError(
                "coefficient exceeds binary64 range; exact integer table is intact"
            ) from exc

    @property
    def fricke_eigenvalue(self) -> int | None:
        return self._fricke

    @fricke_eigenvalue.setter
    def fricke_eigenvalue(self, value: int) -> None:
        if value not in (1, -1):
            raise ValueError("Fricke eigenvalue must be +1 or -1")
        self._fricke = value

    def __repr__(self) -> str:
        return f"CuspForm({self.label}, k={self.weight}, N={self.level})"

    @property
    def n_available(self) -> int:
        return len(self._coeffs)

    def ensure_coefficients(self, n_max: int) -> None:
        if n_max <= len(self._coeffs):
            return
        target = max(n_max, 2 * len(self._coeffs))
        self._coeffs = self._source(target)
        self._float_cache = self._to_float(self._coeffs)

    def coefficient(self, n: int) -> int:
        """Exact a_f(n)."""
        if n < 1:
            raise ValueError("coefficient index must be >= 1")
        self.ensure_coefficients(n)
        return self._coeffs[n - 1]

    def coefficients_float(self, n_max: int) -> np.ndarray:
        """a_f(1..n_max) as float64 (read-only view of the cache)."""
        self.ensure_coefficients(n_max)
        view = self._float_cache[:n_max]
        view.flags.writeable = False
        return view

    def export_coefficients_csv(self, fileobj, n_max: int) -> None:
        """Write rows (n, a_f(n)) with the coefficient as exact integer text."""
        self.ensure_coefficients(n_max)
        writer = csv.writer(fileobj)
        writer.writerow(["n", "a"])
        for n in range(1, n_max + 1):
            writer.writerow([n, str(self._coeffs[n - 1])])


def delta_coefficients(n_max: int) -> CuspForm:
    """The weight-12 level-1 discriminant form with tau(1..n_max) precomputed."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    return CuspForm(
        weight=12,
        level=1,
        label="delta",
        coefficient_source=_delta_table,
        fricke_eigenvalue=1,
        initial_terms=n_max,
    )


# ---------------------------------------------------------------------------
# weight-2 newforms from elliptic curves

@dataclass(frozen=True)
class EllipticCurveModel:
    """Integral Weierstrass model with declared conductor and bad-prime traces."""

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int
    conductor: int
    bad_prime_coefficients: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.conductor < 1:
            raise ValueError("conductor must be >= 1")
        if self.discriminant() == 0:
            raise ValueError("singular Weierstrass model (discriminant 0)")
        for p, _ in factorize(self.conductor):
            if p not in self.bad_prime_coefficients:
                raise ValueError(f"missing bad-prime coefficient for p={p}")
        for p, ap in self.bad_prime_coefficients.items():
            if ap not in (-1, 0, 1):
                raise ValueError(f"bad-prime a_{p} must be in {{-1, 0, 1}}")

    def discriminant(self) -> int:
        b2 = self.a1**2 + 4 * self.a2
        b4 = 2 * self.a4 + self.a1 * self.a3
        b6 = self.a3**2 + 4 * self.a6
        b8 = (
            self.a1**2 * self.a6
            + 4 * self.a2 * self.a6
            - self.a1 * self.a3 * self.a4
            + self.a2 * self.a3**2
            - self.a4**2
        )
        return -(b2**2) * b8 - 8 * b4**3 - 27 * b6**2 + 9 * b2 * b4 * b6


#: The conductor-11 curve y^2 + y = x^3 - x^2 - 10x - 20 (split multiplicative at 11).
CURVE_11A = EllipticCurveModel(0, -1, 1, -10, -20, 11, {11: 1})


def _curve_table(curve: EllipticCurveModel, n_max: int) -> list[int]:
    k = 2
    a = [0] * (n_max + 1)
    a[1] = 1
    primes = primes_up_to(n_max)
    good = np.array(
        [p for p in primes if curve.conductor % int(p) != 0], dtype=np.int64
    )
    if len(good):
        traces = kernels.curve_ap_batch(
            good, curve.a1, curve.a2, curve.a3, curve.a4, curve.a6
        )
        for p, ap in zip(good.tolist(), traces.tolist()):
            a[p] = ap
    for p, ap in curve.bad_prime_coefficients.items():
        if p <= n_max:
            a[p] = ap
    # prime powers: a_{p^{e+1}} = a_p a_{p^e} - p^{k-1} a_{p^{e-1}} at good p,
    # a_{p^e} = a_p^e at bad p
    for p in primes.tolist():
        pe = p
        prev, cur = 1, a[p]
        while pe * p <= n_max:
            pe *= p
            if curve.conductor % p == 0:
                nxt = a[p] * cur
            else:
                nxt = a[p] * cur - p ** (k - 1) * prev
            a[pe] = nxt
            prev, cur = cur, nxt
    # multiplicative fill over coprime factorizations
    spf = smallest_prime_factor_table(n_max)
    for n in range(2, n_max + 1):
        p = int(spf[n])
        pe = p
        m = n // p
        while m % p == 0:
            pe *= p
            m //= p
        if m > 1:
            a[n] = a[pe] * a[m]
    return a[1:]


def newform_from_curve(curve: EllipticCurveModel, n_max: int) -> CuspForm:
    """The weight-2 newform of level = conductor attached to the curve.

    The Fricke eigenvalue is left unset; compute it with `fricke_eigenvalue`.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    disc = abs(curve.discriminant())
    for p, _ in factorize(disc):
        if curve.conductor % p != 0:
            raise ValueError(
                f"model/conductor mismatch: discriminant divisible by p={p}, "
                f"which does not divide the declared conductor {curve.conductor}"
            )
    label = (
        f"curve({curve.a1},{curve.a2},{curve.a3},{curve.a4},{curve.a6})"
        f"_N{curve.conductor}"
    )
    return CuspForm(
        weight=2,
        level=curve.conductor,
        label=label,
        coefficient_source=lambda n: _curve_table(curve, n),
        initial_terms=n_max,
    )


# ---------------------------------------------------------------------------
# evaluation at points of the upper half-plane

def _fourier_cutoff(k: int, y: float, eps: float, max_terms: int) -> int:
    """Smallest M with sum_{n>M} 2 n^(k/2) e^(-2 pi n y) <= eps.

    Uses |a(n)| <= d(n) n^((k-1)/2) <= 2 n^(k/2) and a geometric tail bound.
    """
    decay = 2.0 * math.pi * y

    def tail_log(m: int) -> float:
        rho = (k / 2) * math.log1p(1.0 / (m + 1)) - decay
        if rho >= -1e-12:
            return math.inf
        t = math.log(2.0) + (k / 2) * math.log(m + 1) - decay * (m + 1)
        return t - math.log(-math.expm1(rho))

    target = math.log(eps)
    m = 8
    while tail_log(m) > target:
        m *= 2
        if m > max_terms:
            raise PrecisionError(
                f"evaluate_form: needs more than {max_terms} terms at Im z = {y}"
            )
    lo, hi = m // 2, m
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if tail_log(mid) <= target:
            hi = mid
        else:
            lo = mid
    return hi


def evaluate_form(
    form: CuspForm, z: complex, eps: float, max_terms: int = 2_000_000
) -> complex:
    """f(z) = sum a_f(n) e(nz) truncated with tail below eps (Im z > 0)."""
    z = complex(z)
    if not z.imag > 0:
        raise ValueError("evaluate_form requires Im z > 0")
    if not eps > 0:
        raise ValueError("eps must be positive")
    m = _fourier_cutoff(form.weight, z.imag, eps, max_terms)
    coeffs = form.coefficients_float(m)
    n = np.arange(1, m + 1)
    x = z.real % 1.0
    modes = np.exp((2j * math.pi * x - 2.0 * math.pi * z.imag) * n)
    return complex(np.sum(coeffs * modes))


_FRICKE_TEST_HEIGHTS = (2.0, 2.4, 1.7, 2.9, 1.4)


def fricke_eigenvalue(form: CuspForm, eps: float = 1e-12) -> int:
    """Eigenvalue of the level-N involution z -> -1/(Nz); stored on the form.

    Evaluates N^(-k/2) z^(-k) f(-1/(Nz)) / f(z) at z = 2i/sqrt(N) (falling
    back to nearby heights when |f(z)| is degenerate) and rounds to the
    nearest of +-1, insisting the distance before rounding is < 1e-6.
    """
    n_level = form.level
    if n_level == 1:
        form.fricke_eigenvalue = 1
        return 1
    k = form.weight
    for height in _FRICKE_TEST_HEIGHTS:
        z = complex(0.0, height / math.sqrt(n_level))
        fz = evaluate_form(form, z, eps)
        if abs(fz) < _FRICKE_FLOOR:
            continue
        w = -1.0 / (n_level * z)
        fw = evaluate_form(form, w, eps)
        ratio = n_level ** (-k / 2) * z ** (-k) * fw / fz
        value = 1 if abs(ratio - 1) < abs(ratio + 1) else -1
        if abs(ratio - value) > _FRICKE_ROUND_TOL:
            raise ValueError(
                f"not a Fricke eigenform: ratio {ratio} is not within "
                f"{_FRICKE_ROUND_TOL} of +-1"
            )
        form.fricke_eigenvalue = value
        return value
    raise ValueError("degenerate test point: |f(z)| below floor at all fallbacks")


# ---------------------------------------------------------------------------
# coefficient-bound diagnostics (the invariants behind series truncation)

def deligne_ratio(form: CuspForm, n_max: int) -> float:
    """max_n |a(n)| / (d(n) n^((k-1)/2)) over 1 <= n <= n_max (should be <= 1)."""
    form.ensure_coefficients(n_max)
    worst = 0.0
    half = (form.weight - 1) / 2
    for n in range(1, n_max + 1):
        bound = divisor_count(n) * n**half
        worst = max(worst, abs(form.coefficient(n)) / bound)
    return worst


def hecke_ratio(form: CuspForm, x: int) -> float:
    """sum_{n<=X} a(n)^2 / X^k (bounded in X by the mean-square bound)."""
    coeffs = form.coefficients_float(x)
    return float(np.sum(coeffs * coeffs) / float(x) ** form.weight)
