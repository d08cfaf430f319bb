"""Small exact-integer number theory helpers used across the package."""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np


def primes_up_to(n: int) -> np.ndarray:
    """All primes <= n as an int64 array (simple sieve)."""
    if n < 2:
        return np.empty(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(n**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.nonzero(sieve)[0].astype(np.int64)


def smallest_prime_factor_table(n: int) -> np.ndarray:
    """spf[m] = smallest prime factor of m, for 0 <= m <= n (spf[0] = spf[1] = 0)."""
    spf = np.zeros(n + 1, dtype=np.int64)
    for p in range(2, n + 1):
        if spf[p] == 0:
            spf[p::p][spf[p::p] == 0] = p
    return spf


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n >= 1 as ((p, e), ...), by trial division."""
    if n < 1:
        raise ValueError("factorize expects n >= 1")
    out = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, 1))
    return tuple(out)


def divisors(n: int) -> list[int]:
    """Sorted list of all positive divisors of n."""
    ds = [1]
    for p, e in factorize(n):
        ds = [d * p**j for d in ds for j in range(e + 1)]
    return sorted(ds)


def mobius(n: int) -> int:
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def divisor_count(n: int) -> int:
    return math.prod(e + 1 for _, e in factorize(n))


def euler_phi(n: int) -> int:
    out = 1
    for p, e in factorize(n):
        out *= p ** (e - 1) * (p - 1)
    return out


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def crt_lift_unit(g: int, c: int, q: int) -> int:
    """Lift a unit g mod c to a unit a mod q (c | q) with a = g mod c.

    Writes q = u*v with u carrying exactly the primes of c; the lift is
    g mod u and 1 mod v. g stays a unit mod u because it is coprime to
    every prime of c.
    """
    if q % c != 0:
        raise ValueError("c must divide q")
    u = 1
    for p, e in factorize(q):
        if c % p == 0:
            u *= p**e
    v = q // u
    if v == 1:
        return g % q if q > 1 else 0
    gv, inv_u, _ = ext_gcd(u, v)
    assert gv == 1
    # a = g mod u, a = 1 mod v
    a = (g + u * ((1 - g) * inv_u % v)) % q
    return a
