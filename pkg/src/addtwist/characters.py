"""Dirichlet characters by exponent vectors on unit-group generators.

The unit group (Z/q)^x is decomposed into cyclic factors by CRT, with the
usual two-generator structure at powers of 2 (the classes of -1 and 5).
A character is the tuple of its exponents on those generators, so the
conductor and the inducing primitive character are structural
computations; value tables are derived caches. Roots of unity are always
taken at exact rational phases, so long character sums carry no phase
drift.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import numpy as np

from .arith import crt_lift_unit, divisors, euler_phi, factorize, mobius


def _component_order(p: int, e: int) -> int:
    return p ** (e - 1) * (p - 1)


def _primitive_root(p: int, e: int) -> int:
    """Smallest primitive root modulo p^e (p odd)."""
    m = p**e
    order = _component_order(p, e)
    prime_divs = [pp for pp, _ in factorize(order)]
    for g in range(2, m):
        if g % p == 0:
            continue
        if all(pow(g, order // pp, m) != 1 for pp in prime_divs):
            return g
    raise ArithmeticError(f"no primitive root found mod {p}^{e}")


@dataclass(frozen=True)
class _Component:
    prime: int
    exponent: int  # the unit group factor is cyclic of this order
    generator: int  # lifted to a unit mod q
    order: int


class UnitGroup:
    """Cyclic decomposition of (Z/q)^x with discrete logarithm tables."""

    def __init__(self, q: int):
        if q < 1:
            raise ValueError("modulus must be >= 1")
        self.q = q
        comps: list[_Component] = []
        for p, e in factorize(q) if q > 1 else ():
            if p == 2:
                if e == 2:
                    comps.append(_Component(2, e, crt_lift_unit(3, 4, q), 2))
                elif e >= 3:
                    m = 2**e
                    comps.append(_Component(2, e, crt_lift_unit(m - 1, m, q), 2))
                    comps.append(_Component(2, e, crt_lift_unit(5, m, q), 2 ** (e - 2)))
                # e == 1: trivial factor
            else:
                g = _primitive_root(p, e)
                comps.append(
                    _Component(p, e, crt_lift_unit(g, p**e, q), _component_order(p, e))
                )
        self.components = tuple(comps)
        self.orders = tuple(c.order for c in comps)
        self.exponent = math.lcm(*self.orders) if self.orders else 1
        self._dlog: dict[int, tuple[int, ...]] = {}
        self._build_dlog()

    def _build_dlog(self) -> None:
        q = self.q
        if q == 1:
            self._dlog[0] = ()
            return
        for exps in itertools.product(*(range(d) for d in self.orders)):
            a = 1
            for comp, k in zip(self.components, exps):
                if k:
                    a = (a * pow(comp.generator, k, q)) % q
            self._dlog[a] = exps

    def dlog(self, a: int) -> tuple[int, ...] | None:
        """Exponent tuple of a unit, or None when gcd(a, q) > 1."""
        return self._dlog.get(a % self.q if self.q > 1 else 0)

    @property
    def phi(self) -> int:
        return math.prod(self.orders) if self.orders else 1


@lru_cache(maxsize=None)
def unit_group(q: int) -> UnitGroup:
    return UnitGroup(q)


@lru_cache(maxsize=32)
def _roots_of_unity(order: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(order) / order)


@dataclass(frozen=True)
class DirichletCharacter:
    """chi mod q determined by its exponents on the unit-group generators."""

    modulus: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        group = unit_group(self.modulus)
        if len(self.exponents) != len(group.orders):
            raise ValueError(
                f"expected {len(group.orders)} exponents mod {self.modulus}"
            )
        reduced = tuple(e % d for e, d in zip(self.exponents, group.orders))
        object.__setattr__(self, "exponents", reduced)

    @property
    def group(self) -> UnitGroup:
        return unit_group(self.modulus)

    @property
    def order(self) -> int:
        ds = [
            d // gcd(d, e) for e, d in zip(self.exponents, self.group.orders)
        ]
        return math.lcm(*ds) if ds else 1

    @property
    def is_trivial(self) -> bool:
        return all(e == 0 for e in self.exponents)

    def _phase_numerator(self, dlog: tuple[int, ...]) -> int:
        """t with chi(a) = e(t / E), E the group exponent."""
        group = self.group
        e_total = group.exponent
        t = 0
        for e, k, d in zip(self.exponents, dlog, group.orders):
            t += e * k * (e_total // d)
        return t % e_total

    def value(self, a: int) -> complex:
        dl = self.group.dlog(a)
        if dl is None:
            return 0j
        roots = _roots_of_unity(self.group.exponent)
        return complex(roots[self._phase_numerator(dl)])

    def values_vector(self) -> np.ndarray:
        """chi(a) for a = 0..q-1 (zero off the units); derived cache."""
        q = self.modulus
        out = np.zeros(max(q, 1), dtype=np.complex128)
        roots = _roots_of_unity(self.group.exponent)
        if q == 1:
            out[0] = 1.0
            return out
        for a, dl in self.group._dlog.items():
            out[a] = roots[self._phase_numerator(dl)]
        return out

    def conjugate(self) -> "DirichletCharacter":
        return DirichletCharacter(
            self.modulus, tuple(-e for e in self.exponents)
        )

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        if self.modulus != other.modulus:
            raise ValueError("can only multiply characters of the same modulus")
        return DirichletCharacter(
            self.modulus,
            tuple(a + b for a, b in zip(self.exponents, other.exponents)),
        )

    def __str__(self) -> str:
        return f"chi_{self.modulus}{list(self.exponents)}"


def trivial_character(q: int) -> DirichletCharacter:
    return DirichletCharacter(q, tuple(0 for _ in unit_group(q).orders))


def enumerate_characters(q: int) -> list[DirichletCharacter]:
    """All phi(q) characters mod q, ordered lexicographically by exponents."""
    group = unit_group(q)
    return [
        DirichletCharacter(q, exps)
        for exps in itertools.product(*(range(d) for d in group.orders))
    ]


# ---------------------------------------------------------------------------
# conductor and primitivization

def _local_conductor_odd(p: int, order: int) -> int:
    if order == 1:
        return 1
    beta = 0
    m = order
    while m % p == 0:
        m //= p
        beta += 1
    # remaining part m divides p - 1; the component factors through p^(beta+1)
    return p ** (beta + 1)


def conductor_and_primitive_part(
    chi: DirichletCharacter,
) -> tuple[int, DirichletCharacter]:
    """(c(chi), chi* mod c(chi)): the smallest modulus chi factors through.

    Local rules: an odd component of order p^beta * m (m | p-1) needs
    p^(beta+1); at powers of two, a nontrivial class-of-5 component of
    order 2^t needs 2^(t+2), else a nontrivial class-of-(-1) component
    needs 4.
    """
    group = chi.group
    cond = 1
    two_parts: list[tuple[_Component, int]] = []
    for comp, e in zip(group.components, chi.exponents):
        order = comp.order // gcd(comp.order, e)
        if comp.prime == 2:
            two_parts.append((comp, order))
        else:
            cond *= _local_conductor_odd(comp.prime, order)
    if two_parts:
        if len(two_parts) == 1:
            # modulus 4 component
            cond *= 4 if two_parts[0][1] > 1 else 1
        else:
            (c_minus, o_minus), (c_five, o_five) = two_parts
            assert c_minus.order == 2
            if o_five > 1:
                cond *= 4 * o_five  # 2^(t+2) with o_five = 2^t
            elif o_minus > 1:
                cond *= 4
    star = _restrict_to_modulus(chi, cond)
    return cond, star


def _restrict_to_modulus(chi: DirichletCharacter, c: int) -> DirichletCharacter:
    """The character mod c that induces chi (requires that chi factors through c)."""
    q = chi.modulus
    target = unit_group(c)
    e_q = chi.group.exponent
    exps = []
    for comp in target.components:
        lift = crt_lift_unit(comp.generator, c, q)
        t = chi._phase_numerator(chi.group.dlog(lift))
        # chi(lift)^order(comp) = chi(lift^order) = chi*(1) = 1, so this divides
        num = t * comp.order
        if num % e_q:
            raise ArithmeticError("character does not factor through the conductor")
        exps.append((num // e_q) % comp.order)
    return DirichletCharacter(c, tuple(exps))


def induce_character(chi_star: DirichletCharacter, q: int) -> DirichletCharacter:
    """The character mod q agreeing with chi_star on units (c(chi_star) | q)."""
    c = chi_star.modulus
    if q % c:
        raise ValueError("can only induce to a multiple of the modulus")
    target = unit_group(q)
    e_c = chi_star.group.exponent
    exps = []
    for comp in target.components:
        t = chi_star._phase_numerator(chi_star.group.dlog(comp.generator))
        num = t * comp.order
        if num % e_c:
            raise ArithmeticError("induction failed to land on an exponent")
        exps.append((num // e_c) % comp.order)
    return DirichletCharacter(q, tuple(exps))


def primitive_count(q: int) -> int:
    """phi*(q): the number of primitive characters mod q (multiplicative)."""
    if q < 1:
        raise ValueError("modulus must be >= 1")
    out = 1
    for p, e in factorize(q) if q > 1 else ():
        out *= euler_phi(p**e) - euler_phi(p ** (e - 1))
    return out


# ---------------------------------------------------------------------------
# Gauss sums and the arithmetic nu-weights

def gauss_sum(chi: DirichletCharacter) -> complex:
    """tau(chi) = sum_{a mod q} chi(a) e(a/q); equals 1 at the empty modulus."""
    q = chi.modulus
    if q == 1:
        return 1 + 0j
    roots = np.exp(2j * np.pi * np.arange(q) / q)
    return complex(np.sum(chi.values_vector() * roots))


@dataclass(frozen=True)
class NuContext:
    """Inputs of the arithmetic weight attached to a non-primitive modulus.

    `character` is the primitive character chi*; `coprimality_modulus` is
    the modulus of the family being summed (the first factor of the triple
    runs over divisors coprime to it).
    """

    form: object
    character: DirichletCharacter
    coprimality_modulus: int
    n: int

    def __post_init__(self):
        if self.coprimality_modulus < 1 or self.n < 1:
            raise ValueError("coprimality modulus and n must be >= 1")


def nu_weight(ctx: NuContext) -> complex:
    """nu(f, chi, n) = sum over ordered triples n1 n2 n3 = n with (n1, Q) = 1 of
    chi(n1) mu(n1) conj(chi)(n2) mu(n2) a_f(n3) n3^(1 - k/2)."""
    form = ctx.form
    chi = ctx.character
    big_q = ctx.coprimality_modulus
    n = ctx.n
    form.ensure_coefficients(n)
    half_shift = 1.0 - form.weight / 2.0
    total = 0j
    for n1 in divisors(n):
        if gcd(n1, big_q) != 1:
            continue
        mu1 = mobius(n1)
        if mu1 == 0:
            continue
        f1 = chi.value(n1) * mu1
        if f1 == 0:
            continue
        rest = n // n1
        for n2 in divisors(rest):
            mu2 = mobius(n2)
            if mu2 == 0:
                continue
            f2 = chi.value(n2).conjugate() * mu2
            if f2 == 0:
                continue
            n3 = rest // n2
            total += f1 * f2 * form.coefficient(n3) * float(n3) ** half_shift
    return total


def character_json(chi: DirichletCharacter) -> dict:
    """Export record {modulus, exponents, order, conductor}."""
    cond, _ = conductor_and_primitive_part(chi)
    return {
        "modulus": chi.modulus,
        "exponents": list(chi.exponents),
        "order": chi.order,
        "conductor": cond,
    }
