"""Rational cusps and the integer matrices that unfold them to infinity.

A cusp a/c with N | c is in the Gamma_0(N)-orbit of infinity and unfolds
through an honest group element (a, b; c, d), det 1. A cusp with
gcd(c, N) = 1 unfolds through H_N * gamma with gamma in Gamma_0(N), where
H_N = (0, -1; N, 0); the slash action then picks up the Fricke eigenvalue.
Cusps with 1 < gcd(c, N) < N would need the full Atkin-Lehner family and
are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, sqrt

from .arith import ext_gcd
from .errors import UnsupportedCuspError

GAMMA0 = "gamma0"
FRICKE = "fricke"


@dataclass(frozen=True, order=True)
class CuspPoint:
    """A reduced rational a/c, or infinity encoded as c = 0 (with a = 1)."""

    numerator: int
    denominator: int

    def __post_init__(self):
        a, c = self.numerator, self.denominator
        if c == 0:
            if a != 1:
                raise ValueError("infinity must be written as 1/0")
            return
        if c < 0:
            a, c = -a, -c
        g = gcd(a, c)
        if g > 1:
            a //= g
            c //= g
        object.__setattr__(self, "numerator", a)
        object.__setattr__(self, "denominator", c)

    @staticmethod
    def infinity() -> "CuspPoint":
        return CuspPoint(1, 0)

    @staticmethod
    def from_fraction(x: Fraction) -> "CuspPoint":
        return CuspPoint(x.numerator, x.denominator)

    @staticmethod
    def from_string(text: str) -> "CuspPoint":
        text = text.strip()
        if text in ("oo", "inf", "infinity"):
            return CuspPoint.infinity()
        if "/" in text:
            num, den = text.split("/", 1)
            return CuspPoint(int(num), int(den))
        return CuspPoint(int(text), 1)

    @property
    def is_infinity(self) -> bool:
        return self.denominator == 0

    def as_fraction(self) -> Fraction:
        if self.is_infinity:
            raise ValueError("infinity has no finite value")
        return Fraction(self.numerator, self.denominator)

    def shifted_mod1(self) -> "CuspPoint":
        """The representative with numerator in [0, c) (phases are 1-periodic)."""
        if self.is_infinity:
            return self
        return CuspPoint(self.numerator % self.denominator, self.denominator)

    def __str__(self) -> str:
        if self.is_infinity:
            return "oo"
        return f"{self.numerator}/{self.denominator}"


@dataclass(frozen=True)
class UnfoldingMatrix:
    """Integer matrix (a, b; c, d) with a coset tag and the level it lives at.

    gamma0: det 1, N | c, sign-normalized with c > 0 (or c = 0, d > 0 for
    elements fixing infinity). fricke: det N with a, c, d all divisible by
    N and c > 0. The normalized lower-left entry C = c / sqrt(det) is the
    quantity entering the unfolded series and the completed twists.
    """

    a: int
    b: int
    c: int
    d: int
    coset: str
    level: int

    def __post_init__(self):
        if self.level < 1:
            raise ValueError("level must be >= 1")
        det = self.det
        if self.coset == GAMMA0:
            if det != 1:
                raise ValueError(f"gamma0 matrix must have det 1, got {det}")
            if self.c % self.level != 0:
                raise ValueError("gamma0 matrix needs N | c")
            if self.c < 0 or (self.c == 0 and self.d < 0):
                object.__setattr__(self, "a", -self.a)
                object.__setattr__(self, "b", -self.b)
                object.__setattr__(self, "c", -self.c)
                object.__setattr__(self, "d", -self.d)
        elif self.coset == FRICKE:
            if det != self.level:
                raise ValueError(f"fricke matrix must have det N, got {det}")
            if self.c <= 0:
                raise ValueError("fricke matrix needs c > 0")
            n = self.level
            if self.a % n or self.c % n or self.d % n:
                raise ValueError("fricke matrix needs N | a, N | c, N | d")
        else:
            raise ValueError(f"unknown coset tag {self.coset!r}")

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def normalized_c(self) -> float:
        if self.det == 1:
            return float(self.c)
        return self.c / sqrt(self.det)

    @property
    def image_of_infinity(self) -> CuspPoint:
        if self.c == 0:
            return CuspPoint.infinity()
        return CuspPoint(self.a, self.c)

    @property
    def second_cusp(self) -> CuspPoint:
        """-D/C: the partner cusp produced by unfolding (gamma^-1 oo when det 1)."""
        if self.c == 0:
            return CuspPoint.infinity()
        return CuspPoint(-self.d, self.c)

    def apply(self, r: CuspPoint) -> CuspPoint:
        """Moebius action on a cusp."""
        if r.is_infinity:
            return self.image_of_infinity
        num = self.a * r.numerator + self.b * r.denominator
        den = self.c * r.numerator + self.d * r.denominator
        if den == 0:
            return CuspPoint.infinity()
        return CuspPoint(num, den)

    def cocycle(self, r: CuspPoint) -> Fraction:
        """j(gamma, r) = c r + d, exact, for det-1 matrices."""
        if self.det != 1:
            raise ValueError("cocycle is defined on det-1 group elements")
        if r.is_infinity:
            raise ValueError("cocycle at infinity is not defined")
        return Fraction(
            self.c * r.numerator + self.d * r.denominator, r.denominator
        )

    def __str__(self) -> str:
        return f"({self.a},{self.b};{self.c},{self.d})[{self.coset},N={self.level}]"


def _gamma0_matrix(r: CuspPoint, level: int) -> UnfoldingMatrix:
    a, c = r.numerator, r.denominator
    d = pow(a, -1, c) if c > 1 else 0
    b = (a * d - 1) // c
    return UnfoldingMatrix(a, b, c, d, GAMMA0, level)


def _fricke_matrix(r: CuspPoint, level: int) -> UnfoldingMatrix:
    a, c = r.numerator, r.denominator
    n = level
    if a == 0:
        # r = 0/1: H_N itself
        return UnfoldingMatrix(0, -1, n, 0, FRICKE, n)
    # gamma = (c, beta; -N a, delta) in Gamma_0(N) with c delta + N a beta = 1,
    # then H_N gamma = (N a, -delta; N c, N beta) maps oo to a/c.
    g, delta, beta = ext_gcd(c, n * a)
    assert g == 1
    return UnfoldingMatrix(n * a, -delta, n * c, n * beta, FRICKE, n)


def build_unfolding_matrix(
    r: CuspPoint, level: int, coset: str | None = None
) -> UnfoldingMatrix:
    """A matrix M with M(oo) = r, det 1 (gamma0 coset) or det N (fricke coset).

    The coset is inferred from the denominator class unless forced (at level
    1 both classes apply and the two evaluations must agree).
    """
    if r.is_infinity:
        raise ValueError("the cusp at infinity needs no unfolding")
    c = r.denominator
    if coset is None:
        if c % level == 0:
            coset = GAMMA0
        elif gcd(c, level) == 1:
            coset = FRICKE
        else:
            raise UnsupportedCuspError(
                f"intermediate Atkin-Lehner cusp unsupported: "
                f"gcd({c}, {level}) = {gcd(c, level)}"
            )
    if coset == GAMMA0:
        if c % level != 0:
            raise UnsupportedCuspError(
                f"cusp {r} is not in the infinity orbit at level {level}"
            )
        return _gamma0_matrix(r, level)
    if coset == FRICKE:
        if gcd(c, level) != 1:
            raise UnsupportedCuspError(
                f"cusp {r} has denominator sharing a factor with the level"
            )
        return _fricke_matrix(r, level)
    raise ValueError(f"unknown coset tag {coset!r}")


def gamma0_element(a: int, b: int, c: int, d: int, level: int) -> UnfoldingMatrix:
    """A det-1 element of Gamma_0(level), sign-normalized."""
    return UnfoldingMatrix(a, b, c, d, GAMMA0, level)
