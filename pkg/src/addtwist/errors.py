"""Shared exception types."""


class UnsupportedCuspError(ValueError):
    """A cusp a/c with 1 < gcd(c, N) < N: no unfolding matrix is available."""


class PrecisionError(RuntimeError):
    """The requested accuracy would need more series terms than the ceiling allows."""
