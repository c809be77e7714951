"""Exact rational scalars.

Everything in this package computes over arbitrary-precision rationals.
gmpy2's mpq is used when available (5-10x faster on this workload);
fractions.Fraction is a drop-in fallback.
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    from fractions import Fraction as Q

from fractions import Fraction as _Fraction

QZERO = Q(0)
QONE = Q(1)
SCALAR_TYPES = (int, type(QZERO), _Fraction)


def as_q(x) -> Q:
    if isinstance(x, Q):
        return x
    return Q(x)


def parse_q(text: str) -> Q:
    """Parse 'num' or 'num/den' into an exact rational; floats are rejected."""
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise ValueError(f"floating point literal rejected: {text!r}")
    if "/" in text:
        num, den = text.split("/", 1)
        return Q(int(num), int(den))
    return Q(int(text))


def qstr(x) -> str:
    """Canonical text form: 'num' or 'num/den' with den omitted when 1."""
    n, d = x.numerator, x.denominator
    return str(n) if d == 1 else f"{n}/{d}"


def is_integral(x) -> bool:
    return x.denominator == 1


def denominator_unit_outside(x, primes: tuple[int, ...]) -> bool:
    """True if the denominator of x factors entirely over the given primes."""
    d = int(x.denominator)
    for p in primes:
        while d % p == 0:
            d //= p
    return d == 1


def padic_valuation(n: int, p: int) -> int:
    """v_p(n) for a nonzero integer n."""
    if n == 0:
        raise ValueError("valuation of 0 is undefined")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def factorial_valuation(n: int, p: int) -> int:
    """v_p(n!) by Legendre's formula."""
    v = 0
    q = p
    while q <= n:
        v += n // q
        q *= p
    return v
