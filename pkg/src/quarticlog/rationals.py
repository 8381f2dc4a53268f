"""Exact rational arithmetic substrate.

Every coefficient in this package is a reduced rational with positive
denominator.  gmpy2's mpq/mpz are used when available (much faster on the
big eliminants), with a transparent fallback to the standard library.
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as Rat, mpz as Int  # type: ignore

    _HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as Rat  # type: ignore

    Int = int  # type: ignore
    _HAVE_GMPY2 = False

RatLike = object  # int | Rat | str accepted by rat()

ZERO = Rat(0)
ONE = Rat(1)


def rat(value) -> Rat:
    """Coerce ints, strings like '3/4', and rationals to a reduced Rat."""
    if isinstance(value, str):
        return Rat(value.strip())
    return Rat(value)


def rat_str(q) -> str:
    """Canonical text form: 'p' or 'p/q' with q > 0 and gcd(|p|,q)=1."""
    q = rat(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


def is_rational(value) -> bool:
    try:
        rat(value)
        return True
    except (ValueError, TypeError, ZeroDivisionError):
        return False


def igcd(a: int, b: int) -> int:
    import math

    return math.gcd(int(a), int(b))


def ilcm(a: int, b: int) -> int:
    a, b = int(a), int(b)
    if a == 0 or b == 0:
        return 0
    return abs(a * b) // igcd(a, b)
