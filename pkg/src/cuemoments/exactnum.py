"""Exact integer and rational arithmetic.

Python integers are arbitrary precision and :class:`fractions.Fraction`
keeps rationals reduced with a positive denominator, so this module only
adds the pieces the moment formulas need on top of them: a shared
factorial table, multinomial coefficients and the ``"p/q"`` interchange
format.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from numbers import Rational

__all__ = [
    "Fraction",
    "factorial",
    "binomial",
    "multinomial",
    "rat",
    "rat_add",
    "rat_mul",
    "rat_neg",
    "rat_pow",
    "rat_div",
    "format_rational",
    "parse_rational",
]

_fact_table = [1]
_fact_lock = threading.Lock()


def factorial(n: int) -> int:
    """Return ``n!`` from a growable, shared table.

    Readers never take the lock; extension of the table is serialised so
    that concurrent callers see either the old or the extended list.
    """
    if n < 0:
        raise ValueError(f"factorial of negative number {n}")
    table = _fact_table
    if n < len(table):
        return table[n]
    with _fact_lock:
        while len(_fact_table) <= n:
            _fact_table.append(_fact_table[-1] * len(_fact_table))
    return _fact_table[n]


def binomial(n: int, r: int) -> int:
    if r < 0 or r > n or n < 0:
        return 0
    return factorial(n) // (factorial(r) * factorial(n - r))


def multinomial(n: int, parts) -> int:
    """``n! / prod(p! for p in parts)``; ``parts`` must sum to ``n``."""
    parts = tuple(parts)
    if any(p < 0 for p in parts):
        raise ValueError(f"negative part in {parts}")
    if sum(parts) != n:
        raise ValueError(f"parts {parts} do not sum to {n}")
    den = 1
    for p in parts:
        den *= factorial(p)
    return factorial(n) // den


def rat(value, den: int = 1) -> Fraction:
    """Coerce ``value`` (int, Fraction or ``"p/q"`` string) to a Fraction."""
    if isinstance(value, str):
        return parse_rational(value)
    if not isinstance(value, Rational):
        raise TypeError(f"not an exact rational: {value!r}")
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    return Fraction(value, den)


def rat_add(a, b) -> Fraction:
    return rat(a) + rat(b)


def rat_mul(a, b) -> Fraction:
    return rat(a) * rat(b)


def rat_neg(a) -> Fraction:
    return -rat(a)


def rat_div(a, b) -> Fraction:
    b = rat(b)
    if b == 0:
        raise ZeroDivisionError("division of rational by zero")
    return rat(a) / b


def rat_pow(a, e: int) -> Fraction:
    if not isinstance(e, int):
        raise TypeError("rational powers need an integer exponent")
    a = rat(a)
    if e < 0 and a == 0:
        raise ZeroDivisionError("zero to a negative power")
    return a**e


def format_rational(x) -> str:
    """Serialise as ``"numerator/denominator"`` (integers as plain decimals)."""
    x = rat(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    s = s.strip()
    num, sep, den = s.partition("/")
    try:
        if sep:
            return Fraction(int(num), int(den))
        return Fraction(int(num))
    except ValueError:
        raise ValueError(f"malformed rational string {s!r}") from None
