"""Truncated power series over the rationals.

A :class:`TruncSeries` of order ``o`` knows the coefficients of
``x^0 .. x^o`` and nothing beyond; combining two series keeps the smaller
order.  The Bessel entries ``I_nu(2 sqrt x)`` are carried without their
``x^(nu/2)`` factor (see :func:`series_bessel_normalized`), so every
determinant below is an honest power series in ``x``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exactnum import factorial

__all__ = [
    "TruncSeries",
    "series_bessel_normalized",
    "series_exp",
    "series_mul",
    "series_add",
    "series_det",
    "derivative_at_zero",
    "bessel_det_derivative",
    "TruncationError",
]


class TruncationError(ValueError):
    """Raised when a coefficient beyond the truncation order is requested."""


class TruncSeries:
    """Immutable truncated series ``sum_{l <= order} coeffs[l] x^l``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        if len(coeffs) == 0:
            raise ValueError("a series needs at least the constant coefficient")
        self.coeffs = tuple(Fraction(c) for c in coeffs)

    @classmethod
    def constant(cls, value, order: int) -> "TruncSeries":
        return cls([value] + [0] * order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise TruncationError(f"cannot extend order {self.order} series to {order}")
        return TruncSeries(self.coeffs[: order + 1])

    def __getitem__(self, l: int) -> Fraction:
        if l < 0 or l > self.order:
            raise TruncationError(f"coefficient {l} of an order {self.order} series")
        return self.coeffs[l]

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        o = min(self.order, other.order)
        return TruncSeries([self.coeffs[l] + other.coeffs[l] for l in range(o + 1)])

    def __neg__(self) -> "TruncSeries":
        return TruncSeries([-c for c in self.coeffs])

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            c = Fraction(other)
            return TruncSeries([c * a for a in self.coeffs])
        o = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = []
        for l in range(o + 1):
            acc = Fraction(0)
            for j in range(l + 1):
                aj = a[j]
                if aj:
                    acc += aj * b[l - j]
            out.append(acc)
        return TruncSeries(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, TruncSeries) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __repr__(self) -> str:
        return f"TruncSeries([{', '.join(str(c) for c in self.coeffs)}])"


def series_add(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    return a + b


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    return a * b


@lru_cache(maxsize=None)
def series_bessel_normalized(nu: int, order: int) -> TruncSeries:
    """Series ``g_nu(x) = sum_l x^l / (l! (nu+l)!)``.

    With this normalisation ``I_nu(2 sqrt x) = x^(nu/2) g_nu(x)``.
    """
    if nu < 0 or order < 0:
        raise ValueError("nu and order must be non-negative")
    return TruncSeries([Fraction(1, factorial(l) * factorial(nu + l)) for l in range(order + 1)])


@lru_cache(maxsize=None)
def series_exp(rate, order: int) -> TruncSeries:
    """Series of ``exp(rate * x)``."""
    if order < 0:
        raise ValueError("order must be non-negative")
    rate = Fraction(rate)
    return TruncSeries([rate**l / factorial(l) for l in range(order + 1)])


def series_det(m: Sequence[Sequence[TruncSeries]]) -> TruncSeries:
    """Determinant of a square matrix with series entries.

    Signed permutation expansion, organised row by row over the set of
    columns already used so that shared partial products are formed once
    (``k 2^(k-1)`` series products instead of ``k! k``).
    """
    k = len(m)
    if k == 0 or any(len(row) != k for row in m):
        raise ValueError("series_det needs a non-empty square matrix")
    order = min(e.order for row in m for e in row)
    rows = [[e.truncate(order) if e.order > order else e for e in row] for row in m]
    partial = {0: TruncSeries.constant(1, order)}
    for r in range(k):
        nxt: dict[int, TruncSeries] = {}
        for mask, acc in partial.items():
            for c in range(k):
                bit = 1 << c
                if mask & bit:
                    continue
                entry = rows[r][c]
                if entry.is_zero():
                    continue
                # inversions added: earlier rows that took a larger column
                inv = bin(mask >> (c + 1)).count("1")
                term = acc * entry
                if inv & 1:
                    term = -term
                key = mask | bit
                prev = nxt.get(key)
                nxt[key] = term if prev is None else prev + term
        partial = nxt
        if not partial:
            return TruncSeries.constant(0, order)
    return partial[(1 << k) - 1]


def derivative_at_zero(s: TruncSeries, m: int) -> Fraction:
    """``(d/dx)^m s`` at ``x = 0``, i.e. ``m! * s[m]``."""
    if m < 0:
        raise ValueError("derivative order must be non-negative")
    if m > s.order:
        raise TruncationError(f"derivative {m} needs an order >= {m} series, have {s.order}")
    return factorial(m) * s.coeffs[m]


def bessel_det_derivative(k: int, shifts: Sequence[int], half_power_times2: int,
                          exp_rate, deriv_order: int) -> Fraction:
    r"""Evaluate :math:`(d/dx)^V [e^{r x} x^{-p} \det(I_{\nu_i+i+j-1}(2\sqrt x))]_{x=0}`.

    Parameters
    ----------
    k : int
        Matrix size.
    shifts : sequence of int
        Row shifts ``nu_1 .. nu_k``.
    half_power_times2 : int
        ``2 p``.  Must equal ``sum(shifts) + k**2`` so the power of ``x``
        cancels against the one pulled out of the determinant.
    exp_rate : rational
        ``r``.
    deriv_order : int
        ``V``.
    """
    shifts = tuple(int(v) for v in shifts)
    if len(shifts) != k or k < 1:
        raise ValueError(f"need {k} shifts, got {shifts}")
    if any(v < 0 for v in shifts):
        raise ValueError("shifts must be non-negative")
    if half_power_times2 != sum(shifts) + k * k:
        raise ValueError(
            f"x-power mismatch: 2p = {half_power_times2} but sum(shifts) + k^2 = {sum(shifts) + k * k}"
        )
    if deriv_order < 0:
        raise ValueError("derivative order must be non-negative")
    # Row i only depends on mu_i = nu_i + i, and the determinant is
    # alternating in the mu's: reduce to increasing mu with a sign.
    mu = [v + i for i, v in enumerate(shifts, start=1)]
    if len(set(mu)) < k:
        return Fraction(0)
    order_perm = sorted(range(k), key=mu.__getitem__)
    sign = _perm_sign(order_perm)
    value = _bessel_det_sorted(tuple(sorted(mu)), Fraction(exp_rate), deriv_order)
    return value if sign > 0 else -value


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@lru_cache(maxsize=200_000)
def _bessel_det_sorted(mu: tuple[int, ...], exp_rate: Fraction, deriv_order: int) -> Fraction:
    k = len(mu)
    order = deriv_order
    grid = [[series_bessel_normalized(mu_i + j, order) for j in range(k)] for mu_i in mu]
    det = series_det(grid)
    if exp_rate:
        det = series_exp(exp_rate, order) * det
    return derivative_at_zero(det, deriv_order)
