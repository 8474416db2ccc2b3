"""Arithmetic factor ``c_k`` and the conjectured zeta-moment constants."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .exactnum import binomial
from .momentcoeffs import Family, MomentSpec, coeff

__all__ = [
    "ArithmeticFactorResult",
    "PiRational",
    "primes_up_to",
    "local_factor",
    "local_factor_series",
    "arithmetic_factor",
    "conjectured_constant",
    "conjectured_constant_exact",
    "PRECISION_BITS",
]

PRECISION_BITS = 96


@dataclass(frozen=True)
class ArithmeticFactorResult:
    k: int
    prime_cutoff: int
    value: mpmath.mpf
    tail_bound_estimate: float
    method: str = "closed"

    def to_record(self) -> dict:
        return {
            "k": self.k,
            "cutoff": self.prime_cutoff,
            "value": mpmath.nstr(self.value, 25),
            "tail_bound_estimate": float(f"{self.tail_bound_estimate:.17g}"),
        }


@dataclass(frozen=True)
class PiRational:
    """The exact number ``coefficient * pi**pi_power``."""

    coefficient: Fraction
    pi_power: int

    def __float__(self):
        return float(self.coefficient) * math.pi**self.pi_power

    def __str__(self):
        if self.pi_power == 0:
            return str(self.coefficient)
        return f"({self.coefficient})*pi^{self.pi_power}"


def primes_up_to(n: int) -> np.ndarray:
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.flatnonzero(sieve)


def _check_k(k: int):
    if not isinstance(k, int) or k < 1:
        raise ValueError("k must be a positive integer")


def local_factor(k: int, p) -> mpmath.mpf:
    """``(1-1/p)^{k^2} sum_m C(m+k-1, m)^2 p^{-m}`` in closed form.

    ``sum_m C(m+k-1,m)^2 x^m = sum_j C(k-1,j)^2 x^j / (1-x)^{2k-1}``, so the
    local factor is the polynomial ``(1-x)^{(k-1)^2} sum_j C(k-1,j)^2 x^j``.
    """
    _check_k(k)
    with mpmath.workprec(max(PRECISION_BITS, mpmath.mp.prec)):
        x = mpmath.mpf(1) / p
        poly = mpmath.fsum(binomial(k - 1, j) ** 2 * x**j for j in range(k))
        return +((1 - x) ** ((k - 1) ** 2) * poly)


def local_factor_series(k: int, p, term_tolerance: float) -> mpmath.mpf:
    """Same factor with the inner sum taken term by term until a term drops below the tolerance."""
    _check_k(k)
    if term_tolerance <= 0:
        raise ValueError("term_tolerance must be positive")
    with mpmath.workprec(max(PRECISION_BITS, mpmath.mp.prec)):
        x = mpmath.mpf(1) / p
        tol = mpmath.mpf(term_tolerance)
        total = mpmath.mpf(0)
        m = 0
        xm = mpmath.mpf(1)
        while True:
            term = binomial(m + k - 1, m) ** 2 * xm
            total += term
            # terms eventually decrease monotonically; stop only on the tail side
            if term < tol and m > 2 * k:
                break
            m += 1
            xm *= x
        return +((1 - x) ** (k * k) * total)


def _tail_estimate(primes: np.ndarray, logs: list, cutoff: int) -> float:
    """Extrapolated ``|sum_{p > cutoff} log f_p|`` from the last decade of primes."""
    lo = cutoff / 10
    sel = [(float(p), abs(float(l))) for p, l in zip(primes, logs) if p > lo and l != 0]
    if len(sel) < 2:
        return 0.0
    x = np.log([s[0] for s in sel])
    y = np.log([s[1] for s in sel])
    beta, alpha = np.polyfit(x, y, 1)
    if beta >= -1:
        return math.inf
    # sum over primes > C of e^alpha p^beta  ~  int_C^inf e^alpha t^beta / ln t dt
    C = float(cutoff)
    return float(math.exp(alpha) * C ** (beta + 1) / ((-beta - 1) * math.log(C)))


def arithmetic_factor(k: int, prime_cutoff: int, term_tolerance: float = 1e-30,
                      method: str = "closed") -> ArithmeticFactorResult:
    """Partial Euler product of ``c_k`` over the primes up to ``prime_cutoff``.

    ``method="closed"`` uses the polynomial local factor (exactly 1 at
    ``k = 1``); ``method="series"`` sums each local series term by term.
    """
    _check_k(k)
    if prime_cutoff < 2:
        raise ValueError("prime_cutoff must be >= 2")
    if not term_tolerance > 0:
        raise ValueError("term_tolerance must be positive")
    if method not in ("closed", "series"):
        raise ValueError(f"unknown method {method!r}")
    primes = primes_up_to(prime_cutoff)
    with mpmath.workprec(PRECISION_BITS):
        if method == "closed":
            factors = [local_factor(k, int(p)) for p in primes]
        else:
            factors = [local_factor_series(k, int(p), term_tolerance) for p in primes]
        logs = [mpmath.log(f) for f in factors]
        value = mpmath.exp(_pairwise_sum(logs))
        tail = _tail_estimate(primes, logs, prime_cutoff)
    return ArithmeticFactorResult(k=k, prime_cutoff=prime_cutoff, value=value,
                                  tail_bound_estimate=float(value) * tail, method=method)


def _pairwise_sum(xs: list):
    """Fixed-order pairwise summation (deterministic regardless of how terms were produced)."""
    if not xs:
        return mpmath.mpf(0)
    while len(xs) > 1:
        xs = [xs[i] + xs[i + 1] if i + 1 < len(xs) else xs[i] for i in range(0, len(xs), 2)]
    return xs[0]


_EXACT_CK = {1: PiRational(Fraction(1), 0), 2: PiRational(Fraction(6), -2)}


def conjectured_constant_exact(spec: MomentSpec, family="a") -> PiRational:
    """``coefficient * c_k`` as an exact multiple of a power of pi (only ``k <= 2`` have closed ``c_k``)."""
    if spec.k not in _EXACT_CK:
        raise ValueError(f"no closed form for c_{spec.k}")
    ck = _EXACT_CK[spec.k]
    value = coeff(Family(family), spec).value
    return PiRational(value * ck.coefficient, ck.pi_power)


def conjectured_constant(spec: MomentSpec, family="a", cutoff: int = 10**6,
                         tol: float = 1e-30) -> mpmath.mpf:
    """Leading constant ``coefficient * c_k`` of the conjectured zeta (``a``) or Hardy Z (``b``) moment."""
    value = coeff(Family(family), spec).value
    ck = arithmetic_factor(spec.k, cutoff, tol).value
    with mpmath.workprec(PRECISION_BITS):
        return mpmath.mpf(value.numerator) / value.denominator * ck
