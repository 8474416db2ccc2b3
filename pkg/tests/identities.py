"""Brute-force checks of the algebraic identities the coefficient formulas rest on.

Each ``check_*`` returns ``(lhs, rhs)`` for one instance; callers compare.
Enumeration here uses ``itertools.product`` directly rather than the
package enumerators, and determinants use plain Fraction elimination.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from cuemoments.powerseries import series_bessel_normalized


def fraction_det(rows) -> Fraction:
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                for j in range(c, n):
                    a[r][j] -= f * a[c][j]
    return det


# ------------------------------------------------ factorial determinant


def check_factorial_determinant(m: list[int]):
    """``det(1/(2k+1+m_i-i-j)!)`` against the product formula (1-based ``i, j``)."""
    k = len(m)
    rows = [[Fraction(1, math.factorial(2 * k + 1 + m[i - 1] - i - j)) for j in range(1, k + 1)]
            for i in range(1, k + 1)]
    lhs = fraction_det(rows)
    rhs = Fraction(1)
    for i in range(1, k + 1):
        rhs /= math.factorial(2 * k - i + m[i - 1])
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            rhs *= m[j - 1] - m[i - 1] - j + i
    return lhs, rhs


# ------------------------------------------------ power-sum expansions


def _partition_vectors(n: int):
    """All ``(m_1..m_n)`` with ``sum j m_j = n``, by brute force."""
    if n == 0:
        return [()]
    ranges = [range(n // j + 1) for j in range(1, n + 1)]
    return [m for m in itertools.product(*ranges) if sum((j + 1) * x for j, x in enumerate(m)) == n]


def _power_sum(w, j):
    return sum(Fraction(1) / x**j for x in w)


def _faa_sum(n, w, N=None):
    total = Fraction(0)
    for m in _partition_vectors(n):
        term = Fraction(math.factorial(n))
        for x in m:
            term /= math.factorial(x)
        for j, mj in enumerate(m, 1):
            base = _power_sum(w, j) / j
            if j == 1 and N is not None:
                base = -N + _power_sum(w, 1)
            term *= base**mj
        total += term
    return total


def check_power_identity_bounded(k, n, r, w, N):
    """Power ``r`` of the shifted sum versus the bounded-composition expansion."""
    lhs = _faa_sum(n, w, N) ** r
    rhs = Fraction(0)
    cells = list(itertools.product(range(n + 1), repeat=k))
    col_choices = [c for c in cells if sum(c) <= n]
    for cols in itertools.product(col_choices, repeat=r):
        term = Fraction(1)
        for col in cols:
            s = sum(col)
            term *= (-N) ** (n - s) * math.comb(n, s) * math.factorial(s)
        for l in range(k):
            term /= w[l] ** sum(col[l] for col in cols)
        rhs += term
    return lhs, rhs


def check_power_identity_exact(k, n, r, w):
    """Power ``r`` of the unshifted sum versus the exact-composition expansion."""
    lhs = _faa_sum(n, w, None) ** r
    rhs = Fraction(0)
    col_choices = [c for c in itertools.product(range(n + 1), repeat=k) if sum(c) == n]
    for cols in itertools.product(col_choices, repeat=r):
        term = Fraction(math.factorial(n)) ** r
        for l in range(k):
            term /= w[l] ** sum(col[l] for col in cols)
        rhs += term
    return lhs, rhs


# ------------------------------------------------ contour coefficient series


def contour_coefficient_brute(k: int, n: int, degree: int) -> dict:
    """Coefficient of ``w^{2k-1}`` in ``exp(L w + sum_j t_j w^{-j})`` as a polynomial.

    Keys are exponent tuples ``(a, m_1, .., m_n)`` of ``L^a t_1^{m_1} ..``,
    kept up to total degree ``degree``.
    """
    out = {}
    for a in range(degree + 1):
        for m in itertools.product(range(degree + 1), repeat=n):
            if a + sum(m) > degree:
                continue
            if a - sum((j + 1) * x for j, x in enumerate(m)) != 2 * k - 1:
                continue
            c = Fraction(1, math.factorial(a))
            for x in m:
                c /= math.factorial(x)
            out[(a,) + m] = c
    return out


def contour_coefficient_bessel(k: int, n: int, degree: int) -> dict:
    """The same polynomial from the sum of normalised Bessel series."""
    out = {}
    for rest in itertools.product(range(degree + 1), repeat=n - 1):
        nu = sum((j + 2) * x for j, x in enumerate(rest)) + 2 * k - 1
        if nu + sum(rest) > degree:
            continue
        weight = Fraction(1)
        for x in rest:
            weight /= math.factorial(x)
        lmax = (degree - nu - sum(rest)) // 2
        g = series_bessel_normalized(nu, max(lmax, 0))
        for l in range(lmax + 1):
            key = (nu + l, l) + rest
            out[key] = out.get(key, Fraction(0)) + weight * g[l]
    return {key: v for key, v in out.items() if v != 0}
