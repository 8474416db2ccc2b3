import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cuemoments.exactnum import binomial, factorial
from cuemoments.powerseries import (
    TruncSeries,
    TruncationError,
    bessel_det_derivative,
    derivative_at_zero,
    series_add,
    series_bessel_normalized,
    series_det,
    series_exp,
    series_mul,
)

from identities import contour_coefficient_bessel, contour_coefficient_brute

F = Fraction


def S(*c):
    return TruncSeries([F(x) for x in c])


def test_bessel_series_examples():
    assert series_bessel_normalized(0, 2).coeffs == (1, 1, F(1, 4))
    assert series_bessel_normalized(3, 0).coeffs == (F(1, 6),)
    assert series_bessel_normalized(1, 1).coeffs == (1, F(1, 2))


def test_exp_series_examples():
    assert series_exp(-1, 2).coeffs == (1, -1, F(1, 2))
    assert series_exp(0, 3).coeffs == (1, 0, 0, 0)
    assert series_exp(F(-1, 2), 2).coeffs == (1, F(-1, 2), F(1, 8))


def test_mul_add_examples_and_truncation():
    assert series_mul(S(1, 1, 0), S(1, -1, 0)).coeffs == (1, 0, -1)
    assert series_mul(S(1, 2, 3, 4), S(5, 6)).order == 1
    assert series_add(S(1, 2, 3), S(1, 1)).coeffs == (2, 3)
    assert series_mul(series_exp(-1, 4), series_exp(1, 4)).coeffs == (1, 0, 0, 0, 0)


def test_coefficients_beyond_order_are_undefined():
    s = S(1, 2)
    with pytest.raises(TruncationError):
        s[2]
    with pytest.raises(TruncationError):
        derivative_at_zero(s, 2)


def test_series_det_examples():
    s = S(3, 1, 4)
    assert series_det([[s]]) == s
    assert series_det([[S(1), S(2)], [S(3), S(4)]]).coeffs == (-2,)
    g1, g2, g3 = (series_bessel_normalized(n, 2) for n in (1, 2, 3))
    expected = g1 * g3 - g2 * g2
    assert series_det([[g1, g2], [g2, g3]]) == expected
    assert expected.coeffs[0] == F(1, 6) - F(1, 4)


def _cofactor_det(m):
    if len(m) == 1:
        return m[0][0]
    total = None
    for c in range(len(m)):
        minor = [row[:c] + row[c + 1 :] for row in m[1:]]
        term = m[0][c] * _cofactor_det(minor)
        if c % 2:
            term = -term
        total = term if total is None else total + term
    return total


def test_series_det_matches_cofactor_expansion():
    rng = random.Random(11)
    for _ in range(40):
        k = rng.choice([2, 3])
        mat = [[TruncSeries([F(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(rng.randint(1, 5))])
                for _ in range(k)] for _ in range(k)]
        assert series_det(mat) == _cofactor_det(mat)


def test_derivative_at_zero_examples():
    assert derivative_at_zero(series_exp(-1, 3), 3) == -1
    s = S(7, 1, 2)
    assert derivative_at_zero(s, 0) == 7
    assert derivative_at_zero(series_bessel_normalized(0, 2), 2) == F(1, 2)


small_series = st.lists(st.fractions(max_denominator=50).filter(lambda x: abs(x) < 100), min_size=1, max_size=6)


@given(small_series, small_series)
def test_leibniz_rule(a, b):
    a, b = TruncSeries(a), TruncSeries(b)
    p = series_mul(a, b)
    for m in range(p.order + 1):
        rhs = sum(binomial(m, j) * derivative_at_zero(a, j) * derivative_at_zero(b, m - j) for j in range(m + 1))
        assert derivative_at_zero(p, m) == rhs


def test_bessel_det_derivative_examples():
    assert bessel_det_derivative(1, [0], 1, F(-1, 2), 0) == 1
    assert bessel_det_derivative(1, [2], 3, -1, 1) == F(-1, 8)
    assert bessel_det_derivative(2, [0, 0], 4, F(-1, 2), 0) == F(-1, 12)


def test_bessel_det_derivative_rejects_power_mismatch():
    with pytest.raises(ValueError):
        bessel_det_derivative(2, [0, 0], 3, -1, 0)
    with pytest.raises(ValueError):
        bessel_det_derivative(1, [0], 1, -1, -1)


@pytest.mark.parametrize("rate", [F(-1), F(-1, 2), F(0), F(3, 7)])
def test_bessel_det_derivative_k1_term_by_term(rate):
    for nu in range(0, 6):
        for m in range(0, 7):
            # d^m/dx^m [e^{rate x} g_{nu+1}(x)] at 0 = sum_j C(m,j) rate^(m-j) j!/(j!(nu+1+j)!)
            expected = sum(binomial(m, j) * rate ** (m - j) * F(1, factorial(nu + 1 + j)) for j in range(m + 1))
            assert bessel_det_derivative(1, [nu], nu + 1, rate, m) == expected


def test_bessel_det_derivative_matches_unsorted_direct_determinant():
    rng = random.Random(3)
    for _ in range(60):
        k = rng.randint(1, 4)
        shifts = [rng.randint(0, 4) for _ in range(k)]
        deriv = rng.randint(0, 4)
        rate = rng.choice([F(-1), F(-1, 2)])
        grid = [[series_bessel_normalized(shifts[i] + (i + 1) + (j + 1) - 1, deriv) for j in range(k)]
                for i in range(k)]
        direct = derivative_at_zero(series_mul(series_exp(rate, deriv), series_det(grid)), deriv)
        assert bessel_det_derivative(k, shifts, sum(shifts) + k * k, rate, deriv) == direct


@pytest.mark.parametrize("k", [1, 2])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_contour_coefficient_series_identity(k, n):
    assert contour_coefficient_brute(k, n, 6) == contour_coefficient_bessel(k, n, 6)
