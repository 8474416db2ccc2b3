from fractions import Fraction

import mpmath
import pytest

from cuemoments.fixtures import LITERATURE_CONSTANTS
from cuemoments.momentcoeffs import MomentSpec
from cuemoments.numbertheory import (
    PiRational,
    arithmetic_factor,
    conjectured_constant,
    conjectured_constant_exact,
    local_factor,
    local_factor_series,
    primes_up_to,
)


def test_sieve():
    assert list(primes_up_to(30)) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert len(primes_up_to(10**5)) == 9592
    assert len(primes_up_to(1)) == 0


def test_local_factor_k2_at_two():
    # sum (m+1)^2 2^-m = 12, times (1/2)^4
    assert local_factor(2, 2) == mpmath.mpf(3) / 4
    assert abs(local_factor_series(2, 2, 1e-25) - mpmath.mpf(3) / 4) < 1e-24


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_closed_local_factor_matches_series(k):
    for p in (2, 3, 5, 101, 7919):
        closed = local_factor(k, p)
        series = local_factor_series(k, p, 1e-28)
        assert abs(closed - series) < 1e-25


@pytest.mark.parametrize("cutoff", [2, 10, 1000, 10**5])
def test_c1_is_exactly_one(cutoff):
    res = arithmetic_factor(1, cutoff)
    assert res.value == 1 and res.tail_bound_estimate == 0


def test_c2_monotone_toward_six_over_pi_squared():
    target = 6 / mpmath.pi**2
    values = [arithmetic_factor(2, c).value for c in (10, 100, 1000, 10**4)]
    assert all(a > b for a, b in zip(values, values[1:]))
    assert all(v > target for v in values)
    res = arithmetic_factor(2, 10**4)
    assert abs(res.value - target) <= 3 * res.tail_bound_estimate
    assert res.tail_bound_estimate > 0


def test_series_method_agrees():
    a = arithmetic_factor(3, 2000)
    b = arithmetic_factor(3, 2000, 1e-28, method="series")
    assert abs(a.value - b.value) < 1e-20
    assert b.method == "series"


def test_c3_smaller_than_c2():
    assert 0 < arithmetic_factor(3, 10**4).value < arithmetic_factor(2, 10**4).value


def test_argument_validation():
    with pytest.raises(ValueError):
        arithmetic_factor(2, 100, 0)
    with pytest.raises(ValueError):
        arithmetic_factor(2, 100, -1e-9)
    with pytest.raises(ValueError):
        arithmetic_factor(0, 100)
    with pytest.raises(ValueError):
        arithmetic_factor(2, 1)
    with pytest.raises(ValueError):
        arithmetic_factor(2, 100, method="euler")


def test_record_fields():
    rec = arithmetic_factor(2, 100).to_record()
    assert set(rec) == {"k", "cutoff", "value", "tail_bound_estimate"}


@pytest.mark.parametrize("n", range(0, 6))
def test_k1_constants(n):
    assert conjectured_constant_exact(MomentSpec(1, 1, n, 0), "a") == PiRational(Fraction(1, 2 * n + 1), 0)
    assert conjectured_constant_exact(MomentSpec(1, 1, n, 0), "b") == PiRational(Fraction(1, (2 * n + 1) * 4**n), 0)
    assert abs(conjectured_constant(MomentSpec(1, 1, n, 0), "a", cutoff=100) * (2 * n + 1) - 1) < 1e-25


@pytest.mark.parametrize("key", sorted(LITERATURE_CONSTANTS))
def test_literature_constants_exact(key):
    fam, k, M, n1, n2 = key
    rational, power = LITERATURE_CONSTANTS[key]
    got = conjectured_constant_exact(MomentSpec(k, M, n1, n2), fam)
    assert got == PiRational(Fraction(rational), power)


def test_literature_constant_numeric():
    got = conjectured_constant(MomentSpec(2, 1, 2, 0), "b", cutoff=10**4)
    assert abs(got / (1 / (672 * mpmath.pi**2)) - 1) < 1e-4


def test_no_closed_form_beyond_k2():
    with pytest.raises(ValueError):
        conjectured_constant_exact(MomentSpec(3, 1, 0, 0), "a")
