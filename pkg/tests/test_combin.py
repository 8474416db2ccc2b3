import itertools
import math
import random

import pytest

from cuemoments.combin import (
    compositions_bounded,
    compositions_exact,
    vandermonde_integer,
    weighted_partition_vectors,
)

PARTITION_NUMBERS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176, 231, 297, 385, 490, 627]


def test_compositions_exact_examples():
    assert list(compositions_exact(2, 2)) == [(0, 2), (1, 1), (2, 0)]
    assert list(compositions_exact(0, 3)) == [(0, 0, 0)]
    assert len(list(compositions_exact(4, 3))) == 15


def test_compositions_bounded_examples():
    assert list(compositions_bounded(1, 2)) == [(0, 0), (0, 1), (1, 0)]
    assert list(compositions_bounded(0, 1)) == [(0,)]
    assert len(list(compositions_bounded(3, 2))) == 10


@pytest.mark.parametrize("n", range(0, 9))
@pytest.mark.parametrize("k", range(1, 9))
def test_composition_counts_and_order(n, k):
    exact = list(compositions_exact(n, k))
    bounded = list(compositions_bounded(n, k))
    assert len(exact) == math.comb(n + k - 1, k - 1)
    assert len(bounded) == math.comb(n + k, k)
    assert exact == sorted(exact) and bounded == sorted(bounded)
    assert len(set(bounded)) == len(bounded)
    assert all(sum(c) == n and len(c) == k for c in exact)
    brute = [c for c in itertools.product(range(n + 1), repeat=k) if sum(c) <= n]
    assert bounded == brute


def test_enumerators_are_lazy():
    gen = compositions_exact(200, 10)
    assert next(gen) == (0,) * 9 + (200,)


def test_weighted_partition_examples():
    assert list(weighted_partition_vectors(2)) == [(2, 0), (0, 1)]
    assert list(weighted_partition_vectors(0)) == [()]
    assert len(list(weighted_partition_vectors(4))) == 5


@pytest.mark.parametrize("n", range(0, 21))
def test_weighted_partition_counts(n):
    vecs = list(weighted_partition_vectors(n))
    assert len(vecs) == PARTITION_NUMBERS[n]
    assert len(set(vecs)) == len(vecs)
    for v in vecs:
        assert len(v) == n and sum((j + 1) * x for j, x in enumerate(v)) == n
    assert vecs == list(weighted_partition_vectors(n))


def test_weighted_partition_exhaustive_small():
    for n in range(1, 7):
        brute = {m for m in itertools.product(*(range(n // j + 1) for j in range(1, n + 1)))
                 if sum((j + 1) * x for j, x in enumerate(m)) == n}
        assert set(weighted_partition_vectors(n)) == brute


def test_vandermonde_examples():
    assert vandermonde_integer([0, 1, 2]) == 2
    assert vandermonde_integer([5]) == 1
    assert vandermonde_integer([]) == 1
    assert vandermonde_integer([3, 0, 4]) == -12


def test_vandermonde_antisymmetric():
    rng = random.Random(5)
    for _ in range(200):
        vals = [rng.randint(-20, 20) for _ in range(rng.randint(2, 6))]
        i, j = rng.sample(range(len(vals)), 2)
        swapped = list(vals)
        swapped[i], swapped[j] = swapped[j], swapped[i]
        assert vandermonde_integer(swapped) == -vandermonde_integer(vals)
