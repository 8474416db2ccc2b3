"""Index-set enumerators used by the coefficient formulas.

All enumerators are generators with a fixed order, so every sum built on
them is reproducible term by term.
"""

from __future__ import annotations

from typing import Iterator

__all__ = [
    "compositions_exact",
    "compositions_bounded",
    "weighted_partition_vectors",
    "vandermonde_integer",
]


def compositions_exact(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Yield all ``k``-tuples of non-negative integers summing to ``n``.

    Tuples come in lexicographic order; there are ``C(n+k-1, k-1)`` of them.

    >>> list(compositions_exact(2, 2))
    [(0, 2), (1, 1), (2, 0)]
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if n < 0:
        return
    if k == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in compositions_exact(n - first, k - 1):
            yield (first,) + rest


def compositions_bounded(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Yield all ``k``-tuples of non-negative integers with sum at most ``n``.

    Lexicographic order; ``C(n+k, k)`` tuples.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if n < 0:
        return
    if k == 1:
        for v in range(n + 1):
            yield (v,)
        return
    for first in range(n + 1):
        for rest in compositions_bounded(n - first, k - 1):
            yield (first,) + rest


def weighted_partition_vectors(n: int) -> Iterator[tuple[int, ...]]:
    """Yield every ``(m_1, ..., m_n)`` with ``sum(j * m_j) == n``.

    These are partitions of ``n`` written by multiplicity.  The order is
    reverse lexicographic (largest ``m_1`` first), e.g. ``n=2`` gives
    ``(2, 0)`` then ``(0, 1)``.  ``n=0`` yields the empty tuple once.
    """
    if n < 0:
        raise ValueError("n must be non-negative")

    def rec(j: int, remaining: int) -> Iterator[tuple[int, ...]]:
        # fill m_j, ..., m_n
        if j == n:
            if remaining % n == 0:
                yield (remaining // n,)
            return
        for m in range(remaining // j, -1, -1):
            for rest in rec(j + 1, remaining - j * m):
                yield (m,) + rest

    if n == 0:
        yield ()
        return
    yield from rec(1, n)


def vandermonde_integer(values) -> int:
    """``prod_{i<j} (values[j] - values[i])`` as an exact integer."""
    vals = list(values)
    out = 1
    for j in range(1, len(vals)):
        vj = vals[j]
        for i in range(j):
            out *= vj - vals[i]
            if out == 0:
                return 0
    return out
