"""Exact integer-partition counting and related combinatorial identities.

``count_partitions(k, n)`` is the number of multisets of exactly k positive
integers summing to n.  Values are exact arbitrary-precision integers,
computed by dynamic programming over the recurrence

    count(k, n) = count(k - 1, n - 1) + count(k, n - k)

(split off the partitions containing a part equal to 1 versus subtracting 1
from every part).  The table is cached per process behind a lock, so the
functions are safe for concurrent use.

Edge cases: count_partitions(0, 0) is 1 (the empty partition, needed so the
recurrence closes), while count_partitions(0, n) is 0 for n > 0.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction

_lock = threading.Lock()
_table: list[list[int]] = [[1]]  # _table[k][n]; starts as the k=0 row for n=0


def _grow(kmax: int, nmax: int) -> None:
    global _table
    have_k = len(_table) - 1
    have_n = len(_table[0]) - 1
    if kmax <= have_k and nmax <= have_n:
        return
    kmax = max(kmax, have_k)
    nmax = max(nmax, have_n)
    table = [[1] + [0] * nmax]
    for k in range(1, kmax + 1):
        prev = table[k - 1]
        row = [0] * (nmax + 1)
        for n in range(k, nmax + 1):
            row[n] = prev[n - 1] + row[n - k]
        table.append(row)
    _table = table


def count_partitions(parts: int, total: int) -> int:
    """Number of partitions of ``total`` into exactly ``parts`` positive parts."""
    if parts < 0 or total < 0:
        raise ValueError("parts and total must be non-negative")
    if parts == 0:
        return 1 if total == 0 else 0
    if parts > total:
        return 0
    with _lock:
        _grow(parts, total)
        return _table[parts][total]


def partition_count_bounds(parts: int, total: int) -> tuple[Fraction, Fraction]:
    """Exact rational lower and upper bounds enclosing count_partitions.

    lower = C(total-1, parts-1) / parts!
    upper = (total + parts(parts-1)/2)^(parts-1) / (parts! (parts-1)!)
    """
    if parts < 1 or total < 1:
        raise ValueError("bounds require parts >= 1 and total >= 1")
    lower = Fraction(math.comb(total - 1, parts - 1), math.factorial(parts))
    upper = Fraction(
        (total + parts * (parts - 1) // 2) ** (parts - 1),
        math.factorial(parts) * math.factorial(parts - 1),
    )
    return lower, upper


def catalan(j: int) -> int:
    """j-th Catalan number C(2j, j) / (j + 1), exactly."""
    if j < 0:
        raise ValueError("catalan is defined for non-negative integers")
    return math.comb(2 * j, j) // (j + 1)


def slice_identity_check(order: int) -> bool:
    """Exact check of sum_k C(v,k)^2 k(v-k) == v^2 C(2v-2, v-2) for v = order."""
    v = order
    if v < 2:
        raise ValueError("identity requires order >= 2")
    lhs = sum(math.comb(v, k) ** 2 * k * (v - k) for k in range(v + 1))
    return lhs == v * v * math.comb(2 * v - 2, v - 2)
