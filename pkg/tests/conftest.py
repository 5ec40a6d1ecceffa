"""Shared brute-force oracles, written independently of the library internals.

Everything here recomputes from first principles with dumb loops so the
production code paths (pruned recursive enumeration, multiplicity-vector
split search, graph recursion) are checked against genuinely different
algorithms.
"""

from __future__ import annotations

import itertools
import math

from acedag.indexsets import Group


def brute_pool(group: Group, cap: int) -> list[tuple]:
    """Every one-particle label with element degree <= cap, by raw loops."""
    if group is Group.T:
        return [(m,) for m in range(-cap, cap + 1)]
    if group is Group.SO2:
        return [(n, m) for n in range(cap + 1) for m in range(-cap, cap + 1)
                if n + abs(m) <= cap]
    if group is Group.O3:
        return [(n, l, m) for n in range(cap + 1) for l in range(cap + 1)
                for m in range(-l, l + 1) if n + l <= cap]
    return [(n, l, m, f) for n in range(cap + 1) for l in range(cap + 1)
            for m in range(-l, l + 1) for f in range(cap + 1) if n + l + f <= cap]


def brute_degree(element: tuple) -> int:
    if len(element) == 1:
        return abs(element[0])
    if len(element) == 2:
        return element[0] + abs(element[1])
    if len(element) == 3:
        return element[0] + element[1]
    return element[0] + element[1] + element[3]


def brute_norm_ok(combo, p, cap: float) -> bool:
    degs = [brute_degree(e) for e in combo]
    if p == 1:
        return sum(degs) <= cap
    if p == 2:
        return math.sqrt(sum(d * d for d in degs)) <= cap + 1e-12
    return max(degs) <= cap


def brute_invariant(combo, group: Group) -> bool:
    mpos = {1: 0, 2: 1, 3: 2, 4: 2}[len(combo[0])]
    if sum(e[mpos] for e in combo) != 0:
        return False
    if group in (Group.O3, Group.O3F) and sum(e[1] for e in combo) % 2 != 0:
        return False
    return True


def brute_tuples(group: Group, order: int, p, cap) -> set[tuple]:
    """Reference enumeration: full cartesian sweep, then filter."""
    out = set()
    for combo in itertools.combinations_with_replacement(brute_pool(group, int(cap)), order):
        if brute_invariant(combo, group) and brute_norm_ok(combo, p, cap):
            out.add(combo)
    return out


def brute_partitions(parts: int, total: int) -> int:
    """Count partitions by explicit enumeration (small inputs only)."""
    if parts == 0:
        return 1 if total == 0 else 0

    def rec(k, rem, smallest):
        if k == 0:
            return 1 if rem == 0 else 0
        return sum(rec(k - 1, rem - v, v) for v in range(smallest, rem + 1))

    return rec(parts, total, 1)
