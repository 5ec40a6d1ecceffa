"""Dependence classification of invariant basis tuples.

A tuple is *dependent* when it is the multiset union of two invariant
tuples, i.e. when some proper nonempty sub-multiset has a zero m-sum (and an
even l-sum for O3/O3F); the complement then satisfies the same constraints
automatically.  Dependent tuples factor into lower-order basis functions and
therefore cost nothing extra in a recursive evaluation graph; independent
ones force auxiliary nodes.

``is_dependent`` searches sub-multisets through multiplicity vectors grouped
by the (m, l) sums that matter, short-circuiting on the first hit.
``is_dependent_bruteforce`` is a deliberately naive positional re-check over
all 2^order - 2 proper subsets, kept as an independent oracle.

Single-label tuples cannot be split and are classified independent.
Splits are allowed any degree: the defining constraint is symmetry only, so
for p-norms other than the additive p = 1 a part may exceed the degree cap
its parent satisfies.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from acedag.indexsets import (
    DegreeSpec,
    Group,
    element_l,
    element_m,
    iter_tuples,
    satisfies_constraints,
    tuple_degree,
)


def proper_splits(elements) -> list[tuple[tuple, tuple]]:
    """All unordered two-part splits of a canonical tuple, each listed once.

    Parts are canonical; pairs are normalised to left <= right and returned
    sorted by left part (then right), so scan order is deterministic.
    """
    items = [(e, len(list(g))) for e, g in itertools.groupby(elements)]
    splits: list[tuple[tuple, tuple]] = []

    def rec(i, left, right):
        if i == len(items):
            if left and right:
                pair = (tuple(left), tuple(right))
                if pair[0] <= pair[1]:
                    splits.append(pair)
            return
        e, c = items[i]
        for j in range(c + 1):
            rec(i + 1, left + [e] * j, right + [e] * (c - j))

    rec(0, [], [])
    splits.sort()
    return splits


def invariant_splits(elements, group: Group, *, validate: bool = True) -> list[tuple[tuple, tuple]]:
    """Splits of an invariant tuple whose two parts are both invariant.

    Raises ValueError when ``validate`` is set and the input itself violates
    the group constraints.
    """
    if validate and not satisfies_constraints(elements, group):
        raise ValueError(f"tuple violates {group.value} constraints: {elements!r}")
    out = []
    for left, right in proper_splits(elements):
        if satisfies_constraints(left, group) and satisfies_constraints(right, group):
            out.append((left, right))
    return out


def is_dependent(elements, group: Group, *, validate: bool = True) -> bool:
    """True iff some proper nonempty sub-multiset is itself invariant."""
    if validate and not satisfies_constraints(elements, group):
        raise ValueError(f"tuple violates {group.value} constraints: {elements!r}")
    nu = len(elements)
    if nu < 2:
        return False
    # Only the (m, l) content of a selection matters, so group equal pairs.
    counts: dict[tuple[int, int], int] = {}
    for e in elements:
        key = (element_m(e), element_l(e))
        counts[key] = counts.get(key, 0) + 1
    items = list(counts.items())
    need_parity = group.has_l

    def rec(i, size, msum, lsum):
        if i == len(items):
            return (
                0 < size < nu
                and msum == 0
                and (not need_parity or lsum % 2 == 0)
            )
        (m, l), c = items[i]
        for j in range(c + 1):
            if rec(i + 1, size + j, msum + j * m, lsum + j * l):
                return True
        return False

    return rec(0, 0, 0, 0)


def is_dependent_bruteforce(elements, group: Group) -> bool:
    """Positional exhaustive oracle: test every proper subset of positions."""
    nu = len(elements)
    if nu < 2:
        return False
    for mask in range(1, (1 << nu) - 1):
        left = [elements[i] for i in range(nu) if mask >> i & 1]
        right = [elements[i] for i in range(nu) if not mask >> i & 1]
        if satisfies_constraints(left, group) and satisfies_constraints(right, group):
            return True
    return False


@dataclass(frozen=True)
class ClassCounts:
    total: int
    dependent: int
    independent: int


def class_counts(group: Group, order: int, spec: DegreeSpec) -> ClassCounts:
    """Tuple census at one order: total, dependent and independent counts."""
    total = dep = 0
    for t in iter_tuples(group, order, spec):
        total += 1
        if is_dependent(t, group, validate=False):
            dep += 1
    return ClassCounts(total, dep, total - dep)


def class_counts_by_degree(group: Group, order: int, max_degree: int) -> tuple[list[int], list[int]]:
    """Histogram census for p = 1: counts of all / dependent tuples per degree.

    Returns (totals, dependents), lists indexed by exact total degree
    0..max_degree.  Prefix sums give ``class_counts`` for every cap
    D <= max_degree from a single enumeration pass.
    """
    spec = DegreeSpec(1, max_degree)
    totals = [0] * (max_degree + 1)
    deps = [0] * (max_degree + 1)
    for t in iter_tuples(group, order, spec):
        d = tuple_degree(t, spec)
        totals[d] += 1
        if is_dependent(t, group, validate=False):
            deps[d] += 1
    return totals, deps
