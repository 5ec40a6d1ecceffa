"""Symmetry-constrained index tuples for invariant polynomial bases.

A one-particle basis function is labelled by a small integer tuple whose
layout depends on the symmetry group:

    T    (m,)          angular frequency on the circle
    SO2  (n, m)        radial degree n >= 0 and angular frequency m
    O3   (n, l, m)     radial degree, angular momentum l >= |m|
    O3F  (n, l, m, f)  O3 plus the polynomial degree f of a feature factor

A basis tuple is a multiset of such labels stored canonically, i.e. sorted in
lexicographic component order.  A tuple is *invariant* when the m components
sum to zero and, for O3/O3F, the l components have an even sum; only invariant
tuples index basis functions that can carry a nonzero model coefficient.

``enumerate_tuples`` generates every canonical invariant tuple of a given
order whose p-degree does not exceed a cap D.  The per-element degree is
|m| (T), n + |m| (SO2), n + l (O3) or n + l + f (O3F); the tuple degree is
the p-norm of the per-element degrees with p in {1, 2, inf}.  Degree-cap
membership is decided in exact integer arithmetic (comparing the p-th powers)
so that set membership is reproducible bit for bit.

All functions here are pure and operate on immutable tuples; they are safe to
call concurrently.  Enumeration output is always in ascending canonical
order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator


class Group(Enum):
    """Symmetry group governing constraints and the per-element degree."""

    T = "T"
    SO2 = "SO2"
    O3 = "O3"
    O3F = "O3F"

    @property
    def components(self) -> int:
        """Number of integer components in a one-particle label."""
        return _NCOMP[self]

    @property
    def has_l(self) -> bool:
        return self in (Group.O3, Group.O3F)


_NCOMP = {Group.T: 1, Group.SO2: 2, Group.O3: 3, Group.O3F: 4}

# Positions of the m (and l) component inside a label, per arity.
_M_POS = {1: 0, 2: 1, 3: 2, 4: 2}


def element_m(element: tuple) -> int:
    return element[_M_POS[len(element)]]


def element_l(element: tuple) -> int:
    """Angular momentum of a label; 0 for groups without an l component."""
    return element[1] if len(element) >= 3 else 0


def element_degree(element: tuple) -> int:
    """Per-element polynomial degree.  The label arity determines the rule."""
    k = len(element)
    if k == 1:
        return abs(element[0])
    if k == 2:
        return element[0] + abs(element[1])
    if k == 3:
        return element[0] + element[1]
    return element[0] + element[1] + element[3]


def validate_element(group: Group, element: tuple) -> None:
    """Raise ValueError unless ``element`` is a well-formed label for ``group``."""
    if not isinstance(element, tuple) or len(element) != group.components:
        raise ValueError(f"{group.value} labels have {group.components} components, got {element!r}")
    if not all(isinstance(c, int) for c in element):
        raise ValueError(f"label components must be integers, got {element!r}")
    if group is Group.SO2 and element[0] < 0:
        raise ValueError(f"radial degree must be non-negative in {element!r}")
    if group.has_l:
        n, l = element[0], element[1]
        if n < 0 or l < 0:
            raise ValueError(f"n and l must be non-negative in {element!r}")
        if abs(element[2]) > l:
            raise ValueError(f"|m| <= l violated in {element!r}")
        if group is Group.O3F and element[3] < 0:
            raise ValueError(f"feature degree must be non-negative in {element!r}")


def canonical(elements) -> tuple:
    """Canonical (sorted) form of a multiset of labels."""
    return tuple(sorted(elements))


def is_canonical(elements) -> bool:
    return all(elements[i] <= elements[i + 1] for i in range(len(elements) - 1))


@dataclass(frozen=True)
class DegreeSpec:
    """Degree rule: p-norm of per-element degrees capped at ``max_degree``.

    ``p`` is 1, 2 or ``math.inf``; ``max_degree`` is a non-negative number
    (usually an integer).  Membership tests compare integer p-th powers
    against ``power_cap`` so no floating-point boundary errors can occur.
    """

    p: float
    max_degree: float

    def __post_init__(self):
        if self.p not in (1, 2, math.inf):
            raise ValueError(f"p must be 1, 2 or inf, got {self.p!r}")
        if not (self.max_degree >= 0 and math.isfinite(self.max_degree)):
            raise ValueError(f"max_degree must be a finite non-negative number, got {self.max_degree!r}")

    def int_cap(self) -> int:
        """Largest admissible per-element degree."""
        return math.floor(self.max_degree)

    def power_cap(self) -> int:
        """floor(max_degree ** p) for finite p, floor(max_degree) for p=inf."""
        if self.p == 2:
            return math.floor(Fraction(self.max_degree) ** 2)
        return math.floor(self.max_degree)

    def power_key(self, elements) -> int:
        """Integer that orders tuples exactly as their p-degree does."""
        if self.p == 1:
            return sum(element_degree(e) for e in elements)
        if self.p == 2:
            return sum(element_degree(e) ** 2 for e in elements)
        return max((element_degree(e) for e in elements), default=0)

    def within(self, elements) -> bool:
        return self.power_key(elements) <= self.power_cap()


def tuple_degree(elements, spec: DegreeSpec):
    """p-degree of a basis tuple: an exact integer for p in {1, inf}, a float for p=2."""
    key = spec.power_key(elements)
    if spec.p == 2:
        return math.sqrt(key)
    return key


def satisfies_constraints(elements, group: Group) -> bool:
    """True iff the m components sum to zero (and sum of l is even for O3/O3F)."""
    if sum(element_m(e) for e in elements) != 0:
        return False
    if group.has_l and sum(element_l(e) for e in elements) % 2 != 0:
        return False
    return True


# --------------------------------------------------------------------------
# One-particle label pools


def one_particle_indices(group: Group, max_degree: int) -> list[tuple]:
    """All labels with element degree <= max_degree, in canonical order."""
    cap = int(max_degree)
    if cap < 0:
        return []
    out: list[tuple] = []
    if group is Group.T:
        out.extend((m,) for m in range(-cap, cap + 1))
    elif group is Group.SO2:
        for n in range(cap + 1):
            r = cap - n
            out.extend((n, m) for m in range(-r, r + 1))
    elif group is Group.O3:
        for n in range(cap + 1):
            for l in range(cap - n + 1):
                out.extend((n, l, m) for m in range(-l, l + 1))
    else:
        for n in range(cap + 1):
            for l in range(cap - n + 1):
                for m in range(-l, l + 1):
                    out.extend((n, l, m, f) for f in range(cap - n - l + 1))
    return out


# --------------------------------------------------------------------------
# Enumeration of invariant tuples.
#
# The p=1 generators below walk canonical (non-decreasing) label sequences
# and prune on two exact conditions: the remaining additive degree budget b,
# and reachability of a zero m-sum.  Cancelling a partial sum M costs at
# least |M| units of degree, so any viable next label m must satisfy
# |m-cost| + |M + m| <= b, which for the torus-style cost |m| confines m to
# the integer interval [-(b+M)//2, (b-M)//2].


def _iter_p1_t(order: int, cap: int) -> Iterator[tuple]:
    prefix: list[tuple] = []

    def rec(lo, budget, msum, slots):
        if slots == 1:
            m = -msum
            if m >= lo and abs(m) <= budget:
                yield tuple(prefix) + ((m,),)
            return
        m_lo = -((budget + msum) // 2)
        if lo > m_lo:
            m_lo = lo
        for m in range(m_lo, (budget - msum) // 2 + 1):
            prefix.append((m,))
            yield from rec(m, budget - abs(m), msum + m, slots - 1)
            prefix.pop()

    return rec(-cap - 1, cap, 0, order)


def _iter_p1_so2(order: int, cap: int) -> Iterator[tuple]:
    prefix: list[tuple] = []

    def rec(lo_n, lo_m, budget, msum, slots):
        if slots == 1:
            m = -msum
            n0 = lo_n if m >= lo_m else lo_n + 1
            base = tuple(prefix)
            for n in range(n0, budget - abs(m) + 1):
                yield base + ((n, m),)
            return
        for n in range(lo_n, budget + 1):
            c = budget - n
            m_lo = -((c + msum) // 2)
            if n == lo_n and lo_m > m_lo:
                m_lo = lo_m
            for m in range(m_lo, (c - msum) // 2 + 1):
                prefix.append((n, m))
                yield from rec(n, m, budget - n - abs(m), msum + m, slots - 1)
                prefix.pop()

    return rec(0, -cap - 1, cap, 0, order)


def _iter_p1_o3(order: int, cap: int) -> Iterator[tuple]:
    prefix: list[tuple] = []

    def rec(lo_n, lo_l, lo_m, budget, msum, lsum, slots):
        if slots == 1:
            m = -msum
            am = abs(m)
            par = lsum & 1
            base = tuple(prefix)
            for n in range(lo_n, budget - am + 1):
                l_min = am
                if n == lo_n:
                    if lo_l > l_min:
                        l_min = lo_l
                    if l_min == lo_l and m < lo_m:
                        l_min += 1
                l0 = l_min + ((l_min ^ par) & 1)
                for l in range(l0, budget - n + 1, 2):
                    yield base + ((n, l, m),)
            return
        for n in range(lo_n, budget + 1):
            l_base = lo_l if n == lo_n else 0
            for l in range(l_base, budget - n + 1):
                c = budget - n - l
                m_lo = max(-l, -msum - c)
                m_hi = min(l, -msum + c)
                if n == lo_n and l == lo_l and lo_m > m_lo:
                    m_lo = lo_m
                for m in range(m_lo, m_hi + 1):
                    prefix.append((n, l, m))
                    yield from rec(n, l, m, c, msum + m, lsum + l, slots - 1)
                    prefix.pop()

    return rec(0, 0, 0, cap, 0, 0, order)


def _iter_p1_o3f(order: int, cap: int) -> Iterator[tuple]:
    prefix: list[tuple] = []

    def rec(lo_n, lo_l, lo_m, lo_f, budget, msum, lsum, slots):
        if slots == 1:
            m = -msum
            am = abs(m)
            par = lsum & 1
            base = tuple(prefix)
            for n in range(lo_n, budget - am + 1):
                l_min = am
                tie_n = n == lo_n
                if tie_n and lo_l > l_min:
                    l_min = lo_l
                if tie_n and l_min == lo_l and m < lo_m:
                    l_min += 1
                l0 = l_min + ((l_min ^ par) & 1)
                for l in range(l0, budget - n + 1, 2):
                    f0 = lo_f if (tie_n and l == lo_l and m == lo_m) else 0
                    for f in range(f0, budget - n - l + 1):
                        yield base + ((n, l, m, f),)
            return
        for n in range(lo_n, budget + 1):
            l_base = lo_l if n == lo_n else 0
            for l in range(l_base, budget - n + 1):
                c = budget - n - l
                m_lo = max(-l, -msum - c)
                m_hi = min(l, -msum + c)
                tie_nl = n == lo_n and l == lo_l
                if tie_nl and lo_m > m_lo:
                    m_lo = lo_m
                for m in range(m_lo, m_hi + 1):
                    f_cap = c - abs(msum + m)
                    f0 = lo_f if (tie_nl and m == lo_m) else 0
                    for f in range(f0, f_cap + 1):
                        prefix.append((n, l, m, f))
                        yield from rec(n, l, m, f, budget - n - l - f, msum + m, lsum + l, slots - 1)
                        prefix.pop()

    return rec(0, 0, 0, 0, cap, 0, 0, order)


_P1_ITERS = {
    Group.T: _iter_p1_t,
    Group.SO2: _iter_p1_so2,
    Group.O3: _iter_p1_o3,
    Group.O3F: _iter_p1_o3f,
}


def _iter_generic(group: Group, order: int, spec: DegreeSpec) -> Iterator[tuple]:
    # p in {2, inf}: walk a precomputed label pool with exact power budgets.
    pool = one_particle_indices(group, spec.int_cap())
    degs = [element_degree(e) for e in pool]
    ms = [element_m(e) for e in pool]
    ls = [element_l(e) for e in pool]
    need_l = group.has_l
    squared = spec.p == 2
    cap = spec.int_cap()
    prefix: list[tuple] = []

    def rec(i0, rem, msum, lsum, slots):
        if slots == 0:
            if msum == 0 and (not need_l or lsum % 2 == 0):
                yield tuple(prefix)
            return
        for i in range(i0, len(pool)):
            if squared:
                dp = degs[i] * degs[i]
                if dp > rem:
                    continue
                nxt = rem - dp
            else:
                nxt = rem
            if abs(msum + ms[i]) > (slots - 1) * cap:
                continue
            prefix.append(pool[i])
            yield from rec(i, nxt, msum + ms[i], lsum + ls[i], slots - 1)
            prefix.pop()

    return rec(0, spec.power_cap(), 0, 0, order)


def iter_tuples(group: Group, order: int, spec: DegreeSpec) -> Iterator[tuple]:
    """Stream the canonical invariant tuples of the given order, ascending.

    Raises ValueError for order < 1.
    """
    if order < 1:
        raise ValueError(f"order must be a positive integer, got {order!r}")
    if order == 1:
        def gen1():
            for e in one_particle_indices(group, spec.int_cap()):
                if element_m(e) == 0 and (not group.has_l or element_l(e) % 2 == 0):
                    yield (e,)
        return gen1()
    if spec.p == 1:
        return _P1_ITERS[group](order, spec.int_cap())
    return _iter_generic(group, order, spec)


def enumerate_tuples(group: Group, order: int, spec: DegreeSpec) -> list[tuple]:
    """All canonical invariant tuples of exactly ``order`` labels with degree <= cap."""
    return list(iter_tuples(group, order, spec))


def enumerate_slice(order: int, degree: int) -> list[tuple]:
    """Torus tuples of the given order with exact total degree and no zero m.

    Returns every canonical tuple over labels (m,) with m != 0, sum of m
    equal to zero and sum of |m| exactly ``degree``.  Empty whenever
    ``degree`` is odd, since the positive and negative parts must balance.
    """
    if order < 1:
        raise ValueError(f"order must be a positive integer, got {order!r}")
    if degree < 0:
        raise ValueError(f"degree must be non-negative, got {degree!r}")
    out: list[tuple] = []
    if degree % 2 != 0 or degree < order or order == 1:
        return out
    prefix: list[tuple] = []

    def rec(lo, rem, msum, slots):
        if slots == 1:
            m = -msum
            if m != 0 and m >= lo and abs(m) == rem:
                out.append(tuple(prefix) + ((m,),))
            return
        m_lo = max(lo, -((rem + msum) // 2))
        for m in range(m_lo, (rem - msum) // 2 + 1):
            if m == 0:
                continue
            left = rem - abs(m)
            if left < slots - 1:
                continue
            if (left - (msum + m)) % 2 != 0:
                continue
            prefix.append((m,))
            rec(m, left, msum + m, slots - 1)
            prefix.pop()

    rec(-degree - 1, degree, 0, order)
    return out


# --------------------------------------------------------------------------
# Text syntax for tuples, shared by the graph file format and the CLI.


def format_elements(elements) -> str:
    """Comma-separated component list, e.g. ``-1,0,1`` or ``0,1,-1,0,1,1``."""
    return ",".join(str(c) for e in elements for c in e)


def parse_elements(group: Group, text: str) -> tuple:
    """Inverse of :func:`format_elements`; validates labels and canonical order."""
    try:
        comps = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise ValueError(f"tuple components must be integers: {text!r}") from None
    k = group.components
    if not comps or len(comps) % k != 0:
        raise ValueError(f"expected a multiple of {k} components for {group.value}, got {len(comps)}")
    elements = tuple(tuple(comps[i: i + k]) for i in range(0, len(comps), k))
    for e in elements:
        validate_element(group, e)
    if not is_canonical(elements):
        raise ValueError(f"tuple is not in canonical (sorted) order: {text!r}")
    return elements
