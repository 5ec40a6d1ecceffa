import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from acedag.dependency import (
    class_counts,
    class_counts_by_degree,
    invariant_splits,
    is_dependent,
    is_dependent_bruteforce,
    proper_splits,
)
from acedag.indexsets import DegreeSpec, Group, canonical, enumerate_tuples, iter_tuples

from conftest import brute_invariant, brute_tuples


def T(*ms):
    return tuple((m,) for m in ms)


def unordered(splits):
    return {frozenset((l, r)) for l, r in splits}


class TestSplits:
    def test_proper_splits_cover_all(self):
        t = T(-1, -1, 1, 1)
        got = proper_splits(t)
        assert len(got) == 4  # three unequal splits plus the equal-halves one
        assert (T(-1, 1), T(-1, 1)) in got
        for left, right in got:
            assert canonical(left + right) == t

    def test_named_decomposition(self):
        got = invariant_splits(T(-1, 0, 1), Group.T)
        assert unordered(got) == {frozenset({T(0), T(-1, 1)})}

    def test_no_decomposition(self):
        assert invariant_splits(T(-2, 1, 1), Group.T) == []

    def test_multiple_decompositions(self):
        got = unordered(invariant_splits(T(-3, -2, -1, 1, 2, 3), Group.T))
        assert frozenset({T(-3, 3), T(-2, -1, 1, 2)}) in got
        assert frozenset({T(-2, 2), T(-3, -1, 1, 3)}) in got

    def test_sorted_by_left(self):
        got = invariant_splits(T(-2, -1, 0, 1, 2), Group.T)
        assert got == sorted(got)

    def test_rejects_non_invariant(self):
        with pytest.raises(ValueError):
            invariant_splits(T(1, 1), Group.T)
        with pytest.raises(ValueError):
            is_dependent(T(1,), Group.T)

    def test_o3_parts_need_even_l(self):
        # each part has zero m-sum but odd l-sum: not an invariant split
        t = canonical([(0, 1, 0), (0, 1, 0)])
        assert invariant_splits(t, Group.O3) == []
        assert not is_dependent(t, Group.O3)


class TestClassify:
    def test_paper_pair(self):
        assert is_dependent(T(-1, 0, 1), Group.T)
        assert not is_dependent(T(-2, 1, 1), Group.T)

    def test_all_zero_dependent(self):
        for nu in range(2, 6):
            assert is_dependent(T(*([0] * nu)), Group.T)

    def test_order_one_independent(self):
        assert not is_dependent(T(0), Group.T)
        assert not is_dependent_bruteforce(T(0), Group.T)

    def test_padding_with_zero_is_dependent(self):
        for nu in (2, 3, 4, 5):
            for t in enumerate_tuples(Group.T, nu - 1, DegreeSpec(1, 8)):
                assert is_dependent(canonical(t + ((0,),)), Group.T)

    def test_split_parts_may_exceed_p2_cap(self):
        # degrees (4, 4, 3): 2-norm sqrt(41) < 6.5, but the part (0,4),(0,-4)
        # has 2-norm sqrt(32) > 5; with no cap on parts this is dependent.
        t = canonical([(0, 4), (0, -4), (3, 0)])
        spec = DegreeSpec(2, 6.5)
        assert spec.within(t)
        assert is_dependent(t, Group.SO2)

    @pytest.mark.parametrize("group", list(Group))
    def test_oracle_agreement_sweep(self, group):
        cap = 8 if group is Group.T else 5
        for order in (2, 3, 4):
            for t in iter_tuples(group, order, DegreeSpec(1, cap)):
                assert is_dependent(t, group) == is_dependent_bruteforce(t, group), t

    def test_oracle_agreement_p2(self):
        for t in iter_tuples(Group.O3, 3, DegreeSpec(2, 4)):
            assert is_dependent(t, Group.O3) == is_dependent_bruteforce(t, Group.O3)


class TestCounts:
    def test_torus_nu2_d4(self):
        cc = class_counts(Group.T, 2, DegreeSpec(1, 4))
        assert (cc.total, cc.dependent, cc.independent) == (3, 1, 2)

    def test_torus_nu3_d1(self):
        cc = class_counts(Group.T, 3, DegreeSpec(1, 1))
        assert (cc.total, cc.dependent, cc.independent) == (1, 1, 0)

    def test_o3_nu3_d4(self):
        # frozen from the positional oracle over the brute-force enumeration
        brute = brute_tuples(Group.O3, 3, 1, 4)
        dep = sum(is_dependent_bruteforce(t, Group.O3) for t in brute)
        cc = class_counts(Group.O3, 3, DegreeSpec(1, 4))
        assert (cc.total, cc.dependent) == (len(brute), dep) == (48, 44)

    def test_totals_add_up(self):
        cc = class_counts(Group.SO2, 3, DegreeSpec(1, 6))
        assert cc.dependent + cc.independent == cc.total

    @pytest.mark.parametrize("group", [Group.T, Group.SO2])
    def test_histogram_matches_per_cap_counts(self, group):
        totals, deps = class_counts_by_degree(group, 3, 10)
        for d in range(0, 11):
            cc = class_counts(group, 3, DegreeSpec(1, d))
            assert sum(totals[: d + 1]) == cc.total
            assert sum(deps[: d + 1]) == cc.dependent

    @pytest.mark.parametrize("nu", [3, 4, 5])
    def test_torus_dependent_fraction_band(self, nu):
        # D * dependent/total stays within a bounded band as D grows
        totals, deps = class_counts_by_degree(Group.T, nu, 40)
        vals = []
        for d in range(8, 41):
            tot = sum(totals[: d + 1])
            dep = sum(deps[: d + 1])
            vals.append(d * dep / tot)
        assert max(vals) / min(vals) < 3.0


@st.composite
def torus_invariant_tuples(draw):
    ms = draw(st.lists(st.integers(-6, 6), min_size=1, max_size=5))
    return canonical((m,) for m in ms + [-sum(ms)])


@settings(max_examples=300, deadline=None)
@given(torus_invariant_tuples())
def test_classifier_matches_oracle_random(t):
    assert is_dependent(t, Group.T) == is_dependent_bruteforce(t, Group.T)


@st.composite
def o3_invariant_tuples(draw):
    nu = draw(st.integers(2, 4))
    elems = []
    lsum = msum = 0
    for _ in range(nu - 1):
        l = draw(st.integers(0, 3))
        m = draw(st.integers(-l, l))
        n = draw(st.integers(0, 2))
        elems.append((n, l, m))
        lsum += l
        msum += m
    m_last = -msum
    l_last = abs(m_last) + ((abs(m_last) + lsum) % 2)
    elems.append((draw(st.integers(0, 2)), l_last, m_last))
    return canonical(elems)


@settings(max_examples=300, deadline=None)
@given(o3_invariant_tuples())
def test_o3_classifier_matches_oracle_random(t):
    assert brute_invariant(t, Group.O3)
    assert is_dependent(t, Group.O3) == is_dependent_bruteforce(t, Group.O3)
