import math
from fractions import Fraction

import pytest

from acedag.partitions import (
    catalan,
    count_partitions,
    partition_count_bounds,
    slice_identity_check,
)

from conftest import brute_partitions


class TestCountPartitions:
    def test_basic_values(self):
        assert count_partitions(2, 4) == 2  # 3+1, 2+2
        assert count_partitions(5, 3) == 0
        for n in range(1, 20):
            assert count_partitions(1, n) == 1

    def test_zero_parts(self):
        assert count_partitions(0, 0) == 1
        assert count_partitions(0, 5) == 0

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            count_partitions(-1, 3)
        with pytest.raises(ValueError):
            count_partitions(2, -1)

    def test_matches_enumeration(self):
        for k in range(0, 7):
            for n in range(0, 26):
                assert count_partitions(k, n) == brute_partitions(k, n)

    def test_recurrence_crosscheck(self):
        # split on whether a part equals 1
        for k in range(1, 13):
            for n in range(k, 201):
                assert count_partitions(k, n) == (
                    count_partitions(k - 1, n - 1) + count_partitions(k, n - k)
                )

    def test_alternative_identity(self):
        # partitions into exactly k parts == partitions of n-k into at most k parts
        for k in range(1, 9):
            for n in range(k, 60):
                rhs = sum(count_partitions(j, n - k) for j in range(0, k + 1))
                assert count_partitions(k, n) == rhs

    def test_bounds_enclose(self):
        for k in range(1, 101):
            for n in range(k, 101):
                lo, hi = partition_count_bounds(k, n)
                assert lo <= count_partitions(k, n) <= hi

    def test_bounds_values(self):
        assert partition_count_bounds(2, 4) == (Fraction(3, 2), Fraction(5, 2))
        assert partition_count_bounds(1, 7) == (Fraction(1), Fraction(1))
        lo, hi = partition_count_bounds(3, 9)
        assert lo <= count_partitions(3, 9) == 7 <= hi

    def test_asymptotic_trend(self):
        # count(k, n) * k! (k-1)! / n^(k-1) tends to 1; closer at n=1e4 than 1e3
        for k in range(1, 6):
            def ratio(n):
                return count_partitions(k, n) * math.factorial(k) * math.factorial(k - 1) / n ** (k - 1)
            r4 = ratio(10_000)
            assert 0.8 <= r4 <= 1.2
            assert abs(r4 - 1) <= abs(ratio(1_000) - 1) + 1e-12


class TestCatalan:
    def test_small_values(self):
        # j=3 frozen from ballot-sequence enumeration; j=5 from the recurrence
        assert [catalan(j) for j in range(7)] == [1, 1, 2, 5, 14, 42, 132]

    def test_recurrence(self):
        for n in range(0, 15):
            assert catalan(n + 1) == sum(catalan(i) * catalan(n - i) for i in range(n + 1))

    def test_alternative_closed_form(self):
        # C_(v-1) == C(2v-2, v-2) / (v-1)
        for v in range(2, 20):
            assert catalan(v - 1) == math.comb(2 * v - 2, v - 2) // (v - 1)
            assert math.comb(2 * v - 2, v - 2) % (v - 1) == 0

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            catalan(-1)


class TestSliceIdentity:
    def test_small_direct(self):
        # v=2: LHS = 4, RHS = 4 * C(2,0)
        v = 2
        lhs = sum(math.comb(v, k) ** 2 * k * (v - k) for k in range(v + 1))
        assert lhs == 4 == v * v * math.comb(2 * v - 2, v - 2)
        assert slice_identity_check(2)

    @pytest.mark.parametrize("v", range(2, 41))
    def test_holds(self, v):
        assert slice_identity_check(v)

    def test_rejects_small_order(self):
        with pytest.raises(ValueError):
            slice_identity_check(1)
