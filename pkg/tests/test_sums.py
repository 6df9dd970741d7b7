import random
from itertools import combinations

import pytest

from subsetdiv.errors import ResourceLimitError
from subsetdiv.sums import (
    ElementSet,
    count_positive_differences,
    enumerate_subset_sums,
    find_equal_sum_pair,
    odd_part,
    subset_differences,
    subset_sums,
    witness_subset,
)


def brute_force_sums(elements) -> set[int]:
    out = set()
    for r in range(1, len(elements) + 1):
        for combo in combinations(elements, r):
            out.add(sum(combo))
    return out


def brute_force_differences(elements) -> list[int]:
    out = []
    k = len(elements)
    for signs in range(3**k):
        coeffs = []
        v = signs
        for _ in range(k):
            coeffs.append(v % 3 - 1)
            v //= 3
        if -1 not in coeffs:
            continue
        s = sum(c * a for c, a in zip(coeffs, elements))
        if s > 0:
            out.append(s)
    return sorted(out)


class TestElementSet:
    def test_ordering_and_validation(self):
        es = ElementSet.of([7, 4, 6])
        assert es.elements == (4, 6, 7)
        assert es.total() == 17
        with pytest.raises(ValueError):
            ElementSet.of([2, 2])
        with pytest.raises(ValueError):
            ElementSet.of([0, 3])
        with pytest.raises(ValueError):
            ElementSet.of([5], bound=4)

    def test_empty(self):
        es = ElementSet.of([])
        assert len(es) == 0 and es.total() == 0


class TestSubsetSums:
    def test_examples(self):
        assert subset_sums(ElementSet.of([])).bits == 0
        assert set(map(int, subset_sums(ElementSet.of([2, 3])).values())) == {2, 3, 5}
        assert set(map(int, subset_sums(ElementSet.of([7, 6, 4])).values())) == {
            4, 6, 7, 10, 11, 13, 17,
        }

    def test_bit_zero_clear_and_structure(self):
        ss = subset_sums(ElementSet.of([1, 2, 5]))
        assert not ss.contains(0)
        for a in (1, 2, 5):
            assert ss.contains(a)
        assert ss.contains(8)

    def test_matches_enumeration_randomly(self):
        rng = random.Random(99)
        for _ in range(200):
            k = rng.randint(0, 16)
            elems = rng.sample(range(1, 200), k)
            ss = subset_sums(ElementSet.of(elems))
            assert set(map(int, ss.values())) == brute_force_sums(elems)

    def test_distinct_count_iff_no_repeats(self):
        rng = random.Random(5)
        for _ in range(150):
            k = rng.randint(1, 10)
            elems = rng.sample(range(1, 60), k)
            ss = subset_sums(ElementSet.of(elems))
            repeats = len(enumerate_subset_sums(ElementSet.of(elems))) != len(
                set(enumerate_subset_sums(ElementSet.of(elems)))
            )
            assert (ss.count == 2**k - 1) == (not repeats)

    def test_budget_errors(self):
        with pytest.raises(ResourceLimitError):
            subset_sums(ElementSet.of(range(1, 70)))
        with pytest.raises(ResourceLimitError):
            subset_sums(ElementSet.of([10**9]), bit_budget=1 << 20)


class TestWitness:
    def test_examples(self):
        es = ElementSet.of([2, 3])
        assert witness_subset(es, 5) == (2, 3)
        assert witness_subset(es, 4) is None
        assert witness_subset(ElementSet.of([7, 6, 4]), 11) == (4, 7)

    def test_always_sums_correctly(self):
        rng = random.Random(21)
        for _ in range(100):
            elems = rng.sample(range(1, 80), rng.randint(1, 10))
            es = ElementSet.of(elems)
            ss = subset_sums(es)
            for s in range(1, es.total() + 1):
                w = witness_subset(es, s)
                if ss.contains(s):
                    assert w is not None and sum(w) == s
                    assert set(w) <= set(elems)
                else:
                    assert w is None


class TestOddPart:
    def test_examples(self):
        assert odd_part(1) == (1, 0)
        assert odd_part(12) == (3, 2)
        assert odd_part(2**10) == (1, 10)
        with pytest.raises(ValueError):
            odd_part(0)

    def test_round_trip(self):
        for s in range(1, 10**6 + 1, 997):
            o, e = odd_part(s)
            assert o % 2 == 1 and o * 2**e == s
        for s in range(1, 5000):
            o, e = odd_part(s)
            assert o % 2 == 1 and o * 2**e == s


class TestDifferences:
    def test_examples(self):
        assert subset_differences(ElementSet.of([2, 3])).values == (1,)
        assert subset_differences(ElementSet.of([1, 2])).values == (1,)
        d = subset_differences(ElementSet.of([7, 6, 4]))
        assert d.values == (1, 2, 3, 3, 5, 9)
        assert set(map(int, d.value_set())) == {1, 2, 3, 5, 9}

    def test_matches_sign_vector_enumeration(self):
        rng = random.Random(3)
        for _ in range(60):
            elems = rng.sample(range(1, 40), rng.randint(1, 7))
            d = subset_differences(ElementSet.of(elems))
            expected = brute_force_differences(elems)
            assert list(d.values) == expected
            assert set(map(int, d.value_set())) == set(expected)

    def test_multiplicity_cap(self):
        es = ElementSet.of(range(1, 16))
        with pytest.raises(ResourceLimitError):
            subset_differences(es, with_multiplicity=True)
        # bitset mode still works beyond the cap
        d = subset_differences(es)
        assert d.values is None and d.value_bits > 0

    def test_count_formula(self):
        assert count_positive_differences(0) == 0
        assert count_positive_differences(1) == 0
        assert count_positive_differences(2) == 1
        assert count_positive_differences(3) == 6
        # stays exact far past 64-bit territory
        k = 90
        assert count_positive_differences(k) == (3**k + 1) // 2 - 2**k


class TestEqualSumPair:
    def test_finds_duplicates(self):
        pair = find_equal_sum_pair(ElementSet.of([2, 3, 5]))
        assert pair is not None
        a, b = pair
        assert a != b and sum(a) == sum(b)

    def test_none_for_distinct_sums(self):
        assert find_equal_sum_pair(ElementSet.of([1, 2, 4, 8])) is None
