import random
from itertools import combinations

import pytest

from subsetdiv import mfree
from subsetdiv.cover import SearchConfig
from subsetdiv.mfree import (
    adjunction_check,
    adjunction_identity,
    construction,
    difference_exclusion_check,
    find_power2_pair,
    is_multiple_free,
    is_r_star,
    max_property_set,
    min_total_check,
)
from subsetdiv.sums import ElementSet


def all_nonempty_sums(elements):
    out = []
    for r in range(1, len(elements) + 1):
        for combo in combinations(elements, r):
            out.append(sum(combo))
    return out


def naive_r(elements) -> bool:
    sums = all_nonempty_sums(elements)
    for i, a in enumerate(sums):
        for j, b in enumerate(sums):
            if i != j and b % a == 0:
                return False
    return True


def naive_r_star(elements) -> bool:
    sums = all_nonempty_sums(elements)
    for i, a in enumerate(sums):
        for j, b in enumerate(sums):
            if i == j or b < a:
                continue
            q, r = divmod(b, a)
            if r == 0 and q & (q - 1) == 0:
                return False
    return True


class TestPropertyCheckers:
    def test_examples(self):
        assert is_multiple_free(ElementSet.of([2, 3])).holds
        assert is_r_star(ElementSet.of([2, 3])).holds

        v = is_multiple_free(ElementSet.of([1, 2]))
        assert not v.holds and v.certificate.kind == "divides"

        v = is_multiple_free(ElementSet.of([2, 3, 5]))
        assert not v.holds and v.certificate.kind == "duplicate-sum"

        # {3, 5}: 3 + 5 = 8 is not a multiple of either, quotients not powers
        assert is_multiple_free(ElementSet.of([3, 5])).holds
        # {3, 6}: 6 / 3 = 2 breaks both properties
        assert not is_multiple_free(ElementSet.of([3, 6])).holds
        assert not is_r_star(ElementSet.of([3, 6])).holds
        # {1, 6}: 6 / 1 breaks R, but no quotient (6, 7, 7/6) is a power of 2
        assert not is_multiple_free(ElementSet.of([1, 6])).holds
        assert is_r_star(ElementSet.of([1, 6])).holds

    def test_trivial_sizes(self):
        assert is_multiple_free(ElementSet.of([])).holds
        assert is_r_star(ElementSet.of([7])).holds

    def test_r_implies_r_star_violation_direction(self):
        # R* failing forces R to fail as well
        rng = random.Random(11)
        for _ in range(200):
            elems = rng.sample(range(1, 50), rng.randint(2, 6))
            es = ElementSet.of(elems)
            if not is_r_star(es).holds:
                assert not is_multiple_free(es).holds

    def test_matches_naive_checkers(self):
        rng = random.Random(23)
        for _ in range(250):
            elems = rng.sample(range(1, 64), rng.randint(2, 7))
            es = ElementSet.of(elems)
            assert is_multiple_free(es).holds == naive_r(elems)
            assert is_r_star(es).holds == naive_r_star(elems)

    def test_certificates_verify(self):
        rng = random.Random(41)
        seen_kinds = set()
        for _ in range(300):
            elems = rng.sample(range(1, 64), rng.randint(2, 7))
            es = ElementSet.of(elems)
            for verdict in (is_multiple_free(es), is_r_star(es)):
                if verdict.certificate is not None:
                    assert verdict.certificate.verify()
                    for sub in (verdict.certificate.subset_a, verdict.certificate.subset_b):
                        assert set(sub) <= set(elems)
                    seen_kinds.add(verdict.certificate.kind)
        assert {"duplicate-sum", "divides", "power-of-2-quotient"} <= seen_kinds


class TestConstruction:
    def test_examples(self):
        assert construction(1).elements == (1,)
        assert construction(3).elements == (4, 6, 7)
        assert construction(4).elements == (8, 12, 14, 15)

    def test_has_r_through_z_14(self):
        for z in range(1, 15):
            es = construction(z)
            assert len(es) == z and es.bound == 1 << z
            assert is_multiple_free(es).holds, z
            assert is_r_star(es).holds, z


class TestAdjunction:
    def test_identity_examples(self):
        i = adjunction_identity(1, 3)
        assert not i.degenerate and i.verify()
        assert 1 + sum(i.left) == sum(i.right)

        i = adjunction_identity(3, 4)
        assert i.verify() and i.value == 3 + sum(i.left) == sum(i.right)

        i = adjunction_identity(5, 4)
        assert i.verify()

        assert adjunction_identity(5, 3).degenerate  # top bit 2 > z - 2

    def test_identity_sides_are_construction_members(self):
        for z in range(2, 9):
            members = set(construction(z).elements)
            for c in range(1, 1 << (z - 1)):
                i = adjunction_identity(c, z)
                if i.degenerate:
                    continue
                assert set(i.left) <= members and set(i.right) <= members

    def test_every_adjunction_fails_r(self):
        for z in range(1, 9):
            verdicts = adjunction_check(z)
            assert len(verdicts) == 1 << z
            for v in verdicts:
                assert v.fails_r, (z, v.c)
                if v.mode == "identity":
                    assert v.certificate.verify() and v.identity.verify()


class TestPower2Pair:
    def test_examples(self):
        assert find_power2_pair([3, 5, 6], 6) == (3, 6)
        assert find_power2_pair([3, 5], 6) is None
        with pytest.raises(ValueError):
            find_power2_pair([9], 6)

    def test_pigeonhole_guarantee(self):
        rng = random.Random(77)
        for _ in range(500):
            x = rng.randint(1, 1000)
            v = (x + 1) // 2 + 1
            if v > x:
                continue
            seq = rng.sample(range(1, x + 1), v)
            pair = find_power2_pair(seq, x)
            assert pair is not None
            a, b = pair
            q = b // a
            assert b % a == 0 and q & (q - 1) == 0


class TestBounds:
    def test_total_bound_examples(self):
        v = min_total_check(ElementSet.of([2, 3]))
        assert v.applicable and v.holds and v.margin == 0  # tight at k = 2

        v = min_total_check(ElementSet.of([1, 2]))
        assert not v.applicable and v.holds is None

    def test_exhaustive_small_r_star_sets(self):
        # every R* subset of [24] with k <= 4 meets the total bound and
        # excludes its signed differences from its sums
        checked = 0
        for k in range(2, 5):
            for combo in combinations(range(1, 25), k):
                es = ElementSet.of(combo)
                if not is_r_star(es).holds:
                    continue
                checked += 1
                tv = min_total_check(es)
                assert tv.applicable and tv.holds, combo
                dv = difference_exclusion_check(es)
                assert dv.applicable and dv.holds, combo
        assert checked > 1000

    def test_difference_exclusion_inapplicable(self):
        v = difference_exclusion_check(ElementSet.of([1, 2]))
        assert not v.applicable


class TestMaxSearch:
    def brute_max(self, z, prop):
        universe = range(1, (1 << z) + 1)
        check = is_multiple_free if prop == mfree.PROPERTY_R else is_r_star
        best = ()
        for k in range(len(list(universe)), 0, -1):
            hits = [c for c in combinations(universe, k) if check(ElementSet.of(c)).holds]
            if hits:
                return k, min(hits)
        return 0, best

    def test_matches_brute_force_z2_z3(self):
        for z in (2, 3):
            for prop in (mfree.PROPERTY_R, mfree.PROPERTY_R_STAR):
                r = max_property_set(z, prop)
                k, witness = self.brute_max(z, prop)
                assert r.exhaustive
                assert r.k_max == k
                assert r.witness == witness

    def test_known_values(self):
        r = max_property_set(2, mfree.PROPERTY_R_STAR)
        assert r.k_max == 2 and r.witness == (2, 3)
        r = max_property_set(3, mfree.PROPERTY_R_STAR)
        assert r.k_max == 3 and r.witness == (3, 7, 8)
        r = max_property_set(4, mfree.PROPERTY_R_STAR)
        assert r.k_max == 4 and r.k_minus_z == 0

    def test_limited_run_reports_seed(self):
        r = max_property_set(5, mfree.PROPERTY_R, SearchConfig(node_limit=1))
        assert not r.exhaustive and r.k_max >= 5
        assert r.witness == construction(5).elements

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            max_property_set(0, mfree.PROPERTY_R)
        with pytest.raises(ValueError):
            max_property_set(3, "Q")
