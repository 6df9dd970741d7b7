"""Subset-sum substrate: reachable-sum bitsets, witnesses, odd parts and
signed subset differences.

Bitsets are plain Python integers (bit s set <=> sum s achievable), which
keeps the shifted-OR dynamic programming exact at any width; NumPy is used
only to fan a finished bitset out into positions or a boolean array.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ResourceLimitError

DEFAULT_ELEMENT_CAP = 62
DEFAULT_BIT_BUDGET = 1 << 26
DIFFERENCE_ENUMERATION_CAP = 13


@dataclass(frozen=True)
class ElementSet:
    """Strictly increasing distinct positive integers with an upper bound."""

    elements: tuple[int, ...]
    bound: int

    def __post_init__(self) -> None:
        prev = 0
        for a in self.elements:
            if a <= prev:
                raise ValueError("elements must be strictly increasing positive integers")
            prev = a
        if self.bound < 1:
            raise ValueError("bound must be positive")
        if self.elements and self.elements[-1] > self.bound:
            raise ValueError(
                f"largest element {self.elements[-1]} exceeds bound {self.bound}"
            )

    @classmethod
    def of(cls, values, bound: int | None = None) -> "ElementSet":
        elems = tuple(sorted(int(v) for v in values))
        if len(set(elems)) != len(elems):
            raise ValueError(f"duplicate elements in {elems}")
        if bound is None:
            bound = elems[-1] if elems else 1
        return cls(elements=elems, bound=bound)

    def total(self) -> int:
        return sum(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, a: int) -> bool:
        return a in self.elements


def bit_positions(bits: int) -> np.ndarray:
    """Indices of set bits, ascending."""
    if bits == 0:
        return np.empty(0, dtype=np.int64)
    raw = bits.to_bytes((bits.bit_length() + 7) // 8, "little")
    expanded = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
    return np.flatnonzero(expanded).astype(np.int64)


def bit_array(bits: int, length: int) -> np.ndarray:
    """Boolean array of the given length; index s is True iff bit s is set."""
    raw = bits.to_bytes((max(bits.bit_length(), 1) + 7) // 8, "little")
    expanded = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
    out = np.zeros(length, dtype=bool)
    n = min(length, expanded.size)
    out[:n] = expanded[:n]
    return out


@dataclass(frozen=True)
class SumSet:
    """Achievable nonempty subset sums of ``source`` as a bitset."""

    source: ElementSet
    bits: int

    @property
    def total(self) -> int:
        return self.source.total()

    @property
    def count(self) -> int:
        return self.bits.bit_count()

    def contains(self, s: int) -> bool:
        return s >= 0 and bool((self.bits >> s) & 1)

    def values(self) -> np.ndarray:
        return bit_positions(self.bits)


def subset_sums(
    es: ElementSet,
    *,
    element_cap: int = DEFAULT_ELEMENT_CAP,
    bit_budget: int = DEFAULT_BIT_BUDGET,
) -> SumSet:
    """Shifted-OR dynamic programming; bit 0 (the empty subset) is cleared."""
    if len(es) > element_cap:
        raise ResourceLimitError(f"{len(es)} elements exceed the cap {element_cap}")
    if es.total() + 1 > bit_budget:
        raise ResourceLimitError(
            f"total {es.total()} exceeds the bit budget {bit_budget}"
        )
    reach = 1
    for a in es:
        reach |= reach << a
    return SumSet(source=es, bits=reach & ~1)


def witness_subset(es: ElementSet, s: int) -> tuple[int, ...] | None:
    """A subset of es summing to s, or None when s is unreachable.

    Deterministic: greedy over elements in decreasing order, taking an element
    whenever the remainder stays reachable from the smaller ones.
    """
    if s < 1 or s > es.total():
        return None
    prefix = [1]
    for a in es:
        prefix.append(prefix[-1] | (prefix[-1] << a))
    if not (prefix[-1] >> s) & 1:
        return None
    chosen = []
    rest = s
    for i in range(len(es) - 1, -1, -1):
        a = es.elements[i]
        if rest >= a and (prefix[i] >> (rest - a)) & 1:
            chosen.append(a)
            rest -= a
    assert rest == 0
    return tuple(sorted(chosen))


def odd_part(s: int) -> tuple[int, int]:
    """Unique (odd, exponent) with s == odd * 2**exponent."""
    if s < 1:
        raise ValueError(f"expected a positive integer, got {s}")
    e = (s & -s).bit_length() - 1
    return s >> e, e


@dataclass(frozen=True)
class SignedSumSet:
    """Positive signed sums with at least one -1 coefficient.

    ``values`` carries multiplicity (one entry per qualifying sign vector) and
    is None in bitset-only mode; ``value_bits`` always records membership.
    """

    source: ElementSet
    value_bits: int
    values: tuple[int, ...] | None = field(default=None)

    def value_set(self) -> np.ndarray:
        return bit_positions(self.value_bits)

    def contains(self, v: int) -> bool:
        return v >= 0 and bool((self.value_bits >> v) & 1)


def subset_differences(
    es: ElementSet,
    *,
    with_multiplicity: bool | None = None,
    enumeration_cap: int = DIFFERENCE_ENUMERATION_CAP,
) -> SignedSumSet:
    """All positive sums over coefficients in {-1, 0, 1} with some -1.

    Full 3^k enumeration (with multiplicity) up to ``enumeration_cap``
    elements; beyond that only the value bitset is available.
    """
    k = len(es)
    if with_multiplicity is None:
        with_multiplicity = k <= enumeration_cap
    if with_multiplicity and k > enumeration_cap:
        raise ResourceLimitError(
            f"multiplicity enumeration needs k <= {enumeration_cap}, got {k}"
        )

    total = es.total()
    offset = total  # bit (v + offset) <=> signed value v
    no_neg = 1 << offset
    with_neg = 0
    for a in es:
        with_neg = with_neg | (with_neg << a) | (with_neg >> a) | (no_neg >> a)
        no_neg = no_neg | (no_neg << a)
    value_bits = (with_neg >> offset) & ~1

    values: tuple[int, ...] | None = None
    if with_multiplicity:
        acc: list[tuple[int, bool]] = [(0, False)]
        for a in es:
            acc = [
                pair
                for s, neg in acc
                for pair in ((s - a, True), (s, neg), (s + a, neg))
            ]
        values = tuple(sorted(s for s, neg in acc if neg and s > 0))
    return SignedSumSet(source=es, value_bits=value_bits, values=values)


def count_positive_differences(k: int) -> int:
    """(3^k + 1)/2 - 2^k, the number of positive signed sums with a -1
    coefficient when no nontrivial signed sum vanishes."""
    if k < 0:
        raise ValueError(f"expected k >= 0, got {k}")
    return (3**k + 1) // 2 - 2**k


def find_equal_sum_pair(
    es: ElementSet, *, max_steps: int | None = None
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Two distinct subsets with equal sums, or None if sums are distinct.

    Enumerates subsets in mask order with an early exit at the first repeated
    sum, so when duplicates exist the loop runs at most total+2 iterations.
    """
    k = len(es)
    elems = es.elements
    seen: dict[int, int] = {}
    cache: dict[int, int] = {0: 0}
    steps = max_steps if max_steps is not None else es.total() + 2
    if k <= 20:
        steps = max(steps, 1 << k)
    for mask in range(1, 1 << k):
        if mask > steps:
            break
        low = mask & -mask
        s = cache[mask ^ low] + elems[low.bit_length() - 1]
        cache[mask] = s
        if s in seen:
            other = seen[s]
            return (
                tuple(elems[i] for i in range(k) if (other >> i) & 1),
                tuple(elems[i] for i in range(k) if (mask >> i) & 1),
            )
        seen[s] = mask
    return None


def enumerate_subset_sums(es: ElementSet) -> list[int]:
    """All 2^k - 1 nonempty subset sums with multiplicity, by enumeration."""
    sums = [0]
    for a in es:
        sums += [s + a for s in sums]
    return sums[1:]
