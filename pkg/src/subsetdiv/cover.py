"""Divisor coverage: deciding whether a set's subset sums hit a multiple of
every d <= n, the power-of-two witness construction, and exact minimal-size
search (brute-force oracle and pruned branch-and-bound)."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .arith import counting_lower_bound, partial_ratio_sum
from .errors import SearchExhaustedError
from .sums import ElementSet, bit_array, subset_sums, witness_subset

STATUS_OPTIMAL = "proven-optimal"
STATUS_INCUMBENT = "timeout-with-incumbent"


@dataclass(frozen=True)
class CoverageReport:
    """Per-divisor coverage of [1, n] by the subset sums of a set.

    ``witness_sums[d]`` is the smallest achieved multiple of a covered d;
    ``witness(d)`` expands it into an explicit subset on demand.
    """

    n: int
    source: ElementSet
    covered: tuple[bool, ...]  # index d in [1, n]; index 0 unused
    witness_sums: dict[int, int]
    first_uncovered: int | None
    elements_within_range: bool

    @property
    def fully_covered(self) -> bool:
        return self.first_uncovered is None

    def witness(self, d: int) -> tuple[int, ...]:
        if not self.covered[d]:
            raise ValueError(f"divisor {d} is not covered")
        subset = witness_subset(self.source, self.witness_sums[d])
        assert subset is not None
        return subset


def is_multiple_of(es: ElementSet, n: int) -> CoverageReport:
    """Scan multiples of each d <= n against the achievable-sum bitset."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    within = all(a <= n for a in es)
    covered = [False] * (n + 1)
    witness_sums: dict[int, int] = {}
    if len(es) > 0:
        ach = bit_array(subset_sums(es).bits, es.total() + 1)
        for d in range(1, n + 1):
            multiples = ach[d::d]  # values d, 2d, ...
            if multiples.size == 0:
                continue
            i = int(multiples.argmax())
            if multiples[i]:
                covered[d] = True
                witness_sums[d] = (i + 1) * d
    first = next((d for d in range(1, n + 1) if not covered[d]), None)
    return CoverageReport(
        n=n,
        source=es,
        covered=tuple(covered),
        witness_sums=witness_sums,
        first_uncovered=first,
        elements_within_range=within,
    )


def power_construction(n: int) -> ElementSet:
    """Small explicit set covering every divisor of [n].

    For n = 2^z the set {2, 4, ..., 2^z} works: its sums are exactly the even
    numbers in [2, 2^(z+1) - 2], and every d <= 2^z has an even multiple in
    that window.  For other n that window is too short (the odd divisors just
    above 2^z have no multiple within reach, e.g. n = 5, d = 5), so 1 is
    added; the sums then form the full interval [1, 2^(z+1) - 1] and every
    d <= n divides itself.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    z = n.bit_length() - 1  # 2^z <= n < 2^(z+1)
    if n == 1 << z:
        elements = [1 << i for i in range(1, z + 1)]
    else:
        elements = [1 << i for i in range(z + 1)]
    return ElementSet(elements=tuple(elements), bound=n)


@dataclass
class SearchConfig:
    node_limit: int = 10_000_000
    time_limit_ms: int | None = None


@dataclass(frozen=True)
class SearchResult:
    n: int
    l: int
    witness: tuple[int, ...]
    nodes_explored: int
    status: str
    lower_bound: int
    log2_floor: int


def _floor_log2(n: int) -> int:
    return n.bit_length() - 1


def _covers(bits: int, total: int, n: int) -> bool:
    """True iff every D in (n/2, n] divides some achieved sum.

    That condition is equivalent to full coverage of [1, n]: each d <= n/2
    has a multiple D in (n/2, n], and d | D | s chains.
    """
    lo = n // 2 + 1
    for d in range(n, lo - 1, -1):
        m = d
        while m <= total:
            if (bits >> m) & 1:
                break
            m += d
        else:
            return False
    return True


def _safe_lower_bound(n: int) -> int:
    # The counting bound's strict chain ties at n = 2 (and is undefined at 1).
    if n <= 2:
        return 1
    return counting_lower_bound(n)


def l_oracle(n: int, k_max: int | None = None) -> SearchResult:
    """Brute force over all subsets of [n] by size, then lexicographically.

    Independent of the branch-and-bound path: plain combinations order, full
    bitset rebuild per candidate.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if k_max is None:
        k_max = _floor_log2(n) + 1
    nodes = 0
    for k in range(1, k_max + 1):
        for combo in combinations(range(1, n + 1), k):
            total = sum(combo)
            if total < n:
                continue
            nodes += 1
            bits = 1
            for a in combo:
                bits |= bits << a
            if _covers(bits & ~1, total, n):
                return SearchResult(
                    n=n,
                    l=k,
                    witness=combo,
                    nodes_explored=nodes,
                    status=STATUS_OPTIMAL,
                    lower_bound=_safe_lower_bound(n),
                    log2_floor=_floor_log2(n),
                )
    raise SearchExhaustedError(f"no multiple of [{n}] found with at most {k_max} elements")


class _LimitHit(Exception):
    pass


def l_exact(n: int, config: SearchConfig | None = None) -> SearchResult:
    """Iterative deepening over the set size with a pruned decreasing-element
    DFS; returns a proven optimum or the power-construction incumbent when a
    node/time limit trips."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if config is None:
        config = SearchConfig()
    lo = n // 2 + 1
    n_big = n - lo + 1
    full = (1 << n_big) - 1
    lower = _safe_lower_bound(n)
    log2_floor = _floor_log2(n)
    k_hi = log2_floor + 1
    nodes = 0
    deadline = (
        time.monotonic() + config.time_limit_ms / 1000.0
        if config.time_limit_ms is not None
        else None
    )

    def cover_table(max_total: int) -> list[int]:
        # cov[s] has the bit of every divisor of s inside [lo, n] set.
        cov = [0] * (max_total + 1)
        for d in range(lo, n + 1):
            bit = 1 << (d - lo)
            for m in range(d, max_total + 1, d):
                cov[m] |= bit
        return cov

    cov: list[int] = []

    def dfs(k: int, max_next: int, slots: int, total: int, bits: int,
            mask: int, chosen: tuple[int, ...]) -> tuple[int, ...] | None:
        nonlocal nodes
        nodes += 1
        if nodes > config.node_limit:
            raise _LimitHit
        if deadline is not None and nodes % 1024 == 0 and time.monotonic() > deadline:
            raise _LimitHit
        if mask == full:
            return chosen
        if slots == 0:
            return None
        take = min(slots, max_next)
        best_add = take * max_next - take * (take - 1) // 2
        max_total = total + best_add
        if max_total < n:
            return None
        # Capacity prune: at most 2^k - 1 distinct sums can ever exist, each
        # covering at most `cap` divisors in [lo, n].
        p = bits.bit_count()
        remaining_new = min((1 << k) - 1, ((p + 1) << slots) - 1) - p
        cap = (max_total * (n - lo)) // (lo * n) + 1
        if n_big - mask.bit_count() > remaining_new * cap:
            return None
        for a in range(max_next, slots - 1, -1):
            new_bits = bits | (bits << a) | (1 << a)
            rest = new_bits & ~bits
            new_mask = mask
            while rest:
                b = rest & -rest
                new_mask |= cov[b.bit_length() - 1]
                rest ^= b
            found = dfs(k, a - 1, slots - 1, total + a, new_bits, new_mask,
                        chosen + (a,))
            if found is not None:
                return found
        return None

    try:
        for k in range(lower, k_hi + 1):
            max_total = k * n - k * (k - 1) // 2  # k largest elements of [n]
            cov = cover_table(max_total)
            found = dfs(k, n, k, 0, 0, 0, ())
            if found is not None:
                witness = tuple(sorted(found))
                return SearchResult(
                    n=n,
                    l=len(witness),
                    witness=witness,
                    nodes_explored=nodes,
                    status=STATUS_OPTIMAL,
                    lower_bound=lower,
                    log2_floor=log2_floor,
                )
        raise SearchExhaustedError(
            f"no multiple of [{n}] with at most {k_hi} elements; search invariant broken"
        )
    except _LimitHit:
        incumbent = (1,) if n == 1 else power_construction(n).elements
        return SearchResult(
            n=n,
            l=len(incumbent),
            witness=incumbent,
            nodes_explored=nodes,
            status=STATUS_INCUMBENT,
            lower_bound=lower,
            log2_floor=log2_floor,
        )


@dataclass(frozen=True)
class CountingAudit:
    n: int
    l: int
    lhs: int  # 2^(l-1) * l * n
    rhs: Fraction  # sum_{d <= n} d / tau(d)
    holds: bool
    boundary: bool  # the two sides tie exactly (n = 2, l = 1)


def counting_inequality_audit(n: int, l: int) -> CountingAudit:
    """Audit 2^(l-1) * l * n > sum_{d <= n} d/tau(d) exactly."""
    if n < 1 or l < 1:
        raise ValueError("need n >= 1 and l >= 1")
    lhs = 2 ** (l - 1) * l * n
    rhs = partial_ratio_sum(n)
    return CountingAudit(n=n, l=l, lhs=lhs, rhs=rhs, holds=lhs > rhs,
                         boundary=lhs == rhs)
