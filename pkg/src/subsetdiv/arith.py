"""Divisor-count arithmetic and the exact inequalities built on it.

Everything that feeds a strict inequality is computed with exact rationals
(`fractions.Fraction`); only the cumulative diagnostic sum over n <= x uses
compensated floating-point accumulation, since its exact denominators grow
without bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ResourceLimitError

DEFAULT_SIEVE_LIMIT = 1_000_000


def _check_positive(n: int) -> None:
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")


def tau(n: int) -> int:
    """Number of positive divisors of n, by trial division."""
    _check_positive(n)
    count = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            count += 2
        d += 1
    d -= 1
    if d * d == n:
        count -= 1
    return count


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    _check_positive(n)
    small = []
    large = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@dataclass(frozen=True)
class TauTable:
    """Sieve of divisor counts: values[i] == tau(i) for 1 <= i <= limit."""

    limit: int
    values: np.ndarray

    def __getitem__(self, n: int) -> int:
        if not 1 <= n <= self.limit:
            raise IndexError(f"{n} outside sieve range [1, {self.limit}]")
        return int(self.values[n])


def tau_table(limit: int) -> TauTable:
    _check_positive(limit)
    values = np.zeros(limit + 1, dtype=np.int64)
    for d in range(1, limit + 1):
        values[d::d] += 1
    return TauTable(limit=limit, values=values)


def divisor_ratio_sum(n: int) -> Fraction:
    """Exact value of sum_{d | n} d / tau(d)."""
    _check_positive(n)
    return sum((Fraction(d, tau(d)) for d in divisors(n)), Fraction(0))


def divisor_ratio_inequality(n: int) -> tuple[bool, Fraction]:
    """Whether n strictly exceeds sum_{d | n} d/tau(d); returns (holds, margin).

    The margin n - sum is exact.  At n = 2 the two sides are equal, so the
    strict inequality fails there; callers treat that as a reported boundary
    rather than a violation.
    """
    if n < 2:
        raise ValueError(f"inequality is stated for n >= 2, got {n}")
    margin = n - divisor_ratio_sum(n)
    return margin > 0, margin


def divisor_ratio_margins_upto(limit: int) -> list[Fraction | None]:
    """Exact margins n - sum_{d|n} d/tau(d) for every 2 <= n <= limit.

    Accumulates each per-n sum as an integer multiple of 1/L where L is the
    lcm of all tau values in range, which is far cheaper than a Fraction add
    per divisor.  Entries 0 and 1 are None.
    """
    if limit < 2:
        raise ValueError(f"need limit >= 2, got {limit}")
    taus = tau_table(limit).values
    common = 1
    for t in sorted(set(int(v) for v in taus[1:])):
        common = math.lcm(common, t)
    weight = {t: common // t for t in set(int(v) for v in taus[1:])}
    acc = [0] * (limit + 1)
    for d in range(1, limit + 1):
        w = d * weight[int(taus[d])]
        for m in range(d, limit + 1, d):
            acc[m] += w
    out: list[Fraction | None] = [None, None]
    out.extend(Fraction(n * common - acc[n], common) for n in range(2, limit + 1))
    return out


_partial_sums: list[Fraction] = [Fraction(0), Fraction(1)]


def partial_ratio_sum(n: int) -> Fraction:
    """Exact sum_{d <= n} d / tau(d); prefixes are cached."""
    _check_positive(n)
    while len(_partial_sums) <= n:
        d = len(_partial_sums)
        _partial_sums.append(_partial_sums[-1] + Fraction(d, tau(d)))
    return _partial_sums[n]


def counting_lower_bound(n: int) -> int:
    """Smallest k with 2^(k-1) * k * n > sum_{d <= n} d/tau(d).

    Any set of size l covering every divisor of [n] satisfies the displayed
    inequality with k = l, except at the n = 2 boundary where the two sides
    tie; callers whitelist that case.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    rhs = partial_ratio_sum(n)
    k = 1
    while not 2 ** (k - 1) * k * n > rhs:
        k += 1
    return k


def weighted_inv_tau_sum(
    x: int,
    *,
    limit: int = DEFAULT_SIEVE_LIMIT,
    exact: bool = False,
    table: TauTable | None = None,
) -> float | Fraction:
    """sum_{n <= x} n / tau(n), sieve-backed.

    The float path accumulates with math.fsum, so the result is the nearest
    float to the exact sum of the rounded terms; the accumulation error is at
    most x units in the last place of the running sum.  ``exact=True`` returns
    a Fraction and is only sensible for small x.
    """
    _check_positive(x)
    if exact:
        return sum((Fraction(n, tau(n)) for n in range(1, x + 1)), Fraction(0))
    if table is None:
        if x > limit:
            raise ResourceLimitError(
                f"x={x} exceeds the configured sieve limit {limit}"
            )
        table = tau_table(x)
    elif x > table.limit:
        raise ResourceLimitError(f"x={x} exceeds the supplied table limit {table.limit}")
    ns = np.arange(1, x + 1, dtype=np.float64)
    terms = ns / table.values[1 : x + 1]
    return math.fsum(terms.tolist())


def partial_sum_comparator(x: int) -> float:
    """x^2 / (2 sqrt(log x)); nan at x = 1 where the denominator vanishes."""
    _check_positive(x)
    if x == 1:
        return float("nan")
    return x * x / (2.0 * math.sqrt(math.log(x)))
