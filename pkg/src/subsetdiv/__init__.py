"""Exact search and verification for two subset-sum divisibility problems:
minimal sets whose subset sums hit a multiple of every d <= n, and sets whose
subset sums are multiple-free or have no power-of-2 quotient."""

from .arith import (
    counting_lower_bound,
    divisor_ratio_inequality,
    divisor_ratio_sum,
    divisors,
    tau,
    tau_table,
    weighted_inv_tau_sum,
)
from .cover import (
    CoverageReport,
    SearchConfig,
    SearchResult,
    counting_inequality_audit,
    is_multiple_of,
    l_exact,
    l_oracle,
    power_construction,
)
from .errors import ResourceLimitError, SearchExhaustedError
from .mfree import (
    Certificate,
    MaxSearchResult,
    PropertyVerdict,
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
from .sums import (
    ElementSet,
    SignedSumSet,
    SumSet,
    count_positive_differences,
    odd_part,
    subset_differences,
    subset_sums,
    witness_subset,
)

__version__ = "0.1.0"
