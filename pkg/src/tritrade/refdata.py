"""Consistency auditing of the shipped reference tables.

Dimension 6 and 7 data cannot be recomputed at desk scale, so the audit
checks structure instead: every table must satisfy the sum identity
N = 2 * (number of nonempty bitrades) + 1, place zeros at every size
failing the mod-3 residue test and at 2^(n+1) exactly, open with 3^n
minimal trades, close with 3 * 2^(n-1) maximal ones, and stay empty on the
gap window between 14 * 3^(n-3) and the maximum.
"""

from __future__ import annotations

from dataclasses import dataclass

from .refdata_tables import (
    HALF_CARDINALITY_STATS,
    NPRIME,
    NPRIME_EXACT,
    N_FUNCTIONS,
    SPECTRUM_LISTS,
    spectrum_count,
    spectrum_entries,
)
from .trade import half_cardinality_stats_from_spectrum, mod3_admissible

__all__ = [
    "N_FUNCTIONS",
    "NPRIME",
    "NPRIME_EXACT",
    "HALF_CARDINALITY_STATS",
    "SPECTRUM_LISTS",
    "spectrum_entries",
    "spectrum_count",
    "ConsistencyReport",
    "consistency_report",
]


@dataclass(frozen=True)
class ConsistencyReport:
    n: int
    sum_identity: bool
    mod3_zeros: bool
    zero_at_double: bool
    minimal_head: bool
    maximal_tail: bool
    gap_empty: bool
    stats_match: bool

    @property
    def ok(self) -> bool:
        return all(
            (
                self.sum_identity,
                self.mod3_zeros,
                self.zero_at_double,
                self.minimal_head,
                self.maximal_tail,
                self.gap_empty,
                self.stats_match,
            )
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "sum_identity": self.sum_identity,
            "mod3_zeros": self.mod3_zeros,
            "zero_at_double": self.zero_at_double,
            "minimal_head": self.minimal_head,
            "maximal_tail": self.maximal_tail,
            "gap_empty": self.gap_empty,
            "stats_match": self.stats_match,
            "ok": self.ok,
        }


def consistency_report(n: int) -> ConsistencyReport:
    lst = SPECTRUM_LISTS[n]
    lo = 2 ** n
    sum_identity = 2 * sum(lst) + 1 == N_FUNCTIONS[n]
    mod3_zeros = all(
        c == 0 or mod3_admissible(n, lo + 2 * i) for i, c in enumerate(lst)
    )
    zero_at_double = spectrum_count(n, 2 ** (n + 1)) == 0
    minimal_head = lst[0] == 3 ** n
    maximal_tail = lst[-1] == 3 * 2 ** (n - 1)
    if n >= 3:
        gap_lo, gap_hi = 14 * 3 ** (n - 3), 2 * 3 ** (n - 1)
        gap_empty = all(
            spectrum_count(n, s) == 0 for s in range(gap_lo + 2, gap_hi, 2)
        )
    else:
        gap_empty = True
    mean, std = half_cardinality_stats_from_spectrum(spectrum_entries(n))
    ref_mean, ref_std = HALF_CARDINALITY_STATS[n]
    digits = 3 if n <= 5 else 2
    stats_match = (
        round(mean, digits) == round(ref_mean, digits)
        and round(std, digits) == round(ref_std, digits)
    )
    return ConsistencyReport(
        n,
        sum_identity,
        mod3_zeros,
        zero_at_double,
        minimal_head,
        maximal_tail,
        gap_empty,
        stats_match,
    )
