"""Frequency summaries of a sample: counts, occupancy counts and Turing's formula."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Hashable, Iterable, Mapping

import numpy as np

from .errors import EmptySample, InvalidParameter


@dataclass(frozen=True)
class FrequencyTable:
    """Observed symbol counts ``Y_k`` and the sample size ``n``.

    Only observed symbols are stored, so every count is at least one and the
    counts sum to ``n``. Instances are immutable.
    """

    counts: Mapping[Hashable, int]
    n: int = field(init=False)

    def __post_init__(self):
        clean = {}
        for sym, c in self.counts.items():
            c_int = int(c)
            if c_int != c or c_int < 1:
                raise InvalidParameter(f"count for {sym!r} must be a positive integer, got {c!r}")
            clean[sym] = c_int
        if not clean:
            raise EmptySample("frequency table needs at least one observed symbol")
        object.__setattr__(self, "counts", MappingProxyType(clean))
        object.__setattr__(self, "n", sum(clean.values()))

    def __len__(self):
        return len(self.counts)

    def values(self) -> np.ndarray:
        """Counts as an int64 array, symbol identity dropped."""
        return np.fromiter(self.counts.values(), dtype=np.int64, count=len(self.counts))

    def count_of_counts(self) -> tuple[np.ndarray, np.ndarray]:
        """Distinct count values ``r`` (ascending) and their multiplicities ``N_r``."""
        return np.unique(self.values(), return_counts=True)

    def relative_frequencies(self) -> dict:
        return {sym: c / self.n for sym, c in self.counts.items()}


def build_frequency_table(observations: Iterable[Hashable]) -> FrequencyTable:
    counts = Counter(observations)
    if not counts:
        raise EmptySample("cannot build a frequency table from an empty sample")
    return FrequencyTable(counts)


def occupancy_count(ft: FrequencyTable, r: int) -> int:
    """Number of symbols observed exactly ``r`` times.

    ``r = 0`` is rejected: unobserved symbols are not enumerable.
    """
    if r < 1:
        raise InvalidParameter(f"r must be >= 1, got {r}")
    if r > ft.n:
        return 0
    return sum(1 for c in ft.counts.values() if c == r)


def turing_estimate(ft: FrequencyTable) -> float:
    """Turing's estimate ``N_1 / n`` of the missing probability mass."""
    return occupancy_count(ft, 1) / ft.n
