"""Tabulated probability that a random length-k pattern is a subsequence
of a random length-l string over an m-symbol alphabet.

Built once per (alphabet size, max length) and shared read-only by every
scoring function.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np


@dataclass(frozen=True)
class ProbTable:
    m: int
    values: np.ndarray  # float64, shape (k_max + 1, l_max + 1)

    @property
    def k_max(self) -> int:
        return self.values.shape[0] - 1

    @property
    def l_max(self) -> int:
        return self.values.shape[1] - 1


def build_prob_table(m: int, k_max: int, l_max: int) -> ProbTable:
    """Fill the table by conditioning on the string's first character:

        p(k, l) = (1/m) p(k-1, l-1) + (1 - 1/m) p(k, l-1)

    with p(0, .) = 1 and p(k, l) = 0 for k > l. Equivalently the upper
    tail of a Binomial(l, 1/m) at k, which the tests validate by
    enumeration and simulation.
    """
    if m < 1:
        raise ValueError("alphabet size must be >= 1")
    if k_max < 0 or l_max < 0:
        raise ValueError("table bounds must be non-negative")
    q = 1.0 / m
    values = np.zeros((k_max + 1, l_max + 1), dtype=np.float64)
    values[0, :] = 1.0
    for l in range(1, l_max + 1):
        values[1:, l] = q * values[:-1, l - 1] + (1.0 - q) * values[1:, l - 1]
    values.flags.writeable = False
    return ProbTable(m, values)


def lookup(table: ProbTable, k: int, l: int) -> float:
    """Table access with explicit range checking."""
    if not 0 <= k <= table.k_max:
        raise IndexError(f"k={k} outside [0, {table.k_max}]")
    if not 0 <= l <= table.l_max:
        raise IndexError(f"l={l} outside [0, {table.l_max}]")
    return float(table.values[k, l])


@lru_cache(maxsize=64)
def prob_table_for(m: int, l_max: int) -> ProbTable:
    """Cached square table covering every remainder length up to ``l_max``."""
    return build_prob_table(m, l_max, l_max)
