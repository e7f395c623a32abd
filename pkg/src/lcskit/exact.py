"""Exact string algorithms: longest common substring and LCS oracles.

The pairwise LCS and the (tiny) n-string LCS are polynomial dynamic
programs used to validate the heuristic solvers; the longest-common-
substring length doubles as the classifier's similarity function.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .strings import StringSet

DEFAULT_DP_BUDGET = 10**7  # max DP cells for the n-string oracle


class BudgetExceededError(RuntimeError):
    """The n-string DP oracle would exceed its configured cell budget."""


def _as_array(seq: str | Sequence[int] | np.ndarray) -> np.ndarray:
    if isinstance(seq, str):
        return np.fromiter(map(ord, seq), dtype=np.int64, count=len(seq))
    return np.asarray(seq, dtype=np.int64)


def lct_length(a: str | Sequence[int], b: str | Sequence[int]) -> int:
    """Length of the longest contiguous block common to ``a`` and ``b``.

    Quadratic DP over suffix-match lengths; row-vectorized. Empty inputs
    give 0.
    """
    x, y = _as_array(a), _as_array(b)
    if x.size == 0 or y.size == 0:
        return 0
    best = 0
    prev = np.zeros(y.size + 1, dtype=np.int32)
    cur = np.zeros(y.size + 1, dtype=np.int32)
    for i in range(x.size):
        np.add(prev[:-1], 1, out=cur[1:])
        cur[1:] *= x[i] == y
        best = max(best, int(cur.max()))
        prev, cur = cur, prev
    return best


def exact_lcs_pair(a: str | Sequence[int], b: str | Sequence[int]) -> str | list[int]:
    """A maximum-length common subsequence of two strings (classical DP).

    The returned witness is deterministic; only its length is unique.
    Returns a ``str`` when both inputs are strings, else a list of symbols.
    """
    x, y = _as_array(a), _as_array(b)
    la, lb = x.size, y.size
    dp = np.zeros((la + 1, lb + 1), dtype=np.int32)
    for i in range(la):
        match = np.where(x[i] == y, dp[i, :-1] + 1, 0).astype(np.int32)
        np.maximum(dp[i, 1:], match, out=dp[i + 1, 1:])
        np.maximum.accumulate(dp[i + 1], out=dp[i + 1])
    out: list[int] = []
    i, j = la, lb
    while i > 0 and j > 0:
        if x[i - 1] == y[j - 1] and dp[i, j] == dp[i - 1, j - 1] + 1:
            out.append(int(x[i - 1]))
            i -= 1
            j -= 1
        elif dp[i - 1, j] >= dp[i, j - 1]:
            i -= 1
        else:
            j -= 1
    out.reverse()
    if isinstance(a, str) and isinstance(b, str):
        return "".join(chr(c) for c in out)
    return out


def exact_lcs_small(s: StringSet, budget: int = DEFAULT_DP_BUDGET) -> str:
    """A maximum-length common subsequence of all strings in ``s``.

    Full n-dimensional DP; only feasible for tiny instances, so the table
    size is capped by ``budget`` cells.
    """
    lengths = s.lengths
    cells = math.prod(l + 1 for l in lengths)
    if cells > budget:
        raise BudgetExceededError(
            f"DP table would need {cells} cells (budget {budget})"
        )
    if s.n == 1:
        return s.alphabet.decode(s.strings[0])

    first = s.strings[0]
    rest = s.strings[1:]
    slice_shape = tuple(l + 1 for l in lengths[1:])
    dp = np.zeros((lengths[0] + 1,) + slice_shape, dtype=np.int32)
    inner = np.s_[(slice(1, None),) * len(rest)]
    shifted = np.s_[(slice(None, -1),) * len(rest)]
    for p1 in range(1, lengths[0] + 1):
        ch = first[p1 - 1]
        # all-strings-match mask over the trailing dimensions
        mask = np.ones((), dtype=bool)
        for arr in rest:
            mask = np.multiply.outer(mask, arr == ch)
        cur = dp[p1 - 1].copy()
        diag = dp[p1 - 1][shifted] + 1
        np.maximum(cur[inner], np.where(mask, diag, 0), out=cur[inner])
        for axis in range(len(rest)):
            np.maximum.accumulate(cur, axis=axis, out=cur)
        dp[p1] = cur

    # walk back through the table to recover one witness
    pos = list(lengths)
    out: list[int] = []
    while all(p > 0 for p in pos):
        here = dp[tuple(pos)]
        ch = first[pos[0] - 1]
        if all(arr[p - 1] == ch for arr, p in zip(rest, pos[1:])):
            prev = tuple(p - 1 for p in pos)
            if dp[prev] + 1 == here:
                out.append(int(ch))
                pos = list(prev)
                continue
        for axis in range(s.n):
            stepped = tuple(p - (k == axis) for k, p in enumerate(pos))
            if pos[axis] > 0 and dp[stepped] == here:
                pos = list(stepped)
                break
    out.reverse()
    return s.alphabet.decode(out)
