"""Node-scoring functions for the beam search portfolio.

Four scorers are provided: an expected-length score summed over candidate
subsequence lengths (``BS_EX``), a fixed-k product score with the k chosen
analytically for uncorrelated or correlated sets (``K_UNCOR`` / ``K_COR``),
and a coefficient-of-variation score (``GCOV``).

Every scorer is pure: given an immutable :class:`ScoreContext` it returns a
finite non-negative float, so candidates may be scored in any order or in
parallel without changing results. ``batch_scores`` is the vectorized
equivalent used by the search engine; the per-context functions are the
reference path and the two are cross-checked in the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .probability import ProbTable


class HeuristicKind(Enum):
    BS_EX = "bs-ex"
    K_UNCOR = "k-uncor"
    K_COR = "k-cor"
    GCOV = "gcov"

    @classmethod
    def from_name(cls, name: str) -> "HeuristicKind":
        for kind in cls:
            if kind.value == name:
                return kind
        raise ValueError(f"unknown heuristic {name!r}")


@dataclass(frozen=True)
class HeuristicParams:
    """Tuned scoring constants; the variance exponent depends on the number
    of strings and is derived via :meth:`gamma`."""

    a: float = 1.8233
    b: float = 0.1588
    c: float = 31.0
    variance_floor: float = 1e-6

    def gamma(self, n: int) -> float:
        return 0.0036 * n - 0.0161


@dataclass(frozen=True)
class ScoreContext:
    """Everything a scorer may consult for one candidate node.

    ``remainder_lengths`` describes the candidate itself; the ``level_*``
    statistics aggregate over every candidate of the current beam level,
    which is what fixes k for the analytic scorers.
    """

    remainder_lengths: np.ndarray  # int, shape (n,)
    level_max_remainder: int
    level_min_remainder: int
    m: int
    n: int
    prob: ProbTable
    ub: int

    @property
    def min_remainder(self) -> int:
        return int(self.remainder_lengths.min())


def _round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


def _k_from_stats(mode: str, level_max: int, level_min: int, m: int, n: int,
                  params: HeuristicParams) -> int:
    if mode == "uncor":
        raw = level_max * (params.a - params.b * math.log(n)) / m
    elif mode == "cor":
        raw = (level_min - params.c) / m
    else:
        raise ValueError(f"unknown k mode {mode!r}")
    k = _round_half_up(raw)
    return max(1, min(k, max(level_max, 1)))


def compute_k(ctx: ScoreContext, mode: str, params: HeuristicParams) -> int:
    """Subsequence length k for the product score, set once per beam level.

    mode "uncor": level max remainder * (a - b ln n) / m.
    mode "cor":   (level min remainder - c) / m.
    Both are rounded half-up and clamped to [1, level max remainder].
    """
    return _k_from_stats(
        mode, ctx.level_max_remainder, ctx.level_min_remainder, ctx.m, ctx.n, params
    )


def _bs_ex_terms(q: np.ndarray, ks: np.ndarray, m: int) -> np.ndarray:
    """Stable 1 - (1 - q)^(m^k) for arrays of products q and exponents k.

    Works in the log domain so that m^k never overflows: the term equals
    -expm1(-g) with g = exp(k ln m + ln(-log1p(-q))), saturating to 1 when
    g overflows and to 0 when q == 0.
    """
    q = np.asarray(q, dtype=np.float64)
    out = np.zeros_like(q)
    pos = q > 0.0
    full = q >= 1.0
    mid = pos & ~full
    if mid.any():
        with np.errstate(over="ignore"):
            log_l = np.log(-np.log1p(-q[mid]))
            g = np.exp(ks[mid] * math.log(m) + log_l)
            out[mid] = -np.expm1(-g)
    out[full] = 1.0
    return out


def score_bs_ex(ctx: ScoreContext) -> float:
    """Expected-length style score: sum over k = 1..min remainder of the
    probability that some length-k string is a common subsequence of all
    remainders, treating the m^k candidate patterns as independent trials."""
    lmin = ctx.min_remainder
    if lmin == 0:
        return 0.0
    r = np.asarray(ctx.remainder_lengths, dtype=np.int64)
    ks = np.arange(1, lmin + 1)
    q = np.prod(ctx.prob.values[1 : lmin + 1, r], axis=1)
    return float(np.sum(_bs_ex_terms(q, ks, ctx.m)))


def score_k_analytic(
    ctx: ScoreContext,
    mode: str,
    params: HeuristicParams,
    k: int | None = None,
) -> float:
    """Product over strings of p(k, remainder length), k per :func:`compute_k`."""
    if k is None:
        k = compute_k(ctx, mode, params)
    r = np.asarray(ctx.remainder_lengths, dtype=np.int64)
    return float(np.prod(ctx.prob.values[k, r]))


def score_gcov(ctx: ScoreContext, params: HeuristicParams) -> float:
    """Mean-squared over floored-variance-to-the-gamma, scaled by the square
    root of the candidate's upper bound. Low spread among remainder lengths
    scores higher (for positive gamma)."""
    r = np.asarray(ctx.remainder_lengths, dtype=np.float64)
    mu = r.mean()
    var = r.var()
    gamma = params.gamma(ctx.n)
    var_eff = max(var, params.variance_floor)
    return float(mu * mu / var_eff**gamma * math.sqrt(ctx.ub))


def score(ctx: ScoreContext, kind: HeuristicKind, params: HeuristicParams,
          k: int | None = None) -> float:
    """Dispatch to the scorer for ``kind``."""
    if kind is HeuristicKind.BS_EX:
        return score_bs_ex(ctx)
    if kind is HeuristicKind.K_UNCOR:
        return score_k_analytic(ctx, "uncor", params, k)
    if kind is HeuristicKind.K_COR:
        return score_k_analytic(ctx, "cor", params, k)
    if kind is HeuristicKind.GCOV:
        return score_gcov(ctx, params)
    raise ValueError(f"unknown heuristic kind {kind!r}")


def level_k(kind: HeuristicKind, level_max: int, level_min: int, m: int, n: int,
            params: HeuristicParams) -> int | None:
    """The per-level k for the analytic scorers, None for the others."""
    if kind not in (HeuristicKind.K_UNCOR, HeuristicKind.K_COR):
        return None
    mode = "uncor" if kind is HeuristicKind.K_UNCOR else "cor"
    return _k_from_stats(mode, level_max, level_min, m, n, params)


def batch_scores(
    kind: HeuristicKind,
    remainders: np.ndarray,  # int, shape (C, n)
    ubs: np.ndarray,  # int, shape (C,)
    prob: ProbTable,
    params: HeuristicParams,
    m: int,
    n: int,
    k: int | None = None,
    chunk: int = 64,
) -> np.ndarray:
    """Vectorized scores for a whole candidate level (same math as the
    per-context scorers)."""
    R = np.asarray(remainders, dtype=np.int64)
    count = R.shape[0]
    if kind in (HeuristicKind.K_UNCOR, HeuristicKind.K_COR):
        if k is None:
            raise ValueError("analytic scoring needs the per-level k")
        return np.prod(prob.values[k, R], axis=1)
    if kind is HeuristicKind.GCOV:
        Rf = R.astype(np.float64)
        mu = Rf.mean(axis=1)
        var = np.maximum(Rf.var(axis=1), params.variance_floor)
        gamma = params.gamma(n)
        return mu * mu / var**gamma * np.sqrt(ubs.astype(np.float64))
    if kind is HeuristicKind.BS_EX:
        lmin = R.min(axis=1)
        out = np.zeros(count, dtype=np.float64)
        k_hi = int(lmin.max(initial=0))
        if k_hi == 0:
            return out
        ks = np.arange(1, k_hi + 1)
        for lo in range(0, count, chunk):
            block = R[lo : lo + chunk]
            # (k, block, n) gather; products beyond a node's own min
            # remainder are exactly zero and add nothing
            q = np.prod(prob.values[1 : k_hi + 1, block], axis=2)
            terms = _bs_ex_terms(q, np.broadcast_to(ks[:, None], q.shape), m)
            out[lo : lo + chunk] = terms.sum(axis=0)
        return out
    raise ValueError(f"unknown heuristic kind {kind!r}")
