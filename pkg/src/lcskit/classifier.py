"""Similarity-based classification of string sets.

A set is labeled *correlated* when randomly sampled, position-aligned
windows of its strings keep showing long common substrings, and
*uncorrelated* otherwise. The generic sampling loop (:func:`scf_run`)
accepts any sampler / extraction / similarity triple; the dichotomizer
(:func:`s2d_classify`) is the concrete instance that samples string pairs,
cuts an aligned window of length ``ei`` from both, measures the longest
common substring, and thresholds the mean at ``tr``.

Randomness comes from a seeded PCG64 generator (numpy's default), so a
fixed seed reproduces the verdict on any platform. Both code paths draw
through the same primitives in the same order, which the tests verify.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from .exact import lct_length
from .strings import StringSet


class SetType(Enum):
    CORRELATED = "correlated"
    UNCORRELATED = "uncorrelated"


@dataclass(frozen=True)
class Label:
    kind: SetType
    sim_s: float


def default_ei(m: int) -> int:
    """Window length: 10 for binary alphabets (where long common substrings
    arise by chance), 20 otherwise."""
    if m < 1:
        raise ValueError("alphabet size must be >= 1")
    return 10 if m <= 2 else 20


def mean_of(values: Sequence[float]) -> float:
    return sum(values) / len(values)


def sample_distinct(rng: np.random.Generator, n: int, count: int) -> list[int]:
    """Draw ``count`` distinct indices from range(n), uniformly, consuming
    one integer draw per index (order-statistics mapping)."""
    if count > n:
        raise ValueError(f"cannot draw {count} distinct indices from {n}")
    chosen: list[int] = []
    for t in range(count):
        r = int(rng.integers(n - t))
        for c in sorted(chosen):
            if r >= c:
                r += 1
        chosen.append(r)
    return chosen


def _window_pair(
    rng: np.random.Generator, a: np.ndarray, b: np.ndarray, ei: int
) -> tuple[np.ndarray, np.ndarray]:
    """Cut the same-offset window of length min(ei, min length) from both
    strings. The offset is drawn uniformly from the available slack; when
    there is none it is 0 without consuming a draw."""
    lmin = min(len(a), len(b))
    eip = min(ei, lmin)
    slack = lmin - eip
    si = int(rng.integers(slack + 1)) if slack > 0 else 0
    return a[si : si + eip], b[si : si + eip]


@dataclass(frozen=True)
class ScfConfig:
    """The pluggable pieces of the sampling loop."""

    sim_fn: Callable[[Sequence[np.ndarray]], float]
    extraction: Callable[[np.random.Generator, list[np.ndarray]], list[np.ndarray]]
    iterations: int
    sample_size: int = 2
    aggregator: Callable[[Sequence[float]], float] = mean_of

    def __post_init__(self) -> None:
        if self.sample_size < 2:
            raise ValueError("sample_size must be >= 2")
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")


def scf_run(s: StringSet, cfg: ScfConfig, seed: int = 0) -> float:
    """Generic loop: sample a subset, extract a partition, score it,
    aggregate. Returns the aggregated similarity value."""
    if s.n < cfg.sample_size:
        raise ValueError(f"need at least {cfg.sample_size} strings, got {s.n}")
    rng = np.random.default_rng(seed)
    sims: list[float] = []
    for _ in range(cfg.iterations):
        idxs = sample_distinct(rng, s.n, cfg.sample_size)
        subset = [s.strings[i] for i in idxs]
        partition = cfg.extraction(rng, subset)
        sims.append(float(cfg.sim_fn(partition)))
    return float(cfg.aggregator(sims))


@dataclass(frozen=True)
class S2dConfig:
    """Dichotomizer parameters. ``ei`` and ``iterations`` default per
    instance: window per :func:`default_ei`, iterations to
    max(ceil(n/2), 5)."""

    ei: int | None = None
    tr: float = 5.0
    iterations: int | None = None
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if self.ei is not None and self.ei < 2:
            raise ValueError("window length ei must be >= 2")
        if self.tr <= 0:
            raise ValueError("threshold tr must be positive")
        if self.iterations is not None and self.iterations < 1:
            raise ValueError("iterations must be >= 1")

    def resolved_ei(self, m: int) -> int:
        return self.ei if self.ei is not None else default_ei(m)

    def resolved_iterations(self, n: int) -> int:
        if self.iterations is not None:
            return self.iterations
        return max(math.ceil(n / 2), 5)


def s2d_scf_config(s: StringSet, cfg: S2dConfig) -> ScfConfig:
    """The dichotomizer expressed as a generic sampling configuration."""
    ei = cfg.resolved_ei(s.m)

    def extraction(rng: np.random.Generator, subset: list[np.ndarray]) -> list[np.ndarray]:
        wa, wb = _window_pair(rng, subset[0], subset[1], ei)
        return [wa, wb]

    def sim(parts: Sequence[np.ndarray]) -> float:
        return float(lct_length(parts[0], parts[1]))

    return ScfConfig(
        sim_fn=sim,
        extraction=extraction,
        iterations=cfg.resolved_iterations(s.n),
        sample_size=2,
        aggregator=mean_of,
    )


def s2d_classify(s: StringSet, cfg: S2dConfig | None = None, seed: int | None = None) -> Label:
    """Label a set by the mean longest-common-substring length of randomly
    sampled aligned windows, Correlated iff the mean exceeds ``tr``."""
    cfg = cfg or S2dConfig()
    if s.n < 2:
        raise ValueError("classification needs at least 2 strings")
    if any(l < 2 for l in s.lengths):
        raise ValueError("classification needs strings of length >= 2")
    ei = cfg.resolved_ei(s.m)
    iterations = cfg.resolved_iterations(s.n)
    rng = np.random.default_rng(cfg.rng_seed if seed is None else seed)
    sims: list[float] = []
    for _ in range(iterations):
        i, j = sample_distinct(rng, s.n, 2)
        wa, wb = _window_pair(rng, s.strings[i], s.strings[j], ei)
        sims.append(float(lct_length(wa, wb)))
    sim_s = mean_of(sims)
    kind = SetType.CORRELATED if sim_s > cfg.tr else SetType.UNCORRELATED
    return Label(kind=kind, sim_s=sim_s)
