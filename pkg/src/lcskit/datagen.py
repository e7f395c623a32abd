"""Generation of correlated and uncorrelated string sets.

Every set starts from one uniform random base string; each output string
is an independently mutated copy. A low mutation probability yields highly
similar (correlated) strings, a high one essentially independent
(uncorrelated) strings.

Mutation model, applied per string: for each base position, with
probability ``p_mut`` one of three edits is chosen uniformly — delete the
character, insert a uniform random symbol before it, or substitute it with
a uniform random symbol. The slot after the last character can only take an
insertion, drawn the same way, which keeps the per-gap insertion rate
uniform (expected output length is base_len + p_mut/3).

All randomness flows through a PCG64 generator seeded from the config, with
one block of draws per string, so generation is reproducible across
platforms and any parallel scheduling of whole sets.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .strings import Alphabet, StringSet, write_instance  # noqa: F401  (re-export)

_DELETE, _INSERT, _SUBSTITUTE = 0, 1, 2


@dataclass(frozen=True)
class GenConfig:
    m: int
    base_len: int
    n: int
    p_mut: float
    seed: int = 0

    def __post_init__(self) -> None:
        if self.m < 2:
            raise ValueError("alphabet size must be >= 2")
        if self.base_len < 1:
            raise ValueError("base length must be >= 1")
        if self.n < 1:
            raise ValueError("need at least one string")
        if not 0.0 <= self.p_mut <= 1.0:
            raise ValueError("mutation probability must be in [0, 1]")


def _mutate(base: np.ndarray, p_mut: float, m: int, rng: np.random.Generator) -> np.ndarray:
    length = len(base)
    hits = rng.random(length + 1) < p_mut
    kinds = rng.integers(0, 3, size=length + 1)
    symbols = rng.integers(0, m, size=length + 1)
    out: list[int] = []
    for i in range(length):
        if hits[i]:
            kind = kinds[i]
            if kind == _DELETE:
                continue
            if kind == _INSERT:
                out.append(int(symbols[i]))
            else:
                out.append(int(symbols[i]))
                continue
        out.append(int(base[i]))
    if hits[length] and kinds[length] == _INSERT:
        out.append(int(symbols[length]))
    return np.array(out, dtype=np.int32)


def generate_set(cfg: GenConfig) -> StringSet:
    """One instance: a fresh base string and ``n`` mutated copies of it."""
    rng = np.random.default_rng(np.random.SeedSequence(cfg.seed))
    alphabet = Alphabet.from_pool(cfg.m)
    base = rng.integers(0, cfg.m, size=cfg.base_len).astype(np.int32)
    strings = tuple(_mutate(base, cfg.p_mut, cfg.m, rng) for _ in range(cfg.n))
    return StringSet(alphabet, strings)


def derive_seed(seed: int, index: int) -> int:
    """Stable per-set seed for batch generation: distinct sets get
    independent streams derived from (seed, index)."""
    ss = np.random.SeedSequence(entropy=(seed, index))
    return int(ss.generate_state(1, dtype=np.uint64)[0])
