"""Level-synchronous beam search over common-subsequence states.

Each state is the vector of consumed-prefix positions, one per string. A
level expands every retained state by every symbol still present in all
remainders, scores the children, and keeps the best ``beta`` under a total
order (score desc, upper bound desc, positions asc), so repeated runs are
bit-identical regardless of scheduling.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .heuristics import HeuristicKind, HeuristicParams, batch_scores, level_k
from .probability import ProbTable, prob_table_for
from .strings import (
    OccTable,
    StringSet,
    SuccTable,
    build_tables,
    is_common_subsequence,
)


@dataclass(frozen=True)
class BeamNode:
    """One partial solution: per-string consumed positions plus the parent
    link needed to reconstruct the sequence."""

    positions: tuple[int, ...]
    depth: int
    parent: Optional["BeamNode"] = None
    last_symbol: int | None = None

    def remainder_lengths(self, s: StringSet) -> tuple[int, ...]:
        return tuple(l - p for l, p in zip(s.lengths, self.positions))


@dataclass
class BeamState:
    """The per-level bookkeeping of the search: retained nodes and the
    children they expand into."""

    selected: list[BeamNode]
    children: list[BeamNode]
    beta: int
    level: int


@dataclass
class SolveStats:
    nodes_expanded: int = 0
    levels: int = 0
    wall_time_s: float = 0.0


@dataclass
class Solution:
    sequence: str
    length: int
    stats: SolveStats = field(default_factory=SolveStats, compare=False)


def root_node(s: StringSet) -> BeamNode:
    return BeamNode(positions=(0,) * s.n, depth=0)


def expand(node: BeamNode, s: StringSet, succ: SuccTable) -> list[BeamNode]:
    """Children of one node, ordered by symbol index: one child per symbol
    that still occurs in every remainder."""
    children = []
    for sym in range(s.m):
        nxt = [int(succ.nxt[i, node.positions[i], sym]) for i in range(s.n)]
        if any(q < 0 for q in nxt):
            continue
        children.append(
            BeamNode(
                positions=tuple(q + 1 for q in nxt),
                depth=node.depth + 1,
                parent=node,
                last_symbol=sym,
            )
        )
    return children


def select_best(scored: list[tuple[BeamNode, float, int]], beta: int) -> list[BeamNode]:
    """Keep the ``beta`` best of (node, score, ub) triples.

    Duplicate position vectors are merged first (they are fully equivalent
    at equal depth; the earliest in expansion order survives), then nodes
    are ordered by score descending, ub descending, positions ascending.
    """
    seen: set[tuple[int, ...]] = set()
    unique = []
    for node, sc, ub in scored:
        if node.positions in seen:
            continue
        seen.add(node.positions)
        unique.append((node, sc, ub))
    unique.sort(key=lambda t: (-t[1], -t[2], t[0].positions))
    return [node for node, _, _ in unique[:beta]]


def _candidate_ubs(occ: OccTable, positions: np.ndarray) -> np.ndarray:
    """Upper bound of each candidate row: sum over symbols of the per-string
    minimum remaining occurrence count."""
    n = positions.shape[1]
    per = occ.cnt[np.arange(n)[None, :], positions, :]  # (C, n, m)
    return per.min(axis=1).sum(axis=1)


def beam_search(
    s: StringSet,
    kind: HeuristicKind,
    beta: int,
    params: HeuristicParams | None = None,
    *,
    prob: ProbTable | None = None,
    tables: tuple[OccTable, SuccTable] | None = None,
) -> Solution:
    """Run the search and return the deepest solution reached.

    Deterministic for fixed inputs: expansion order, duplicate merging and
    the selection order are all total.
    """
    if beta < 1:
        raise ValueError("beam width must be >= 1")
    params = params or HeuristicParams()
    occ, succ = tables if tables is not None else build_tables(s)
    if prob is None:
        prob = prob_table_for(s.m, s.max_length)

    t0 = time.perf_counter()
    n, m = s.n, s.m
    lengths = np.array(s.lengths, dtype=np.int32)
    arange_n = np.arange(n)

    positions = np.zeros((1, n), dtype=np.int32)
    trail: list[tuple[np.ndarray, np.ndarray]] = []  # (symbols, parent rows)
    stats = SolveStats()

    while positions.shape[0] > 0:
        nxt = succ.nxt[arange_n[None, :], positions, :]  # (B, n, m)
        feasible = (nxt >= 0).all(axis=1)  # (B, m)
        parent_row, symbol = np.nonzero(feasible)  # row-major: beam order, then symbol
        if parent_row.size == 0:
            break
        child_pos = (nxt[parent_row, :, symbol] + 1).astype(np.int32)  # (C, n)

        # merge duplicate states, keeping the first in expansion order
        _, first_idx = np.unique(child_pos, axis=0, return_index=True)
        keep = np.sort(first_idx)
        child_pos = child_pos[keep]
        parent_row = parent_row[keep]
        symbol = symbol[keep]

        remainders = lengths[None, :] - child_pos  # (C, n)
        ubs = _candidate_ubs(occ, child_pos)
        lvl_max = int(remainders.max())
        lvl_min = int(remainders.min())
        k = level_k(kind, lvl_max, lvl_min, m, n, params)
        scores = batch_scores(kind, remainders, ubs, prob, params, m, n, k=k)

        keys: list[np.ndarray] = [child_pos[:, i] for i in range(n - 1, -1, -1)]
        keys.append(-ubs)
        keys.append(-scores)
        order = np.lexsort(keys)[:beta]

        stats.nodes_expanded += int(child_pos.shape[0])
        stats.levels += 1
        trail.append((symbol[order].copy(), parent_row[order].copy()))
        positions = child_pos[order]

    # deepest node ever reached: the top-ranked survivor of the last level
    seq_syms: list[int] = []
    row = 0
    for symbols, parents in reversed(trail):
        seq_syms.append(int(symbols[row]))
        row = int(parents[row])
    seq_syms.reverse()
    sequence = s.alphabet.decode(seq_syms)

    stats.wall_time_s = time.perf_counter() - t0
    solution = Solution(sequence=sequence, length=len(seq_syms), stats=stats)
    if not is_common_subsequence(seq_syms, s):
        raise AssertionError("internal error: emitted sequence is not common")
    return solution
