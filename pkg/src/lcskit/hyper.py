"""Heuristic selection: dispatch by set type and normalized upper bound,
or by trial runs of the whole portfolio.

The upper-bound dispatcher classifies the set first; correlated sets go
straight to the correlated analytic scorer, uncorrelated sets are routed by
where the normalized upper bound falls among two thresholds. Selection
never touches the search itself, so the dispatched solve is bit-identical
to calling the base heuristic directly.

The trial-and-error selector instead runs every portfolio member at a small
trial beam width and re-runs the best at full width; it exists as the
baseline the dispatcher is compared against.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .beam import Solution, beam_search
from .classifier import Label, S2dConfig, SetType, s2d_classify
from .heuristics import HeuristicKind, HeuristicParams
from .probability import ProbTable, prob_table_for
from .strings import OccTable, StringSet, SuccTable, build_tables, upper_bound

UNCORRELATED_KINDS = (HeuristicKind.GCOV, HeuristicKind.K_UNCOR, HeuristicKind.BS_EX)


def ubs(s: StringSet, occ: OccTable | None = None) -> float:
    """Upper bound of the whole set normalized by the shortest string
    length; always in [0, 1]."""
    if s.min_length == 0:
        raise ValueError("normalized upper bound needs non-empty strings")
    return upper_bound(s, [0] * s.n, occ) / s.min_length


@dataclass(frozen=True)
class UbHhConfig:
    """Dispatch thresholds plus the interval-to-heuristic wiring for
    uncorrelated sets: [0, theta1) -> low, [theta1, theta2) -> mid,
    [theta2, 1] -> high."""

    theta1: float = 0.54
    theta2: float = 0.9
    classifier: S2dConfig = field(default_factory=S2dConfig)
    low: HeuristicKind = HeuristicKind.GCOV
    mid: HeuristicKind = HeuristicKind.K_UNCOR
    high: HeuristicKind = HeuristicKind.BS_EX

    def __post_init__(self) -> None:
        if not 0 < self.theta1 < self.theta2 <= 1:
            raise ValueError("thresholds must satisfy 0 < theta1 < theta2 <= 1")
        if {self.low, self.mid, self.high} != set(UNCORRELATED_KINDS):
            raise ValueError(
                "interval map must be a bijection onto the uncorrelated kinds"
            )

    def pick_uncorrelated(self, ubs_value: float) -> HeuristicKind:
        if ubs_value < self.theta1:
            return self.low
        if ubs_value < self.theta2:
            return self.mid
        return self.high


@dataclass(frozen=True)
class Dispatch:
    """Outcome of heuristic selection: the label, the normalized upper
    bound (absent for correlated sets), the chosen scorer, and how long the
    decision itself took."""

    label: Label
    ubs: float | None
    chosen: HeuristicKind
    decide_time_s: float = field(compare=False)

    def describe(self) -> str:
        """Deterministic ``label:ubs:chosen`` string (decision time excluded)."""
        ub_part = "" if self.ubs is None else f"{self.ubs:.6f}"
        return f"{self.label.kind.value}:{ub_part}:{self.chosen.value}"


def ub_hh_select(
    s: StringSet,
    cfg: UbHhConfig | None = None,
    seed: int | None = None,
    occ: OccTable | None = None,
) -> Dispatch:
    """Classify the set and pick the base heuristic. Correlated sets go to
    the correlated analytic scorer without computing the upper bound."""
    cfg = cfg or UbHhConfig()
    t0 = time.perf_counter()
    label = s2d_classify(s, cfg.classifier, seed=seed)
    if label.kind is SetType.CORRELATED:
        ub_value = None
        chosen = HeuristicKind.K_COR
    else:
        ub_value = ubs(s, occ)
        chosen = cfg.pick_uncorrelated(ub_value)
    return Dispatch(
        label=label,
        ubs=ub_value,
        chosen=chosen,
        decide_time_s=time.perf_counter() - t0,
    )


def ub_hh_solve(
    s: StringSet,
    beta: int,
    cfg: UbHhConfig | None = None,
    params: HeuristicParams | None = None,
    seed: int | None = None,
    *,
    prob: ProbTable | None = None,
    tables: tuple[OccTable, SuccTable] | None = None,
) -> tuple[Solution, Dispatch]:
    """Select, then solve with the chosen base heuristic."""
    cfg = cfg or UbHhConfig()
    if tables is None:
        tables = build_tables(s)
    dispatch = ub_hh_select(s, cfg, seed=seed, occ=tables[0])
    solution = beam_search(
        s, dispatch.chosen, beta, params, prob=prob, tables=tables
    )
    return solution, dispatch


@dataclass(frozen=True)
class TeHhConfig:
    """Trial-and-error selection: pilot beam width and portfolio order
    (which also breaks trial-length ties)."""

    beta_h: int = 50
    portfolio: tuple[HeuristicKind, ...] = (
        HeuristicKind.BS_EX,
        HeuristicKind.K_COR,
        HeuristicKind.K_UNCOR,
        HeuristicKind.GCOV,
    )

    def __post_init__(self) -> None:
        if self.beta_h < 1:
            raise ValueError("trial beam width must be >= 1")
        if not self.portfolio:
            raise ValueError("portfolio must be non-empty")


@dataclass
class TeResult:
    solution: Solution
    chosen: HeuristicKind
    trial_lengths: tuple[int, ...]
    trial_time_s: float


def te_hh_solve(
    s: StringSet,
    beta: int,
    cfg: TeHhConfig | None = None,
    params: HeuristicParams | None = None,
    seed: int | None = None,
    *,
    prob: ProbTable | None = None,
    tables: tuple[OccTable, SuccTable] | None = None,
) -> TeResult:
    """Pilot every portfolio member at the trial width, re-run the winner
    (first in portfolio order on ties) at full width.

    The search is deterministic, so ``seed`` is accepted only for interface
    symmetry with the dispatcher.
    """
    cfg = cfg or TeHhConfig()
    if beta < cfg.beta_h:
        raise ValueError(
            f"beam width {beta} must be >= trial beam width {cfg.beta_h}"
        )
    if tables is None:
        tables = build_tables(s)
    if prob is None:
        prob = prob_table_for(s.m, s.max_length)

    t0 = time.perf_counter()
    trial_lengths = []
    for kind in cfg.portfolio:
        trial = beam_search(s, kind, cfg.beta_h, params, prob=prob, tables=tables)
        trial_lengths.append(trial.length)
    trial_time = time.perf_counter() - t0

    best = max(range(len(cfg.portfolio)), key=lambda i: (trial_lengths[i], -i))
    chosen = cfg.portfolio[best]
    solution = beam_search(s, chosen, beta, params, prob=prob, tables=tables)
    return TeResult(
        solution=solution,
        chosen=chosen,
        trial_lengths=tuple(trial_lengths),
        trial_time_s=trial_time,
    )
