"""Batch benchmarking: run solver configurations over instance suites,
serialize results, and rank methods.

Records are ordered by (instance, heuristic) position regardless of worker
scheduling, and every field except the wall-clock timings is deterministic
for a fixed seed.
"""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .beam import beam_search
from .heuristics import HeuristicKind, HeuristicParams
from .hyper import TeHhConfig, UbHhConfig, te_hh_solve, ub_hh_solve
from .probability import prob_table_for
from .strings import StringSet, build_tables

BASE_SOLVERS = tuple(k.value for k in HeuristicKind)
HYPER_SOLVERS = ("ub-hh", "te-hh")
ALL_SOLVERS = BASE_SOLVERS + HYPER_SOLVERS

CSV_COLUMNS = (
    "instance", "m", "l", "n", "heuristic", "beta", "seed",
    "lcs_len", "time_ms", "dispatch",
)

SCENARIO_BETAS = {"low-time": 50, "balanced-time-quality": 200, "high-quality": 600}


@dataclass(frozen=True)
class Scenario:
    name: str
    beta: int

    def __post_init__(self) -> None:
        expected = SCENARIO_BETAS.get(self.name)
        if expected is None:
            raise ValueError(
                f"unknown scenario {self.name!r}; choose from {sorted(SCENARIO_BETAS)}"
            )
        if self.beta != expected:
            raise ValueError(f"scenario {self.name!r} fixes beta={expected}")

    @classmethod
    def named(cls, name: str) -> "Scenario":
        return cls(name, SCENARIO_BETAS.get(name, -1))


@dataclass(frozen=True)
class RunRecord:
    instance: str
    m: int
    l: int
    n: int
    heuristic: str
    beta: int
    seed: int
    lcs_len: int
    # wall-clock timings are excluded from equality: records are compared
    # on their deterministic payload
    time_ms: float = field(compare=False)
    dispatch: str = ""
    # separate selection timing for hyper-heuristics; not serialized
    select_ms: float = field(default=0.0, compare=False)


@dataclass(frozen=True)
class SolverConfig:
    """Shared solver knobs for a batch run."""

    params: HeuristicParams = field(default_factory=HeuristicParams)
    ub_hh: UbHhConfig = field(default_factory=UbHhConfig)
    te_hh: TeHhConfig = field(default_factory=TeHhConfig)

    def with_beta_h(self, beta: int) -> "SolverConfig":
        """Clamp the trial width so te-hh stays runnable at small beta."""
        beta_h = min(self.te_hh.beta_h, beta)
        return replace(self, te_hh=replace(self.te_hh, beta_h=beta_h))


def solve_named(
    s: StringSet,
    heuristic: str,
    beta: int,
    cfg: SolverConfig | None = None,
    seed: int = 0,
    *,
    prob=None,
    tables=None,
) -> tuple[int, str, str, float, float]:
    """Run one solver configuration.

    Returns (length, sequence, dispatch string, solve seconds, select seconds).
    """
    cfg = cfg or SolverConfig()
    if tables is None:
        tables = build_tables(s)
    if prob is None:
        prob = prob_table_for(s.m, s.max_length)
    if heuristic in BASE_SOLVERS:
        kind = HeuristicKind.from_name(heuristic)
        t0 = time.perf_counter()
        sol = beam_search(s, kind, beta, cfg.params, prob=prob, tables=tables)
        return sol.length, sol.sequence, "", time.perf_counter() - t0, 0.0
    if heuristic == "ub-hh":
        t0 = time.perf_counter()
        sol, dispatch = ub_hh_solve(
            s, beta, cfg.ub_hh, cfg.params, seed=seed, prob=prob, tables=tables
        )
        elapsed = time.perf_counter() - t0
        return sol.length, sol.sequence, dispatch.describe(), elapsed, dispatch.decide_time_s
    if heuristic == "te-hh":
        t0 = time.perf_counter()
        res = te_hh_solve(
            s, beta, cfg.te_hh, cfg.params, seed=seed, prob=prob, tables=tables
        )
        elapsed = time.perf_counter() - t0
        dispatch = f"trial::{res.chosen.value}"
        return res.solution.length, res.solution.sequence, dispatch, elapsed, res.trial_time_s
    raise ValueError(f"unknown solver {heuristic!r}")


def run_bench(
    instances: Sequence[tuple[str, StringSet]],
    heuristics: Sequence[str],
    scenario: Scenario | int,
    seed: int = 0,
    cfg: SolverConfig | None = None,
    workers: int = 1,
) -> list[RunRecord]:
    """One record per (instance, heuristic), instances solved in parallel."""
    if not heuristics:
        raise ValueError("need at least one heuristic")
    unknown = [h for h in heuristics if h not in ALL_SOLVERS]
    if unknown:
        raise ValueError(f"unknown solvers: {unknown}")
    beta = scenario.beta if isinstance(scenario, Scenario) else int(scenario)
    cfg = (cfg or SolverConfig()).with_beta_h(beta)

    def solve_instance(item: tuple[str, StringSet]) -> list[RunRecord]:
        name, s = item
        tables = build_tables(s)
        prob = prob_table_for(s.m, s.max_length)
        records = []
        for heuristic in heuristics:
            length, _seq, dispatch, secs, select_secs = solve_named(
                s, heuristic, beta, cfg, seed=seed, prob=prob, tables=tables
            )
            records.append(
                RunRecord(
                    instance=name,
                    m=s.m,
                    l=s.max_length,
                    n=s.n,
                    heuristic=heuristic,
                    beta=beta,
                    seed=seed,
                    lcs_len=length,
                    time_ms=secs * 1000.0,
                    dispatch=dispatch,
                    select_ms=select_secs * 1000.0,
                )
            )
        return records

    if workers <= 1:
        per_instance = [solve_instance(item) for item in instances]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_instance = list(pool.map(solve_instance, instances))
    return [rec for group in per_instance for rec in group]


def average_lengths(records: Sequence[RunRecord]) -> dict[str, float]:
    """Per-heuristic mean solution length, the tables' Average row."""
    sums: dict[str, list[float]] = {}
    for rec in records:
        sums.setdefault(rec.heuristic, []).append(rec.lcs_len)
    return {h: sum(v) / len(v) for h, v in sums.items()}


def friedman_ranks(results: np.ndarray | Sequence[Sequence[float]]) -> tuple[np.ndarray, float]:
    """Mean rank per method (rank 1 = longest, ties averaged) and the
    Friedman chi-square statistic 12N/(k(k+1)) (sum R_j^2 - k(k+1)^2/4)."""
    M = np.asarray(results, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] < 2 or M.shape[1] < 2:
        raise ValueError("need a full matrix with >= 2 instances and >= 2 methods")
    if np.isnan(M).any():
        raise ValueError("result matrix has missing cells")
    rows, k = M.shape
    greater = (M[:, None, :] > M[:, :, None]).sum(axis=2)
    equal = (M[:, None, :] == M[:, :, None]).sum(axis=2)
    ranks = 1.0 + greater + (equal - 1) / 2.0
    mean_ranks = ranks.mean(axis=0)
    stat = 12.0 * rows / (k * (k + 1)) * (np.sum(mean_ranks**2) - k * (k + 1) ** 2 / 4.0)
    return mean_ranks, float(stat)


def results_matrix(records: Sequence[RunRecord]) -> tuple[np.ndarray, list[str], list[str]]:
    """Pivot records to an instances x methods length matrix. Every
    instance must have a result for every method."""
    instances = sorted({r.instance for r in records})
    methods = sorted({r.heuristic for r in records})
    cell: dict[tuple[str, str], int] = {}
    for r in records:
        cell[(r.instance, r.heuristic)] = r.lcs_len
    M = np.full((len(instances), len(methods)), np.nan)
    for i, inst in enumerate(instances):
        for j, meth in enumerate(methods):
            if (inst, meth) in cell:
                M[i, j] = cell[(inst, meth)]
    if np.isnan(M).any():
        raise ValueError("incomplete results: some (instance, method) cells missing")
    return M, instances, methods


def report(records: Sequence[RunRecord], fmt: str = "csv") -> str:
    """Serialize records: CSV with a fixed column order, or a JSON array of
    objects with the same keys. ASCII, LF line endings."""
    if not records:
        raise ValueError("no records to report")
    rows = [
        {
            "instance": r.instance,
            "m": r.m,
            "l": r.l,
            "n": r.n,
            "heuristic": r.heuristic,
            "beta": r.beta,
            "seed": r.seed,
            "lcs_len": r.lcs_len,
            "time_ms": r.time_ms,
            "dispatch": r.dispatch,
        }
        for r in records
    ]
    if fmt == "json":
        return json.dumps(rows, indent=2, ensure_ascii=True) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown report format {fmt!r}")
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({**row, "time_ms": f"{row['time_ms']:.3f}"})
    return buf.getvalue()


def parse_report(text: str, fmt: str = "csv") -> list[RunRecord]:
    """Read back a report stream into records (selection timing is not
    serialized and comes back as 0)."""
    records = []
    if fmt == "json":
        rows = json.loads(text)
    elif fmt == "csv":
        rows = list(csv.DictReader(io.StringIO(text)))
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    for row in rows:
        records.append(
            RunRecord(
                instance=str(row["instance"]),
                m=int(row["m"]),
                l=int(row["l"]),
                n=int(row["n"]),
                heuristic=str(row["heuristic"]),
                beta=int(row["beta"]),
                seed=int(row["seed"]),
                lcs_len=int(row["lcs_len"]),
                time_ms=float(row["time_ms"]),
                dispatch=str(row["dispatch"]),
            )
        )
    return records
