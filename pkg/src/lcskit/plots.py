"""Figure rendering for benchmark reports.

Each function writes one PNG next to the delimited output. Rendering is
backend-agnostic (Agg is forced), so it works headless.
"""

from __future__ import annotations

import os
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

import numpy as np  # noqa: E402

from .bench import RunRecord, average_lengths  # noqa: E402


def plot_average_lengths(records: Sequence[RunRecord], path: str) -> str:
    """Bar chart of mean solution length per solver."""
    avgs = average_lengths(records)
    names = sorted(avgs, key=lambda h: -avgs[h])
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar(names, [avgs[h] for h in names], color="#4878cf")
    ax.set_ylabel("mean solution length")
    ax.set_title("Average solution length by solver")
    ax.tick_params(axis="x", rotation=20)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_solve_times(records: Sequence[RunRecord], path: str) -> str:
    """Total solve wall time per solver."""
    totals: dict[str, float] = {}
    for rec in records:
        totals[rec.heuristic] = totals.get(rec.heuristic, 0.0) + rec.time_ms
    names = sorted(totals, key=lambda h: -totals[h])
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar(names, [totals[h] / 1000.0 for h in names], color="#d65f5f")
    ax.set_ylabel("total solve time [s]")
    ax.set_title("Solve time by solver")
    ax.tick_params(axis="x", rotation=20)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_selection_times(records: Sequence[RunRecord], path: str) -> str | None:
    """Per-instance heuristic-selection cost of the two hyper-heuristics:
    dispatch decision time vs. trial-run time. Skipped (returns None) when
    neither appears in the records."""
    by_instance: dict[str, dict[str, float]] = {}
    for rec in records:
        if rec.heuristic in ("ub-hh", "te-hh"):
            by_instance.setdefault(rec.instance, {})[rec.heuristic] = rec.select_ms
    if not by_instance:
        return None
    instances = sorted(by_instance)
    fig, ax = plt.subplots(figsize=(max(7, 0.5 * len(instances)), 4))
    x = np.arange(len(instances))
    width = 0.38
    for off, (h, color) in enumerate(
        [("ub-hh", "#4878cf"), ("te-hh", "#d65f5f")]
    ):
        ys = [by_instance[i].get(h, 0.0) for i in instances]
        ax.bar(x + (off - 0.5) * width, ys, width, label=h, color=color)
    ax.set_yscale("log")
    ax.set_ylabel("selection time [ms]")
    ax.set_title("Heuristic selection cost: dispatch vs. trial runs")
    ax.set_xticks(x)
    ax.set_xticklabels(instances, rotation=60, ha="right", fontsize=7)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_mean_ranks(mean_ranks: Sequence[float], methods: Sequence[str], path: str) -> str:
    """Horizontal bar chart of Friedman mean ranks (lower is better)."""
    order = np.argsort(mean_ranks)
    fig, ax = plt.subplots(figsize=(7, 0.6 * len(methods) + 1.5))
    ax.barh(
        [methods[i] for i in order],
        [mean_ranks[i] for i in order],
        color="#6acc65",
    )
    ax.set_xlabel("mean rank (1 = best)")
    ax.set_title("Friedman mean ranks")
    ax.invert_yaxis()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_bench_figures(records: Sequence[RunRecord], out_dir: str) -> list[str]:
    """All benchmark figures into ``out_dir``; returns the written paths."""
    os.makedirs(out_dir, exist_ok=True)
    written = [
        plot_average_lengths(records, os.path.join(out_dir, "avg_lengths.png")),
        plot_solve_times(records, os.path.join(out_dir, "solve_times.png")),
    ]
    sel = plot_selection_times(records, os.path.join(out_dir, "selection_times.png"))
    if sel:
        written.append(sel)
    return written
