"""Figure rendering for benchmark and scalability reports.

Each report written by the CLI gets companion PNG files next to it: latency
and work-counter curves per query length for `bench`, and the growth-ratio plot
for `scale`. Everything here consumes the same aggregate tables the delimited
reports are built from, so figures and reports can never drift apart.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .bench import Aggregate
from .report import ScaleRow

_MARKERS = ("o", "s", "^", "v", "D", "x")


def _style(ax, xlabel: str, ylabel: str, title: str) -> None:
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.grid(True, which="both", linewidth=0.4, alpha=0.5)
    ax.legend()


def _engine_series(
    aggregates: Sequence[Aggregate], value: str
) -> dict[str, tuple[list[int], list[float]]]:
    series: dict[str, tuple[list[int], list[float]]] = {}
    for agg in aggregates:
        xs, ys = series.setdefault(agg.engine, ([], []))
        xs.append(agg.length)
        ys.append(getattr(agg, value))
    return series


def save_bench_figures(
    aggregates: Sequence[Aggregate], report_path: str | os.PathLike[str]
) -> list[Path]:
    """Render latency and work curves next to the report file."""
    stem = Path(report_path).with_suffix("")
    paths: list[Path] = []
    for value, suffix, ylabel, title in (
        ("mean_ns", "_latency.png", "mean query time (ms)", "Query latency by length"),
        ("mean_work", "_work.png", "mean work counter", "Engine work by length"),
    ):
        fig, ax = plt.subplots(figsize=(6.0, 4.0))
        for pos, (engine, (xs, ys)) in enumerate(_engine_series(aggregates, value).items()):
            if value == "mean_ns":
                ys = [y / 1e6 for y in ys]
            ax.plot(xs, ys, marker=_MARKERS[pos % len(_MARKERS)], label=engine)
        ax.set_yscale("log")
        if aggregates:
            lengths = sorted({a.length for a in aggregates})
            ax.set_xticks(lengths)
        _style(ax, "query length", ylabel, title)
        out = stem.parent / (stem.name + suffix)
        fig.savefig(out, dpi=150, bbox_inches="tight")
        plt.close(fig)
        paths.append(out)
    return paths


def save_scale_figure(
    rows: Sequence[ScaleRow], report_path: str | os.PathLike[str]
) -> Path:
    """Render the latency growth-ratio plot next to the scale report."""
    stem = Path(report_path).with_suffix("")
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    engines = sorted({r.engine for r in rows})
    for pos, engine in enumerate(engines):
        pts = sorted((r.multiplier, r.ratio) for r in rows if r.engine == engine)
        ax.plot(
            [p[0] for p in pts],
            [p[1] for p in pts],
            marker=_MARKERS[pos % len(_MARKERS)],
            label=engine,
        )
    if rows:
        mults = sorted({r.multiplier for r in rows})
        ax.set_xticks(mults)
        ax.plot(mults, mults, linestyle=":", color="gray", label="linear growth")
    _style(ax, "transaction multiplier", "latency ratio vs 1x", "Scalability")
    out = stem.parent / (stem.name + "_scalability.png")
    fig.savefig(out, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return out
