"""Matplotlib figure output for reports and fuzz summaries.

Everything goes through Figure + an Agg canvas so rendering works in
headless environments without touching pyplot's global state.
"""

from __future__ import annotations

import numpy as np
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

from .resolution import BettiTable


def _save(fig: Figure, path: str) -> None:
    FigureCanvasAgg(fig)
    fig.savefig(path, dpi=150, bbox_inches="tight")


def render_betti_figure(table: BettiTable, path: str, title: str | None = None) -> None:
    """Betti diagram: rows are j - i, columns are homological degree i."""
    totals = table.totals()
    if not totals:
        fig = Figure(figsize=(3, 2))
        ax = fig.subplots()
        ax.text(0.5, 0.5, "zero ideal", ha="center", va="center")
        ax.set_axis_off()
        _save(fig, path)
        return
    max_i = max(i for i, _ in totals)
    strata = sorted({j - i for i, j in totals})
    lo = strata[0]
    grid = np.zeros((len(strata), max_i + 1))
    for (i, j), b in totals.items():
        grid[j - i - lo, i] = b
    fig = Figure(figsize=(1.2 + 0.8 * (max_i + 1), 1.0 + 0.6 * len(strata)))
    ax = fig.subplots()
    masked = np.ma.masked_equal(grid, 0)
    ax.imshow(masked, cmap="YlGnBu", aspect="auto")
    for r in range(grid.shape[0]):
        for c in range(grid.shape[1]):
            if grid[r, c]:
                ax.text(c, r, str(int(grid[r, c])), ha="center", va="center", fontsize=9)
    ax.set_xticks(range(max_i + 1))
    ax.set_yticks(range(len(strata)))
    ax.set_yticklabels([str(lo + r) for r in range(len(strata))])
    ax.set_xlabel("homological degree i")
    ax.set_ylabel("j - i")
    if title:
        ax.set_title(title)
    _save(fig, path)


def render_fuzz_figure(summary_dict: dict, path: str) -> None:
    """Stacked pass/fail bars, one per agreement check."""
    checks = summary_dict["checks"]
    names = list(checks)
    if not names:
        names = ["(no checks ran)"]
        passes, fails = [0], [0]
    else:
        passes = [checks[n]["pass"] for n in names]
        fails = [checks[n]["fail"] for n in names]
    fig = Figure(figsize=(7, 0.8 + 0.5 * len(names)))
    ax = fig.subplots()
    pos = np.arange(len(names))
    ax.barh(pos, passes, color="#2a9d8f", label="pass")
    ax.barh(pos, fails, left=passes, color="#e76f51", label="fail")
    ax.set_yticks(pos)
    ax.set_yticklabels(names)
    ax.invert_yaxis()
    ax.set_xlabel("binding comparisons")
    cfg = summary_dict["config"]
    ax.set_title(
        f"{summary_dict['instances']} instances, seed {cfg['seed']}, "
        f"violations {summary_dict['violation_count']}"
    )
    ax.legend(loc="lower right")
    _save(fig, path)
