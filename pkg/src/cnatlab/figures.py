"""Matplotlib figure for a b(n,k) table."""

from __future__ import annotations

import math
from pathlib import Path

from matplotlib import colormaps
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

from .harness import BnkTable

__all__ = ["table_figure", "save_table_figure"]


def table_figure(table: BnkTable) -> Figure:
    """Left: b(n,k) against k for each n. Right: the factorial columns k = m! against n."""
    fig = Figure(figsize=(10, 4.2), layout="constrained")
    FigureCanvasAgg(fig)
    left, right = fig.subplots(1, 2)
    cmap = colormaps["viridis"]
    ns = [n for n in table.ns if table.row(n)]
    for i, n in enumerate(ns):
        row = table.row(n)
        left.plot(list(row), list(row.values()), marker="o", ms=3.5, ls="none", alpha=0.85,
                  color=cmap(i / max(len(ns) - 1, 1)),
                  label=f"n={n}")
    left.set_xscale("log")
    left.set_yscale("log")
    left.set_xlabel("k (number of CNATs)")
    left.set_ylabel("b(n, k)")
    if ns:
        left.legend(fontsize=8, frameon=False)

    m = 1
    while math.factorial(m) <= math.factorial(max(ns, default=2) - 1):
        k = math.factorial(m)
        xs = [n for n in ns if n - 1 >= m]
        ys = [table.get(n, k) for n in xs]
        if xs:
            right.plot(xs, ys, marker="s", ms=4, label=f"k={m}!={k}")
        m += 1
    right.set_yscale("symlog", linthresh=1)
    right.set_xlabel("n")
    right.set_ylabel("b(n, k)")
    right.set_xticks(ns)
    if ns:
        right.legend(fontsize=8, frameon=False)
    return fig


def save_table_figure(table: BnkTable, path: str | Path) -> Path:
    path = Path(path)
    table_figure(table).savefig(path, dpi=120)
    return path
