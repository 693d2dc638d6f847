"""Matplotlib companions to the delimited outputs.

`bench` drops a PNG of the accuracy ladder next to its CSV/text report;
`costcurve --png` renders the same curves as the deterministic SVG, which
is handier for quick inspection.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional, Sequence, Union

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .costcurves import A_BETTER, B_BETTER, ConfidenceBand, DominanceRegions  # noqa: E402
from .evaluation import ReportTable  # noqa: E402


def render_report_figure(table: ReportTable, path: Union[str, Path]) -> None:
    """Grouped bar chart of the per-dataset accuracy ladder."""
    rows = table.rows
    fig, ax = plt.subplots(figsize=(max(6.0, 1.1 * len(rows) + 2.0), 4.2))
    xs = range(len(rows))
    width = 0.27
    for offset, (attr, label) in enumerate(
        [("acc0", "zero-level"), ("acc1", "one-level"), ("acc2", "two-level")]
    ):
        ax.bar(
            [x + (offset - 1) * width for x in xs],
            [getattr(r, attr) for r in rows],
            width=width,
            label=label,
        )
    ax.set_xticks(list(xs))
    ax.set_xticklabels([r.dataset for r in rows], rotation=45, ha="right")
    ax.set_ylabel("accuracy (%)")
    ax.set_ylim(0, 100)
    ax.legend(loc="lower right")
    ax.set_title("Accuracy by tree depth")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def render_curve_figure(
    grid: Sequence[float],
    curves: Sequence[tuple[str, Sequence[float]]],
    bands: Sequence[tuple[str, Sequence[float], Sequence[float]]] = (),
    regions: Optional[DominanceRegions] = None,
    path: Union[str, Path] = "costcurve.png",
) -> None:
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    ax.plot([0, 1], [0, 1], color="0.7", linestyle=":", linewidth=1)
    ax.plot([0, 1], [1, 0], color="0.7", linestyle=":", linewidth=1)
    band_by_name = {name: (lo, hi) for name, lo, hi in bands}
    styles = ["-", "--", "-.", ":"]
    for i, (name, values) in enumerate(curves):
        (line,) = ax.plot(grid, values, styles[i % len(styles)], label=name, linewidth=1.8)
        if name in band_by_name:
            lo, hi = band_by_name[name]
            ax.fill_between(grid, lo, hi, color=line.get_color(), alpha=0.15, linewidth=0)
    if regions is not None:
        for lo, hi, label in regions.intervals:
            if label == A_BETTER:
                ax.axvspan(lo, hi, color="#1f77b4", alpha=0.07)
            elif label == B_BETTER:
                ax.axvspan(lo, hi, color="#d62728", alpha=0.07)
    ax.set_xlim(0, 1)
    ax.set_ylim(0, 1)
    ax.set_xlabel("PC(+)")
    ax.set_ylabel("Normalized expected cost")
    ax.legend(loc="upper right")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def render_band_figure(
    band: ConfidenceBand, label: str, path: Union[str, Path]
) -> None:
    """Difference band on its own axes (the y range spans [-1, 1])."""
    fig, ax = plt.subplots(figsize=(6.4, 3.2))
    ax.axhline(0.0, color="0.6", linewidth=1)
    ax.fill_between(band.grid, band.lower, band.upper, color="#1f77b4", alpha=0.25)
    ax.set_xlim(0, 1)
    ax.set_xlabel("PC(+)")
    ax.set_ylabel(label)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
