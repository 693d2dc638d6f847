"""Standalone SVG renderer for cost-curve plots.

The output is a pure function of its inputs: fixed 640x480 viewport with
10% margins, coordinates rounded to two decimals, elements emitted in a
fixed order, no timestamps or generated ids. Classifier lines cycle
solid/dashed in selector order; confidence bands render as translucent
polygons; dominance regions annotate the x axis.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .costcurves import DominanceRegions

WIDTH = 640
HEIGHT = 480
MARGIN_X = WIDTH // 10
MARGIN_Y = HEIGHT // 10

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
DASHES = ("none", "8,5", "2,3", "8,3,2,3")
TICKS = (0.0, 0.2, 0.4, 0.6, 0.8, 1.0)


def _fmt(value: float) -> str:
    return f"{round(value, 2) + 0.0:.2f}"


def _px(x: float) -> float:
    return MARGIN_X + x * (WIDTH - 2 * MARGIN_X)


def _py(ne: float) -> float:
    return HEIGHT - MARGIN_Y - ne * (HEIGHT - 2 * MARGIN_Y)


def _polyline(xs: Sequence[float], ys: Sequence[float]) -> str:
    return " ".join(f"{_fmt(_px(x))},{_fmt(_py(y))}" for x, y in zip(xs, ys))


def emit_svg(
    grid: Sequence[float],
    curves: Sequence[tuple[str, Sequence[float]]],
    bands: Sequence[tuple[str, Sequence[float], Sequence[float]]] = (),
    regions: Optional[DominanceRegions] = None,
    title: Optional[str] = None,
) -> str:
    """Render curves, bands and region annotations to an SVG document.

    `curves` and `bands` are (name, values...) aligned with `grid`; bands
    reuse the color of the same-named curve.
    """
    n = len(grid)
    for name, values in curves:
        if len(values) != n:
            raise ValueError(f"curve {name!r} is not on the common grid")
    for name, lower, upper in bands:
        if len(lower) != n or len(upper) != n:
            raise ValueError(f"band {name!r} is not on the common grid")

    color_of = {name: PALETTE[i % len(PALETTE)] for i, (name, _) in enumerate(curves)}
    x0, x1 = _px(0.0), _px(1.0)
    y0, y1 = _py(0.0), _py(1.0)

    out: list[str] = []
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">'
    )
    out.append(f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>')
    out.append(
        f'<rect x="{_fmt(x0)}" y="{_fmt(y1)}" width="{_fmt(x1 - x0)}" '
        f'height="{_fmt(y0 - y1)}" fill="none" stroke="#333333" stroke-width="1"/>'
    )

    for t in TICKS:
        px, py = _px(t), _py(t)
        out.append(
            f'<line x1="{_fmt(px)}" y1="{_fmt(y0)}" x2="{_fmt(px)}" y2="{_fmt(y1)}" '
            f'stroke="#dddddd" stroke-width="0.5"/>'
        )
        out.append(
            f'<line x1="{_fmt(x0)}" y1="{_fmt(py)}" x2="{_fmt(x1)}" y2="{_fmt(py)}" '
            f'stroke="#dddddd" stroke-width="0.5"/>'
        )
        out.append(
            f'<text x="{_fmt(px)}" y="{_fmt(y0 + 16)}" font-family="sans-serif" '
            f'font-size="11" text-anchor="middle" fill="#333333">{t:.1f}</text>'
        )
        out.append(
            f'<text x="{_fmt(x0 - 8)}" y="{_fmt(py + 4)}" font-family="sans-serif" '
            f'font-size="11" text-anchor="end" fill="#333333">{t:.1f}</text>'
        )

    out.append(
        f'<text x="{_fmt((x0 + x1) / 2)}" y="{_fmt(HEIGHT - 8)}" font-family="sans-serif" '
        f'font-size="13" text-anchor="middle" fill="#000000">PC(+)</text>'
    )
    out.append(
        f'<text x="14" y="{_fmt((y0 + y1) / 2)}" font-family="sans-serif" font-size="13" '
        f'text-anchor="middle" fill="#000000" '
        f'transform="rotate(-90 14 {_fmt((y0 + y1) / 2)})">Normalized expected cost</text>'
    )
    if title:
        out.append(
            f'<text x="{_fmt((x0 + x1) / 2)}" y="{_fmt(y1 - 12)}" font-family="sans-serif" '
            f'font-size="14" text-anchor="middle" fill="#000000">{title}</text>'
        )

    if regions is not None:
        for lo, hi, label in regions.intervals:
            mid = _px((lo + hi) / 2.0)
            out.append(
                f'<line x1="{_fmt(_px(hi))}" y1="{_fmt(y0)}" x2="{_fmt(_px(hi))}" '
                f'y2="{_fmt(y0 + 6)}" stroke="#888888" stroke-width="1"/>'
            )
            out.append(
                f'<text x="{_fmt(mid)}" y="{_fmt(y0 + 30)}" font-family="sans-serif" '
                f'font-size="10" text-anchor="middle" fill="#555555">{label}</text>'
            )

    for name, lower, upper in bands:
        color = color_of.get(name, "#999999")
        forward = _polyline(grid, [min(max(v, 0.0), 1.0) for v in upper])
        backward = _polyline(list(reversed(grid)), [min(max(v, 0.0), 1.0) for v in reversed(list(lower))])
        out.append(
            f'<polygon points="{forward} {backward}" fill="{color}" fill-opacity="0.15" '
            f'stroke="none"/>'
        )

    # trivial classifiers: always-negative is the rising diagonal NE=x,
    # always-positive the falling one
    out.append(
        f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" y2="{_fmt(y1)}" '
        f'stroke="#aaaaaa" stroke-width="1" stroke-dasharray="3,3"/>'
    )
    out.append(
        f'<line x1="{_fmt(x0)}" y1="{_fmt(y1)}" x2="{_fmt(x1)}" y2="{_fmt(y0)}" '
        f'stroke="#aaaaaa" stroke-width="1" stroke-dasharray="3,3"/>'
    )

    for i, (name, values) in enumerate(curves):
        color = color_of[name]
        dash = DASHES[i % len(DASHES)]
        dash_attr = "" if dash == "none" else f' stroke-dasharray="{dash}"'
        out.append(
            f'<polyline points="{_polyline(grid, values)}" fill="none" stroke="{color}" '
            f'stroke-width="1.8"{dash_attr}/>'
        )

    legend_x = x1 - 150
    legend_y = y1 + 14
    for i, (name, _) in enumerate(curves):
        color = color_of[name]
        dash = DASHES[i % len(DASHES)]
        dash_attr = "" if dash == "none" else f' stroke-dasharray="{dash}"'
        y = legend_y + 16 * i
        out.append(
            f'<line x1="{_fmt(legend_x)}" y1="{_fmt(y)}" x2="{_fmt(legend_x + 26)}" '
            f'y2="{_fmt(y)}" stroke="{color}" stroke-width="1.8"{dash_attr}/>'
        )
        out.append(
            f'<text x="{_fmt(legend_x + 32)}" y="{_fmt(y + 4)}" font-family="sans-serif" '
            f'font-size="11" fill="#333333">{name}</text>'
        )

    out.append("</svg>")
    return "\n".join(out) + "\n"
